import pytest


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    """Keep the on-disk cache away from the user's real one in every test."""
    monkeypatch.setenv("SPCOHOM_CACHE", str(tmp_path / "spcohom-cache"))
