import json

from spcohom.cli import main


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def test_verify_rank2_passes(tmp_path):
    code, text = run_cli(["verify", "--rank", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert set(doc) == {"rank", "command", "checks", "data"}
    assert doc["rank"] == 2 and doc["command"] == "verify"
    assert doc["checks"] and all(c["pass"] for c in doc["checks"])
    assert all(set(c) == {"id", "anchor", "pass", "detail"} for c in doc["checks"])


def test_verify_is_deterministic(tmp_path):
    _, a = run_cli(["verify", "--rank", "2", "--seed", "42"], tmp_path, "a.json")
    _, b = run_cli(["verify", "--rank", "2", "--seed", "42"], tmp_path, "b.json")
    assert a == b


def test_invalid_rank_is_usage_error():
    assert main(["verify", "--rank", "0"]) == 2
    assert main(["ideals", "--rank", "-3"]) == 2


def test_cohomology_cap_is_usage_error():
    assert main(["betti", "--rank", "5"]) == 2
    assert main(["betti", "--rank", "4"]) == 2  # rank 4 needs the opt-in flag
    assert main(["betti", "--rank", "5", "--allow-rank4-cohomology"]) == 2


def test_csv_not_available_for_reports():
    assert main(["verify", "--rank", "2", "--format", "csv"]) == 2
    assert main(["classes", "--rank", "2", "--format", "csv"]) == 2


def test_ideals_json_and_csv(tmp_path):
    code, text = run_cli(["ideals", "--rank", "3", "--list"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["count"] == 8
    assert doc["data"]["histogram"] == [1, 1, 1, 2, 1, 1, 1]
    assert {"roots": [], "dimension": 0} in doc["data"]["ideals"]

    code, text = run_cli(
        ["ideals", "--rank", "2", "--histogram", "--format", "csv"], tmp_path, "h.csv"
    )
    assert code == 0
    assert text.splitlines() == ["dimension,count", "0,1", "1,1", "2,1", "3,1"]


def test_weyl_command(tmp_path):
    code, text = run_cli(["weyl", "--rank", "2", "--list"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["order"] == 8
    assert doc["data"]["length_histogram"] == [1, 2, 2, 2, 1]
    elems = {e["element"] for e in doc["data"]["elements"]}
    assert elems == {
        "[1,2]", "[2,1]", "[-1,2]", "[2,-1]", "[1,-2]", "[-2,1]", "[-1,-2]", "[-2,-1]",
    }


def test_structure_csv(tmp_path):
    code, text = run_cli(["structure", "--rank", "2", "--format", "csv"], tmp_path, "s.csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "alpha,beta,gamma,c"
    assert "e1-e2,e1+e2,2e1,2" in lines
    assert "e1-e2,2e2,e1+e2,1" in lines


def test_bijection_report_and_witness(tmp_path):
    code, text = run_cli(["bijection", "--rank", "3"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["elements"] == 48

    code, text = run_cli(
        ["bijection", "--rank", "2", "--witness", "[-1,2]"], tmp_path, "w.json"
    )
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["sym_component"] == [2, 1]
    assert doc["data"]["support_matches_inversions"] is True


def test_bijection_witness_rank_mismatch():
    assert main(["bijection", "--rank", "3", "--witness", "[-1,2]"]) == 2


def test_betti_command(tmp_path):
    code, text = run_cli(["betti", "--rank", "2", "--per-weight"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["betti"] == [1, 2, 2, 2, 1]
    assert doc["data"]["class_counts"] == [1, 2, 2, 2, 1]
    assert any(b["degree"] == 1 for b in doc["data"]["blocks"])


def test_classes_command(tmp_path):
    code, text = run_cli(["classes", "--rank", "2"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert all(c["pass"] for c in doc["checks"])


def test_poincare_command(tmp_path):
    code, text = run_cli(["poincare", "--rank", "4"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["data"]["identities"] == {"product": True, "exact_division": True}
    assert doc["data"]["weyl_poincare"][:3] == [1, 4, 9]
    assert doc["data"]["sym_times_ideal"] == doc["data"]["weyl_poincare"]

    code, text = run_cli(["poincare", "--rank", "2", "--format", "csv"], tmp_path, "p.csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[1] == "weyl_poincare,1,2,2,2,1"
    assert lines[4] == "sym_times_ideal,1,2,2,2,1"


def test_workers_flag_matches_serial(tmp_path):
    _, serial = run_cli(["bijection", "--rank", "3", "--workers", "1"], tmp_path, "s.json")
    _, parallel = run_cli(["bijection", "--rank", "3", "--workers", "3"], tmp_path, "p.json")
    assert serial == parallel


def test_workers_env_honored_and_overridden(tmp_path, monkeypatch):
    monkeypatch.setenv("SPCOHOM_WORKERS", "2")
    code, a = run_cli(["bijection", "--rank", "2"], tmp_path, "env.json")
    assert code == 0
    code, b = run_cli(["bijection", "--rank", "2", "--workers", "1"], tmp_path, "flag.json")
    assert code == 0
    assert a == b


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SPCOHOM_CACHE", str(tmp_path / "cache"))
    code, first = run_cli(["betti", "--rank", "2"], tmp_path, "b1.json")
    assert code == 0
    assert list((tmp_path / "cache").glob("blocks-*.json"))
    code, second = run_cli(["betti", "--rank", "2"], tmp_path, "b2.json")
    assert code == 0
    assert first == second
