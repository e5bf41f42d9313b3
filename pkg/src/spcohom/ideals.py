"""Abelian ideals of the Borel subalgebra, in combinatorial form.

An abelian ideal is spanned by root spaces indexed by an upward-closed subset
of the sums-plus-longs under the dominance order.  Such a set is a staircase:
row i holds e_i + e_j for i <= j <= b_i, the bounds b_1 >= b_2 >= ... are
nonincreasing, and the nonempty rows form a prefix.  The boundary profile
(b_1, ..., b_n), with b_i = i - 1 marking an empty row, is the cheap carrier
for enumeration; there are exactly 2^n profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .roots import RootSet, check_rank, num_diffs, _addable, _index_tables


@dataclass(frozen=True, slots=True)
class IncreasingSet:
    """An upward-closed subset of the sums-plus-longs, with its staircase profile."""

    rank: int
    members: RootSet
    profile: tuple[int, ...]

    @classmethod
    def from_profile(cls, n: int, profile: tuple[int, ...]) -> "IncreasingSet":
        check_rank(n)
        if not _profile_valid(profile, n):
            raise ValueError(f"{profile} is not a staircase profile for rank {n}")
        return cls(n, RootSet(n, _mask_from_profile(profile, n)), tuple(profile))

    @classmethod
    def from_members(cls, n: int, members: RootSet) -> "IncreasingSet":
        if members.rank != n:
            raise ValueError("rank mismatch")
        if members.mask & (1 << num_diffs(n)) - 1:
            raise ValueError("difference roots cannot belong to an upward-closed set")
        profile = _profile_from_mask(members.mask, n)
        if profile is None:
            raise ValueError("member set is not upward closed")
        return cls(n, members, profile)

    @property
    def dimension(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.members.to_strings()) + "}"


def _profile_valid(profile, n: int) -> bool:
    if len(profile) != n:
        return False
    prev = n
    empty_seen = False
    for i, b in enumerate(profile, start=1):
        if b == i - 1:
            empty_seen = True
        elif empty_seen or not i <= b <= prev:
            return False
        else:
            prev = b
    return True


def _mask_from_profile(profile, n: int) -> int:
    _, s_idx, l_idx = _index_tables(n)
    mask = 0
    for i, b in enumerate(profile, start=1):
        if b < i:
            break
        mask |= 1 << l_idx[i]
        for j in range(i + 1, b + 1):
            mask |= 1 << s_idx[i][j]
    return mask


def _profile_from_mask(mask: int, n: int) -> Optional[tuple[int, ...]]:
    """The staircase profile of a sums-plus-longs bitmask, or None when the
    mask is not upward closed.  The mask must not touch difference bits."""
    _, s_idx, l_idx = _index_tables(n)
    profile = []
    prev = n
    empty_seen = False
    for i in range(1, n + 1):
        row = [mask >> l_idx[i] & 1] + [mask >> s_idx[i][j] & 1 for j in range(i + 1, n + 1)]
        count = sum(row)
        if count == 0:
            profile.append(i - 1)
            empty_seen = True
            continue
        b = i - 1 + max(k + 1 for k, present in enumerate(row) if present)
        # contiguous from the diagonal, inside the staircase, rows a prefix
        if empty_seen or count != b - i + 1 or b > prev:
            return None
        profile.append(b)
        prev = b
    return tuple(profile)


def _profile_dimension(profile) -> int:
    return sum(b - i + 1 for i, b in enumerate(profile, start=1) if b >= i)


def enumerate_increasing(n: int) -> Iterator[IncreasingSet]:
    """All 2^n upward-closed subsets, via their profiles, deterministic order."""
    check_rank(n)
    for profile in _profiles(n):
        yield IncreasingSet.from_profile(n, profile)


def _profiles(n: int) -> Iterator[tuple[int, ...]]:
    def rec(i: int, prev: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if i > n:
            yield tuple(acc)
            return
        yield tuple(acc + [t - 1 for t in range(i, n + 1)])
        for b in range(i, prev + 1):
            yield from rec(i + 1, b, acc + [b])

    yield from rec(1, n, [])


def is_increasing(s: RootSet) -> bool:
    """Whether a subset of the sums-plus-longs is upward closed.

    Uses the staircase characterization, which tests/test_ideals.py checks
    against the literal two-point definition exhaustively at small rank.
    """
    n = s.rank
    if s.mask & (1 << num_diffs(n)) - 1:
        raise ValueError("difference roots are not part of the dominance order")
    return _profile_from_mask(s.mask, n) is not None


def is_abelian_ideal_combinatorial(s: RootSet) -> bool:
    """The root-addition criterion for an abelian ideal: adding any positive
    root to a member must land back in the set whenever it lands in the
    positive roots at all, and the sum of two members must never be a root.
    Accepts arbitrary subsets of the positive roots, so membership of a
    difference root makes it fail honestly rather than by fiat.
    """
    addable = _addable(s.rank)
    mask = s.mask
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        for b, out in addable[low.bit_length() - 1]:
            if mask >> b & 1 or not mask >> out & 1:
                return False
    return True


def dimension_histogram(n: int):
    """Coefficient k counts the upward-closed sets of size k; the
    coefficients sum to 2^n."""
    from .poincare import IntPolynomial

    check_rank(n)
    coeffs = [0] * (n * (n + 1) // 2 + 1)
    for profile in _profiles(n):
        coeffs[_profile_dimension(profile)] += 1
    return IntPolynomial.from_coeffs(coeffs)
