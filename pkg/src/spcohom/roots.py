"""Positive roots of the symplectic root system C_n.

The positive roots are e_i - e_j and e_i + e_j for 1 <= i < j <= n together
with the long roots 2*e_i, so there are n^2 of them.  They split into

    short differences   e_i - e_j            (n*(n-1)/2 roots)
    sums and longs      e_i + e_j, i <= j    (n*(n+1)/2 roots, 2*e_i = e_i+e_i)

Everything downstream (bitmask positions, exterior-algebra signs, serialized
output) depends on one global total order of the positive roots, fixed here
once and for all: all differences in lexicographic (i, j) order, then all
sums in lexicographic order, then the long roots by index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import InvalidRankError

DIFF = "diff"
SUM = "sum"
LONG = "long"


@dataclass(frozen=True, slots=True)
class Root:
    """A positive root: DIFF is e_i - e_j, SUM is e_i + e_j (i < j), LONG is 2*e_i (j == i)."""

    kind: str
    i: int
    j: int

    def __post_init__(self):
        if self.kind not in (DIFF, SUM, LONG):
            raise ValueError(f"unknown root kind {self.kind!r}")
        if self.i < 1:
            raise ValueError("root indices are 1-based")
        if self.kind == LONG:
            if self.j != self.i:
                raise ValueError("a long root 2*e_i must have j == i")
        elif not self.i < self.j:
            raise ValueError(f"{self.kind} root needs i < j, got ({self.i}, {self.j})")

    @property
    def max_index(self) -> int:
        return self.j

    @property
    def in_phi1(self) -> bool:
        """True for sums and longs, i.e. roots of the form e_i + e_j with i <= j."""
        return self.kind != DIFF

    def coeffs(self, n: int) -> tuple[int, ...]:
        """Coefficient vector on the e_1..e_n basis."""
        v = [0] * n
        if self.kind == DIFF:
            v[self.i - 1] = 1
            v[self.j - 1] = -1
        elif self.kind == SUM:
            v[self.i - 1] = 1
            v[self.j - 1] = 1
        else:
            v[self.i - 1] = 2
        return tuple(v)

    def __str__(self) -> str:
        if self.kind == DIFF:
            return f"e{self.i}-e{self.j}"
        if self.kind == SUM:
            return f"e{self.i}+e{self.j}"
        return f"2e{self.i}"


def diff(i: int, j: int) -> Root:
    return Root(DIFF, i, j)


def sum_root(i: int, j: int) -> Root:
    """e_i + e_j for any i != j (normalized), or the long root 2*e_i when i == j."""
    if i == j:
        return Root(LONG, i, i)
    if i > j:
        i, j = j, i
    return Root(SUM, i, j)


def long(i: int) -> Root:
    return Root(LONG, i, i)


def parse_root(text: str) -> Root:
    """Inverse of str(root): accepts '2e1', 'e1+e2', 'e1-e2'."""
    s = text.strip()
    if s.startswith("2e"):
        return long(int(s[2:]))
    for sep, kind in (("+", SUM), ("-", DIFF)):
        if sep in s[1:]:
            a, b = s.split(sep, 1)
            if a.startswith("e") and b.startswith("e"):
                return Root(kind, int(a[1:]), int(b[1:]))
    raise ValueError(f"cannot parse root {text!r}")


@dataclass(frozen=True, slots=True)
class SignedRoot:
    """A positive root together with the sign it picked up under a group action."""

    sign: int
    root: Root

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __str__(self) -> str:
        return ("" if self.sign == 1 else "-") + str(self.root)


def check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidRankError(f"rank must be a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple[Root, ...]:
    """All n^2 positive roots in the canonical global order."""
    check_rank(n)
    out = [diff(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [Root(SUM, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [long(i) for i in range(1, n + 1)]
    return tuple(out)


@lru_cache(maxsize=None)
def root_index(n: int) -> dict[Root, int]:
    return {r: b for b, r in enumerate(positive_roots(n))}


def num_diffs(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True, slots=True)
class RootSet:
    """A subset of the positive roots of rank n, stored as a bitmask over the canonical order."""

    rank: int
    mask: int

    def __post_init__(self):
        check_rank(self.rank)
        if self.mask < 0 or self.mask >> self.rank**2:
            raise ValueError("bitmask outside the positive-root range")

    @classmethod
    def from_roots(cls, n: int, roots: Iterable[Root]) -> "RootSet":
        idx = root_index(n)
        m = 0
        for r in roots:
            m |= 1 << idx[r]
        return cls(n, m)

    @classmethod
    def empty(cls, n: int) -> "RootSet":
        return cls(n, 0)

    def roots(self) -> tuple[Root, ...]:
        all_roots = positive_roots(self.rank)
        return tuple(all_roots[b] for b in _bit_indices(self.mask))

    def __contains__(self, r: Root) -> bool:
        b = root_index(self.rank).get(r)
        return b is not None and bool(self.mask >> b & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots())

    def __or__(self, other: "RootSet") -> "RootSet":
        self._check_compatible(other)
        return RootSet(self.rank, self.mask | other.mask)

    def __and__(self, other: "RootSet") -> "RootSet":
        self._check_compatible(other)
        return RootSet(self.rank, self.mask & other.mask)

    def __sub__(self, other: "RootSet") -> "RootSet":
        self._check_compatible(other)
        return RootSet(self.rank, self.mask & ~other.mask)

    def __le__(self, other: "RootSet") -> bool:
        self._check_compatible(other)
        return self.mask & ~other.mask == 0

    def _check_compatible(self, other: "RootSet") -> None:
        if self.rank != other.rank:
            raise ValueError("rank mismatch between root sets")

    def to_strings(self) -> list[str]:
        return [str(r) for r in self.roots()]


def _bit_indices(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def split(n: int) -> tuple[RootSet, RootSet]:
    """The partition of the positive roots into differences and sums-plus-longs."""
    check_rank(n)
    nd = num_diffs(n)
    full = (1 << n * n) - 1
    phi0 = (1 << nd) - 1
    return RootSet(n, phi0), RootSet(n, full & ~phi0)


def dotted_sum(alpha: Root, beta: Root, n: int) -> Optional[Root]:
    """alpha + beta if the vector sum is again a positive root of rank n, else None."""
    check_rank(n)
    va = alpha.coeffs(n)
    vb = beta.coeffs(n)
    s = tuple(a + b for a, b in zip(va, vb))
    return _root_from_coeffs(s)


def _root_from_coeffs(v: tuple[int, ...]) -> Optional[Root]:
    support = [(c, k + 1) for k, c in enumerate(v) if c]
    if len(support) == 1:
        c, i = support[0]
        return long(i) if c == 2 else None
    if len(support) == 2:
        (ci, i), (cj, j) = support
        if ci == 1 and cj == 1:
            return Root(SUM, i, j)
        if ci == 1 and cj == -1:
            return diff(i, j)
    return None


def precedes(x: Root, y: Root) -> bool:
    """The dominance order on sums-plus-longs: e_{i1}+e_{j1} precedes e_{i2}+e_{j2}
    iff i1 >= i2 and j1 >= j2 (indices normalized so i <= j, longs count as i == j).

    Reflexive by convention; callers wanting the strict order exclude equality
    themselves.
    """
    for r in (x, y):
        if not r.in_phi1:
            raise ValueError(f"{r} is a difference root; the order is defined on sums only")
    return x.i >= y.i and x.j >= y.j


@lru_cache(maxsize=None)
def _index_tables(n: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """1-based lookup tables (diff_idx[i][j], sum_idx[i][j], long_idx[i]) into
    the canonical order; unused slots hold -1."""
    idx = root_index(n)
    d = [[-1] * (n + 1) for _ in range(n + 1)]
    s = [[-1] * (n + 1) for _ in range(n + 1)]
    l = [-1] * (n + 1)
    for i in range(1, n + 1):
        l[i] = idx[long(i)]
        for j in range(i + 1, n + 1):
            d[i][j] = idx[diff(i, j)]
            s[i][j] = idx[Root(SUM, i, j)]
    return d, s, l


@lru_cache(maxsize=None)
def _addable(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each root index a, the pairs (b, c) over all root indices b such that
    root a + root b is a positive root with index c.  Used by the abelian-ideal
    closure checks; the lists are short (O(n) entries per root)."""
    roots = positive_roots(n)
    out = []
    for a, ra in enumerate(roots):
        row = []
        for b, rb in enumerate(roots):
            s = dotted_sum(ra, rb, n)
            if s is not None:
                row.append((b, root_index(n)[s]))
        out.append(tuple(row))
    return tuple(out)
