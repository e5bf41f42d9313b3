"""The hyperoctahedral Weyl group of C_n: signed permutations of n letters.

An element w is stored through its signed one-line images: w sends the basis
vector e_m to sign * e_p where images[m-1] = +-p.  Equivalently w is a plain
permutation followed by sign flips on a set J of output values, which is the
factorization w = r_{j_1} ... r_{j_k} * sigma_0 used throughout (r_v flips
the sign of the value v, sigma_0 acts first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import RankCapError
from .roots import (
    DIFF,
    Root,
    RootSet,
    SignedRoot,
    check_rank,
    diff,
    long,
    num_diffs,
    sum_root,
    _index_tables,
)

DEFAULT_GROUP_CAP = 8


@dataclass(frozen=True, slots=True)
class Perm:
    """A permutation of {1..n} in one-line notation: images[m-1] = sigma(m)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1 or sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        check_rank(n)
        return cls(tuple(range(1, n + 1)))

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, m: int) -> int:
        return self.images[m - 1]

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for m, p in enumerate(self.images, start=1):
            inv[p - 1] = m
        return Perm(tuple(inv))

    def compose(self, other: "Perm") -> "Perm":
        """self after other: (self.compose(other))(m) == self(other(m))."""
        return Perm(tuple(self.images[p - 1] for p in other.images))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.images)) + ")"


@dataclass(frozen=True, slots=True)
class SignedPerm:
    """A signed permutation; images[m-1] = +-p means e_m maps to +-e_p."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1 or sorted(abs(v) for v in self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a signed permutation of 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        check_rank(n)
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reflection(cls, i: int, n: int) -> "SignedPerm":
        """The generator r_i, flipping the sign of the value i."""
        check_rank(n)
        if not 1 <= i <= n:
            raise ValueError(f"reflection index {i} out of range for rank {n}")
        return cls(tuple(-v if v == i else v for v in range(1, n + 1)))

    @classmethod
    def from_perm_and_negated(cls, perm: Perm, negated) -> "SignedPerm":
        neg = frozenset(negated)
        for v in neg:
            if not 1 <= v <= perm.rank:
                raise ValueError(f"negated value {v} out of range")
        return cls(tuple(-p if p in neg else p for p in perm.images))

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def perm(self) -> Perm:
        """The underlying unsigned permutation sigma_0."""
        return Perm(tuple(abs(v) for v in self.images))

    @property
    def negated(self) -> frozenset[int]:
        """The set J of output values whose sign is flipped."""
        return frozenset(-v for v in self.images if v < 0)

    def __call__(self, m: int) -> int:
        return self.images[m - 1]

    def inverse(self) -> "SignedPerm":
        inv = [0] * len(self.images)
        for m, v in enumerate(self.images, start=1):
            inv[abs(v) - 1] = m if v > 0 else -m
        return SignedPerm(tuple(inv))

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """self after other, acting on e-vectors: (uv)(x) = u(v(x))."""
        out = []
        for v in other.images:
            u = self.images[abs(v) - 1]
            out.append(u if v > 0 else -u)
        return SignedPerm(tuple(out))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def parse_signed_perm(text: str) -> SignedPerm:
    """Inverse of str(w): accepts '[2,-1,3]'."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"cannot parse signed permutation {text!r}")
    return SignedPerm(tuple(int(part) for part in s[1:-1].split(",")))


@dataclass(frozen=True, slots=True)
class StandardForm:
    """The factorization w = r_{j_1} ... r_{j_k} * sigma_0 with the j's ordered
    so that sigma_0(j_1) < sigma_0(j_2) < ... < sigma_0(j_k)."""

    j_list: tuple[int, ...]
    sigma0: Perm


def enumerate_group(n: int, cap: int = DEFAULT_GROUP_CAP) -> Iterator[SignedPerm]:
    """All 2^n * n! signed permutations, sign patterns outer, permutations
    inner in lexicographic order.  Deterministic; refuses ranks above cap."""
    check_rank(n)
    if n > cap:
        raise RankCapError(f"rank {n} exceeds the group enumeration cap {cap}")
    values = tuple(range(1, n + 1))
    for jmask in range(1 << n):
        flip = tuple(-v if jmask >> (v - 1) & 1 else v for v in values)
        for word in itertools.permutations(values):
            yield SignedPerm(tuple(flip[p - 1] for p in word))


def group_order(n: int) -> int:
    check_rank(n)
    out = 1 << n
    for k in range(2, n + 1):
        out *= k
    return out


def act_on_root(w: SignedPerm, alpha: Root) -> SignedRoot:
    """The image of a positive root under w, as a signed positive root."""
    n = w.rank
    if alpha.max_index > n:
        raise ValueError(f"root {alpha} does not live in rank {n}")
    u = w.images[alpha.i - 1]
    v = w.images[alpha.j - 1]
    if alpha.kind == DIFF:
        v = -v
    p, q = abs(u), abs(v)
    if p == q:
        return SignedRoot(1 if u > 0 else -1, long(p))
    if u > 0 and v > 0:
        return SignedRoot(1, sum_root(p, q))
    if u < 0 and v < 0:
        return SignedRoot(-1, sum_root(p, q))
    if u > 0:
        # e_p - e_q
        return SignedRoot(1, diff(p, q)) if p < q else SignedRoot(-1, diff(q, p))
    # e_q - e_p
    return SignedRoot(1, diff(q, p)) if q < p else SignedRoot(-1, diff(p, q))


def inversion_set(w: SignedPerm) -> RootSet:
    """The set of positive roots sent into the negatives by w^{-1}, computed
    by direct action; its size is the Coxeter length of w."""
    n = w.rank
    return RootSet(n, _inversion_mask(w.images, n))


def _inversion_mask(images: tuple[int, ...], n: int) -> int:
    """Bitmask of the inversion set, from the signed one-line images.

    Walks every positive root beta and records -w(beta) whenever w(beta) is
    negative; that map is a bijection onto the inversion set.
    """
    d_idx, s_idx, l_idx = _index_tables(n)
    mask = 0
    for i in range(1, n + 1):
        u = images[i - 1]
        au = abs(u)
        if u < 0:
            mask |= 1 << l_idx[au]
        for j in range(i + 1, n + 1):
            v = images[j - 1]
            av = abs(v)
            # beta = e_i - e_j, image u - v
            if u > 0 and v > 0:
                if au > av:
                    mask |= 1 << d_idx[av][au]
            elif u < 0 and v > 0:
                mask |= 1 << s_idx[min(au, av)][max(au, av)]
            elif u > 0 and v < 0:
                pass
            else:
                if au < av:
                    mask |= 1 << d_idx[au][av]
            # beta = e_i + e_j, image u + v
            if u < 0 and v < 0:
                mask |= 1 << s_idx[min(au, av)][max(au, av)]
            elif u < 0 and v > 0:
                if au < av:
                    mask |= 1 << d_idx[au][av]
            elif u > 0 and v < 0:
                if av < au:
                    mask |= 1 << d_idx[av][au]
    return mask


def length(w: SignedPerm) -> int:
    return _inversion_mask(w.images, w.rank).bit_count()


def perm_inversions(sigma: Perm) -> RootSet:
    """Inversion set of a plain permutation: the differences e_i - e_j with
    i < j whose values appear out of order in sigma's one-line word.  This is
    the closed-form route; it must agree with inversion_set on S_n."""
    n = sigma.rank
    return RootSet(n, _perm_inversion_mask(sigma.images, n))


def _perm_inversion_mask(word: tuple[int, ...], n: int) -> int:
    pos = [0] * (n + 1)
    for p, v in enumerate(word):
        pos[v] = p
    d_idx = _index_tables(n)[0]
    mask = 0
    for i in range(1, n + 1):
        pi = pos[i]
        for j in range(i + 1, n + 1):
            if pi > pos[j]:
                mask |= 1 << d_idx[i][j]
    return mask


def perm_from_inversions(s: RootSet, n: int) -> Optional[Perm]:
    """The unique permutation with the given inversion set, or None when the
    set is not an inversion set of any permutation."""
    if s.rank != n:
        raise ValueError("rank mismatch")
    if s.mask >> num_diffs(n):
        raise ValueError("inversion sets contain difference roots only")
    word = _word_from_inversion_mask(s.mask, n)
    return None if word is None else Perm(word)


def _word_from_inversion_mask(mask: int, n: int) -> Optional[tuple[int, ...]]:
    # counts[i] = number of j > i inverted against i; rebuild by inserting
    # values n..1, value i at offset counts[i]; then verify.
    d_idx = _index_tables(n)[0]
    word: list[int] = []
    counts = [0] * (n + 1)
    for i in range(1, n + 1):
        c = 0
        for j in range(i + 1, n + 1):
            if mask >> d_idx[i][j] & 1:
                c += 1
        counts[i] = c
    for i in range(n, 0, -1):
        if counts[i] > len(word):
            return None
        word.insert(counts[i], i)
    out = tuple(word)
    if _perm_inversion_mask(out, n) != mask:
        return None
    return out


def _iter_signed_inversion_masks(n: int, perm_start: int = 0, perm_stop: int | None = None):
    """Fast exhaustive walk of the whole group, yielding per element
    (word, pos0, jmask, inversion_mask):

        word   one-line images of the unsigned part (tuple),
        pos0   list with pos0[v] = position of value v in word (1-based),
        jmask  bit v-1 set iff the value v is negated,
        mask   the inversion-set bitmask of the element.

    Permutations run in lexicographic order (optionally sliced by index, for
    partitioning across workers); inside each permutation the sign patterns
    follow a Gray code so each step flips one value and updates the mask in
    O(1).  The update is sound because for a fixed element the map from a
    positive root to the inversion it contributes is injective, so the
    per-row contributions below never overlap and add like disjoint bit sets;
    and because the contribution of the two roots supported on positions
    (i, j) depends only on the sign carried by the value at position i.
    Consumers must not hold on to pos0 across iterations (reused per perm).
    """
    check_rank(n)
    d_idx, s_idx, l_idx = _index_tables(n)
    values = range(1, n + 1)
    nsteps = 1 << n
    words = itertools.permutations(values)
    if perm_start or perm_stop is not None:
        words = itertools.islice(words, perm_start, perm_stop)
    for word in words:
        pos0 = [0] * (n + 1)
        for p, v in enumerate(word, start=1):
            pos0[v] = p
        # row i aggregates all roots with first slot at position i, for the
        # two signs of the value sitting there
        row_plus = [0] * (n + 1)
        row_minus = [0] * (n + 1)
        for i in range(1, n + 1):
            p = word[i - 1]
            minus = 1 << l_idx[p]
            plus = 0
            for j in range(i + 1, n + 1):
                q = word[j - 1]
                if p > q:
                    plus |= 1 << d_idx[q][p]
                    minus |= 1 << s_idx[q][p]
                else:
                    minus |= (1 << s_idx[p][q]) | (1 << d_idx[p][q])
            row_plus[i] = plus
            row_minus[i] = minus
        mask = sum(row_plus[1:])
        jmask = 0
        yield word, pos0, 0, mask
        for t in range(1, nsteps):
            b = (t & -t).bit_length() - 1
            i = pos0[b + 1]
            bit = 1 << b
            jmask ^= bit
            if jmask & bit:
                mask += row_minus[i] - row_plus[i]
            else:
                mask += row_plus[i] - row_minus[i]
            yield word, pos0, jmask, mask


def standard_form(w: SignedPerm) -> StandardForm:
    """Decompose w into sign flips after a permutation, the flipped values
    listed so their sigma_0-images increase."""
    sigma0 = w.perm
    j_list = sorted(w.negated, key=sigma0)
    return StandardForm(tuple(j_list), sigma0)


def recompose(sf: StandardForm) -> SignedPerm:
    return SignedPerm.from_perm_and_negated(sf.sigma0, sf.j_list)
