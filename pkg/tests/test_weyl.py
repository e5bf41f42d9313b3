import itertools

import pytest

from spcohom.errors import RankCapError
from spcohom.roots import RootSet, SignedRoot, diff, long, positive_roots, sum_root
from spcohom.weyl import (
    Perm,
    SignedPerm,
    act_on_root,
    enumerate_group,
    group_order,
    inversion_set,
    length,
    parse_signed_perm,
    perm_from_inversions,
    perm_inversions,
    recompose,
    standard_form,
    _inversion_mask,
    _iter_signed_inversion_masks,
)


def r(i, n):
    return SignedPerm.reflection(i, n)


def all_elements(n):
    return list(enumerate_group(n))


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 8), (3, 48), (4, 384), (5, 3840)])
def test_enumeration_count(n, expected):
    elems = all_elements(n)
    assert len(elems) == expected
    assert len(set(elems)) == expected


def test_group_order_formula():
    assert group_order(8) == 10_321_920


def test_enumeration_cap():
    with pytest.raises(RankCapError):
        next(enumerate_group(9))
    # explicit cap overrides the default
    assert next(enumerate_group(3, cap=3)) == SignedPerm.identity(3)


def test_perm_basics():
    s = Perm((2, 3, 1))
    assert s(1) == 2 and s(3) == 1
    assert s.inverse() == Perm((3, 1, 2))
    assert s.compose(s.inverse()) == Perm.identity(3)
    with pytest.raises(ValueError):
        Perm((1, 1, 2))


def test_signed_perm_fields():
    w = SignedPerm((2, -1, 3))
    assert w.perm == Perm((2, 1, 3))
    assert w.negated == frozenset({1})
    assert str(w) == "[2,-1,3]"
    assert parse_signed_perm("[2,-1,3]") == w
    assert w.inverse().compose(w) == SignedPerm.identity(3)


def test_act_on_root_examples():
    # r_1 sends e1-e2 to -(e1+e2)
    assert act_on_root(r(1, 2), diff(1, 2)) == SignedRoot(-1, sum_root(1, 2))
    w = SignedPerm.identity(3)
    for alpha in positive_roots(3):
        assert act_on_root(w, alpha) == SignedRoot(1, alpha)
    swap = SignedPerm((2, 1))
    assert act_on_root(swap, long(1)) == SignedRoot(1, long(2))


@pytest.mark.parametrize("n", [2, 3])
def test_action_respects_composition(n):
    elems = all_elements(n)
    roots = positive_roots(n)
    for u in elems:
        for v in elems:
            uv = u.compose(v)
            for alpha in roots:
                inner = act_on_root(v, alpha)
                outer = act_on_root(u, inner.root)
                assert act_on_root(uv, alpha) == SignedRoot(
                    inner.sign * outer.sign, outer.root
                )


def test_action_respects_composition_exhaustive_n4():
    # all 384^2 pairs, via precomputed action rows keyed by image tuple
    n = 4
    elems = all_elements(n)
    roots = positive_roots(n)
    rows = {}
    index = {r: k for k, r in enumerate(roots)}
    for w in elems:
        rows[w.images] = tuple(
            (sr.sign, index[sr.root]) for sr in (act_on_root(w, a) for a in roots)
        )
    for u in elems:
        urow = rows[u.images]
        for v in elems:
            vrow = rows[v.images]
            uvrow = rows[u.compose(v).images]
            for k in range(len(roots)):
                s1, b = vrow[k]
                s2, c = urow[b]
                assert uvrow[k] == (s1 * s2, c)


def test_inversion_set_examples():
    assert inversion_set(r(1, 2)).to_strings() == ["e1-e2", "e1+e2", "2e1"]
    assert inversion_set(r(2, 2)).to_strings() == ["2e2"]
    assert len(inversion_set(SignedPerm.identity(4))) == 0


def test_longest_element():
    w0 = SignedPerm((-1, -2, -3))
    assert length(w0) == 9


def test_perm_inversions_examples():
    assert perm_inversions(Perm((2, 1))).to_strings() == ["e1-e2"]
    assert len(perm_inversions(Perm.identity(4))) == 0
    # oracle value: the direct action on sigma = (3,1,2) inverts exactly
    # {e1-e3, e2-e3}; the closed form must match it
    sigma = Perm((3, 1, 2))
    expected = inversion_set(SignedPerm(sigma.images))
    assert perm_inversions(sigma).mask == expected.mask
    assert perm_inversions(sigma).to_strings() == ["e1-e3", "e2-e3"]


@pytest.mark.parametrize("n", range(1, 8))
def test_perm_inversions_agree_with_action(n):
    for word in itertools.permutations(range(1, n + 1)):
        sigma = Perm(word)
        assert perm_inversions(sigma).mask == _inversion_mask(word, n)


@pytest.mark.parametrize("n", range(1, 7))
def test_perm_from_inversions_round_trip(n):
    for word in itertools.permutations(range(1, n + 1)):
        sigma = Perm(word)
        assert perm_from_inversions(perm_inversions(sigma), n) == sigma


def test_perm_from_inversions_examples():
    assert perm_from_inversions(RootSet.empty(3), 3) == Perm.identity(3)
    assert perm_from_inversions(RootSet.from_roots(2, [diff(1, 2)]), 2) == Perm((2, 1))
    # {e1-e3} alone cannot be an inversion set
    assert perm_from_inversions(RootSet.from_roots(3, [diff(1, 3)]), 3) is None
    with pytest.raises(ValueError):
        perm_from_inversions(RootSet.from_roots(2, [long(1)]), 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_inversion_set_determines_element(n):
    masks = set()
    for w in all_elements(n):
        m = inversion_set(w).mask
        assert m not in masks
        masks.add(m)


def test_standard_form_examples():
    sf = standard_form(r(1, 2))
    assert sf.j_list == (1,) and sf.sigma0 == Perm.identity(2)
    sf = standard_form(SignedPerm.identity(3))
    assert sf.j_list == () and sf.sigma0 == Perm.identity(3)
    # perm (2,1) with both values flipped: sigma0(2)=1 < sigma0(1)=2
    w = SignedPerm((-2, -1))
    sf = standard_form(w)
    assert sf.sigma0 == Perm((2, 1))
    assert sf.j_list == (2, 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_form_round_trip(n):
    for w in all_elements(n):
        sf = standard_form(w)
        assert recompose(sf) == w
        images = sf.sigma0.images
        assert all(
            images[a - 1] < images[b - 1] for a, b in zip(sf.j_list, sf.j_list[1:])
        )


def test_standard_form_round_trip_rank7():
    count = 0
    for w in enumerate_group(7):
        if recompose(standard_form(w)) != w:
            raise AssertionError(str(w))
        count += 1
    assert count == group_order(7)


@pytest.mark.parametrize("n", range(1, 6))
def test_fast_scan_matches_direct_action(n):
    seen = set()
    for word, _pos0, jmask, mask in _iter_signed_inversion_masks(n):
        img = tuple(-v if jmask >> (v - 1) & 1 else v for v in word)
        assert _inversion_mask(img, n) == mask
        seen.add(img)
    assert len(seen) == group_order(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_order_signs_outer(n):
    elems = all_elements(n)
    # the first n! elements are the plain permutations in lexicographic order
    head = elems[: _factorial(n)]
    expected = [
        SignedPerm(word) for word in itertools.permutations(range(1, n + 1))
    ]
    assert head == expected


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
