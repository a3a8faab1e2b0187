import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfloorplan import dperm as P
from dfloorplan.dperm import DPermutation, VincularPattern
from dfloorplan.errors import BadIndices, DomainError, ParseError, ResourceLimit

import _data as D


def perm(text):
    return DPermutation.parse(text)


@st.composite
def dperms(draw, dims=(2, 3), max_n=6):
    d = draw(st.sampled_from(dims))
    n = draw(st.integers(1, max_n))
    return DPermutation(tuple(tuple(draw(st.permutations(range(n)))) for _ in range(d - 1)))


def brute_contains(p, pat, adjacency=None):
    """Reference matcher: every axis subset and point subset, no shortcuts."""
    k, dd = pat.n, pat.dims
    target = pat.points()
    for axes in combinations(range(p.dims), dd):
        for sub in combinations(p.points(), k):
            proj = sorted(tuple(x[a] for a in axes) for x in sub)
            std = [P._standardize([q[a] for q in proj]) for a in range(dd)]
            if sorted(zip(*std)) != target:
                continue
            ok = True
            for a in range(dd):
                vals = sorted(q[a] for q in proj)
                for j in (adjacency or [()] * dd)[a]:
                    ok &= vals[j] - vals[j - 1] == 1
            if ok:
                return True
    return False


# -- basics -------------------------------------------------------------------


def test_parse_and_format():
    p = perm("12435|34125")
    assert p.dims == 3 and p.n == 5
    assert perm("1 2 4 3 5\n3 4 1 2 5") == p
    assert p.format() == "12435|34125"
    assert p.format(compact=False) == "1 2 4 3 5\n3 4 1 2 5"
    assert str(perm("4513762")) == "4513762"
    big = DPermutation.identity(12)
    assert DPermutation.parse(big.format()) == big
    assert "\n" not in big.format() and " " in big.format()


@pytest.mark.parametrize("text", ["", "1223", "12|123", "1 2\n1 3", "ab", "12|"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        DPermutation.parse(text)


def test_points():
    assert perm("21").points() == [(0, 1), (1, 0)]


def test_direction():
    assert P.direction((0, 1, 2), (1, 0, 5)) == (1, -1, 1)


# -- projection and containment ----------------------------------------------


def test_project_examples():
    p = perm("1432|3124")
    assert P.project(p, [1, 2]) == perm("3421")
    assert P.project(p, [0, 1, 2]) == p
    assert P.project(perm("12435|34125"), [0, 1]) == perm("12435")
    for bad in ([2, 1], [], [0, 3], [-1, 1], [1, 1]):
        with pytest.raises(BadIndices):
            P.project(p, bad)


def test_contains_examples():
    p = perm("1432|3124")
    occ = P.find_occurrence(p, perm("132|213"))
    assert occ is not None
    assert P.contains(p, perm("132|213"))
    assert P.contains(p, perm("231"))
    assert P.contains(p, perm("1"))
    assert not P.contains(perm("123"), perm("21"))
    # the points 1, 3, 4 realize (132, 213) as well
    assert P.contains(DPermutation.from_points([p.points()[i] for i in (0, 2, 3)]),
                      perm("132|213"))


def test_vincular_k4_contained():
    p = perm("1432|3124")
    k4 = VincularPattern(perm("132|213"), ({2}, {1}, ()))
    assert P.contains_vincular(p, k4)


def test_vincular_k3_occurrence_124():
    # the occurrence on points 1, 2, 4 has its first two points consecutive
    p = perm("1432|3124")
    k3 = VincularPattern(perm("132|213"), ({1},))
    occ = P.find_vincular(p, k3)
    assert occ is not None and occ.indices == (0, 1, 3)
    assert brute_contains(p, k3.pattern, k3.adjacency)


@pytest.mark.xfail(strict=True, reason="occurrence on points 1,2,4 satisfies X_0={1}; "
                                        "see decisions ledger")
def test_vincular_k3_claimed_absent():
    p = perm("1432|3124")
    assert not P.contains_vincular(p, VincularPattern(perm("132|213"), ({1},)))


def test_vincular_in_lower_dimension():
    # adjacency is read in the projected coordinates
    vp = VincularPattern(perm("21"), ((), {1}))
    assert P.contains_vincular(perm("1432|3124"), vp)
    assert not P.contains_vincular(perm("1|1"), vp)


@given(dperms(max_n=6), dperms(max_n=3))
def test_contains_matches_brute_force(p, pat):
    if pat.dims <= p.dims:
        assert P.contains(p, pat) == brute_contains(p, pat)


@given(dperms(dims=(3,), max_n=6), dperms(dims=(2,), max_n=3))
def test_vincular_empty_adjacency_is_contains(p, pat):
    assert P.contains_vincular(p, VincularPattern(pat)) == P.contains(p, pat)


@given(dperms(dims=(3,), max_n=6), dperms(dims=(2,), max_n=3), st.data())
def test_contains_monotone_under_projection(p, pat, data):
    axes = data.draw(st.sampled_from([[0, 1], [0, 2], [1, 2]]))
    if P.contains(P.project(p, axes), pat):
        assert P.contains(p, pat)


@given(dperms(dims=(2,), max_n=7))
def test_vincular_matches_brute_force(p):
    assert P.contains_vincular(p, P.BAXTER_VINCULAR) == \
        brute_contains(p, P.BAXTER_VINCULAR.pattern, P.BAXTER_VINCULAR.adjacency)


def test_vincular_pattern_validation():
    with pytest.raises(ValueError):
        VincularPattern(perm("213"), ({3},))
    with pytest.raises(ValueError):
        VincularPattern(perm("21"), ((), (), ()))


# -- symmetry -----------------------------------------------------------------


def _brute_orbit(vp):
    # apply every signed axis permutation to the point set directly
    from itertools import permutations, product

    k, dd = vp.pattern.n, vp.pattern.dims
    out = set()
    for sigma in permutations(range(dd)):
        for signs in product((1, -1), repeat=dd):
            pts = [tuple(x[sigma[a]] if signs[a] > 0 else k - 1 - x[sigma[a]] for a in range(dd))
                   for x in vp.pattern.points()]
            out.add(tuple(sorted(pts)))
    return out


def test_closure_contains_reverse_complement():
    orbit = P.symmetry_closure(VincularPattern(perm("2413")))
    assert VincularPattern(perm("3142")) in orbit
    assert len(orbit) == 2


def test_closure_sizes():
    three = P.symmetry_closure(P.PATTERN_3D, 3)
    assert len(three) == len(_brute_orbit(P.PATTERN_3D)) == 8
    assert 48 % len(three) == 0
    two = P.symmetry_closure(P.BAXTER_VINCULAR)
    assert len(two) == 4 and 8 % len(two) == 0
    assert {str(vp) for vp in two} == {"2413 X_0={2}", "3142 X_0={2}",
                                       "2413 X_1={2}", "3142 X_1={2}"}
    with pytest.raises(DomainError):
        P.symmetry_closure(P.PATTERN_3D, 2)


@given(dperms(dims=(2, 3), max_n=4))
def test_closure_is_fixed_point(pat):
    orbit = P.symmetry_closure(VincularPattern(pat))
    assert (math.factorial(pat.dims) * 2 ** pat.dims) % len(orbit) == 0
    for member in orbit:
        assert P.symmetry_closure(member) == orbit


# -- classes ------------------------------------------------------------------


def test_small_perms_in_F():
    for d in (2, 3, 4):
        for n in (1, 2):
            assert all(P.is_in_F(p) for p in P.iter_dperms(d, n))


def test_F_counts():
    assert [len(D.class_members(2, n)) for n in range(1, 6)] == [1, 2, 6, 22, 92]
    assert [len(D.class_members(3, n)) for n in range(1, 5)] == [1, 4, 28, 244]


def test_F_equals_baxter_in_2d():
    for n in range(1, 8):
        for p in P.iter_dperms(2, n):
            assert P.is_in_F(p) == P.is_baxter_2d(p)


def test_baxter_test_needs_2d():
    with pytest.raises(DomainError):
        P.is_baxter_2d(perm("12|12"))


def test_every_baxter_occurrence_witnesses_non_membership():
    for p in P.iter_dperms(3, 4):
        for axes in ([0, 1], [0, 2], [1, 2]):
            if P.contains_vincular(P.project(p, axes), P.BAXTER_VINCULAR):
                assert not P.is_in_F(p)


def test_F_witness():
    occ = P.find_F_violation(perm("2413"))
    assert occ.indices == (0, 1, 2, 3) and occ.axes == (0, 1)
    assert str(occ) == "points 1,2,3,4 on axes 0,1 realize 2413 X_0={2}"
    occ = P.find_F_violation(perm("1432|3124"))
    assert occ.pattern in P.symmetry_closure(P.PATTERN_3D)
    assert P.find_F_violation(perm("12435|34125")) is None


def test_separable():
    assert P.is_separable(perm("1"))
    assert not P.is_separable(perm("2413"))
    assert P.is_separable(perm("12|12"))


def _separable_by_bipartition(p):
    pts = p.points()
    if len(pts) <= 1:
        return True
    n = len(pts)
    for mask in range(1, 2 ** n - 1):
        a = [pts[i] for i in range(n) if mask >> i & 1]
        b = [pts[i] for i in range(n) if not mask >> i & 1]
        dirs = {P.direction(x, y) for x in a for y in b}
        if len(dirs) == 1:
            return (_separable_by_bipartition(DPermutation.from_points(a))
                    and _separable_by_bipartition(DPermutation.from_points(b)))
    return False


@given(dperms(dims=(2, 3), max_n=6))
def test_separable_matches_bipartition_search(p):
    assert P.is_separable(p) == _separable_by_bipartition(p)


def test_separable_is_pattern_avoidance():
    forbidden = list(P.symmetry_closure(VincularPattern(perm("2413")))) + \
        list(P.symmetry_closure(P.PATTERN_3D))
    for n in range(1, 5):
        for p in P.iter_dperms(3, n):
            avoids = not any(P.contains(p, vp.pattern) for vp in forbidden)
            assert P.is_separable(p) == avoids


def test_enumerate_class():
    assert P.enumerate_class(2, 4, "f") == 22
    assert P.enumerate_class(3, 3, "f") == 28
    for cls in P.CLASSES:
        assert P.enumerate_class(2, 1, cls) == 1
    assert P.enumerate_class(3, 1, "f") == P.enumerate_class(4, 1, "separable") == 1
    assert P.enumerate_class(2, 5, "separable") == 90
    assert P.enumerate_class(3, 4, "f", workers=2) == 244
    with pytest.raises(ResourceLimit):
        P.enumerate_class(3, 8, "f", limit=1000)
    with pytest.raises(ValueError):
        P.enumerate_class(2, 3, "nope")
