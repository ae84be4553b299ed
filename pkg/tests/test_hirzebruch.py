import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horikawa import cox
from horikawa.cech import tangent_h1_basis
from horikawa.errors import DomainError
from horikawa.hirzebruch import (
    CohTriple,
    DivisorClass,
    branch_class,
    canonical,
    cohomology,
    def_preserves_map_check,
    def_preserves_map_vanishings,
    fibre,
    h1_branch_piecewise,
    intersect,
    riemann_roch,
    sigma_inf,
    sigma_zero,
    tangent_cohomology,
)


def test_intersections():
    assert intersect(sigma_inf(3), sigma_inf(3)) == -3
    assert intersect(fibre(3), fibre(3)) == 0
    assert intersect(sigma_inf(3), sigma_zero(3)) == 0
    assert intersect(sigma_zero(3), sigma_zero(3)) == 3
    m, a = 9, 22
    half = DivisorClass(m, 1, a - m - 2)
    assert 2 * intersect(half, half) == 4 * a - 6 * m - 8 == 26


def test_intersect_mismatch():
    with pytest.raises(DomainError):
        intersect(sigma_inf(2), sigma_inf(3))


def test_cohomology_examples():
    assert cohomology(branch_class(8, 19)).h1 == 10 == 11 * 8 - 4 * 19 - 2
    for m in range(6):
        assert cohomology(DivisorClass(m, 0, 0)) == CohTriple(1, 0, 0)
    c = cohomology(DivisorClass(5, -1, 5 - 13))
    assert c.h0 == 0 and c.h1 == 0


def test_canonical():
    for m in range(6):
        assert cohomology(canonical(m)) == CohTriple(0, 0, 1)


def test_tangent_cohomology():
    assert tangent_cohomology(3) == CohTriple(8, 2, 0)
    assert tangent_cohomology(0) == CohTriple(6, 0, 0)
    assert tangent_cohomology(1) == CohTriple(6, 0, 0)
    for m in range(1, 16):
        assert tangent_cohomology(m) == CohTriple(m + 5, m - 1, 0)


def test_tangent_h1_matches_cech():
    for m in range(1, 16):
        assert tangent_cohomology(m).h1 == len(tangent_h1_basis(m))


@pytest.mark.parametrize("m,a", [(9, 22), (0, 5), (4, 11)])
def test_def_preserves_map(m, a):
    assert def_preserves_map_check(m, a)
    assert all(v == 0 for v in def_preserves_map_vanishings(m, a).values())


def test_def_preserves_map_range():
    with pytest.raises(DomainError, match=r"a > 2m\+2"):
        def_preserves_map_check(4, 10)
    # the bound is sharp: at a = 2m+2 one of the vanishings fails
    assert def_preserves_map_vanishings(4, 10)["h1(-3sigma_inf+(2-a)Gamma)"] == 1


def test_def_preserves_map_whole_range():
    for m in range(0, 16):
        for a in range(2 * m + 3, 4 * m + 30):
            assert def_preserves_map_check(m, a)


def test_h1_branch_piecewise_matches_cohomology():
    for m in range(0, 21):
        for a in range(2 * m + 3, 4 * m + 21):
            assert cohomology(branch_class(m, a)).h1 == h1_branch_piecewise(m, a), (m, a)


def test_h0_branch_matches_graded_dim():
    for m in range(0, 21):
        for a in range(2 * m + 3, 4 * m + 21):
            W = cox.hirzebruch(m)
            assert cohomology(branch_class(m, a)).h0 == cox.graded_dim(W, cox.divisor_bidegree(m, 6, 2 * a))


classes = st.builds(DivisorClass, st.integers(0, 8), st.integers(-8, 8), st.integers(-30, 30))


@settings(max_examples=200, deadline=None)
@given(classes)
def test_riemann_roch(d):
    assert cohomology(d).euler == riemann_roch(d)
    assert min(cohomology(d).h0, cohomology(d).h1, cohomology(d).h2) >= 0


@settings(max_examples=200, deadline=None)
@given(classes)
def test_serre_duality(d):
    c = cohomology(d)
    dual = cohomology(canonical(d.m) - d)
    assert (c.h0, c.h1, c.h2) == (dual.h2, dual.h1, dual.h0)
