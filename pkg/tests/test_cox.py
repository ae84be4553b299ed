import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horikawa import cox
from horikawa.errors import DomainError
from horikawa.hirzebruch import h0_branch_piecewise


def test_T04_matrix():
    W = cox.catalogue("T", 0, 4)
    assert W.names == ("t0", "t1", "x0", "x1", "z")
    assert W.degrees == ((1, 0), (1, 0), (-4, 1), (-4, 1), (-8, 3))


def test_central_k8_matrix():
    assert cox.catalogue("central_k8").degrees == ((1, 0), (1, 0), (4, 1), (0, 1), (10, 3))


def test_fourfold_even_3_6():
    W = cox.catalogue("fourfold_even", 3, 6)
    assert W.degree_of("y0") == (-4, 1)
    assert W.degree_of("x0") == (-5, 1)
    assert W.degree_of("x1") == (-11, 1)
    assert W.degree_of("z") == (-16, 3)


def test_odd_threefold():
    # m = 2d-1, k = 2n-1 with d=7, n=8
    W = cox.threefold(13, 15)
    assert W.degrees[2:] == ((-2, 1), (-15, 1), (-16, 3))


@pytest.mark.parametrize("kind,params,needle", [
    ("fourfold_even", (5, 6), "2d < 2n-2"),
    ("fourfold_even", (2, 5), "n <= 2d"),
    ("fourfold_odd", (2, 6), "n+1 <= 2d"),
    ("T", (1, 4), "mod 2"),
    ("hirzebruch", (-1,), "m >= 0"),
    ("nonsense", (), "unknown"),
])
def test_catalogue_range_errors(kind, params, needle):
    with pytest.raises(DomainError, match=re.escape(needle)):
        cox.catalogue(kind, *params)


def test_weight_matrix_validation():
    with pytest.raises(DomainError):
        cox.WeightMatrix(("t0", "t1", "x"), ((1, 0), (1, 0), (0, 0)))
    with pytest.raises(DomainError):
        cox.WeightMatrix(("t0", "t1", "x"), ((1, 0), (1, 1), (0, 1)))
    with pytest.raises(DomainError):
        cox.WeightMatrix(("t0", "t0", "x"), ((1, 0), (1, 0), (0, 1)))


def test_enumerate_T04():
    W = cox.threefold(0, 4)
    mons = cox.enumerate_monomials(W, (-16, 6))
    assert len(mons) == 84
    iz = W.index("z")
    assert len(cox.enumerate_monomials(W, (-16, 6), lambda e: e[iz] == 0)) == 63
    assert all(W.monomial_degree(e) == (-16, 6) for e in mons)
    assert len(set(mons)) == 84


def test_enumerate_constant():
    for W in (cox.hirzebruch(3), cox.threefold(2, 6), cox.fourfold_k8()):
        assert cox.enumerate_monomials(W, (0, 0)) == [(0,) * W.nvars]


def test_special_threefold_monomials():
    n = 4
    W = cox.threefold(n + 2, 2 * n)
    deg = cox.surface_bidegree(2 * n)
    assert deg == (-24, 6)
    ix1, iz = W.index("x1"), W.index("z")
    z2 = tuple(2 if i == iz else 0 for i in range(W.nvars))
    mons = cox.enumerate_monomials(W, deg)
    assert z2 in mons
    assert all(e[ix1] > 0 or e == z2 for e in mons)


def test_monomial_order_deterministic():
    W = cox.threefold(2, 6)
    a = cox.enumerate_monomials(W, (-12, 4))
    assert a == cox.enumerate_monomials(W, (-12, 4))
    # t0-power ascending inside one fibre tuple
    fibre = [tuple(e[i] for i in W.fibre) for e in a]
    first = fibre[0]
    run = [e[W.base[0]] for e, f in zip(a, fibre) if f == first]
    assert run == sorted(run)


def test_graded_dim_examples():
    assert cox.graded_dim(cox.hirzebruch(2), cox.divisor_bidegree(2, 6, 16)) == 77
    assert cox.divisor_bidegree(2, 6, 16) == (4, 6)
    assert cox.graded_dim(cox.hirzebruch(8), cox.divisor_bidegree(8, 6, 38)) == 115
    assert cox.graded_dim(cox.hirzebruch(5), (0, 0)) == 1


def test_graded_dim_negative_d2():
    with pytest.raises(DomainError):
        cox.graded_dim(cox.hirzebruch(1), (0, -1))


def test_graded_dim_matches_piecewise_h0():
    for m in range(0, 21):
        for a in range(2 * m + 3, 4 * m + 21):
            if 2 * a <= 4 * m + 4:
                continue
            got = cox.graded_dim(cox.hirzebruch(m), cox.divisor_bidegree(m, 6, 2 * a))
            assert got == h0_branch_piecewise(m, a), (m, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 7), st.integers(-5, 40))
def test_graded_dim_pushforward(m, s, g):
    expected = sum(max(0, g - i * m + 1) for i in range(s + 1))
    assert cox.graded_dim(cox.hirzebruch(m), cox.divisor_bidegree(m, s, g)) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 5), st.integers(-20, 10))
def test_graded_dim_equals_enumeration(m, d2, d1):
    W = cox.threefold(m, m + 2)
    assert cox.graded_dim(W, (d1, d2)) == len(cox.enumerate_monomials(W, (d1, d2)))


def test_wps_projection():
    P = cox.project_to_wps(cox.central_k8(), "y1")
    assert P.weights == (1, 1, 4, 10)
    assert P == cox.wps_1_1_4_10()
    with pytest.raises(DomainError):
        cox.project_to_wps(cox.central_k8(), "y0")


def test_delete_keeps_base():
    W = cox.fourfold_even(3, 6).delete(["y0"])
    assert W.names == ("t0", "t1", "x0", "x1", "z")
    assert W.same_grading(cox.threefold(6, 12))
