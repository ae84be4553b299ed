import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horikawa import cox
from horikawa.errors import DomainError
from horikawa.exactalg import BinaryForm, gl2z_equivalent
from horikawa.families import (
    FamilyKind,
    ToricPoly,
    central_fiber,
    check_fibres,
    example34_membership,
    family,
    general_fiber,
    k8_limit_check,
    k8_projection_check,
    product_limit_check,
    specialization_span,
    specialize,
    squarefree,
    y_stratum_filters,
)
from horikawa.multmap import PencilPair


def mono(e, j):
    return BinaryForm.monomial(e, j)


# -- weight matrices ------------------------------------------------------


def test_even_3_6_general():
    F = family("even", 3, 6)
    assert general_fiber(F).same_grading(cox.threefold(6, 12))


def test_k8_general_gl2z():
    F = family("k8")
    gen = general_fiber(F)
    assert not gen.same_grading(cox.threefold(0, 4))
    assert gl2z_equivalent(gen.int_matrix(), cox.threefold(0, 4).int_matrix())


def test_odd_7_8_general():
    F = family("odd", 7, 8)
    assert general_fiber(F).same_grading(cox.threefold(13, 15))
    assert any("central" in w for w in F.warnings)


def test_even_3_6_central():
    F = family("even", 3, 6)
    W, sub = central_fiber(F)
    assert sub.y1_degree == (-12, 1) == (-3 - 6 - 3, 1)
    assert W.same_grading(cox.threefold(8, 12))


def test_k8_central():
    W, _ = central_fiber(family("k8"))
    assert W.degrees == ((1, 0), (1, 0), (4, 1), (0, 1), (10, 3))


def test_smoothing_central_is_special_threefold():
    W, _ = central_fiber(family("smoothing", n=4))
    assert W.same_grading(cox.threefold(6, 8))


def test_all_even_odd_fibres():
    for n in range(1, 11):
        for d in range(0, n + 2):
            if n <= 2 * d < 2 * n - 2:
                assert all(check_fibres(family("even", d, n)).values()), (d, n)
            if n + 2 <= 2 * d < 2 * n + 2:
                assert all(check_fibres(family("odd", d, n)).values()), (d, n)


def test_pencil_degree_enforced():
    P = PencilPair(mono(2, 2), mono(2, 0))
    with pytest.raises(DomainError, match="deg p0, deg p1"):
        family("even", 3, 6, pencil=P)


def test_k8_requires_squarefree():
    P = PencilPair(BinaryForm.of([0, 0, 1]), BinaryForm.of([1, 0, 1]))
    with pytest.raises(DomainError, match="multiple zeros"):
        family("k8", pencil=P)


def test_squarefree():
    assert squarefree(BinaryForm.of([1, 0, -1]))
    assert not squarefree(BinaryForm.of([1, 2, 1]))
    assert not squarefree(BinaryForm.of([0, 0, 1]))
    assert squarefree(BinaryForm.of([3, 1]))


# -- specialization -------------------------------------------------------


def test_specialize_z2():
    F = family("even", 3, 6)
    W, _ = central_fiber(F)
    assert specialize(F, ToricPoly.var(F.ambient, "z") ** 2) == ToricPoly.var(W, "z") ** 2


def test_k8_limit():
    F = family("k8", seed=3)
    assert k8_limit_check(F)


def test_k8_product_term():
    F = family("k8")
    A = F.ambient
    W, _ = central_fiber(F)
    f = ToricPoly.var(A, "x0") * ToricPoly.var(A, "x1") * ToricPoly.var(A, "y0") ** 4
    g = specialize(F, f)
    expected = ToricPoly.from_form(W, F.pencil.p0 * F.pencil.p1) * ToricPoly.var(W, "y0") ** 4 * ToricPoly.var(W, "y1") ** 2
    assert g == expected


@pytest.mark.parametrize("kind,d,n", [("even", 3, 6), ("even", 4, 6), ("odd", 4, 6), ("odd", 5, 7)])
def test_product_limit(kind, d, n):
    chk = product_limit_check(family(kind, d, n, seed=2), seed=5)
    assert chk.identity_holds
    assert chk.y1_valuation == 2
    assert chk.content_degree == chk.expected_content_degree
    assert chk.ok


def test_product_limit_kind():
    with pytest.raises(DomainError):
        product_limit_check(family("k8"))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 2), st.integers(0, 3), st.integers(0, 2))
def test_specialize_preserves_bidegree(seed, a, b, c):
    F = family("even", 3, 6, seed=seed % 7)
    A = F.ambient
    rng = random.Random(seed)
    deg = A.monomial_degree((0, 0, a, b, c, 0))
    mons = cox.enumerate_monomials(A, (deg[0] + 3, deg[1]))
    f = ToricPoly(A, {e: rng.randint(-3, 3) for e in mons[:20]})
    g = specialize(F, f)
    if not g.is_zero():
        assert g.bidegree() == f.bidegree()


# -- spans ----------------------------------------------------------------


def test_span_strata_surjective_above_two():
    n = 4
    F = family("smoothing", n=n, pencil=PencilPair(mono(3, 3), mono(3, 0)))
    deg = F.surface_bidegree()
    for i in range(3, 7):
        src, tgt = y_stratum_filters(F, i)
        rep = specialization_span(F, deg, src, tgt)
        assert rep.cokernel_dim == 0, i
    src, tgt = y_stratum_filters(F, 2)
    rep = specialization_span(F, deg, src, tgt)
    assert rep.cokernel_dim == 2 * (n // 2 + 1) - 2
    assert len(rep.missed) == rep.cokernel_dim


def test_span_contains_z2():
    F = family("smoothing", n=4, seed=1)
    iz = central_fiber(F)[0].index("z")
    rep = specialization_span(F, F.surface_bidegree(), target_filter=lambda e: e[iz] == 2)
    assert rep.target_dim == 1 and rep.span_dim == 1


def test_span_invariant_under_pencil_basis_change():
    F = family("smoothing", n=4, seed=4)
    p0, p1 = F.pencil.p0, F.pencil.p1
    G = family("smoothing", n=4, pencil=PencilPair(p0 * 2 + p1 * 3, p0 - p1))
    deg = F.surface_bidegree()
    assert specialization_span(F, deg).span_dim == specialization_span(G, deg).span_dim


# -- membership -----------------------------------------------------------


def test_membership_monomial_pencil():
    assert example34_membership(4, PencilPair(mono(3, 3), mono(3, 0)))


def test_membership_random_n6():
    assert example34_membership(6, seed=1)


def test_membership_not_coprime():
    with pytest.raises(DomainError):
        example34_membership(4, PencilPair(mono(3, 3), mono(3, 3)))


def test_membership_negative_control():
    # g not in the span <p0, p1>^2 fails the i = 2 stratum
    assert not example34_membership(4, PencilPair(mono(3, 3), mono(3, 0)), g=BinaryForm.monomial(6, 1))


def test_membership_odd_n():
    with pytest.raises(DomainError):
        example34_membership(5)


def test_k8_projection():
    chk = k8_projection_check()
    assert chk["central_graded_dim"] == chk["wps_graded_dim"]


def test_family_kind_properties():
    F = family(FamilyKind.EVEN, 3, 6)
    assert F.k == 12 and F.general_type() == 6 and F.central_type() == 8
    assert family("k8").surface_bidegree() == (20, 6)


@pytest.mark.parametrize("d,n", [(3, 5), (4, 7), (5, 9)])
def test_odd_first_trailing_connection(d, n):
    # 2d = n+1: classical type 2d-1 = n degenerates to the first trailing type n+2
    F = family("odd", d, n, seed=1)
    assert all(check_fibres(F).values())
    assert product_limit_check(F, seed=2).ok
    assert F.warnings == ()
