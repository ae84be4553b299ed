import pytest

from horikawa.deformation import (
    RankSource,
    nonreduced_sweep,
    tangent_report,
    thmA_gap,
    thmA_report,
)
from horikawa.errors import DomainError
from horikawa.strata import BranchCase, strata_for


def test_sigma2_at_5m_dimT1():
    for source in RankSource:
        r = tangent_report(8, 6, source, vanishing=2)
        assert r.a == 15 and 2 * r.a == 5 * r.m
        assert r.rank_alpha == 0
        assert r.dimT1 == 89 == 12 * r.a - 15 * r.m - 1


def test_sigma1_at_5m_no_excess():
    r = tangent_report(8, 6)
    assert r.vanishing == 1
    assert r.dimT1 == 84 == r.stratum_dim
    assert r.gap == 0 and r.dimT2 == 0


def test_trailing_16_12_exact():
    r = tangent_report(16, 12, RankSource.EXACT)
    assert r.rank_source is RankSource.EXACT
    assert r.gap == (r.m - 1) - r.rank_alpha
    assert r.rank_alpha == 3
    assert r.gap == 8 == 16 - 12 + 4
    assert any("k-m+3" in w for w in r.warnings)


def test_formula_mode_agrees_off_boundary():
    for k in range(5, 21):
        for s in strata_for(k):
            if 2 * s.a in (5 * s.m - 1, 5 * s.m, 6 * s.m):
                continue
            e = tangent_report(k, s.m, RankSource.EXACT)
            f = tangent_report(k, s.m, RankSource.FORMULA)
            assert (e.dimT1, e.dimT2) == (f.dimT1, f.dimT2), (k, s.m)


def test_every_report_exact_and_cases():
    for k in range(2, 21):
        for s in strata_for(k):
            r = tangent_report(k, s.m)
            assert r.exactness_holds()
            assert r.h0_T - r.h0_OB + r.dimT1 - r.h1_T + r.rank_alpha == 0
            assert r.dimT2 == r.h1_OB - r.rank_alpha >= 0
            if s.branch_case is BranchCase.BPF:
                assert r.dimT2 == 0
                assert r.gap == max(0, s.m - 1) - r.rank_alpha
            if s.branch_case is BranchCase.SIGMA1:
                assert r.dimT2 == 0


def test_nonexistent_stratum():
    with pytest.raises(DomainError, match="k > m"):
        tangent_report(6, 8)


def test_vanishing_bounds():
    with pytest.raises(DomainError):
        tangent_report(13, 9, vanishing=1)  # SIGMA2 forced
    with pytest.raises(DomainError):
        tangent_report(8, 6, vanishing=3)


def test_nonreduced_sweep():
    rep = nonreduced_sweep(range(5, 21))
    assert rep.entries
    assert rep.all_positive
    assert min(e.gap for e in rep.entries) >= 4
    e = next(e for e in rep.entries if (e.k, e.m) == (13, 9))
    assert e.prediction_plus3 == 7
    assert sum(rep.tally().values()) == len(rep.entries)
    for b in rep.boundary:
        assert b.gap == 0


def test_nonreduced_sweep_range():
    with pytest.raises(DomainError):
        nonreduced_sweep([4])


def test_thmA_ell3():
    r = thmA_report(3)
    assert (r.k, r.m, r.a) == (12, 8, 20)
    assert r.dimT1 == 119 and r.dim_I == 112
    assert r.gap == 6 > 0
    assert thmA_gap(3) == 6


def test_thmA_ell4():
    r = thmA_report(4)
    assert r.dimT1 == 12 * r.a - 15 * r.m - 1 == 149
    assert r.dim_I == 140
    assert r.gap > 0


def test_thmA_positive_range():
    for ell in range(3, 9):
        assert thmA_gap(ell) > 0


def test_thmA_ell2():
    with pytest.raises(DomainError, match="ell > 2"):
        thmA_gap(2)
