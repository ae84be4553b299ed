"""Dimension bookkeeping along the exact sequence

    0 -> H0(T_W) -> H0(O_B(B)) -> T1_X -> H1(T_W) --alpha--> H1(O_B(B)) -> T2_X -> 0

for a standard stable Horikawa surface X -> W = F_m.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import cech
from .errors import DomainError, InternalError
from .hirzebruch import branch_class, cohomology, tangent_cohomology
from .strata import a_of, branch_case, check_exists, dimension_formula


class RankSource(str, Enum):
    EXACT = "EXACT"
    FORMULA = "FORMULA"


@dataclass(frozen=True)
class TangentReport:
    k: int
    m: int
    a: int
    vanishing: int
    h0_OB: int
    h0_T: int
    h1_T: int
    h1_OB: int
    rank_alpha: int
    rank_source: RankSource
    dimT1: int
    dimT2: int
    stratum_dim: int
    gap: int
    warnings: tuple[str, ...] = field(default=())

    def exactness_holds(self) -> bool:
        return (self.h0_T - self.h0_OB + self.dimT1 - self.h1_T + self.rank_alpha == 0
                and self.dimT2 == self.h1_OB - self.rank_alpha >= 0)


def _exact_rank(m: int, a: int, vanishing: int, seed: int, samples: int) -> int:
    rng = random.Random(seed)
    return cech.alpha_rank(m, a, vanishing, rng, samples)


def tangent_report(k: int, m: int, rank_source: str | RankSource = RankSource.EXACT,
                   vanishing: Optional[int] = None, seed: int = 0, samples: int = 5) -> TangentReport:
    """T1/T2 dimensions of a general surface in the stratum (k, m).

    ``vanishing`` forces B = vanishing*sigma_inf + B'; it defaults to the
    generic order of the branch case and may only be raised.
    """
    check_exists(k, m)
    source = RankSource(rank_source)
    a = a_of(k, m)
    generic = branch_case(m, a).vanishing_order
    if vanishing is None:
        vanishing = generic
    if not generic <= vanishing <= 2:
        raise DomainError(f"vanishing order must satisfy {generic} <= k <= 2 for (k,m)=({k},{m}), got {vanishing}")
    if cech.g_degree(m, a, vanishing) < 0:
        raise DomainError(f"vanishing order {vanishing} requires 2a-(6-{vanishing})m >= 0")

    coh_B = cohomology(branch_class(m, a))
    tan = tangent_cohomology(m)
    h0_OB = coh_B.h0 - 1
    h1_OB = coh_B.h1
    warnings: list[str] = []

    if h1_OB == 0 or m <= 1:
        rank = 0
    elif source is RankSource.EXACT:
        rank = _exact_rank(m, a, vanishing, seed, samples)
    else:
        rank = cech.predicted_alpha_rank(m, a, vanishing)
    if vanishing in (1, 2) and h1_OB:
        formula = cech.predicted_alpha_rank(m, a, vanishing)
        if formula != rank:
            warnings.append(f"rank alpha {rank} ({source.value}) differs from closed-form rank {formula}")

    dimT1 = (h0_OB - tan.h0) + (tan.h1 - rank)
    dimT2 = h1_OB - rank
    sdim = dimension_formula(k, m)
    if sdim != h0_OB - tan.h0:
        raise InternalError(f"stratum dimension {sdim} != h0(O_B(B)) - h0(T) = {h0_OB - tan.h0}")
    report = TangentReport(k, m, a, vanishing, h0_OB, tan.h0, tan.h1, h1_OB, rank, source,
                           dimT1, dimT2, sdim, dimT1 - sdim, tuple(warnings))
    if not report.exactness_holds():
        raise InternalError(f"sequence exactness fails for (k,m)=({k},{m})")
    if 2 * m > k + 4 and vanishing == 2:
        if report.gap != k - m + 3:
            warnings.append(f"gap {report.gap} = k-m+{report.gap - k + m}; closed-form prediction k-m+3 = {k - m + 3}")
        report = TangentReport(**{**report.__dict__, "warnings": tuple(warnings)})
    return report


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NonreducedEntry:
    k: int
    m: int
    gap: int
    rank_alpha: int
    prediction_plus3: int
    prediction_plus4: int

    @property
    def matches(self) -> str:
        if self.gap == self.prediction_plus3:
            return "k-m+3"
        if self.gap == self.prediction_plus4:
            return "k-m+4"
        return "neither"


@dataclass
class NonreducedReport:
    entries: list[NonreducedEntry] = field(default_factory=list)
    boundary: list[TangentReport] = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return all(e.gap > 0 for e in self.entries)

    def tally(self) -> dict[str, int]:
        out = {"k-m+3": 0, "k-m+4": 0, "neither": 0}
        for e in self.entries:
            out[e.matches] += 1
        return out


def nonreduced_sweep(k_range, seed: int = 0) -> NonreducedReport:
    """Exact gaps for every trailing stratum (k > m > (k+4)/2)."""
    report = NonreducedReport()
    for k in k_range:
        if k < 5:
            raise DomainError(f"nonreduced_sweep requires k >= 5, got k={k}")
        for m in range(k % 2, k, 2):
            if 2 * m > k + 4:
                r = tangent_report(k, m, RankSource.EXACT, seed=seed)
                report.entries.append(NonreducedEntry(k, m, r.gap, r.rank_alpha, k - m + 3, k - m + 4))
            elif 2 * m == k + 4:
                report.boundary.append(tangent_report(k, m, RankSource.EXACT, seed=seed))
    return report


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ThmAReport:
    ell: int
    k: int
    m: int
    a: int
    dimT1: int
    dim_I: int
    gap: int
    corollary_expression: int


def thmA_report(ell: int, rank_source: str | RankSource = RankSource.EXACT, seed: int = 0) -> ThmAReport:
    """Tangent excess at a general point of the divisor D for K^2 = 8*ell."""
    if ell <= 2:
        raise DomainError(f"requires ell > 2, got ell={ell}")
    k = 4 * ell
    m = 2 * ell + 2
    r = tangent_report(k, m, rank_source, vanishing=2, seed=seed)
    if r.dimT1 != 12 * r.a - 15 * m - 1:
        raise InternalError(f"dim T1 = {r.dimT1} != 12a-15m-1 at ell={ell}")
    dim_I = 7 * k + 28
    return ThmAReport(ell, k, m, r.a, r.dimT1, dim_I, r.dimT1 - dim_I - 1,
                      r.dimT1 - dim_I + 1 + (m - 2))


def thmA_gap(ell: int) -> int:
    """dim T1_X - dim H^I - 1; positive means the two components do not meet normal-crossing."""
    return thmA_report(ell).gap
