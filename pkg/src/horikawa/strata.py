"""Standard stable Horikawa strata: invariants, branch cases, dimensions.

A stratum is indexed by (k, m): K^2 = 2k and the surface is a double cover
of F_m branched in |6 sigma_inf + 2a Gamma| with 2a = k + 3m + 4.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Optional

from . import cox
from .errors import DomainError, InternalError
from .hirzebruch import branch_class, cohomology, tangent_cohomology


class BranchCase(str, Enum):
    BPF = "BPF"        # |B| base-point free
    SIGMA1 = "SIGMA1"  # B = sigma_inf + B'
    SIGMA2 = "SIGMA2"  # B = 2 sigma_inf + B'

    @property
    def vanishing_order(self) -> int:
        return {"BPF": 0, "SIGMA1": 1, "SIGMA2": 2}[self.value]


@dataclass(frozen=True)
class StratumDescriptor:
    k: int
    m: int
    a: int
    K2: int
    pg: int
    branch_case: BranchCase
    dim: int
    classical: bool
    pinch_points: Optional[int] = None


def a_of(k: int, m: int) -> int:
    return (k + 3 * m + 4) // 2


def check_exists(k: int, m: int) -> None:
    if k < 1:
        raise DomainError(f"stratum requires k >= 1, got k={k}")
    if m < 0:
        raise DomainError(f"stratum requires m >= 0, got m={m}")
    if (k - m) % 2:
        raise DomainError(f"stratum requires m ≡ k (mod 2), got k={k}, m={m}")
    if k <= m:
        raise DomainError(f"stratum requires k > m (equivalently a > 2m+2), got k={k}, m={m}")


def exists(k: int, m: int) -> bool:
    try:
        check_exists(k, m)
    except DomainError:
        return False
    return True


def branch_case(m: int, a: int) -> BranchCase:
    if 2 * a >= 6 * m:
        return BranchCase.BPF
    if 2 * a >= 5 * m:
        return BranchCase.SIGMA1
    if 2 * a > 4 * m + 4:
        return BranchCase.SIGMA2
    raise DomainError(f"branch case requires 2a > 4m+4, got m={m}, a={a}")


def is_classical(k: int, m: int) -> bool:
    return 2 * m <= k + 4


def dimension_formula(k: int, m: int) -> int:
    """The four-case dimension formula for the stratum of type (m)."""
    if m == 0:
        return 7 * k + 28
    if 3 * m <= k + 4:
        return 7 * k + 29 - m
    if 2 * m <= k + 4:
        return 6 * k + 2 * m + 24
    return 5 * k + 4 * m + 19


def dimension_from_cohomology(k: int, m: int) -> int:
    """dim |B| - dim Aut(F_m), using monomial counts rather than the formula."""
    a = a_of(k, m)
    s, g = 6, 2 * a
    h0_B = cox.graded_dim(cox.hirzebruch(m), cox.divisor_bidegree(m, s, g))
    return (h0_B - 1) - tangent_cohomology(m).h0


def stratum(k: int, m: int) -> StratumDescriptor:
    check_exists(k, m)
    a = a_of(k, m)
    K2 = 4 * a - 6 * m - 8
    pg = 2 * a - 3 * m - 2
    if K2 != 2 * k or K2 != 2 * pg - 4:
        raise InternalError(f"invariants inconsistent at k={k}, m={m}")
    case = branch_case(m, a)
    return StratumDescriptor(
        k=k, m=m, a=a, K2=K2, pg=pg, branch_case=case,
        dim=dimension_formula(k, m),
        classical=is_classical(k, m),
        pinch_points=2 * (a - 2 * m) if case is BranchCase.SIGMA2 else None,
    )


def strata_for(k: int) -> list[StratumDescriptor]:
    if k < 1:
        raise DomainError(f"requires k >= 1, got k={k}")
    return [stratum(k, m) for m in range(k % 2, k, 2)]


# --------------------------------------------------------------------------
# component structure


@dataclass(frozen=True)
class ComponentStructure:
    k: int
    classical_strata: tuple[int, ...]
    components: dict[str, tuple[int, ...]]
    component_dims: dict[str, int]
    trailing: tuple[int, ...]
    trailing_dims: tuple[int, ...]
    index_list_strata: tuple[int, ...] = field(default=())
    notes: tuple[str, ...] = field(default=())

    @property
    def two_components(self) -> bool:
        return "II" in self.components


def index_list_strata(k: int) -> tuple[int, ...]:
    """Classical types as listed by the d-indexed unions (before any existence filter)."""
    if k % 2:
        return tuple(2 * d + 1 for d in range((k + 2) // 4 + 1))
    if (2 * k) % 8:
        return tuple(2 * d for d in range((k + 4) // 4 + 1))
    return tuple(2 * d for d in range(k // 4 + 1)) + ((k + 4) // 2,)


def component_structure(k: int) -> ComponentStructure:
    if k == 4:
        raise DomainError("K^2 = 8 (k=4) is exceptional; use special_k8()")
    if k == 1:
        raise DomainError("K^2 = 2 (k=1) surfaces are double planes; requires k not in {1, 4}")
    if k < 1:
        raise DomainError(f"requires k >= 1, got k={k}")
    all_strata = strata_for(k)
    classical = tuple(s.m for s in all_strata if s.classical)
    trailing_strata = sorted((s for s in all_strata if not s.classical), key=lambda s: s.dim)
    trailing = tuple(s.m for s in trailing_strata)
    trailing_dims = tuple(s.dim for s in trailing_strata)
    base_dim = 7 * k + 28

    if any(b <= a for a, b in zip(trailing_dims, trailing_dims[1:])):
        raise InternalError(f"trailing dimensions not strictly increasing for k={k}")
    if k > 4 and any(d <= base_dim for d in trailing_dims):
        raise InternalError(f"trailing stratum not above 7k+28 for k={k}")
    if trailing != tuple(sorted(trailing)):
        raise InternalError("trailing order by dimension differs from order by type")

    by_m = {s.m: s for s in all_strata}
    if (2 * k) % 8 == 0:
        special = (k + 4) // 2
        comps = {"I": tuple(m for m in classical if m != special), "II": (special,)}
    else:
        comps = {"H": classical}
    comp_dims = {}
    for name, ms in comps.items():
        comp_dims[name] = max(by_m[m].dim for m in ms)
        if comp_dims[name] != base_dim:
            raise InternalError(f"component {name} of k={k} has dim {comp_dims[name]} != 7k+28")

    thm = index_list_strata(k)
    notes = []
    if tuple(m for m in thm if exists(k, m)) != classical:
        notes.append("d-indexed classical list disagrees with m <= (k+4)/2 after existence filter")
    if tuple(thm) != classical:
        notes.append(f"d-indexed list {list(thm)} contains types without stable surfaces: "
                     f"{[m for m in thm if not exists(k, m)]}")
    return ComponentStructure(k, classical, comps, comp_dims, trailing, trailing_dims, thm, tuple(notes))


# --------------------------------------------------------------------------
# K^2 = 8


@dataclass(frozen=True)
class SpecialK8:
    components: dict[str, tuple[str, ...]]
    dims: dict[str, int]
    component_dims: dict[str, int]
    checks: dict[str, int]


def _dim_type_infinity() -> int:
    # double planes branched in a smooth dectic
    return cox.p2_linear_system_dim(10) - 8


def _dim_type_4prime_via_f4() -> int:
    # smooth B in |6 sigma_inf + 20 Gamma| on F_4, i.e. a = 10, m = 4
    h0 = cohomology(branch_class(4, 10)).h0
    return (h0 - 1) - tangent_cohomology(4).h0


def _dim_type_4prime_via_wps() -> int:
    """dim |O(20)| - dim Aut P(1,1,4,10)."""
    P = cox.wps_1_1_4_10()
    lin = P.graded_dim(20) - 1
    # Aut: GL2 on (t0,t1), y0 -> c*y0 + q4(t), z -> c*z + h10(t, y0); minus the
    # one-dimensional weighted scaling acting trivially.
    p114 = cox.WeightedProjectiveSpace(("t0", "t1", "y0"), (1, 1, 4))
    aut = 4 + (1 + comb(4 + 1, 1)) + (1 + p114.graded_dim(10)) - 1
    return lin - aut


def special_k8() -> SpecialK8:
    d0 = stratum(4, 0).dim
    d2 = stratum(4, 2).dim
    dinf = _dim_type_infinity()
    d4p = _dim_type_4prime_via_f4()
    d4p_wps = _dim_type_4prime_via_wps()
    if d4p != d4p_wps:
        raise InternalError(f"type 4' dimension mismatch: F_4 count {d4p}, WPS count {d4p_wps}")
    dims = {"0": d0, "2": d2, "inf": dinf, "4'": d4p}
    comps = {"I": ("0", "2"), "II": ("inf", "4'")}
    return SpecialK8(
        components=comps,
        dims=dims,
        component_dims={c: max(dims[t] for t in ts) for c, ts in comps.items()},
        checks={"dim_4prime_via_F4": d4p, "dim_4prime_via_WPS": d4p_wps, "dim_D": d0 - 1},
    )
