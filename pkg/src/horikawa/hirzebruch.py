"""Divisors and line-bundle cohomology on the Hirzebruch surface F_m.

Classes are written ``s*sigma_inf + g*Gamma`` with sigma_inf the negative
section (self-intersection -m) and Gamma a fibre.  For s >= 0 the bundle
pushes forward to P^1 as the sum of O(g - i*m), i = 0..s, which gives h0
and h1 directly; s = -1 has no cohomology; s <= -2 goes through Serre
duality with K = -2 sigma_inf - (m+2) Gamma.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class DivisorClass:
    m: int
    s: int
    g: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _same_surface(self, other)
        return DivisorClass(self.m, self.s + other.s, self.g + other.g)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _same_surface(self, other)
        return DivisorClass(self.m, self.s - other.s, self.g - other.g)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.m, -self.s, -self.g)

    def __mul__(self, c: int) -> "DivisorClass":
        return DivisorClass(self.m, c * self.s, c * self.g)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.s}*sigma_inf + {self.g}*Gamma on F_{self.m}"


@dataclass(frozen=True)
class CohTriple:
    h0: int
    h1: int
    h2: int

    @property
    def euler(self) -> int:
        return self.h0 - self.h1 + self.h2


def _same_surface(a: DivisorClass, b: DivisorClass) -> None:
    if a.m != b.m:
        raise DomainError(f"classes live on different surfaces F_{a.m} and F_{b.m}")


def sigma_inf(m: int) -> DivisorClass:
    return DivisorClass(m, 1, 0)


def sigma_zero(m: int) -> DivisorClass:
    return DivisorClass(m, 1, m)


def fibre(m: int) -> DivisorClass:
    return DivisorClass(m, 0, 1)


def canonical(m: int) -> DivisorClass:
    return DivisorClass(m, -2, -(m + 2))


def branch_class(m: int, a: int) -> DivisorClass:
    """|B| = |6 sigma_inf + 2a Gamma|."""
    return DivisorClass(m, 6, 2 * a)


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    _same_surface(d1, d2)
    return -d1.m * d1.s * d2.s + d1.s * d2.g + d2.s * d1.g


def riemann_roch(d: DivisorClass) -> int:
    """chi(O(D)) = 1 + D.(D - K)/2."""
    num = intersect(d, d - canonical(d.m))
    return 1 + num // 2


def h0_p1(n: int) -> int:
    return max(0, n + 1)


def h1_p1(n: int) -> int:
    return max(0, -n - 1)


def _h0_h1(d: DivisorClass) -> tuple[int, int]:
    if d.s < 0:
        if d.s == -1:
            return 0, 0
        dual = cohomology(canonical(d.m) - d)
        return 0, dual.h1
    h0 = sum(h0_p1(d.g - i * d.m) for i in range(d.s + 1))
    h1 = sum(h1_p1(d.g - i * d.m) for i in range(d.s + 1))
    return h0, h1


def cohomology(d: DivisorClass) -> CohTriple:
    if d.m < 0:
        raise DomainError(f"F_m requires m >= 0, got m={d.m}")
    h0, h1 = _h0_h1(d)
    dual = canonical(d.m) - d
    h2 = _h0_h1(dual)[0] if dual.s >= 0 else 0
    return CohTriple(h0, h1, h2)


def tangent_cohomology(m: int) -> CohTriple:
    """Cohomology of T_{F_m} from 0 -> O(2 sigma_inf + m Gamma) -> T -> O(2 Gamma) -> 0.

    The connecting map H^0(O(2 Gamma)) -> H^1(O(2 sigma_inf + m Gamma)) is taken
    to vanish; the Cech computation in :mod:`horikawa.cech` checks h1
    independently.
    """
    if m < 0:
        raise DomainError(f"F_m requires m >= 0, got m={m}")
    rel = cohomology(DivisorClass(m, 2, m))
    base = cohomology(DivisorClass(m, 0, 2))
    return CohTriple(rel.h0 + base.h0, rel.h1 + base.h1, rel.h2 + base.h2)


def def_preserves_map_vanishings(m: int, a: int) -> dict[str, int]:
    """The dimensions that must vanish for Def_f -> Def_X to be an isomorphism."""
    d1 = DivisorClass(m, -1, m - a)
    d3 = DivisorClass(m, -3, 2 - a)
    c1, c3 = cohomology(d1), cohomology(d3)
    return {
        "h0(-sigma_inf+(m-a)Gamma)": c1.h0,
        "h1(-sigma_inf+(m-a)Gamma)": c1.h1,
        "h0(-3sigma_inf+(2-a)Gamma)": c3.h0,
        "h1(-3sigma_inf+(2-a)Gamma)": c3.h1,
        "h2(T)": tangent_cohomology(m).h2,
    }


def def_preserves_map_check(m: int, a: int) -> bool:
    if a <= 2 * m + 2:
        raise DomainError(f"def_preserves_map_check requires a > 2m+2, got m={m}, a={a}")
    return all(v == 0 for v in def_preserves_map_vanishings(m, a).values())


def h1_branch_piecewise(m: int, a: int) -> int:
    """h^1(O(6 sigma_inf + 2a Gamma)) as the three-case formula valid for 2a > 4m+4."""
    if 2 * a >= 6 * m - 1:
        return 0
    if 2 * a >= 5 * m - 1:
        return 6 * m - 2 * a - 1
    return 11 * m - 4 * a - 2


def h0_branch_piecewise(m: int, a: int) -> int:
    """h^0(O(6 sigma_inf + 2a Gamma)) as the three-case formula valid for 2a > 4m+4."""
    if 2 * a >= 6 * m:
        return 14 * a - 21 * m + 7
    if 2 * a >= 5 * m:
        return 12 * a - 15 * m + 6
    return 10 * a - 10 * m + 5
