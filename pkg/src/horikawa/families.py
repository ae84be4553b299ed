"""Toric degenerations lambda*y0 = p1*x0 - p0*x1 inside a fourfold.

For lambda != 0 the relation eliminates y0 and leaves a threefold T_{m,k};
at lambda = 0 the substitution x0 = p0*y1, x1 = p1*y1 replaces x0, x1 by a
single new variable y1 and leaves T_{m+2,k}.  Everything here is checked
against :mod:`horikawa.cox` rather than copied from it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from . import cox
from .cox import Bidegree, WeightMatrix
from .errors import DomainError, InternalError
from .exactalg import BinaryForm, SparseEchelon, find_gl2z_transform, form_gcd, to_fraction
from .multmap import PencilPair, random_form, random_pencil
from .strata import exists


class FamilyKind(str, Enum):
    EVEN = "EVEN"
    ODD = "ODD"
    SMOOTHING = "SMOOTHING"
    K8 = "K8"


def pencil_degrees(kind: FamilyKind, d: int = 0, n: int = 0) -> tuple[int, int]:
    """(deg p0, deg p1) forced by homogeneity of lambda*y0 = p1*x0 - p0*x1."""
    if kind is FamilyKind.EVEN:
        return 2 * d + 1, 1
    if kind is FamilyKind.ODD:
        return 2 * d, 1
    if kind is FamilyKind.SMOOTHING:
        return n // 2 + 1, n // 2 + 1
    return 2, 2


def _partials(f: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    d = f.degree
    if d == 0:
        return BinaryForm.zero(0), BinaryForm.zero(0)
    dt0 = BinaryForm(d - 1, tuple(j * f.coeffs[j] for j in range(1, d + 1)))
    dt1 = BinaryForm(d - 1, tuple((d - j) * f.coeffs[j] for j in range(d)))
    return dt0, dt1


def squarefree(f: BinaryForm) -> bool:
    """No repeated linear factor (Euler: a double root is a common zero of both partials)."""
    if f.is_zero():
        return False
    if f.degree <= 1:
        return True
    a, b = _partials(f)
    if a.is_zero() or b.is_zero():
        # f = c*t0^d or c*t1^d
        return False
    return form_gcd(a, b).degree == 0


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: FamilyKind
    ambient: WeightMatrix
    pencil: PencilPair
    d: int = 0
    n: int = 0
    warnings: tuple[str, ...] = field(default=())

    @property
    def k(self) -> int:
        """Half of K^2 for the surfaces in every fibre."""
        if self.kind is FamilyKind.EVEN:
            return 2 * self.n
        if self.kind is FamilyKind.ODD:
            return 2 * self.n - 1
        if self.kind is FamilyKind.SMOOTHING:
            return 2 * self.n
        return 4

    def general_type(self) -> Optional[int]:
        return {FamilyKind.EVEN: 2 * self.d, FamilyKind.ODD: 2 * self.d - 1,
                FamilyKind.SMOOTHING: 0, FamilyKind.K8: 0}[self.kind]

    def central_type(self) -> Optional[int]:
        return {FamilyKind.EVEN: 2 * self.d + 2, FamilyKind.ODD: 2 * self.d + 1,
                FamilyKind.SMOOTHING: self.n + 2, FamilyKind.K8: None}[self.kind]

    def surface_bidegree(self) -> Bidegree:
        if self.kind is FamilyKind.K8:
            return (20, 6)
        return cox.surface_bidegree(self.k)


def family(kind: str | FamilyKind, d: int = 0, n: int = 0, pencil: Optional[PencilPair] = None,
           seed: int = 0) -> FamilyDescriptor:
    """Build a family; without ``pencil`` a seeded coprime pencil of the right degrees is drawn."""
    kind = FamilyKind(kind.upper() if isinstance(kind, str) else kind)
    if kind is FamilyKind.EVEN:
        ambient = cox.fourfold_even(d, n)
    elif kind is FamilyKind.ODD:
        ambient = cox.fourfold_odd(d, n)
    elif kind is FamilyKind.SMOOTHING:
        ambient = cox.fourfold_smoothing(n)
    else:
        ambient = cox.fourfold_k8()
    d0, d1 = pencil_degrees(kind, d, n)
    if pencil is None:
        rng = random.Random(seed)
        while True:
            p0, p1, _ = random_pencil(rng, d0, d1)
            if kind is not FamilyKind.K8 or squarefree(p0 * p1):
                break
        pencil = PencilPair(p0, p1)
    if pencil.degrees != (d0, d1):
        raise DomainError(f"{kind.value} family requires (deg p0, deg p1) = {(d0, d1)}, got {pencil.degrees}")
    if kind is FamilyKind.K8 and not squarefree(pencil.p0 * pencil.p1):
        raise DomainError("K8 family requires p0*p1 without multiple zeros")
    F = FamilyDescriptor(kind, ambient, pencil, d, n)
    warns = []
    for label, m in (("general", F.general_type()), ("central", F.central_type())):
        if m is not None and kind is not FamilyKind.K8 and not exists(F.k, m):
            warns.append(f"{label} fibre type m={m} has no stable surfaces at k={F.k} (requires k > m)")
    if warns:
        F = FamilyDescriptor(kind, ambient, pencil, d, n, tuple(warns))
    return F


# --------------------------------------------------------------------------
# weight-matrix elimination


def general_fiber(F: FamilyDescriptor) -> WeightMatrix:
    return F.ambient.delete(["y0"], label="general")


def catalogue_general(F: FamilyDescriptor) -> WeightMatrix:
    if F.kind is FamilyKind.EVEN:
        return cox.threefold(2 * F.d, 2 * F.n)
    if F.kind is FamilyKind.ODD:
        return cox.threefold(2 * F.d - 1, 2 * F.n - 1)
    return cox.threefold(0, 2 * F.n if F.kind is FamilyKind.SMOOTHING else 4)


def catalogue_central(F: FamilyDescriptor) -> WeightMatrix:
    if F.kind is FamilyKind.EVEN:
        return cox.threefold(2 * F.d + 2, 2 * F.n)
    if F.kind is FamilyKind.ODD:
        return cox.threefold(2 * F.d + 1, 2 * F.n - 1)
    if F.kind is FamilyKind.SMOOTHING:
        return cox.threefold(F.n + 2, 2 * F.n)
    return cox.central_k8()


@dataclass(frozen=True)
class Substitution:
    """x0 -> p0*y1, x1 -> p1*y1; every other variable keeps its name."""

    p0: BinaryForm
    p1: BinaryForm
    y1_degree: Bidegree


def central_fiber(F: FamilyDescriptor) -> tuple[WeightMatrix, Substitution]:
    A = F.ambient
    p0, p1 = F.pencil.p0, F.pencil.p1
    x0, x1 = A.degree_of("x0"), A.degree_of("x1")
    y1a = (x0[0] - p0.degree, x0[1])
    y1b = (x1[0] - p1.degree, x1[1])
    if y1a != y1b:
        raise DomainError(f"pencil degrees inconsistent: deg x0 - deg p0 = {y1a} but deg x1 - deg p1 = {y1b}")
    names, degrees = [], []
    for nm, dg in zip(A.names, A.degrees):
        if nm == "x0":
            names.append("y1")
            degrees.append(y1a)
        elif nm != "x1":
            names.append(nm)
            degrees.append(dg)
    W = WeightMatrix(tuple(names), tuple(degrees), label="central")
    return W, Substitution(p0, p1, y1a)


def check_fibres(F: FamilyDescriptor) -> dict[str, bool]:
    """Compare both fibres with the catalogue, verbatim or up to GL2(Z)."""
    gen, cen = general_fiber(F), central_fiber(F)[0]
    cg, cc = catalogue_general(F), catalogue_central(F)
    out = {
        "general_verbatim": gen.same_grading(cg),
        "central_verbatim": cen.same_grading(cc),
        "general_gl2z": find_gl2z_transform(gen.int_matrix(), cg.int_matrix()) is not None,
        "central_gl2z": find_gl2z_transform(cen.int_matrix(), cc.int_matrix()) is not None,
    }
    return out


# --------------------------------------------------------------------------
# polynomials


Exps = tuple[int, ...]


@dataclass
class ToricPoly:
    """Sparse polynomial in the Cox ring of ``ambient``; keys are exponent tuples."""

    ambient: WeightMatrix
    terms: dict[Exps, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.ambient.nvars or any(x < 0 for x in e):
                raise DomainError(f"bad exponent vector {e} for {self.ambient.names}")
            c = to_fraction(c)
            if c != 0:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def var(cls, W: WeightMatrix, name: str) -> "ToricPoly":
        e = [0] * W.nvars
        e[W.index(name)] = 1
        return cls(W, {tuple(e): 1})

    @classmethod
    def const(cls, W: WeightMatrix, c=1) -> "ToricPoly":
        return cls(W, {(0,) * W.nvars: c})

    @classmethod
    def from_form(cls, W: WeightMatrix, f: BinaryForm) -> "ToricPoly":
        t0, t1 = W.base
        out = {}
        for j, c in enumerate(f.coeffs):
            e = [0] * W.nvars
            e[t0], e[t1] = j, f.degree - j
            out[tuple(e)] = c
        return cls(W, out)

    def _same(self, other: "ToricPoly") -> None:
        if other.ambient.names != self.ambient.names or other.ambient.degrees != self.ambient.degrees:
            raise DomainError("polynomials live in different Cox rings")

    def __add__(self, other: "ToricPoly") -> "ToricPoly":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ToricPoly(self.ambient, out)

    def __neg__(self) -> "ToricPoly":
        return ToricPoly(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "ToricPoly") -> "ToricPoly":
        return self + (-other)

    def __mul__(self, other) -> "ToricPoly":
        if not isinstance(other, ToricPoly):
            c = to_fraction(other)
            return ToricPoly(self.ambient, {e: c * x for e, x in self.terms.items()})
        self._same(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ToricPoly(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ToricPoly":
        out = ToricPoly.const(self.ambient)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, ToricPoly) and self.ambient.degrees == other.ambient.degrees
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[Bidegree]:
        return {self.ambient.monomial_degree(e) for e in self.terms}

    def bidegree(self) -> Optional[Bidegree]:
        degs = self.bidegrees()
        if len(degs) > 1:
            raise DomainError(f"polynomial is not homogeneous: bidegrees {sorted(degs)}")
        return next(iter(degs)) if degs else None

    def fibre_coefficients(self) -> dict[Exps, BinaryForm]:
        """Group terms by fibre exponents; values are the binary-form coefficients."""
        t0, t1 = self.ambient.base
        fib = self.ambient.fibre
        groups: dict[Exps, dict[int, Fraction]] = {}
        degs: dict[Exps, int] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in fib)
            groups.setdefault(key, {})[e[t0]] = c
            degs[key] = e[t0] + e[t1]
        return {k: BinaryForm(degs[k], tuple(v.get(j, 0) for j in range(degs[k] + 1)))
                for k, v in groups.items()}

    def valuation(self, name: str) -> Optional[int]:
        i = self.ambient.index(name)
        return min((e[i] for e in self.terms), default=None)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            parts.append(f"({self.terms[e]})*{cox.format_monomial(self.ambient, e)}")
        return " + ".join(parts)


class _PowerTable:
    """Memoized p0^b * p1^c for one pencil."""

    def __init__(self, p0: BinaryForm, p1: BinaryForm):
        self.p0, self.p1 = p0, p1
        self._pow0 = [BinaryForm.constant(1)]
        self._pow1 = [BinaryForm.constant(1)]
        self._prod: dict[tuple[int, int], BinaryForm] = {}

    def _power(self, table: list, base: BinaryForm, k: int) -> BinaryForm:
        while len(table) <= k:
            table.append(table[-1] * base)
        return table[k]

    def __call__(self, b: int, c: int) -> BinaryForm:
        f = self._prod.get((b, c))
        if f is None:
            f = self._power(self._pow0, self.p0, b) * self._power(self._pow1, self.p1, c)
            self._prod[(b, c)] = f
        return f


def specialize(F: FamilyDescriptor, f: ToricPoly, _powers: Optional[_PowerTable] = None) -> ToricPoly:
    """Apply x0 -> p0*y1, x1 -> p1*y1 and expand on the central fibre."""
    A = F.ambient
    if f.ambient.degrees != A.degrees:
        raise DomainError("polynomial does not live on the family's ambient fourfold")
    W, sub = central_fiber(F)
    powers = _powers or _PowerTable(sub.p0, sub.p1)
    src = f.bidegree()
    ix0, ix1 = A.index("x0"), A.index("x1")
    it0, it1 = W.base
    iy1 = W.index("y1")
    carry = [(A.index(nm), W.index(nm)) for nm in W.names if nm != "y1"]
    out: dict[Exps, Fraction] = {}
    for e, c in f.terms.items():
        b, cc = e[ix0], e[ix1]
        form = powers(b, cc)
        base = [0] * W.nvars
        for ia, iw in carry:
            base[iw] = e[ia]
        base[iy1] = b + cc
        for j, x in enumerate(form.coeffs):
            if x == 0:
                continue
            ne = list(base)
            ne[it0] += j
            ne[it1] += form.degree - j
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c * x
    g = ToricPoly(W, out)
    if src is not None and not g.is_zero() and g.bidegree() != src:
        raise InternalError(f"specialization moved bidegree {src} to {g.bidegree()}")
    return g


# --------------------------------------------------------------------------
# spans of specialized linear systems


@dataclass
class SpanReport:
    degree: Bidegree
    target_dim: int
    span_dim: int
    missed: list[Exps]
    blocks: dict[Exps, tuple[int, int]]   # fibre exponents -> (target dim, span dim)
    central: WeightMatrix

    @property
    def cokernel_dim(self) -> int:
        return self.target_dim - self.span_dim

    def missed_str(self) -> list[str]:
        return [cox.format_monomial(self.central, e) for e in self.missed]


def _span_blocks(F: FamilyDescriptor, deg: Bidegree,
                 source_filter: Optional[Callable[[Exps], bool]] = None):
    W, _ = central_fiber(F)
    t0 = W.base[0]
    fib = W.fibre
    ech: dict[Exps, SparseEchelon] = {}
    powers = _PowerTable(F.pencil.p0, F.pencil.p1)
    for e in cox.enumerate_monomials(F.ambient, deg, source_filter):
        g = specialize(F, ToricPoly(F.ambient, {e: 1}), powers)
        vecs: dict[Exps, dict[int, Fraction]] = {}
        for ge, c in g.terms.items():
            vecs.setdefault(tuple(ge[i] for i in fib), {})[ge[t0]] = c
        for key, v in vecs.items():
            ech.setdefault(key, SparseEchelon()).add(v)
    return W, ech


def specialization_span(F: FamilyDescriptor, deg: Bidegree,
                        source_filter: Optional[Callable[[Exps], bool]] = None,
                        target_filter: Optional[Callable[[Exps], bool]] = None) -> SpanReport:
    """Dimension of the specialized ambient linear system inside the central graded piece.

    ``missed`` is a monomial basis of the cokernel.
    """
    W, ech = _span_blocks(F, deg, source_filter)
    t0, fib = W.base[0], W.fibre
    targets = cox.enumerate_monomials(W, deg, target_filter)
    blocks: dict[Exps, list[Exps]] = {}
    for e in targets:
        blocks.setdefault(tuple(e[i] for i in fib), []).append(e)
    missed, block_dims, span = [], {}, 0
    for key, mons in sorted(blocks.items()):
        E = ech.get(key, SparseEchelon())
        before = len(E)
        probe = E.copy()
        for e in sorted(mons, key=lambda x: x[t0]):
            if probe.add({e[t0]: 1}):
                missed.append(e)
        got = len(mons) - (len(probe) - before)
        block_dims[key] = (len(mons), got)
        span += got
    return SpanReport(deg, len(targets), span, missed, block_dims, W)


def y_stratum_filters(F: FamilyDescriptor, i: int) -> tuple[Callable[[Exps], bool], Callable[[Exps], bool]]:
    """Source/target filters for y0^(6-i) Sym^i<x0,x1> R  ->  y0^(6-i) y1^i R."""
    A = F.ambient
    W, _ = central_fiber(F)
    ay0, az = A.index("y0"), A.index("z")
    wy0, wy1 = W.index("y0"), W.index("y1")
    return (lambda e: e[ay0] == 6 - i and e[az] == 0,
            lambda e: e[wy0] == 6 - i and e[wy1] == i)


# --------------------------------------------------------------------------
# the explicit limits


def _random_poly_form(rng: random.Random, degree: int) -> BinaryForm:
    while True:
        f = random_form(rng, degree)
        if not f.is_zero():
            return f


@dataclass(frozen=True)
class LimitCheck:
    identity_holds: bool
    y1_valuation: int
    content_degree: int
    expected_content_degree: int
    specialized: str

    @property
    def ok(self) -> bool:
        return (self.identity_holds and self.y1_valuation == 2
                and self.content_degree == self.expected_content_degree)


def product_limit_check(F: FamilyDescriptor, seed: int = 0) -> LimitCheck:
    """f = g x1^2 prod(y0 + a_i x0 + b_i x1) specializes to g p1^2 y1^2 prod(y0 + (a_i p0 + b_i p1) y1)."""
    if F.kind not in (FamilyKind.EVEN, FamilyKind.ODD):
        raise DomainError(f"product-form limit is defined for EVEN/ODD families, got {F.kind.value}")
    rng = random.Random(seed)
    A = F.ambient
    W, _ = central_fiber(F)
    p0, p1 = F.pencil.p0, F.pencil.p1
    gdeg = 2 * F.n - 2 * F.d
    if gdeg < 0:
        raise DomainError(f"product form requires 2n-2d >= 0, got d={F.d}, n={F.n}")
    g = _random_poly_form(rng, gdeg)
    ab = [(_random_poly_form(rng, p1.degree), _random_poly_form(rng, p0.degree)) for _ in range(4)]
    y0, x0, x1 = (ToricPoly.var(A, v) for v in ("y0", "x0", "x1"))
    f = ToricPoly.from_form(A, g) * x1 ** 2
    for a, b in ab:
        f = f * (y0 + ToricPoly.from_form(A, a) * x0 + ToricPoly.from_form(A, b) * x1)
    if f.bidegree() != F.surface_bidegree():
        raise InternalError(f"product form has bidegree {f.bidegree()}, expected {F.surface_bidegree()}")
    lhs = specialize(F, f)
    cy0, cy1 = ToricPoly.var(W, "y0"), ToricPoly.var(W, "y1")
    rhs = ToricPoly.from_form(W, g * p1 * p1) * cy1 ** 2
    for a, b in ab:
        rhs = rhs * (cy0 + ToricPoly.from_form(W, a * p0 + b * p1) * cy1)
    content = None
    for form in lhs.fibre_coefficients().values():
        content = form if content is None else form_gcd(content, form)
    return LimitCheck(lhs == rhs, lhs.valuation("y1"), content.degree, gdeg + 2, str(lhs))


def k8_limit_check(F: FamilyDescriptor) -> bool:
    """z^2 + x0 x1 y0^4 specializes to z^2 + p0 p1 y0^4 y1^2."""
    if F.kind is not FamilyKind.K8:
        raise DomainError(f"requires the K8 family, got {F.kind.value}")
    A = F.ambient
    W, _ = central_fiber(F)
    f = ToricPoly.var(A, "z") ** 2 + ToricPoly.var(A, "x0") * ToricPoly.var(A, "x1") * ToricPoly.var(A, "y0") ** 4
    rhs = (ToricPoly.var(W, "z") ** 2
           + ToricPoly.from_form(W, F.pencil.p0 * F.pencil.p1) * ToricPoly.var(W, "y0") ** 4 * ToricPoly.var(W, "y1") ** 2)
    return specialize(F, f) == rhs


def divisor_equation(W: WeightMatrix, n: int, g: BinaryForm, rng: random.Random) -> ToricPoly:
    """z^2 - y1^2 (y0^4 g + sum_{i>=3} y0^(6-i) y1^(i-2) h_i) with seeded h_i."""
    e = n // 2 + 1
    y0, y1 = ToricPoly.var(W, "y0"), ToricPoly.var(W, "y1")
    inner = ToricPoly.from_form(W, g) * y0 ** 4
    for i in range(3, 7):
        inner = inner + ToricPoly.from_form(W, _random_poly_form(rng, (2 * i - 2) * e)) * y0 ** (6 - i) * y1 ** (i - 2)
    return ToricPoly.var(W, "z") ** 2 - y1 ** 2 * inner


def in_span(F: FamilyDescriptor, h: ToricPoly) -> bool:
    deg = h.bidegree()
    W, _ = central_fiber(F)
    t0, fib = W.base[0], W.fibre
    vecs: dict[Exps, dict[int, Fraction]] = {}
    for e, c in h.terms.items():
        vecs.setdefault(tuple(e[i] for i in fib), {})[e[t0]] = c
    # a source monomial lands in the block (y0, y1, z) = (y0, x0 + x1, z)
    A = F.ambient
    iy0, ix0, ix1, iz = (A.index(v) for v in ("y0", "x0", "x1", "z"))
    wy0, wy1, wz = (fib.index(W.index(v)) for v in ("y0", "y1", "z"))
    wanted = {(k[wy0], k[wy1], k[wz]) for k in vecs}
    _, ech = _span_blocks(F, deg, lambda e: (e[iy0], e[ix0] + e[ix1], e[iz]) in wanted)
    return all(key in ech and ech[key].contains(v) for key, v in vecs.items())


def example34_membership(n: int, pencil: Optional[PencilPair] = None, seed: int = 0,
                         g: Optional[BinaryForm] = None) -> bool:
    """Is the divisor-D equation with g = p0*p1 a limit of the smoothing family?

    Passing ``g`` replaces p0*p1 (used as a negative control).
    """
    if n < 2 or n % 2:
        raise DomainError(f"requires n even and n >= 2, got n={n}")
    F = family(FamilyKind.SMOOTHING, n=n, pencil=pencil, seed=seed)
    W, _ = central_fiber(F)
    if g is None:
        g = F.pencil.p0 * F.pencil.p1
    if g.degree != n + 2:
        raise DomainError(f"g must have degree n+2 = {n + 2}, got {g.degree}")
    h = divisor_equation(W, n, g, random.Random(seed + 1))
    if h.bidegree() != F.surface_bidegree():
        raise InternalError("divisor equation has the wrong bidegree")
    return in_span(F, h)


# --------------------------------------------------------------------------
# K^2 = 8 projection


def k8_projection_check() -> dict[str, int]:
    """Central K8 fibre -> P(1,1,4,10): degree (20,6) maps to 20, monomial counts agree."""
    W = cox.central_k8()
    P = cox.project_to_wps(W, "y1")
    return {"central_graded_dim": cox.graded_dim(W, (20, 6)), "wps_graded_dim": P.graded_dim(20)}
