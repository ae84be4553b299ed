"""Cech H^1 on F_m for the cover {V, V'} and the matrix of alpha: H^1(T_W) -> H^1(O_B(B)).

Coordinates on V_0 are tau = t0/t1 and xi = x1*t1^m/x0; on V'_0 they are
tau' = 1/tau and xi' = xi*tau^m.  Sections over V cap V' are Laurent
polynomials in tau, so every group below is a quotient of R = Q[tau, 1/tau]
by a sum of half-infinite exponent ranges.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError, InternalError
from .exactalg import BinaryForm, RatMatrix, SparseEchelon
from .hirzebruch import branch_class, cohomology, h1_branch_piecewise


def g_degree(m: int, a: int, i: int) -> int:
    """deg g_i = 2a - (6-i)m: the xi^i coefficient of the branch equation."""
    return 2 * a - (6 - i) * m


def _check_range(m: int, a: int) -> None:
    if m < 0:
        raise DomainError(f"requires m >= 0, got m={m}")
    if 2 * a <= 4 * m + 4:
        raise DomainError(f"requires 2a > 4m+4, got m={m}, a={a}")


@dataclass(frozen=True)
class BranchEquation:
    """sigma_B^0 = g_0 + g_1 xi + ... + g_6 xi^6 on V_0.

    ``g[i]`` is None when g_i vanishes identically (forced when its degree is
    negative).  A nonzero g_i must have a nonzero constant term in tau so that
    all its zeros are visible on V cap V'.
    """

    m: int
    a: int
    g: tuple[Optional[BinaryForm], ...]

    def __post_init__(self):
        _check_range(self.m, self.a)
        if len(self.g) != 7:
            raise DomainError(f"branch equation needs g_0..g_6, got {len(self.g)} coefficients")
        norm = []
        for i, gi in enumerate(self.g):
            d = g_degree(self.m, self.a, i)
            if gi is None or gi.is_zero():
                norm.append(None)
                continue
            if d < 0:
                raise DomainError(f"g_{i} must vanish: deg g_{i} = 2a-(6-i)m = {d} < 0")
            if gi.degree != d:
                raise DomainError(f"deg g_{i} must be 2a-(6-i)m = {d}, got {gi.degree}")
            if gi.coeffs[0] == 0:
                raise DomainError(f"nonzero g_{i} requires a nonzero constant term in tau")
            norm.append(gi)
        if all(x is None for x in norm):
            raise DomainError("branch equation is identically zero")
        object.__setattr__(self, "g", tuple(norm))

    @property
    def vanishing_order(self) -> int:
        """Largest k with k*sigma_inf contained in B."""
        return next(i for i, gi in enumerate(self.g) if gi is not None)


@dataclass(frozen=True)
class H1Model:
    """H^1(O_W(B)) = (1/sigma_B^0)(window0 + xi*window1), windows given by exponents."""

    m: int
    a: int
    window0: tuple[int, ...]
    window1: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.window0) + len(self.window1)

    def basis(self) -> list[tuple[int, int]]:
        """(xi-power, tau-exponent) pairs in row order."""
        return [(0, e) for e in self.window0] + [(1, e) for e in self.window1]


def h1_linebundle_model(m: int, a: int) -> H1Model:
    _check_range(m, a)
    w0 = tuple(range(2 * a - 6 * m + 1, 0))
    w1 = tuple(range(2 * a - 5 * m + 1, 0))
    model = H1Model(m, a, w0, w1)
    if model.dim != cohomology(branch_class(m, a)).h1 or model.dim != h1_branch_piecewise(m, a):
        raise InternalError(f"Cech model of H^1(O(B)) disagrees with line-bundle count at m={m}, a={a}")
    return model


# --------------------------------------------------------------------------
# tangent sheaf

# Frame of T over V cap V': d/dtau, d/dxi, xi d/dxi, xi^2 d/dxi.
DTAU, DXI, XIDXI, XI2DXI = range(4)
FRAME_NAMES = ("d/dtau", "d/dxi", "xi*d/dxi", "xi^2*d/dxi")


def _chart_generators(m: int) -> tuple[list[dict], list[dict]]:
    """Generators of Gamma(V, T) over Q[tau] and of Gamma(V', T) over Q[1/tau].

    Each generator is a sparse vector {(frame, exponent): coeff}.
    """
    on_v = [{(c, 0): 1} for c in range(4)]
    on_vp = [
        {(DTAU, 2): -1, (XIDXI, 1): m},   # d/dtau'
        {(DXI, -m): 1},                   # d/dxi'
        {(XIDXI, 0): 1},                  # xi' d/dxi'
        {(XI2DXI, m): 1},                 # xi'^2 d/dxi'
    ]
    return on_v, on_vp


def _shift(vec: dict, j: int) -> dict:
    return {(c, e + j): x for (c, e), x in vec.items()}


def tangent_h1_basis(m: int, margin: int = 10) -> list[int]:
    """Exponents i such that tau^i d/dxi form a basis of H^1(F_m, T).

    Computed by honest linear algebra: the span of all chart sections whose
    support lies in a box of exponents is reduced, and classes are picked
    greedily from an inner window, preferring d/dxi at exponents -1, -2, ...
    """
    if m < 0:
        raise DomainError(f"requires m >= 0, got m={m}")
    if m == 0:
        return []
    inner = m + 3
    outer = 2 * m + margin
    on_v, on_vp = _chart_generators(m)
    ech = SparseEchelon()
    for j in range(-outer - m - 2, outer + m + 3):
        for gen, ok in ((on_v, j >= 0), (on_vp, j <= 0)):
            if not ok:
                continue
            for g in gen:
                v = _shift(g, j)
                if all(-outer <= e <= outer for (_, e) in v):
                    ech.add(v)
    candidates = [(DXI, -i) for i in range(1, inner + 1)]
    candidates += [(c, e) for c in range(4) for e in range(-inner, inner + 1) if (c, e) not in candidates]
    chosen = []
    for key in candidates:
        if ech.add({key: 1}):
            chosen.append(key)
    if any(c != DXI for c, _ in chosen):
        raise InternalError(f"tangent H^1 class outside the d/dxi frame for m={m}: {chosen}")
    return sorted((e for _, e in chosen), reverse=True)


# --------------------------------------------------------------------------
# alpha


def _window_projection(poly: Sequence, shift: int, window: Sequence[int]) -> list:
    """Coefficients of tau^shift * poly(tau) at the exponents of ``window``."""
    out = []
    for e in window:
        j = e - shift
        out.append(poly[j] if 0 <= j < len(poly) else 0)
    return out


def alpha_matrix(B: BranchEquation) -> RatMatrix:
    """Matrix of alpha in the bases tau^{-i} d/dxi (i = 1..m-1) and H1Model.basis()."""
    k = B.vanishing_order
    if k == 0:
        raise DomainError("alpha_matrix requires sigma_inf in B (vanishing order k in {1, 2}), got k=0")
    if k > 2:
        raise DomainError(f"alpha_matrix supports vanishing order k in {{1, 2}}, got k={k}")
    model = h1_linebundle_model(B.m, B.a)
    gk = B.g[k].coeffs
    scale = 2 if k == 2 else 1
    columns = []
    for i in range(1, B.m):
        col0 = [0] * len(model.window0)
        col1 = [0] * len(model.window1)
        proj = [scale * x for x in _window_projection(gk, -i, model.window0 if k == 1 else model.window1)]
        if k == 1:
            col0 = proj
        else:
            col1 = proj
        columns.append(col0 + col1)
    return RatMatrix.from_columns(columns, model.dim)


def generic_branch_equation(m: int, a: int, k: int, rng: random.Random, bound: int = 9) -> BranchEquation:
    """Seeded small-integer branch equation with g_0 = ... = g_{k-1} = 0."""
    _check_range(m, a)
    if k not in (0, 1, 2):
        raise DomainError(f"vanishing order must be in {{0, 1, 2}}, got k={k}")
    if g_degree(m, a, k) < 0:
        raise DomainError(f"vanishing order {k} requires deg g_{k} = 2a-(6-{k})m >= 0, got m={m}, a={a}")
    g: list[Optional[BinaryForm]] = [None] * 7
    for i in range(k, 7):
        d = g_degree(m, a, i)
        if d < 0:
            continue
        c = [rng.randint(-bound, bound) for _ in range(d + 1)]
        if c[0] == 0:
            c[0] = rng.choice((-1, 1)) * rng.randint(1, bound)
        g[i] = BinaryForm(d, tuple(c))
    return BranchEquation(m, a, tuple(g))


# --------------------------------------------------------------------------
# rank predictions and sweep


def predicted_alpha_rank(m: int, a: int, k: int) -> int:
    """Rank of alpha as predicted by the closed-form statements."""
    if k == 1:
        return max(0, 6 * m - 2 * a - 1)
    if k == 2:
        return 0 if 2 * a >= 5 * m else 5 * m - 2 * a - 1
    raise DomainError(f"vanishing order must be 1 or 2, got k={k}")


def boundary_warnings(m: int, a: int, k: int, exact_rank: int, target_dim: int) -> list[str]:
    """Closed-form statements whose boundary cases disagree with the exact rank."""
    out = []
    if k == 1:
        iso = exact_rank == m - 1 == target_dim
        if iso != (2 * a == 5 * m):
            out.append(f"(m,a)=({m},{a}): alpha isomorphism={iso} but the 'iff 2a = 5m' criterion says "
                       f"{2 * a == 5 * m} (degenerate source/target dims {m - 1}/{target_dim})")
    if k == 2:
        zero = exact_rank == 0
        if zero != (2 * a >= 5 * m):
            out.append(f"(m,a)=({m},{a}): alpha zero={zero} but 'zero iff 2a >= 5m' says {2 * a >= 5 * m}")
        surj = exact_rank == target_dim
        if surj != (2 * a > 6 * m):
            out.append(f"(m,a)=({m},{a}): alpha surjective={surj} but 'surjective iff 2a > 6m' says {2 * a > 6 * m}")
    return out


@dataclass(frozen=True)
class AlphaSweepEntry:
    m: int
    a: int
    k: int
    source_dim: int
    target_dim: int
    exact_rank: int
    predicted_rank: int
    warnings: tuple[str, ...]

    @property
    def matches(self) -> bool:
        return self.exact_rank == self.predicted_rank

    @property
    def on_boundary(self) -> bool:
        return 2 * self.a in (5 * self.m - 1, 5 * self.m, 6 * self.m)


@dataclass
class AlphaSweepReport:
    seed: int
    entries: list[AlphaSweepEntry] = field(default_factory=list)

    @property
    def mismatches(self) -> list[AlphaSweepEntry]:
        """Exact and predicted rank differ away from the documented boundary."""
        return [e for e in self.entries if not e.matches and not e.on_boundary]

    @property
    def warnings(self) -> list[str]:
        return [w for e in self.entries for w in e.warnings]


def alpha_rank(m: int, a: int, k: int, rng: random.Random, samples: int = 1) -> int:
    """Max exact rank over ``samples`` seeded generic branch equations."""
    best = 0
    for _ in range(samples):
        best = max(best, alpha_matrix(generic_branch_equation(m, a, k, rng)).rank())
    return best


def alpha_rank_sweep(triples, seed: int, samples: int = 1) -> AlphaSweepReport:
    rng = random.Random(seed)
    report = AlphaSweepReport(seed)
    for m, a, k in triples:
        r = alpha_rank(m, a, k, rng, samples)
        target = h1_linebundle_model(m, a).dim
        pred = predicted_alpha_rank(m, a, k)
        warns = boundary_warnings(m, a, k, r, target)
        if r != pred:
            warns.append(f"(m,a,k)=({m},{a},{k}): exact rank {r} differs from closed-form rank {pred}")
        report.entries.append(AlphaSweepEntry(m, a, k, max(0, m - 1), target, r, pred, tuple(warns)))
    return report


def sweep_triples(m_max: int, extra: int = 40) -> list[tuple[int, int, int]]:
    """All (m, a, k) with k in {1,2}, 1 <= m <= m_max, 4m+4 < 2a <= 8m+extra and deg g_k >= 0."""
    out = []
    for m in range(1, m_max + 1):
        for a in range(2 * m + 3, 4 * m + extra // 2 + 1):
            for k in (1, 2):
                if g_degree(m, a, k) >= 0:
                    out.append((m, a, k))
    return out
