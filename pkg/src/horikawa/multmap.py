"""Multiplication maps Sym^i V (x) R_{(i-2)e} -> R_{(2i-2)e} for a pencil V = <p0, p1>."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DomainError
from .exactalg import BinaryForm, RatMatrix, coprime, form_gcd


@dataclass(frozen=True)
class PencilPair:
    p0: BinaryForm
    p1: BinaryForm

    def __post_init__(self):
        check_pencil(self.p0, self.p1)

    @property
    def degrees(self) -> tuple[int, int]:
        return self.p0.degree, self.p1.degree

    @property
    def e(self) -> int:
        """Common degree; only defined when deg p0 = deg p1."""
        if self.p0.degree != self.p1.degree:
            raise DomainError(f"requires deg p0 = deg p1, got {self.p0.degree} and {self.p1.degree}")
        return self.p0.degree


def check_pencil(p0: BinaryForm, p1: BinaryForm) -> None:
    """Domain check shared by every pencil: both nonzero, independent, coprime."""
    if p0.is_zero() or p1.is_zero():
        raise DomainError("pencil requires p0 and p1 nonzero")
    g = form_gcd(p0, p1)
    if g.degree != 0:
        raise DomainError(f"pencil requires gcd(p0, p1) = 1, got gcd = {g}")
    if p0.degree == p1.degree and p0.degree == 0:
        raise DomainError("pencil requires p0, p1 linearly independent (constant forms are proportional)")


def mult_map(P: PencilPair, i: int) -> RatMatrix:
    """Matrix in bases {p0^a p1^(i-a)} (x) {t0^j t1^(.)} -> {t0^j t1^(.)}.

    Columns are ordered by a (outer), then j (inner), both ascending.
    """
    if i < 2:
        raise DomainError(f"mult_map requires i >= 2, got i={i}")
    e = P.e
    src_deg = (i - 2) * e
    rows = (2 * i - 2) * e + 1
    pow0 = [BinaryForm.constant(1)]
    pow1 = [BinaryForm.constant(1)]
    for _ in range(i):
        pow0.append(pow0[-1] * P.p0)
        pow1.append(pow1[-1] * P.p1)
    columns = []
    for a in range(i + 1):
        prod = pow0[a] * pow1[i - a]
        for j in range(src_deg + 1):
            col = [0] * rows
            for idx, c in enumerate(prod.coeffs):
                col[idx + j] = c
            columns.append(col)
    return RatMatrix.from_columns(columns, rows)


def cokernel_dim(P: PencilPair, i: int) -> int:
    M = mult_map(P, i)
    return M.rows - M.rank()


def random_form(rng: random.Random, degree: int, bound: int = 5) -> BinaryForm:
    return BinaryForm(degree, tuple(rng.randint(-bound, bound) for _ in range(degree + 1)))


def random_pencil(rng: random.Random, d0: int, d1: int | None = None, bound: int = 5) -> tuple[BinaryForm, BinaryForm, int]:
    """Seeded coprime pair of degrees (d0, d1); returns (p0, p1, rejections)."""
    d1 = d0 if d1 is None else d1
    rejected = 0
    while True:
        p0 = random_form(rng, d0, bound)
        p1 = random_form(rng, d1, bound)
        if not p0.is_zero() and not p1.is_zero() and coprime(p0, p1) and not (d0 == d1 == 0):
            return p0, p1, rejected
        rejected += 1


@dataclass(frozen=True)
class SweepEntry:
    trial: int
    i: int
    rows: int
    cols: int
    rank: int
    surjective: bool
    cokernel: int


@dataclass
class SweepReport:
    e: int
    i_values: tuple[int, ...]
    trials: int
    seed: int
    rejections: int = 0
    pencils: list[tuple[BinaryForm, BinaryForm]] = field(default_factory=list)
    entries: list[SweepEntry] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        """Trials where the map should be onto (i >= 3) but is not."""
        out = []
        for en in self.entries:
            if en.i >= 3 and not en.surjective:
                p0, p1 = self.pencils[en.trial]
                out.append({"trial": en.trial, "i": en.i, "rank": en.rank, "p0": p0, "p1": p1})
        return out

    def non_surjective(self, i: int) -> list[SweepEntry]:
        return [en for en in self.entries if en.i == i and not en.surjective]


def surjectivity_sweep(e: int, i_range, trials: int, seed: int) -> SweepReport:
    if trials < 1:
        raise DomainError(f"surjectivity_sweep requires trials >= 1, got {trials}")
    if e < 1:
        raise DomainError(f"surjectivity_sweep requires e >= 1, got e={e}")
    i_values = tuple(i_range)
    if any(i < 2 for i in i_values):
        raise DomainError("surjectivity_sweep requires every i >= 2")
    rng = random.Random(seed)
    report = SweepReport(e=e, i_values=i_values, trials=trials, seed=seed)
    for t in range(trials):
        p0, p1, rej = random_pencil(rng, e)
        report.rejections += rej
        report.pencils.append((p0, p1))
        P = PencilPair(p0, p1)
        for i in i_values:
            M = mult_map(P, i)
            r = M.rank()
            report.entries.append(SweepEntry(t, i, M.rows, M.cols, r, r == M.rows, M.rows - r))
    return report
