"""Bigraded Cox rings and monomial bases of their graded pieces.

Every toric variety used here has two base variables ``t0, t1`` of degree
(1, 0) and a group of fibre variables whose second degree is positive.  The
first entry of a bidegree is written ``d1`` ("deg_1"), the second ``d2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterator, Sequence

from .errors import DomainError
from .exactalg import IntMatrix2xN

Bidegree = tuple[int, int]


@dataclass(frozen=True)
class WeightMatrix:
    names: tuple[str, ...]
    degrees: tuple[Bidegree, ...]
    base: tuple[int, ...] = (0, 1)
    label: str = ""
    fibre: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise DomainError("one bidegree per variable")
        if len(set(self.names)) != len(self.names):
            raise DomainError("variable names must be distinct")
        degrees = tuple((int(a), int(b)) for a, b in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if len(self.base) != 2 or any(degrees[i] != (1, 0) for i in self.base):
            raise DomainError("the base group must be two variables of bidegree (1, 0)")
        fibre = tuple(i for i in range(len(degrees)) if i not in self.base)
        if any(degrees[i][1] <= 0 for i in fibre):
            raise DomainError("fibre variables need positive second degree")
        object.__setattr__(self, "fibre", fibre)
        if self.int_matrix().rational_rank() != 2:
            raise DomainError("grading matrix must have rank 2")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"no variable {name!r} in {self.names}") from None

    def degree_of(self, name: str) -> Bidegree:
        return self.degrees[self.index(name)]

    def int_matrix(self) -> IntMatrix2xN:
        return IntMatrix2xN.from_columns(self.degrees)

    def monomial_degree(self, exps: Sequence[int]) -> Bidegree:
        return (sum(e * d[0] for e, d in zip(exps, self.degrees)),
                sum(e * d[1] for e, d in zip(exps, self.degrees)))

    def same_grading(self, other: "WeightMatrix") -> bool:
        """Column-by-column equality of the degree matrices (names ignored)."""
        return self.degrees == other.degrees

    def delete(self, names: Sequence[str], label: str = "") -> "WeightMatrix":
        keep = [i for i in range(self.nvars) if self.names[i] not in set(names)]
        base_names = {self.names[i] for i in self.base}
        new_names = tuple(self.names[i] for i in keep)
        return WeightMatrix(
            new_names,
            tuple(self.degrees[i] for i in keep),
            tuple(new_names.index(n) for n in self.names if n in base_names),
            label,
        )

    def __str__(self) -> str:
        w = [max(len(n), len(str(d[0])), len(str(d[1]))) for n, d in zip(self.names, self.degrees)]
        lines = [
            "  ".join(n.rjust(k) for n, k in zip(self.names, w)),
            "  ".join(str(d[0]).rjust(k) for d, k in zip(self.degrees, w)),
            "  ".join(str(d[1]).rjust(k) for d, k in zip(self.degrees, w)),
        ]
        return "\n".join(lines)


@dataclass(frozen=True)
class WeightedProjectiveSpace:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def graded_dim(self, degree: int) -> int:
        return sum(1 for _ in _weighted_tuples(self.weights, degree))


# --------------------------------------------------------------------------
# catalogue


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def hirzebruch(m: int) -> WeightMatrix:
    """F_m in the presentation t0, t1: (1,0); x0: (0,1); x1: (-m,1).

    The negative section is {x1 = 0}.  A divisor class s*sigma_inf + g*Gamma
    has bidegree ``divisor_bidegree(m, s, g)``.
    """
    _require(m >= 0, f"hirzebruch(m) requires m >= 0, got m={m}")
    return WeightMatrix(("t0", "t1", "x0", "x1"), ((1, 0), (1, 0), (0, 1), (-m, 1)), label=f"F_{m}")


def divisor_bidegree(m: int, s: int, g: int) -> Bidegree:
    """sigma_inf -> (-m, 1), Gamma -> (1, 0) in :func:`hirzebruch` coordinates."""
    return (g - s * m, s)


def threefold(m: int, k: int) -> WeightMatrix:
    """T_{m,k}: a P(1,1,3)-bundle over P^1 carrying type-(m) surfaces with K^2 = 2k.

    Even m = 2d, k = 2n: x0 (d-n-2), x1 (-d-n-2), z (-2(n+2)).
    Odd m = 2d-1, k = 2n-1: x0 (d-n-1), x1 (-d-n), z (-2n).
    The matrices are well defined for every m >= 0 of the parity of k; whether
    stable surfaces of that type exist is decided in :mod:`horikawa.strata`.
    """
    _require(k >= 1, f"T(m,k) requires k >= 1, got k={k}")
    _require(m >= 0, f"T(m,k) requires m >= 0, got m={m}")
    _require((m - k) % 2 == 0, f"T(m,k) requires m ≡ k (mod 2), got m={m}, k={k}")
    if m % 2 == 0:
        d, n = m // 2, k // 2
        x0, x1, z = d - n - 2, -d - n - 2, -2 * (n + 2)
    else:
        d, n = (m + 1) // 2, (k + 1) // 2
        x0, x1, z = d - n - 1, -d - n, -2 * n
    return WeightMatrix(("t0", "t1", "x0", "x1", "z"),
                        ((1, 0), (1, 0), (x0, 1), (x1, 1), (z, 3)), label=f"T_{m},{k}")


def surface_bidegree(k: int) -> Bidegree:
    """Bidegree of the Horikawa hypersurface in T_{m,k} (independent of m)."""
    if k % 2 == 0:
        return (-4 * (k // 2 + 2), 6)
    return (-4 * ((k + 1) // 2), 6)


def fourfold_even(d: int, n: int) -> WeightMatrix:
    _require(n <= 2 * d, f"fourfold_even(d,n) requires n <= 2d, got d={d}, n={n}")
    _require(2 * d < 2 * n - 2, f"fourfold_even(d,n) requires 2d < 2n-2, got d={d}, n={n}")
    return WeightMatrix(("t0", "t1", "y0", "x0", "x1", "z"),
                        ((1, 0), (1, 0), (d - n - 1, 1), (d - n - 2, 1), (-d - n - 2, 1), (-2 * (n + 2), 3)),
                        label=f"T4_even({d},{n})")


def fourfold_odd(d: int, n: int) -> WeightMatrix:
    _require(d >= 1, f"fourfold_odd(d,n) requires d >= 1, got d={d}")
    _require(n + 1 <= 2 * d, f"fourfold_odd(d,n) requires n+1 <= 2d, got d={d}, n={n}")
    _require(2 * d < 2 * n + 2, f"fourfold_odd(d,n) requires 2d < 2n+2, got d={d}, n={n}")
    return WeightMatrix(("t0", "t1", "y0", "x0", "x1", "z"),
                        ((1, 0), (1, 0), (d - n, 1), (d - n - 1, 1), (-d - n, 1), (-2 * n, 3)),
                        label=f"T4_odd({d},{n})")


def fourfold_smoothing(n: int) -> WeightMatrix:
    """The fourfold joining T_{0,2n} (lambda != 0) to T_{n+2,2n} (lambda = 0)."""
    _require(n >= 2 and n % 2 == 0, f"fourfold_smoothing(n) requires n even and n >= 2, got n={n}")
    e = n // 2 + 1
    return WeightMatrix(("t0", "t1", "y0", "x0", "x1", "z"),
                        ((1, 0), (1, 0), (-e, 1), (-n - 2, 1), (-n - 2, 1), (-2 * (n + 2), 3)),
                        label=f"T4_smoothing({n})")


def fourfold_k8() -> WeightMatrix:
    return WeightMatrix(("t0", "t1", "y0", "x0", "x1", "z"),
                        ((1, 0), (1, 0), (4, 1), (2, 1), (2, 1), (10, 3)), label="T4_K8")


def central_k8() -> WeightMatrix:
    return WeightMatrix(("t0", "t1", "y0", "y1", "z"),
                        ((1, 0), (1, 0), (4, 1), (0, 1), (10, 3)), label="T0_K8")


def wps_1_1_4_10() -> WeightedProjectiveSpace:
    return WeightedProjectiveSpace(("t0", "t1", "y0", "z"), (1, 1, 4, 10))


def project_to_wps(W: WeightMatrix, drop: str) -> WeightedProjectiveSpace:
    """Set the variable ``drop`` (bidegree (0, 1)) to 1 and keep the first grading."""
    if W.degree_of(drop) != (0, 1):
        raise DomainError(f"projection needs deg {drop} = (0, 1), got {W.degree_of(drop)}")
    keep = [i for i, n in enumerate(W.names) if n != drop]
    return WeightedProjectiveSpace(tuple(W.names[i] for i in keep), tuple(W.degrees[i][0] for i in keep))


CATALOGUE_KINDS = ("hirzebruch", "T", "fourfold_even", "fourfold_odd", "fourfold_smoothing",
                   "fourfold_k8", "central_k8", "wps_1_1_4_10")


def catalogue(kind: str, *params: int):
    builders: dict[str, Callable] = {
        "hirzebruch": hirzebruch,
        "T": threefold,
        "fourfold_even": fourfold_even,
        "fourfold_odd": fourfold_odd,
        "fourfold_smoothing": fourfold_smoothing,
        "fourfold_k8": fourfold_k8,
        "central_k8": central_k8,
        "wps_1_1_4_10": wps_1_1_4_10,
    }
    if kind not in builders:
        raise DomainError(f"unknown catalogue kind {kind!r}; expected one of {CATALOGUE_KINDS}")
    try:
        return builders[kind](*params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {kind}: {params}") from exc


# --------------------------------------------------------------------------
# enumeration


def _weighted_tuples(weights: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """All non-negative integer tuples e with sum(e_i * w_i) == total (w_i > 0)."""
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for e in range(total // w, -1, -1):
        for tail in _weighted_tuples(rest, total - e * w):
            yield (e,) + tail


def _fibre_tuples(W: WeightMatrix, d2: int) -> list[tuple[int, ...]]:
    tuples = list(_weighted_tuples([W.degrees[i][1] for i in W.fibre], d2))
    # graded-lex: total degree ascending, then earlier variables first
    tuples.sort(key=lambda t: (sum(t), tuple(-x for x in t)))
    return tuples


def enumerate_monomials(W: WeightMatrix, deg: Bidegree,
                        filter: Callable[[tuple[int, ...]], bool] | None = None) -> list[tuple[int, ...]]:
    """Exponent vectors (aligned with ``W.names``) of all monomials of bidegree ``deg``."""
    d1, d2 = deg
    if d2 < 0:
        raise DomainError(f"enumerate_monomials requires d2 >= 0, got {d2}")
    t0, t1 = W.base
    out = []
    for ft in _fibre_tuples(W, d2):
        e = d1 - sum(x * W.degrees[i][0] for x, i in zip(ft, W.fibre))
        if e < 0:
            continue
        for j in range(e + 1):
            exps = [0] * W.nvars
            for x, i in zip(ft, W.fibre):
                exps[i] = x
            exps[t0], exps[t1] = j, e - j
            exps = tuple(exps)
            if filter is None or filter(exps):
                out.append(exps)
    return out


def graded_dim(W: WeightMatrix, deg: Bidegree) -> int:
    """Number of monomials of bidegree ``deg`` (counted without listing t-monomials)."""
    d1, d2 = deg
    if d2 < 0:
        raise DomainError(f"graded_dim requires d2 >= 0, got {d2}")
    total = 0
    for ft in _fibre_tuples(W, d2):
        e = d1 - sum(x * W.degrees[i][0] for x, i in zip(ft, W.fibre))
        if e >= 0:
            total += e + 1
    return total


def format_monomial(W: WeightMatrix, exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(W.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def p2_linear_system_dim(degree: int) -> int:
    """dim |O_P2(degree)| (projective dimension)."""
    return comb(degree + 2, 2) - 1
