"""Exact arithmetic over Q: binary forms, rational matrices, GL2(Z) equivalence.

Scalars are :class:`fractions.Fraction`.  Nothing in this module touches
floating point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DomainError

Rational = Fraction

# 2**61 - 1; used only to certify full rank (rank mod p <= rank over Q).
_CERT_PRIME = 2305843009213693951


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """Render as ``"num/den"``; used by every serialized output."""
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# univariate helpers (ascending coefficient lists in tau = t0/t1)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _trim(a)
    return _trim(q), a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


# --------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial of degree ``degree`` in t0, t1.

    ``coeffs[j]`` is the coefficient of ``t0**j * t1**(degree - j)``.
    """

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError(f"binary form degree must be >= 0, got {self.degree}")
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise DomainError(
                f"degree-{self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, coeffs: Iterable) -> "BinaryForm":
        """Build from coefficients ascending in the t0-power; degree from count."""
        coeffs = tuple(coeffs)
        if not coeffs:
            raise DomainError("a binary form needs at least one coefficient")
        return cls(len(coeffs) - 1, coeffs)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, t0_power: int, coeff=1) -> "BinaryForm":
        if not 0 <= t0_power <= degree:
            raise DomainError(f"t0-power {t0_power} outside 0..{degree}")
        c = [0] * (degree + 1)
        c[t0_power] = coeff
        return cls(degree, tuple(c))

    @classmethod
    def constant(cls, c=1) -> "BinaryForm":
        return cls(0, (c,))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def t0_valuation(self) -> int | None:
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return None

    def t1_valuation(self) -> int | None:
        top = self.top_t0_power()
        return None if top is None else self.degree - top

    def top_t0_power(self) -> int | None:
        for j in range(self.degree, -1, -1):
            if self.coeffs[j] != 0:
                return j
        return None

    def leading_coeff(self) -> Fraction:
        """Coefficient of the highest t0-power present."""
        top = self.top_t0_power()
        return Fraction(0) if top is None else self.coeffs[top]

    def dehomogenize(self) -> list[Fraction]:
        """Ascending coefficients of self(tau, 1)."""
        return _trim(list(self.coeffs))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise DomainError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        c = to_fraction(other)
        return BinaryForm(self.degree, tuple(c * x for x in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BinaryForm":
        if e < 0:
            raise DomainError("negative power of a binary form")
        out = BinaryForm.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        """Quotient ``self / other``; raises if the division is not exact."""
        if other.is_zero():
            raise DomainError("division by the zero form")
        if other.degree > self.degree:
            if self.is_zero():
                raise DomainError("zero form of lower degree than divisor")
            raise DomainError("divisor has larger degree")
        d = self.degree - other.degree
        if self.is_zero():
            return BinaryForm.zero(d)
        q, r = _poly_divmod(self.dehomogenize(), other.dehomogenize())
        # a t1-factor of `other` shows up as a dehomogenized degree drop
        if r or len(q) > d + 1:
            raise DomainError(f"{other} does not divide {self}")
        return BinaryForm(d, tuple(q) + (Fraction(0),) * (d + 1 - len(q)))

    def divides(self, other: "BinaryForm") -> bool:
        try:
            other.exact_div(self)
        except DomainError:
            return False
        return True

    def __call__(self, t0, t1) -> Fraction:
        t0, t1 = to_fraction(t0), to_fraction(t1)
        return sum((c * t0**j * t1 ** (self.degree - j) for j, c in enumerate(self.coeffs)), Fraction(0))

    def substitute_scale(self, c) -> "BinaryForm":
        """The form f(c*t0, t1)."""
        c = to_fraction(c)
        return BinaryForm(self.degree, tuple(x * c**j for j, x in enumerate(self.coeffs)))

    def __str__(self) -> str:
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "*".join(
                s for s in (_power("t0", j), _power("t1", self.degree - j)) if s
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def form_gcd(p: BinaryForm, q: BinaryForm) -> BinaryForm:
    """Greatest common divisor, normalized to leading t0-coefficient 1.

    Common t1-powers are split off first; the remainder is handled by the
    Euclidean algorithm on the dehomogenizations in tau = t0/t1.
    """
    if p.is_zero() and q.is_zero():
        raise DomainError("gcd of two zero forms is undefined")
    if p.is_zero():
        p, q = q, p
    if q.is_zero():
        return p * (1 / p.leading_coeff())
    v = min(p.t1_valuation(), q.t1_valuation())
    g = _poly_gcd(p.dehomogenize(), q.dehomogenize())
    r = len(g) - 1
    return BinaryForm(r, tuple(g)) * BinaryForm.monomial(v, 0)


def coprime(p: BinaryForm, q: BinaryForm) -> bool:
    return form_gcd(p, q).degree == 0


# --------------------------------------------------------------------------
# rank machinery


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        if den == 1:
            out.append([x.numerator for x in row])
        else:
            out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f == 0:
                # still must scale to keep the Bareiss invariant exact
                for c in range(col + 1, ncols):
                    row[c] = row[c] * p // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (row[c] * p - f * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def modular_rank(rows: list[list[int]], p: int = _CERT_PRIME) -> int:
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        inv = pow(prow[col], -1, p)
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                f = f * inv % p
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def integer_rank(rows: list[list[int]], method: str = "auto") -> int:
    """Exact rank over Q of an integer matrix.

    ``auto`` first computes the rank modulo a 61-bit prime.  That value is a
    lower bound for the rational rank, so when it already equals
    ``min(rows, cols)`` it is returned as is; otherwise Bareiss decides.
    """
    if not rows or not rows[0]:
        return 0
    if method == "bareiss":
        return bareiss_rank(rows)
    if method != "auto":
        raise ValueError(f"unknown rank method {method!r}")
    full = min(len(rows), len(rows[0]))
    if modular_rank(rows) == full:
        return full
    return bareiss_rank(rows)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(to_fraction(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DomainError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DomainError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        if any(len(c) != rows for c in columns):
            raise DomainError("column length mismatch")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DomainError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise DomainError("row count mismatch in hstack")
        return RatMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
                                   self.cols + other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def rank(self, method: str = "auto") -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        rows = self.to_rows()
        # eliminate along the longer side
        if self.rows > self.cols:
            rows = [list(c) for c in zip(*rows)]
        return integer_rank(_integer_rows(rows), method)

    def rref(self) -> tuple["RatMatrix", list[int]]:
        m = self.to_rows()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return RatMatrix.from_rows(m, self.cols), pivots

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of {v : M v = 0}, one vector per free column."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -red[i, f]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence) -> tuple[Fraction, ...] | None:
        """Some x with M x = b, or None when b is outside the column span."""
        b = [to_fraction(x) for x in b]
        if len(b) != self.rows:
            raise DomainError("right-hand side has wrong length")
        aug = RatMatrix.from_rows([list(self.row(i)) + [b[i]] for i in range(self.rows)], self.cols + 1)
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for i, pc in enumerate(pivots):
            x[pc] = red[i, self.cols]
        return tuple(x)

    def in_column_span(self, b: Sequence) -> bool:
        col = RatMatrix(self.rows, 1, tuple(to_fraction(x) for x in b))
        return self.hstack(col).rank() == self.rank()


class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rational vectors.

    Vectors are dicts ``key -> Fraction``; keys must be mutually comparable.
    ``add`` reduces a vector against the basis and keeps it if it is
    independent.
    """

    def __init__(self):
        self._rows: dict = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: to_fraction(x) for k, x in vec.items() if x != 0}
        while v:
            lead = min(v)
            row = self._rows.get(lead)
            if row is None:
                return v
            f = v[lead]
            for k, x in row.items():
                nv = v.get(k, 0) - f * x
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        self._rows[lead] = {k: x * inv for k, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def copy(self) -> "SparseEchelon":
        out = SparseEchelon()
        out._rows = dict(self._rows)
        return out


# --------------------------------------------------------------------------
# GL2(Z) equivalence of 2xN integer matrices


@dataclass(frozen=True)
class IntMatrix2xN:
    cols: int
    entries: tuple[tuple[int, ...], tuple[int, ...]]

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix2xN":
        columns = [tuple(int(x) for x in c) for c in columns]
        if any(len(c) != 2 for c in columns):
            raise DomainError("weight columns must have two entries")
        return cls(len(columns), (tuple(c[0] for c in columns), tuple(c[1] for c in columns)))

    def column(self, j: int) -> tuple[int, int]:
        return self.entries[0][j], self.entries[1][j]

    def columns(self) -> list[tuple[int, int]]:
        return [self.column(j) for j in range(self.cols)]

    def rational_rank(self) -> int:
        return RatMatrix.from_rows([list(r) for r in self.entries], self.cols).rank()


def _det2(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def find_gl2z_transform(A: IntMatrix2xN, B: IntMatrix2xN):
    """Return ``(U, perm)`` with ``U * A[:, perm] == B`` and U in GL2(Z), or None."""
    if A.cols != B.cols:
        raise DomainError("gl2z_equivalent requires the same number of columns")
    if A.rational_rank() < 2:
        raise DomainError("gl2z_equivalent requires column-rank 2 (ambient gradings have rank 2)")
    bcols = B.columns()
    acols = A.columns()
    for perm in itertools.permutations(range(A.cols)):
        pa = [acols[p] for p in perm]
        pair = next(((i, j) for i, j in itertools.combinations(range(A.cols), 2)
                     if _det2(pa[i], pa[j]) != 0), None)
        i, j = pair  # permutations keep rank, so a pair exists
        det = _det2(pa[i], pa[j])
        # U = N * M^{-1} with M = [pa_i pa_j], N = [b_i b_j] (as columns)
        m_inv = ((pa[j][1], -pa[j][0]), (-pa[i][1], pa[i][0]))
        n = ((bcols[i][0], bcols[j][0]), (bcols[i][1], bcols[j][1]))
        u = []
        ok = True
        for r in range(2):
            urow = []
            for c in range(2):
                num = n[r][0] * m_inv[0][c] + n[r][1] * m_inv[1][c]
                if num % det:
                    ok = False
                    break
                urow.append(num // det)
            if not ok:
                break
            u.append(tuple(urow))
        if not ok or abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) != 1:
            continue
        if all((u[0][0] * x + u[0][1] * y, u[1][0] * x + u[1][1] * y) == bc for (x, y), bc in zip(pa, bcols)):
            return (tuple(u), perm)
    return None


def gl2z_equivalent(A: IntMatrix2xN, B: IntMatrix2xN) -> bool:
    return find_gl2z_transform(A, B) is not None


__all__ = [
    "BinaryForm",
    "IntMatrix2xN",
    "RatMatrix",
    "Rational",
    "SparseEchelon",
    "bareiss_rank",
    "coprime",
    "find_gl2z_transform",
    "form_gcd",
    "format_rational",
    "gl2z_equivalent",
    "integer_rank",
    "modular_rank",
    "to_fraction",
]
