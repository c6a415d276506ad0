"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small immutable
row-major containers; elimination is fraction-free (Bareiss) on
integer-scaled rows and the result is normalised to the reduced row-echelon
form, which doubles as the canonical representation of a row space.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import AmbientMismatch, InvalidInput

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Exact parse of ints, Fractions and ``"p/q"`` / decimal strings.

    Floats are refused: a float coefficient has already been rounded.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"boolean is not a coefficient: {value!r}")
    if isinstance(value, float):
        raise InvalidInput(f"floating coefficient rejected: {value!r}; use a fraction string")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip().replace(" ", "")
        if not s or any(c in s.lower() for c in "einfa"):
            raise InvalidInput(f"not an exact rational: {value!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not an exact rational: {value!r}") from exc
    raise InvalidInput(f"unsupported coefficient type: {type(value).__name__}")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QI:
    """Gaussian rational ``re + im*i`` with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, QI):
            return x
        if isinstance(x, complex):
            raise InvalidInput("floating complex coefficient rejected")
        return QI(x, 0)

    @classmethod
    def parse(cls, text):
        """Parse ``"a+bi"``, ``"-1/2i"``, ``"3"`` with fraction/decimal parts."""
        if not isinstance(text, str):
            return cls(parse_rational(text))
        s = text.strip().replace(" ", "")
        if not s.endswith("i"):
            return cls(parse_rational(s))
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        while cut > 0 and body[cut - 1] in "eE/":
            cut = max(body.rfind("+", 0, cut), body.rfind("-", 0, cut))
        re_part, im_part = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(parse_rational(re_part), parse_rational(im_part))

    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return QI(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        o = QI.coerce(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = QI.coerce(other)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QI.coerce(other) - self

    def __mul__(self, other):
        o = QI.coerce(other)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("QI division by zero")
        return QI((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        return QI.coerce(other) / self

    def __pow__(self, e: int):
        out, base = QI(1), self
        if e < 0:
            base, e = QI(1) / base, -e
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            o = QI.coerce(other)
        except (InvalidInput, TypeError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


def simplify_scalar(x):
    """Collapse a real QI back to a Fraction."""
    if isinstance(x, QI) and x.im == 0:
        return x.re
    return x


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInput("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InvalidInput("ragged matrix rows")
        flat = tuple(Fraction(x) for r in rows for x in r)
        return cls(len(rows), cols, flat)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def _bareiss_echelon(int_rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns echelon rows and pivot columns."""
    a = [r[:] for r in int_rows]
    nrows = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            # every entry is a minor of the input, so the division is exact
            for j in range(c + 1, ncols):
                ai[j] = (piv * ai[j] - f * prow[j]) // prev
            ai[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref_rank(m: RatMatrix) -> tuple[RatMatrix, int]:
    """Reduced row-echelon form and rank.  Zero rows are kept at the bottom."""
    if m.rows == 0 or m.cols == 0:
        return m, 0
    ech, pivots = _bareiss_echelon([_integer_row(m.row(i)) for i in range(m.rows)], m.cols)
    rank = len(pivots)
    red = [[Fraction(x) for x in row] for row in ech]
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        inv = 1 / red[i][c]
        red[i] = [x * inv for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [x - f * y for x, y in zip(red[k], red[i])]
    zero = [Fraction(0)] * m.cols
    red.extend(zero[:] for _ in range(m.rows - rank))
    return RatMatrix.from_rows(red, m.cols), rank


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    _, piv = _bareiss_echelon([_integer_row(r) for r in rows], ncols)
    return len(piv)


def nullspace(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, rk = rref_rank(m)
    pivots = []
    for i in range(rk):
        row = red.row(i)
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for fj in free:
        v = [Fraction(0)] * m.cols
        v[fj] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i, fj]
        basis.append(v)
    return basis


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant via Bareiss on integer-scaled rows."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for r in rows:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        scale /= den
        ints.append([int(Fraction(x) * den) for x in r])
    a = ints
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


@dataclass(frozen=True)
class Subspace:
    """Row space in canonical RREF; equal subspaces compare equal."""

    ambient_dim: int
    basis: RatMatrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise AmbientMismatch("vector length differs from ambient dimension")
        if not vecs:
            return cls.zero(ambient_dim)
        red, rk = rref_rank(RatMatrix.from_rows(vecs, ambient_dim))
        return cls(ambient_dim, RatMatrix(rk, ambient_dim, red.entries[:rk * ambient_dim]))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RatMatrix(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RatMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[list[Fraction]]:
        return self.basis.to_rows()

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dims differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        if not any(v):
            return True
        return rank(self.vectors() + [list(v)], self.ambient_dim) == self.dim

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return (self + other) == other

    def intersect(self, other: "Subspace") -> "Subspace":
        """A ∩ B from the kernel of [A^T | -B^T]."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        a, b = self.vectors(), other.vectors()
        cols = len(a) + len(b)
        rows = [[a[i][j] for i in range(len(a))] + [-b[i][j] for i in range(len(b))]
                for j in range(self.ambient_dim)]
        ker = nullspace(RatMatrix.from_rows(rows, cols))
        vecs = []
        for x in ker:
            vecs.append([sum((x[i] * a[i][j] for i in range(len(a))), Fraction(0))
                         for j in range(self.ambient_dim)])
        return Subspace.span(vecs, self.ambient_dim)


def subspace_query(a: Subspace, b: Subspace | None = None, mode: str = "dim", v=None):
    """Single entry point: ``dim`` -> int, ``sum`` -> Subspace, ``contains`` -> bool."""
    if mode == "dim":
        return a.dim
    if mode == "sum":
        if b is None:
            raise InvalidInput("sum needs two subspaces")
        return a + b
    if mode in ("contains", "contains_vector"):
        return a.contains(v)
    raise InvalidInput(f"unknown subspace query mode {mode!r}")


class IncrementalBasis:
    """Integer row-echelon basis grown one vector at a time.

    Rows are primitive integer vectors keyed by pivot column; ``add`` reports
    whether the candidate enlarged the span.  The pivot column set is an
    invariant of the row space, so ``free_columns`` gives a canonical
    monomial complement.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: list[int] = []
        self._rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: Sequence) -> list[int]:
        v = list(vec) if all(type(x) is int for x in vec) else _integer_row(vec)
        for c in self._pivots:
            x = v[c]
            if x:
                row = self._rows[c]
                p = row[c]
                g = gcd(p, x)
                a, b = p // g, x // g
                v = [a * vi - b * ri for vi, ri in zip(v, row)]
        return v

    def add(self, vec: Sequence) -> bool:
        v = self.reduce(vec)
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return False
        g = 0
        for x in v:
            if x:
                g = gcd(g, x)
        if v[lead] < 0:
            g = -g
        v = [x // g for x in v]
        bisect.insort(self._pivots, lead)
        self._rows[lead] = v
        return True

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def pivot_columns(self) -> list[int]:
        return list(self._pivots)

    def free_columns(self) -> list[int]:
        piv = set(self._pivots)
        return [j for j in range(self.ncols) if j not in piv]

    def rows(self) -> list[list[int]]:
        return [self._rows[c] for c in self._pivots]

    def copy(self) -> "IncrementalBasis":
        out = IncrementalBasis(self.ncols)
        out._pivots = list(self._pivots)
        out._rows = dict(self._rows)
        return out

    def to_subspace(self) -> Subspace:
        return Subspace.span(self.rows(), self.ncols)
