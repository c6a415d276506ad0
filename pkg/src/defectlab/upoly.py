"""Dense one-variable polynomials over Q or Q(i).

Coefficients are Fractions or :class:`~defectlab.exact_algebra.QI`; every
operation is exact.  Includes Euclidean gcd, Yun square-free decomposition,
coprime (gcd-free) bases and vanishing orders.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInput
from .exact_algebra import QI, format_rational, simplify_scalar


def _clean(coeffs) -> tuple:
    out = [simplify_scalar(c if isinstance(c, QI) else Fraction(c)) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class UPoly:
    """Coefficients ascending: ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _clean(coeffs)

    @classmethod
    def z(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "UPoly":
        p = cls((1,))
        for a in roots:
            p = p * cls((-a, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_real(self) -> bool:
        return all(not isinstance(c, QI) for c in self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return UPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInput("negative power")
        out, base = UPoly((1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c * inv
            q[k - dq] = f
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - f * y
        return UPoly(q), UPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InvalidInput("polynomial division is not exact")
        return q

    def derivative(self) -> "UPoly":
        return UPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return UPoly([c * inv for c in self.coeffs])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return simplify_scalar(acc) if isinstance(acc, QI) else acc

    def complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    def eval_complex(self, z):
        """Horner on complex floats; ``z`` may be an array."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def valuation_at_zero(self) -> int:
        if self.is_zero():
            raise InvalidInput("zero polynomial has no valuation")
        return next(k for k, c in enumerate(self.coeffs) if c != 0)

    def shift_down(self, k: int) -> "UPoly":
        return UPoly(self.coeffs[k:])

    def roots(self) -> np.ndarray:
        """Numeric roots (numpy companion matrix), with multiplicity."""
        if self.degree <= 0:
            return np.zeros(0, dtype=np.complex128)
        return np.roots(self.complex_coeffs()[::-1])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def upoly_gcd_many(polys: Iterable[UPoly]) -> UPoly:
    g = UPoly()
    for p in polys:
        g = upoly_gcd(g, p)
        if g.degree == 0:
            break
    return g


def squarefree_decomposition(p: UPoly) -> tuple:
    """Yun's algorithm: ``(lc, [(a_1, 1), (a_2, 2), ...])`` with monic squarefree a_i.

    ``p = lc * prod a_i**i``; factors of degree 0 are dropped.
    """
    if p.is_zero():
        raise InvalidInput("square-free decomposition of the zero polynomial")
    lc = p.lc
    f = p.monic()
    if f.degree == 0:
        return lc, []
    out = []
    fp = f.derivative()
    a0 = upoly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = upoly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return lc, out


def coprime_base(polys: Iterable[UPoly]) -> list[UPoly]:
    """Pairwise coprime monic squarefree polynomials whose products give the radicals of the inputs.

    Each input's square-free part factors over the base, so any root-dependent
    quantity that is constant on the roots of each square-free factor is
    constant on the roots of each base element.
    """
    base: list[UPoly] = []
    for p in polys:
        if p.is_zero() or p.degree <= 0:
            continue
        _, parts = squarefree_decomposition(p)
        for q, _mult in parts:
            rest = q
            new_base = []
            for b in base:
                g = upoly_gcd(rest, b)
                if g.degree > 0:
                    rest = rest.exact_div(g)
                    b2 = b.exact_div(g)
                    new_base.append(g)
                    if b2.degree > 0:
                        new_base.append(b2)
                else:
                    new_base.append(b)
            base = new_base
            if rest.degree > 0:
                base.append(rest.monic())
    return base


def vanishing_order(poly: UPoly, point) -> int:
    """Multiplicity of ``point`` as a root of ``poly``.

    ``point`` is an exact rational / Gaussian rational, or a :class:`UPoly`
    standing for the roots of a squarefree (e.g. minimal) polynomial, in which
    case the count is how often it divides ``poly``.
    """
    if poly.is_zero():
        raise InvalidInput("vanishing order of the zero polynomial")
    divisor = point if isinstance(point, UPoly) else UPoly((-point, 1))
    if divisor.degree <= 0:
        raise InvalidInput("point polynomial must be nonconstant")
    k = 0
    q = poly
    while True:
        quo, rem = q.divmod(divisor)
        if not rem.is_zero():
            return k
        q = quo
        k += 1


def parse_coefficient(text):
    """Exact rational or Gaussian-rational coefficient from a JSON value."""
    return simplify_scalar(QI.parse(text))


def format_coefficient(c) -> str:
    return str(c) if isinstance(c, QI) else format_rational(c)
