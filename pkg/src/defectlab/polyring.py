"""Homogeneous polynomials, graded ideal pieces and projective loci.

Coordinates on V_D (degree-D forms in n+1 variables) follow one global
order: lexicographically descending exponent tuples, which for fixed D is
graded-lex.  Emptiness of a projective intersection is certified by a
Macaulay sweep: the ideal fills all of V_D at some D below the bound.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import InconclusiveLocus, InvalidInput
from .exact_algebra import IncrementalBasis, QI, Subspace, format_rational, parse_rational
from .upoly import UPoly

MultiIndex = tuple

DEFAULT_SWEEP_CAP = 24


def _compositions(total: int, parts: int):
    """Exponent tuples of length ``parts`` summing to ``total``, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialOrder:
    n: int
    D: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    @property
    def index(self) -> dict:
        return _index_of(self.n, self.D)


@lru_cache(maxsize=None)
def _monomials(n: int, D: int) -> tuple:
    return tuple(_compositions(D, n + 1))


@lru_cache(maxsize=None)
def _index_of(n: int, D: int) -> dict:
    return {e: i for i, e in enumerate(_monomials(n, D))}


def monomial_basis(n: int, D: int) -> MonomialOrder:
    if n < 0 or D < 0:
        raise InvalidInput("monomial_basis needs n >= 0 and D >= 0")
    return MonomialOrder(n, D, _monomials(n, D))


class MPoly:
    """Sparse polynomial in ``nvars`` variables with exact coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise InvalidInput(f"bad exponent {e} for {nvars} variables")
            c = c if isinstance(c, QI) else Fraction(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _like(self, terms):
        return MPoly(self.nvars, terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self._like({e: c * other for e, c in self.terms.items()})
        if other.nvars != self.nvars:
            raise InvalidInput("variable count mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInput("negative power")
        out = self._like({(0,) * self.nvars: 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def diff(self, alpha: Sequence[int]) -> "MPoly":
        """Apply the partial derivative D^alpha."""
        out = {}
        for e, c in self.terms.items():
            if any(a > x for a, x in zip(alpha, e)):
                continue
            f = 1
            for a, x in zip(alpha, e):
                for t in range(a):
                    f *= x - t
            ne = tuple(x - a for a, x in zip(alpha, e))
            out[ne] = out.get(ne, 0) + c * f
        return MPoly(self.nvars, out)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, other: "MPoly"):
        """Multivariate division in lex order; exact when the remainder is 0."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        q: dict = {}
        r: dict = {}
        p = MPoly(self.nvars, self.terms)
        while not p.is_zero():
            e, c = p.leading()
            if all(a >= b for a, b in zip(e, le)):
                t = tuple(a - b for a, b in zip(e, le))
                f = c / lc
                q[t] = q.get(t, 0) + f
                p = p - MPoly(self.nvars, {t: f}) * other
            else:
                r[e] = r.get(e, 0) + c
                p = MPoly(self.nvars, {k: v for k, v in p.terms.items() if k != e})
        return MPoly(self.nvars, q), MPoly(self.nvars, r)

    def exact_div(self, other: "MPoly") -> "MPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InvalidInput("polynomial division is not exact")
        return q

    def eval(self, point: Sequence):
        """Exact for rational points; complex float when any coordinate is complex/float."""
        if len(point) != self.nvars:
            raise InvalidInput("point has wrong number of coordinates")
        numeric = any(isinstance(x, (complex, float, np.floating, np.complexfloating)) for x in point)
        if numeric:
            pt = [complex(x) for x in point]
            acc = 0j
            for e, c in self.terms.items():
                m = complex(c)
                for x, k in zip(pt, e):
                    if k:
                        m *= x ** k
                acc += m
            return acc
        acc = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            acc = acc + m
        return acc

    def to_univariate(self) -> UPoly:
        if self.nvars != 1:
            raise InvalidInput("not a one-variable polynomial")
        deg = self.total_degree()
        coeffs = [0] * (deg + 1)
        for (k,), c in self.terms.items():
            coeffs[k] = c
        return UPoly(coeffs)

    @classmethod
    def from_univariate(cls, p: UPoly) -> "MPoly":
        return cls(1, {(k,): c for k, c in enumerate(p.coeffs)})

    def to_json(self) -> dict:
        return {"m": self.nvars,
                "terms": [{"exp": list(e), "coef": _fmt(c)} for e, c in sorted(self.terms.items(), reverse=True)]}

    @classmethod
    def from_json(cls, obj: dict) -> "MPoly":
        nv = obj.get("m", obj.get("nvars"))
        if not isinstance(nv, int):
            raise InvalidInput("polynomial JSON needs integer 'm'")
        terms = {}
        for t in obj.get("terms", []):
            e = tuple(t["exp"])
            terms[e] = terms.get(e, 0) + _parse_coef(t["coef"])
        return cls(nv, terms)


def _fmt(c) -> str:
    return str(c) if isinstance(c, QI) else format_rational(c)


def _parse_coef(value):
    if isinstance(value, str) and value.strip().endswith("i"):
        q = QI.parse(value)
        return q.re if q.im == 0 else q
    return parse_rational(value)


class HomPoly(MPoly):
    """Form of fixed degree on P^n; the zero form keeps its nominal degree."""

    __slots__ = ("degree",)

    def __init__(self, n: int, degree: int, terms=None):
        super().__init__(n + 1, terms)
        if degree < 0:
            raise InvalidInput("degree must be nonnegative")
        bad = [e for e in self.terms if sum(e) != degree]
        if bad:
            raise InvalidInput(f"monomial {bad[0]} is not of degree {degree}")
        self.degree = degree

    @property
    def n(self) -> int:
        return self.nvars - 1

    @classmethod
    def from_mpoly(cls, p: MPoly, degree: int | None = None) -> "HomPoly":
        deg = p.total_degree() if degree is None else degree
        return cls(p.nvars - 1, max(deg, 0), p.terms)

    @classmethod
    def var(cls, n: int, i: int) -> "HomPoly":
        e = [0] * (n + 1)
        e[i] = 1
        return cls(n, 1, {tuple(e): 1})

    @classmethod
    def one(cls, n: int) -> "HomPoly":
        return cls(n, 0, {(0,) * (n + 1): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> "HomPoly":
        return cls(len(exp) - 1, sum(exp), {tuple(exp): coef})

    def _like(self, terms):
        return HomPoly(self.n, self.degree, terms)

    def __eq__(self, other):
        if isinstance(other, HomPoly):
            return self.n == other.n and self.degree == other.degree and self.terms == other.terms
        return MPoly.__eq__(self, other)

    __hash__ = MPoly.__hash__

    def __add__(self, other):
        if isinstance(other, HomPoly):
            if other.n != self.n or other.degree != self.degree:
                if other.is_zero():
                    return self
                if self.is_zero():
                    return other
                raise InvalidInput("cannot add forms of different degree or ambient dimension")
            out = dict(self.terms)
            for e, c in other.terms.items():
                out[e] = out.get(e, 0) + c
            return self._like(out)
        if other == 0:
            return self
        raise InvalidInput("cannot add a scalar to a form")

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            if other.n != self.n:
                raise InvalidInput("ambient dimension mismatch")
            prod = MPoly.__mul__(self, other)
            return HomPoly(self.n, self.degree + other.degree, prod.terms)
        if isinstance(other, MPoly):
            raise InvalidInput("multiply forms only by forms or scalars")
        return self._like({e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInput("negative power")
        out = HomPoly.one(self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, gamma: Sequence[int]) -> "HomPoly":
        """Multiply by the monomial x^gamma."""
        return HomPoly(self.n, self.degree + sum(gamma),
                       {tuple(a + b for a, b in zip(e, gamma)): c for e, c in self.terms.items()})

    def to_vector(self) -> list[Fraction]:
        idx = _index_of(self.n, self.degree)
        v = [Fraction(0)] * len(idx)
        for e, c in self.terms.items():
            v[idx[e]] = c
        return v

    @classmethod
    def from_vector(cls, n: int, D: int, vec: Sequence) -> "HomPoly":
        mons = _monomials(n, D)
        if len(vec) != len(mons):
            raise InvalidInput("vector length does not match V_D")
        return cls(n, D, {m: c for m, c in zip(mons, vec) if c})

    def compose(self, components: Sequence[UPoly]) -> UPoly:
        """Q(f_0, ..., f_n) for one-variable polynomials f_j."""
        if len(components) != self.n + 1:
            raise InvalidInput("curve dimension does not match the form")
        powers = [[UPoly((1,))] for _ in components]
        out = UPoly()
        for e, c in self.terms.items():
            term = UPoly((c,))
            for j, k in enumerate(e):
                pw = powers[j]
                while len(pw) <= k:
                    pw.append(pw[-1] * components[j])
                if k:
                    term = term * pw[k]
            out = out + term
        return out

    def gradient(self) -> list["HomPoly"]:
        out = []
        for i in range(self.n + 1):
            alpha = [0] * (self.n + 1)
            alpha[i] = 1
            d = self.diff(alpha)
            out.append(HomPoly(self.n, max(self.degree - 1, 0), d.terms))
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "degree": self.degree,
                "terms": [{"exp": list(e), "coef": _fmt(c)} for e, c in sorted(self.terms.items(), reverse=True)]}

    @classmethod
    def from_json(cls, obj: dict) -> "HomPoly":
        try:
            n, degree, raw = obj["n"], obj["degree"], obj["terms"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("HomPoly JSON needs 'n', 'degree' and 'terms'") from exc
        if not isinstance(n, int) or not isinstance(degree, int):
            raise InvalidInput("'n' and 'degree' must be integers")
        terms: dict = {}
        for t in raw:
            e = tuple(t["exp"])
            if len(e) != n + 1:
                raise InvalidInput(f"exponent {list(e)} needs {n + 1} entries")
            terms[e] = terms.get(e, 0) + _parse_coef(t["coef"])
        return cls(n, degree, terms)


def poly_arith(op: str, P: HomPoly, Q: HomPoly | int | Sequence | None = None):
    """``mul`` -> P*Q, ``pow`` -> P**Q, ``eval`` -> P(Q)."""
    if op == "mul":
        return P * Q
    if op == "pow":
        return P ** int(Q)
    if op == "eval":
        if len(Q) != P.n + 1:
            raise InvalidInput("point needs n+1 coordinates")
        return P.eval(Q)
    raise InvalidInput(f"unknown operation {op!r}")


def _check_gens(gens: Sequence[HomPoly]) -> int:
    if not gens:
        raise InvalidInput("empty generator list")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise InvalidInput("generators live in different projective spaces")
    return n


def ideal_piece_basis(gens: Sequence[HomPoly], D: int, n: int | None = None) -> IncrementalBasis:
    """Echelon basis of span{x^gamma * g : |gamma| = D - deg g} inside V_D."""
    if n is None:
        n = _check_gens(gens)
    idx = _index_of(n, D)
    basis = IncrementalBasis(len(idx))
    for g in gens:
        if g.is_zero() or g.degree > D:
            continue
        for gamma in _monomials(n, D - g.degree):
            v = [0] * len(idx)
            for e, c in g.terms.items():
                v[idx[tuple(a + b for a, b in zip(e, gamma))]] = c
            basis.add(v)
            if basis.rank == len(idx):
                return basis
    return basis


def hilbert_value(gens: Sequence[HomPoly], D: int, n: int | None = None) -> int:
    if n is None:
        n = _check_gens(gens) if gens else 0
    return comb(n + D, n) - (ideal_piece_basis(gens, D, n).rank if gens else 0)


def ideal_graded_piece(gens: Sequence[HomPoly], D: int, n: int | None = None) -> tuple[Subspace, int]:
    """(I_D as a canonical subspace of V_D, Hilbert function value dim V_D - dim I_D)."""
    if n is None:
        if not gens:
            raise InvalidInput("pass n when the generator list is empty")
        n = _check_gens(gens)
    dim_v = comb(n + D, n)
    if not gens:
        return Subspace.zero(dim_v), dim_v
    basis = ideal_piece_basis(gens, D, n)
    return basis.to_subspace(), dim_v - basis.rank


@dataclass(frozen=True)
class Locus:
    """Projective common zero set: ``empty`` or of dimension ``dim``."""

    empty: bool
    dim: int | None
    sweep_bound: int
    hilbert: tuple

    def __str__(self):
        return "empty" if self.empty else f"dim {self.dim}"


def sweep_bound(gens: Sequence[HomPoly]) -> int:
    degs = [g.degree for g in gens]
    return max(len(degs) * (max(degs) - 1) + 1, max(degs), 1)


def _poly_degree_of_window(values: Sequence[int]) -> int | None:
    """Degree of the lowest-degree polynomial through equally spaced values."""
    diffs = list(values)
    for k in range(len(values)):
        if all(x == 0 for x in diffs):
            return k - 1
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if not diffs:
            return None
    return None


def projective_locus(gens: Sequence[HomPoly], cap: int = DEFAULT_SWEEP_CAP) -> Locus:
    """Certify emptiness (or infer the dimension) of the common zero set of ``gens``."""
    n = _check_gens(gens)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise InvalidInput("all generators are zero")
    if any(g.degree == 0 for g in gens):
        return Locus(True, None, 0, ((0, 0),))
    bound = sweep_bound(gens)
    top = min(bound, cap)
    hil: dict = {}
    for D in range(top + 1):
        hil[D] = hilbert_value(gens, D, n)
        if hil[D] == 0:
            return Locus(True, None, bound, tuple(sorted(hil.items())))
    start = top
    window = [hil[start]] + [hilbert_value(gens, D, n) for D in range(start + 1, start + n + 3)]
    for off, h in enumerate(window):
        hil[start + off] = h
    if bound > cap:
        if any(h == 0 for h in window):
            return Locus(True, None, bound, tuple(sorted(hil.items())))
        if len(set(window)) != 1:
            raise InconclusiveLocus(
                f"Hilbert function still positive and varying at cap {cap} (bound {bound})", hil)
    deg = _poly_degree_of_window(window)
    if deg is None or deg > n:
        raise InconclusiveLocus("Hilbert function window does not fit a polynomial", hil)
    return Locus(False, deg, bound, tuple(sorted(hil.items())))


def random_form(rng, n: int, d: int, coef_range: int = 5, density: float = 1.0) -> HomPoly:
    """Seeded random nonzero form with small integer coefficients (``rng`` is numpy Generator)."""
    mons = _monomials(n, d)
    while True:
        terms = {}
        for m in mons:
            if density >= 1.0 or rng.random() < density:
                c = int(rng.integers(-coef_range, coef_range + 1))
                if c:
                    terms[m] = c
        p = HomPoly(n, d, terms)
        if not p.is_zero():
            return p


def forms_from_json_list(items: Iterable[dict]) -> list[HomPoly]:
    return [HomPoly.from_json(x) for x in items]
