"""Generalized Wronskians det(D^{alpha_i} F_j) of polynomial tuples."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DependenceError, InvalidInput, NumericFailure
from .exact_algebra import QI, RatMatrix, determinant, nullspace, rank
from .polyring import HomPoly, MPoly
from .upoly import UPoly, vanishing_order

SYMBOLIC_LIMIT = 6

__all__ = [
    "AdmissibleSet", "SymbolicTuple", "admissible_search", "wronskian_eval", "wronskian_matrix",
    "vanishing_order", "log_derivative_integrand", "bareiss_det",
]


@dataclass(frozen=True)
class AdmissibleSet:
    m: int
    alphas: tuple

    def __post_init__(self):
        alphas = tuple(tuple(int(x) for x in a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        for i, a in enumerate(alphas):
            if len(a) != self.m or any(x < 0 for x in a):
                raise InvalidInput(f"alpha_{i} = {a} is not an {self.m}-tuple of naturals")
            if sum(a) > i:
                raise InvalidInput(f"|alpha_{i}| = {sum(a)} exceeds {i}")

    @property
    def l(self) -> int:
        return sum(sum(a) for a in self.alphas)

    def total(self) -> tuple:
        """alpha_0 + ... + alpha_L as an m-tuple."""
        return tuple(sum(a[k] for a in self.alphas) for k in range(self.m))

    def to_json(self) -> dict:
        return {"m": self.m, "alphas": [list(a) for a in self.alphas], "l": self.l}


@dataclass(frozen=True)
class SymbolicTuple:
    m: int
    entries: tuple

    def __post_init__(self):
        ents = []
        for f in self.entries:
            if isinstance(f, UPoly):
                f = MPoly.from_univariate(f)
            if not isinstance(f, MPoly) or f.nvars != self.m:
                raise InvalidInput(f"entries must be polynomials in {self.m} variables")
            ents.append(MPoly(f.nvars, f.terms))
        if not ents or all(f.is_zero() for f in ents):
            raise InvalidInput("all entries are zero")
        object.__setattr__(self, "entries", tuple(ents))

    @classmethod
    def univariate(cls, polys: Sequence) -> "SymbolicTuple":
        return cls(1, tuple(p if isinstance(p, UPoly) else UPoly(p) for p in polys))

    def __len__(self):
        return len(self.entries)

    def scaled(self, h: MPoly) -> "SymbolicTuple":
        return SymbolicTuple(self.m, tuple(f * h for f in self.entries))


def _grlex(m: int, maxdeg: int):
    """Multi-indices by total degree, then lexicographically descending."""
    from .polyring import _monomials
    for deg in range(maxdeg + 1):
        yield from _monomials(m - 1, deg)


def _check_independent(F: SymbolicTuple):
    mons = sorted({e for f in F.entries for e in f.terms})
    rows = [[f.terms.get(e, 0) for f in F.entries] for e in mons]
    if any(isinstance(x, QI) for r in rows for x in r):
        return  # Gaussian coefficients: independence is left to the determinant
    if rank(rows, len(F)) < len(F):
        comb = nullspace(RatMatrix.from_rows(rows, len(F)))[0]
        raise DependenceError("entries are linearly dependent over the constants", comb)


def _random_points(m, count, rng):
    return [[Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 97)) for _ in range(m)] for _ in range(count)]


def wronskian_matrix(F: SymbolicTuple, alphas) -> list[list[MPoly]]:
    return [[f.diff(a) for f in F.entries] for a in alphas]


def bareiss_det(M: list[list[MPoly]]) -> MPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(M)
    if n == 0:
        raise InvalidInput("empty matrix")
    nv = M[0][0].nvars
    A = [list(r) for r in M]
    sign = 1
    prev = MPoly.const(nv, 1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return MPoly(nv)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def admissible_search(F: SymbolicTuple, seed: int = 0) -> AdmissibleSet:
    """Greedy graded-lex choice of alpha_0..alpha_L keeping the rows D^alpha F independent.

    Independence is tested by exact rank at seeded random rational points; the
    final determinant is then certified nonzero symbolically (size <= 6) or at
    a point.
    """
    _check_independent(F)
    L = len(F) - 1
    rng = random.Random(seed)
    pts = _random_points(F.m, 2, rng)
    chosen: list = []
    rows_at: list = [[] for _ in pts]
    for i in range(L + 1):
        for a in _grlex(F.m, i):
            if a in chosen:
                continue
            new_rows = [[f.diff(a).eval(p) for f in F.entries] for p in pts]
            if any(rank(rows_at[t] + [new_rows[t]], L + 1) == i + 1 for t in range(len(pts))):
                chosen.append(a)
                for t in range(len(pts)):
                    rows_at[t].append(new_rows[t])
                break
        else:
            raise NumericFailure(f"no admissible alpha_{i} found at the sample points")
    A = AdmissibleSet(F.m, tuple(chosen))
    if not _nonvanishing(F, A, rng):
        raise NumericFailure("selected Wronskian vanishes identically")
    return A


def _nonvanishing(F, A, rng) -> bool:
    if len(F) <= SYMBOLIC_LIMIT:
        return not wronskian_eval(F, A, "symbolic").is_zero()
    for p in _random_points(F.m, 4, rng):
        if wronskian_eval(F, A, p) != 0:
            return True
    return not wronskian_eval(F, A, "symbolic").is_zero()


def wronskian_eval(F: SymbolicTuple, A: AdmissibleSet, point="symbolic"):
    """Exact polynomial (``"symbolic"``), exact value at a rational point, or a complex value."""
    if len(A.alphas) != len(F):
        raise InvalidInput(f"admissible set has {len(A.alphas)} indices for {len(F)} entries")
    if A.m != F.m:
        raise InvalidInput("admissible set and tuple disagree on the variable count")
    M = wronskian_matrix(F, A.alphas)
    if isinstance(point, str):
        if point != "symbolic":
            raise InvalidInput(f"unknown evaluation mode {point!r}")
        return bareiss_det(M)
    point = list(point)
    if len(point) != F.m:
        raise InvalidInput("point has the wrong number of coordinates")
    if any(isinstance(x, (complex, float, np.floating, np.complexfloating)) for x in point):
        vals = np.array([[g.eval(point) for g in row] for row in M], dtype=np.complex128)
        return complex(np.linalg.det(vals))
    vals = [[g.eval(point) for g in row] for row in M]
    if any(isinstance(x, QI) for r in vals for x in r):
        return complex(np.linalg.det(np.array(vals, dtype=np.complex128)))
    return determinant(vals)


def log_derivative_integrand(F: SymbolicTuple, A: AdmissibleSet, forms: Sequence[HomPoly], r: float,
                             nodes: int = 4096, t: float = 0.5, retries: int = 3) -> float:
    """Circle average of |z^{sum alpha} W(F) / prod L_i(F)|^t at radius r (m = 1)."""
    if F.m != 1:
        raise InvalidInput("the integrand is implemented for one variable")
    if len(forms) != len(F):
        raise InvalidInput(f"need {len(F)} linear forms")
    if any(L.degree != 1 or L.n != len(F) - 1 for L in forms):
        raise InvalidInput("forms must be linear in len(F) variables")
    if rank([L.to_vector() for L in forms], len(F)) < len(F):
        raise InvalidInput("linear forms are dependent")
    if not 0 < t * A.l < 1 and A.l > 0:
        raise InvalidInput(f"need 0 < t*l < 1 (t={t}, l={A.l})")
    if r <= 0:
        raise InvalidInput("radius must be positive")
    comps = [f.to_univariate() for f in F.entries]
    W = wronskian_eval(F, A, "symbolic").to_univariate()
    num = W * UPoly.z() ** A.l
    den = UPoly((1,))
    for L in forms:
        den = den * L.compose(comps)
    step = 2 * np.pi / nodes
    for attempt in range(retries + 1):
        phase = attempt * step / (retries + 2)
        z = r * np.exp(1j * (phase + step * np.arange(nodes)))
        dv = den.eval_complex(z)
        if np.any(dv == 0):
            continue
        vals = np.abs(num.eval_complex(z) / dv) ** t
        if np.all(np.isfinite(vals)):
            return float(vals.mean())
    raise NumericFailure("integrand pole on every jittered node set")
