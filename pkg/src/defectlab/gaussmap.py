"""Gauss maps of polynomial immersions via Pluecker coordinates.

The tangent m-plane spanned by D_1 f, ..., D_m f is sent to the vector of
its m x m Jacobian minors (columns in lexicographic subset order), divided by
the common polynomial factor so the result is a reduced representation.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb
from typing import Sequence

import sympy

from .bounds import gauss_parameters, theorem_parameters
from .errors import InvalidInput, NondegeneracyFailure, NotAnImmersion
from .exact_algebra import format_rational, rank
from .nevanlinna import MeromorphicCurve, RGrid, fmt_report
from .polyring import MPoly
from .position import HypersurfaceFamily
from .upoly import UPoly, upoly_gcd_many
from .wronskian import bareiss_det


@dataclass(frozen=True)
class PolyImmersion:
    m: int
    n: int
    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, MPoly) else MPoly.from_univariate(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if self.m < 1 or self.n < self.m:
            raise InvalidInput(f"need 1 <= m <= n (m={self.m}, n={self.n})")
        if len(comps) != self.n:
            raise InvalidInput(f"need {self.n} components, got {len(comps)}")
        if any(c.nvars != self.m for c in comps):
            raise InvalidInput(f"components must be polynomials in {self.m} variables")

    def jacobian(self) -> list[list[MPoly]]:
        """Row i is D_i f = (df_1/dz_i, ..., df_n/dz_i)."""
        rows = []
        for i in range(self.m):
            alpha = [0] * self.m
            alpha[i] = 1
            rows.append([c.diff(alpha) for c in self.components])
        return rows

    def generic_rank(self, seed: int = 0, tries: int = 3) -> int:
        rng = random.Random(seed)
        J = self.jacobian()
        best = 0
        for _ in range(tries):
            pt = [Fraction(rng.randint(-997, 997), rng.randint(1, 61)) for _ in range(self.m)]
            best = max(best, rank([[g.eval(pt) for g in row] for row in J], self.n))
            if best == self.m:
                break
        return best

    def substitute(self, polys: Sequence[MPoly]) -> "PolyImmersion":
        return PolyImmersion(self.m, self.n, tuple(substitute(c, polys) for c in self.components))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyImmersion":
        try:
            m, n, raw = obj["m"], obj["n"], obj["components"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("immersion JSON needs 'm', 'n' and 'components'") from exc
        comps = []
        for c in raw:
            c = dict(c)
            c.setdefault("m", m)
            comps.append(MPoly.from_json(c))
        return cls(m, n, tuple(comps))


def substitute(p: MPoly, polys: Sequence[MPoly]) -> MPoly:
    """p(polys[0], ..., polys[k-1])."""
    if len(polys) != p.nvars:
        raise InvalidInput("substitution needs one polynomial per variable")
    nv = polys[0].nvars
    out = MPoly(nv)
    for e, c in p.terms.items():
        term = MPoly.const(nv, c)
        for q, k in zip(polys, e):
            if k:
                term = term * q ** k
        out = out + term
    return out


def column_subsets(n: int, m: int) -> list[tuple]:
    return list(itertools.combinations(range(n), m))


def jacobian_minors(f: PolyImmersion) -> list[MPoly]:
    J = f.jacobian()
    return [bareiss_det([[row[c] for c in cols] for row in J]) for cols in column_subsets(f.n, f.m)]


def _to_sympy(p: MPoly, gens):
    return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[g ** k for g, k in zip(gens, e)])
                       for e, c in p.terms.items()]) if p.terms else sympy.Integer(0)


def _from_sympy(expr, gens, nvars: int) -> MPoly:
    poly = sympy.Poly(sympy.expand(expr), *gens)
    return MPoly(nvars, {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


def polynomial_gcd(polys: Sequence[MPoly]) -> MPoly:
    """gcd of nonzero polynomials: own Euclid in one variable, sympy beyond."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise InvalidInput("gcd of zero polynomials")
    nv = polys[0].nvars
    if nv == 1:
        return MPoly.from_univariate(upoly_gcd_many(p.to_univariate() for p in polys))
    gens = sympy.symbols(f"z0:{nv}")
    g = reduce(sympy.gcd, (_to_sympy(p, gens) for p in polys))
    return _from_sympy(g, gens, nv)


@dataclass
class GaussRepresentation:
    m: int
    n: int
    subsets: list
    raw: list
    pluecker: list
    removed: MPoly

    @property
    def N_amb(self) -> int:
        return comb(self.n, self.m) - 1

    def is_constant(self) -> bool:
        return all(p.total_degree() <= 0 for p in self.pluecker)

    def to_curve(self) -> MeromorphicCurve:
        if self.m != 1:
            raise InvalidInput("only one-parameter Gauss maps are curves")
        return MeromorphicCurve(self.N_amb, tuple(p.to_univariate() for p in self.pluecker))

    def squared_norm(self, point) -> float:
        return sum(abs(complex(p.eval(list(point)))) ** 2 for p in self.raw)

    def rank_drop_roots(self) -> list[complex]:
        """m = 1: points where the Jacobian vanishes (roots of the removed factor)."""
        if self.m != 1:
            raise InvalidInput("rank-drop roots are listed for m = 1 only")
        g = self.removed.to_univariate()
        return [complex(z) for z in g.roots()]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "N_amb": self.N_amb,
                "subsets": [list(s) for s in self.subsets],
                "pluecker": [p.to_json() for p in self.pluecker],
                "removed_factor": self.removed.to_json(),
                "constant": self.is_constant()}


def gauss_map(f: PolyImmersion) -> GaussRepresentation:
    raw = jacobian_minors(f)
    if all(p.is_zero() for p in raw):
        raise NotAnImmersion("every m x m Jacobian minor vanishes identically")
    g = polynomial_gcd(raw)
    red = [p.exact_div(g) if not p.is_zero() else p for p in raw]
    return GaussRepresentation(f.m, f.n, column_subsets(f.n, f.m), raw, red, g)


def pluecker_relation(G: GaussRepresentation, reduced: bool = False) -> MPoly:
    """p01 p23 - p02 p13 + p03 p12 for m = 2, n = 4 (vanishes on the Grassmannian)."""
    if (G.m, G.n) != (2, 4):
        raise InvalidInput("the single quadratic relation exists for m=2, n=4")
    src = G.pluecker if reduced else G.raw
    p = dict(zip(G.subsets, src))
    return p[(0, 1)] * p[(2, 3)] - p[(0, 2)] * p[(1, 3)] + p[(0, 3)] * p[(1, 2)]


def affine_invariance(f: PolyImmersion, A: Sequence[Sequence], c: Sequence) -> dict:
    """Minors of f(Az + c) equal det(A) times the minors of f at Az + c."""
    m = f.m
    A = [[Fraction(x) for x in row] for row in A]
    if len(A) != m or any(len(r) != m for r in A):
        raise InvalidInput("A must be m x m")
    from .exact_algebra import determinant
    det = determinant(A)
    if det == 0:
        raise InvalidInput("A is singular")
    z = [MPoly.var(m, i) for i in range(m)]
    subs = [sum((z[j] * A[i][j] for j in range(m)), MPoly.const(m, Fraction(c[i]))) for i in range(m)]
    g = f.substitute(subs)
    lhs = jacobian_minors(g)
    rhs = [substitute(p, subs) * det for p in jacobian_minors(f)]
    same = all(a == b for a, b in zip(lhs, rhs))
    return {"det": format_rational(det), "minors_scale_by_det": same,
            "gauss_map_unchanged": same and det != 0}


@dataclass
class GaussDefectReport:
    params: dict
    defects: list
    total_fit: float
    total_exact: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.total_exact <= self.rhs

    def as_dict(self) -> dict:
        return {"parameters": self.params, "defects": self.defects, "sum_fit": self.total_fit,
                "sum_exact": format_rational(self.total_exact), "rhs": format_rational(self.rhs),
                "holds": self.holds}


def gauss_defect_pipeline(f: PolyImmersion, family: HypersurfaceFamily, eps, rho, grid: RGrid,
                          k: int | None = None) -> GaussDefectReport:
    """Defects of the Gauss map against a family in P^{N_amb}, next to the bound p(N_amb+1)+eps+rho u(u-1)/d."""
    if f.m != 1:
        raise InvalidInput("the defect pipeline needs m = 1")
    G = gauss_map(f)
    if G.is_constant():
        raise NondegeneracyFailure("the Gauss map is constant")
    N_amb = G.N_amb
    if family.n != N_amb:
        raise InvalidInput(f"family lives in P^{family.n}, Gauss map in P^{N_amb}")
    k = family.k if k is None else k
    if k is None:
        k = N_amb
    degs = set(family.degrees)
    if len(degs) != 1:
        raise InvalidInput("family must be degree-normalised")
    d = degs.pop()
    params = gauss_parameters(N_amb, k, d, eps, rho)
    ps = theorem_parameters(N_amb, k, d, eps, rho)
    curve = G.to_curve()
    level = ps.u - 1
    rows = []
    total_fit = 0.0
    total_exact = Fraction(0)
    for lab, Q in family.members:
        rep = fmt_report(curve, Q, grid, l=level)
        rows.append({"label": lab, "fit": rep.defect_fit, "exact": format_rational(rep.defect_exact),
                     "sandwich_ok": rep.sandwich_ok})
        total_fit += rep.defect_fit if rep.defect_fit is not None else rep.defect_naive
        total_exact += rep.defect_exact
    return GaussDefectReport(params, rows, total_fit, total_exact, ps.rhs_full)
