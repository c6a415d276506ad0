"""One-variable Nevanlinna functionals for polynomial curves f: C -> P^n.

Counting functions are exact root bookkeeping (square-free decomposition
gives the multiplicities, numpy gives the moduli); characteristic and
proximity functions are trapezoidal circle averages of log-norms, computed
by the kernels in :mod:`defectlab._kernels` with a doubling self-check.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (CurveDegeneracy, DependenceError, InvalidInput, NondegeneracyFailure, NumericFailure,
                     UndefinedDefect)
from .exact_algebra import format_rational, rank
from .filtration import build_filtration
from .polyring import HomPoly, _monomials
from .position import HypersurfaceFamily, replace_hypersurfaces
from .upoly import (UPoly, coprime_base, format_coefficient, parse_coefficient, squarefree_decomposition,
                    upoly_gcd_many, vanishing_order)
from .wronskian import AdmissibleSet, SymbolicTuple, wronskian_eval

BASE_NODES = 4096
NODE_CAP = 1 << 16
QUAD_TOL = 1e-12


# ---------------------------------------------------------------- data types

@dataclass(frozen=True)
class MeromorphicCurve:
    n: int
    components: tuple

    def __post_init__(self):
        comps = tuple(c if isinstance(c, UPoly) else UPoly(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.n + 1:
            raise InvalidInput(f"need {self.n + 1} components, got {len(comps)}")
        if all(c.is_zero() for c in comps):
            raise InvalidInput("all components are zero")
        if upoly_gcd_many(comps).degree > 0:
            raise InvalidInput("components share a root: representation is not reduced")

    @classmethod
    def reduced(cls, components: Sequence) -> "MeromorphicCurve":
        comps = [c if isinstance(c, UPoly) else UPoly(c) for c in components]
        g = upoly_gcd_many(comps)
        if g.degree > 0:
            comps = [c.exact_div(g) if not c.is_zero() else c for c in comps]
        return cls(len(comps) - 1, tuple(comps))

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components if not c.is_zero())

    def is_constant(self) -> bool:
        return self.degree == 0

    def coeff_matrix(self) -> np.ndarray:
        width = self.degree + 1
        M = np.zeros((self.n + 1, width), dtype=np.complex128)
        for j, c in enumerate(self.components):
            cc = c.complex_coeffs()
            M[j, :len(cc)] = cc
        return M

    def compose(self, Q: HomPoly) -> UPoly:
        if Q.n != self.n:
            raise InvalidInput(f"form lives in P^{Q.n}, curve in P^{self.n}")
        return Q.compose(self.components)

    def to_json(self) -> dict:
        return {"n": self.n, "components": [[format_coefficient(c) for c in p.coeffs] for p in self.components]}

    @classmethod
    def from_json(cls, obj: dict) -> "MeromorphicCurve":
        try:
            n, raw = obj["n"], obj["components"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("curve JSON needs 'n' and 'components'") from exc
        return cls(n, tuple(UPoly([parse_coefficient(x) for x in comp]) for comp in raw))


@dataclass(frozen=True)
class RGrid:
    r0: float
    radii: tuple
    nodes: int = BASE_NODES

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if self.r0 <= 0:
            raise InvalidInput("r0 must be positive")
        if not radii:
            raise InvalidInput("empty radius grid")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise InvalidInput("radii must be strictly increasing")
        if radii[0] <= self.r0:
            raise InvalidInput("need r0 < r_1")
        if self.nodes < 256 or self.nodes & (self.nodes - 1):
            raise InvalidInput("nodes must be a power of two >= 256")

    @classmethod
    def geometric(cls, lo: float, hi: float, count: int, r0: float = 1.0, nodes: int = BASE_NODES) -> "RGrid":
        if count < 1:
            raise InvalidInput("grid needs at least one radius")
        return cls(r0, tuple(np.geomspace(lo, hi, count)), nodes)

    @classmethod
    def parse(cls, text: str, r0: float = 1.0, nodes: int = BASE_NODES) -> "RGrid":
        """``geom:lo,hi,count``, ``lin:lo,hi,count`` or an explicit comma list."""
        try:
            if text.startswith("geom:"):
                lo, hi, cnt = text[5:].split(",")
                return cls.geometric(float(lo), float(hi), int(cnt), r0, nodes)
            if text.startswith("lin:"):
                lo, hi, cnt = text[4:].split(",")
                return cls(r0, tuple(np.linspace(float(lo), float(hi), int(cnt))), nodes)
            return cls(r0, tuple(float(x) for x in text.split(",")), nodes)
        except ValueError as exc:
            raise InvalidInput(f"cannot parse grid {text!r}: {exc}") from exc


# ---------------------------------------------------------------- quadrature

def circle_log_mean(C, r: float, nodes: int = BASE_NODES, w=None) -> float:
    """Mean of log sqrt(sum_j w_j |p_j|^2) over |z| = r, doubling nodes until stable."""
    phase = 0.0
    prev = _kernels.log_norm_mean(C, r, nodes, w, phase)
    if not np.isfinite(prev):
        # a root sits exactly on a node: shift the nodes by an irrational fraction of a step
        phase = 0.6180339887498949 * 2 * math.pi / nodes
        prev = _kernels.log_norm_mean(C, r, nodes, w, phase)
        if not np.isfinite(prev):
            raise NumericFailure(f"log-norm singular on the circle |z| = {r}")
    k = nodes
    while True:
        k *= 2
        if k > NODE_CAP:
            raise NumericFailure(f"circle average at r={r} did not settle by {NODE_CAP} nodes")
        cur = _kernels.log_norm_mean(C, r, k, w, phase)
        if abs(cur - prev) <= QUAD_TOL * max(1.0, abs(cur)):
            return cur
        prev = cur


NEAR_BAND = 0.05


def circle_log_abs_mean(g: UPoly, r: float, nodes: int = BASE_NODES, roots=None) -> float:
    """Mean of log|g| over |z| = r.

    Roots within 5% of the circle are divided out and their exact circle
    means log max(r, |a|) added back, so only a smooth quotient is integrated.
    """
    if roots is None:
        roots = root_data(g).roots
    near = [(a, nu) for a, nu in roots if abs(abs(a) - r) < NEAR_BAND * r]
    if not near:
        return circle_log_mean(g.complex_coeffs()[None, :], r, nodes)
    exact = sum(nu * math.log(max(r, abs(a))) for a, nu in near)
    phase = 0.6180339887498949 * 2 * math.pi / nodes

    def quad(k):
        z = r * np.exp(1j * (phase + 2 * np.pi * np.arange(k) / k))
        vals = np.log(np.abs(g.eval_complex(z)))
        for a, nu in near:
            vals -= nu * np.log(np.abs(z - a))
        return float(vals.mean())

    prev = quad(nodes)
    k = nodes
    while True:
        k *= 2
        if k > NODE_CAP:
            raise NumericFailure(f"circle average at r={r} did not settle by {NODE_CAP} nodes")
        cur = quad(k)
        if abs(cur - prev) <= 1e3 * QUAD_TOL * max(1.0, abs(cur)):
            return cur + exact
        prev = cur


# ---------------------------------------------------------------- functionals

def characteristic(f: MeromorphicCurve, grid: RGrid, weights=None) -> np.ndarray:
    """T_f(r, r0) = mean log||f|| on |z| = r minus the same on |z| = r0."""
    C = f.coeff_matrix()
    base = circle_log_mean(C, grid.r0, grid.nodes, weights)
    return np.array([circle_log_mean(C, r, grid.nodes, weights) - base for r in grid.radii])


@dataclass(frozen=True)
class RootData:
    """Roots of Q(f) with exact multiplicities (moduli numeric)."""

    poly: UPoly
    roots: tuple  # (complex root, multiplicity)

    def total(self, M: int | None = None) -> int:
        return sum(nu if M is None else min(nu, M) for _, nu in self.roots)


def root_data(g: UPoly) -> RootData:
    if g.is_zero():
        raise CurveDegeneracy("Q(f) vanishes identically: the curve lies in the hypersurface")
    roots = []
    v = g.valuation_at_zero()
    if v:
        roots.append((0j, v))
    rest = g.shift_down(v)
    if rest.degree > 0:
        _, parts = squarefree_decomposition(rest)
        for a, mult in parts:
            for z in a.roots():
                roots.append((complex(z), mult))
    return RootData(g, tuple(roots))


def counting_from_roots(rd: RootData, grid: RGrid, M: int | None = None) -> np.ndarray:
    """N^[M](r, r0) = sum over |a| <= r of min(nu, M) log(r / max(r0, |a|))."""
    out = []
    for r in grid.radii:
        s = 0.0
        for a, nu in rd.roots:
            mod = abs(a)
            if mod <= r:
                s += (nu if M is None else min(nu, M)) * math.log(r / max(grid.r0, mod))
        out.append(s)
    return np.array(out)


def counting(f: MeromorphicCurve, Q: HomPoly, grid: RGrid, M: int | None = None) -> np.ndarray:
    if M is not None and M < 1:
        raise InvalidInput("truncation level must be >= 1")
    return counting_from_roots(root_data(f.compose(Q)), grid, M)


def proximity(f: MeromorphicCurve, Q: HomPoly, grid: RGrid) -> np.ndarray:
    """m_f(r, r0, Q) = mean log(||f||^d / |Q(f)|) at r minus the same at r0."""
    g = f.compose(Q)
    if g.is_zero():
        raise CurveDegeneracy("Q(f) vanishes identically: proximity undefined")
    C = f.coeff_matrix()
    roots = root_data(g).roots
    d = Q.degree

    def at(r):
        return d * circle_log_mean(C, r, grid.nodes) - circle_log_abs_mean(g, r, grid.nodes, roots)

    base = at(grid.r0)
    return np.array([at(r) - base for r in grid.radii])


# ---------------------------------------------------------------- profiles

@dataclass
class NevanlinnaProfile:
    radii: np.ndarray
    T: np.ndarray
    N: np.ndarray
    N_trunc: np.ndarray
    m: np.ndarray
    d: int
    M: int | None
    meta: dict = field(default_factory=dict)

    @property
    def residual(self) -> np.ndarray:
        return self.d * self.T - self.m - self.N

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "T", "N", "N_trunc", "m", "residual"])
        for row in zip(self.radii, self.T, self.N, self.N_trunc, self.m, self.residual):
            w.writerow([f"{x:.15g}" for x in row])
        return buf.getvalue()

    def invariants(self, tol: float = 1e-9) -> dict:
        dT, dN, dNt = (np.diff(a) for a in (self.T, self.N, self.N_trunc))
        return {
            "T_nondecreasing": bool(np.all(dT >= -tol)),
            "N_nondecreasing": bool(np.all(dN >= 0)),
            "N_trunc_nondecreasing": bool(np.all(dNt >= 0)),
            "N_trunc_le_N": bool(np.all(self.N_trunc <= self.N + 1e-15)),
        }


def profile(f: MeromorphicCurve, Q: HomPoly, grid: RGrid, M: int | None = 1) -> NevanlinnaProfile:
    rd = root_data(f.compose(Q))
    return NevanlinnaProfile(
        radii=np.array(grid.radii), T=characteristic(f, grid),
        N=counting_from_roots(rd, grid), N_trunc=counting_from_roots(rd, grid, M),
        m=proximity(f, Q, grid), d=Q.degree, M=M,
        meta={"roots": len(rd.roots), "curve_degree": f.degree},
    )


def truncation_identities(rd: RootData, M: int) -> dict:
    """N^[M] <= N and N^[M] <= M N^[1] hold termwise on the multiplicities, hence for every r."""
    le_full = all(min(nu, M) <= nu for _, nu in rd.roots)
    le_m1 = all(min(nu, M) <= M * min(nu, 1) for _, nu in rd.roots)
    return {"N_trunc_le_N": le_full, "N_trunc_le_M_N1": le_m1}


def _tail_slope(radii, values, points: int = 3) -> float:
    """Coefficient A of A log r + B + C r^-2 through the last grid points."""
    r = np.asarray(radii[-points:])
    X = np.column_stack([np.log(r), np.ones_like(r), r ** -2.0])
    return float(np.linalg.solve(X, np.asarray(values[-points:]))[0])


def exact_defect(f: MeromorphicCurve, Q: HomPoly, l: int | None = 1) -> Fraction:
    """Asymptotic 1 - lim N^[l] / (d T) for a polynomial curve: 1 - sum min(nu, l) / (d deg f)."""
    if f.is_constant():
        raise UndefinedDefect("T_f is bounded for a constant curve")
    rd = root_data(f.compose(Q))
    return 1 - Fraction(rd.total(l), Q.degree * f.degree)


@dataclass
class FMTReport:
    residual: np.ndarray
    variation: float
    defect_fit: float | None
    defect_naive: float | None
    defect_exact: Fraction | None
    sandwich_ok: bool | None
    invariants: dict
    profile: NevanlinnaProfile
    l: int | None

    def as_dict(self) -> dict:
        return {
            "residual_variation": self.variation,
            "residual_first": float(self.residual[0]),
            "defect_level": self.l,
            "defect_fit": self.defect_fit, "defect_naive": self.defect_naive,
            "defect_exact": format_rational(self.defect_exact) if self.defect_exact is not None else None,
            "sandwich_ok": self.sandwich_ok,
            "invariants": self.invariants,
        }


def fmt_report(f: MeromorphicCurve, Q: HomPoly, grid: RGrid, l: int | None = 1, defect: bool = True,
               tol: float = 1e-3) -> FMTReport:
    """First Main Theorem residual d T - m - N and defect estimates.

    The defect is normalised by d (1 - limsup N^[l] / (d T)).  ``defect_fit``
    takes the log r slopes of N^[l] and T from a three-point tail fit;
    ``defect_naive`` is 1 - max over the last third of the grid of N^[l]/(d T).
    """
    prof = profile(f, Q, grid, l)
    res = prof.residual
    variation = float(res.max() - res.min())
    fit = naive = exact = None
    sandwich = None
    if defect:
        if f.is_constant():
            raise UndefinedDefect("T_f is bounded for a constant curve; the defect is undefined")
        d = Q.degree
        tail = max(1, len(grid.radii) // 3)
        naive = float(1 - np.max(prof.N_trunc[-tail:] / (d * prof.T[-tail:])))
        if len(grid.radii) >= 3:
            fit = 1 - _tail_slope(grid.radii, prof.N_trunc) / (d * _tail_slope(grid.radii, prof.T))
        exact = exact_defect(f, Q, l)
        est = fit if fit is not None else naive
        sandwich = bool(-tol <= est <= 1 + tol)
    return FMTReport(res, variation, fit, naive, exact, sandwich, prof.invariants(), prof, l)


# ---------------------------------------------------------------- Veronese

def multinomial_weights(n: int, d: int) -> list[int]:
    """Weights making sum_alpha w_alpha |x^alpha|^2 = ||x||^(2d)."""
    out = []
    for a in _monomials(n, d):
        w = math.factorial(d)
        for x in a:
            w //= math.factorial(x)
        out.append(w)
    return out


@dataclass
class VeroneseReport:
    difference: np.ndarray
    variation: float
    tolerance: float
    u: int

    @property
    def passed(self) -> bool:
        return self.variation <= self.tolerance

    def as_dict(self) -> dict:
        return {"u": self.u, "variation": self.variation, "tolerance": self.tolerance,
                "passed": self.passed, "first": float(self.difference[0])}


def veronese_check(f: MeromorphicCurve, forms: Sequence[HomPoly], grid: RGrid, weights=None,
                   tolerance: float = 1e-5) -> VeroneseReport:
    """Variation of T_F - d T_f over the grid for F = (L_1(f) : ... : L_u(f)).

    ``weights`` (one positive number per form) turns ||F|| into a weighted
    Hermitian norm; with :func:`multinomial_weights` on the monomial basis the
    difference is exactly constant.
    """
    if not forms:
        raise InvalidInput("no forms given")
    d = forms[0].degree
    n = f.n
    u = comb(n + d, n)
    if any(L.degree != d or L.n != n for L in forms):
        raise InvalidInput("forms must share degree d and live in P^n")
    if len(forms) != u:
        raise InvalidInput(f"need u = {u} forms, got {len(forms)}")
    if rank([L.to_vector() for L in forms], u) < u:
        raise InvalidInput("forms are linearly dependent in V_d")
    if weights is not None and (len(weights) != u or any(w <= 0 for w in weights)):
        raise InvalidInput("weights must be u positive numbers")
    F = MeromorphicCurve.reduced([L.compose(f.components) for L in forms])
    TF = characteristic(F, grid, weights)
    Tf = characteristic(f, grid)
    diff = TF - d * Tf
    return VeroneseReport(diff, float(diff.max() - diff.min()), tolerance, u)


# ---------------------------------------------------------------- Theorem-level checks

@dataclass
class SubsetContext:
    labels: tuple
    P: list
    weights: list


def subset_filtrations(family: HypersurfaceFamily, k: int, N: int, seed: int = 0) -> tuple[int, list]:
    """Replacement and filtration for every (k+1)-subset in sorted label order; returns (b, contexts)."""
    labels = sorted(family.labels)
    ctx = []
    for sub in itertools.combinations(labels, k + 1):
        rep = replace_hypersurfaces(family, sub, seed)
        table = build_filtration(rep.outputs[:family.n], N, check_locus=False)
        ctx.append(SubsetContext(sub, rep.outputs, list(table.weights)))
    return min(min(c.weights) for c in ctx), ctx


def _family_setup(f: MeromorphicCurve, family: HypersurfaceFamily, k: int | None):
    k = family.k if k is None else k
    if k is None:
        raise InvalidInput("position parameter k missing")
    if family.n != f.n:
        raise InvalidInput(f"family lives in P^{family.n}, curve in P^{f.n}")
    degs = set(family.degrees)
    if len(degs) != 1:
        raise InvalidInput("family must be degree-normalised")
    polys = []
    for lab, Q in family.members:
        g = f.compose(Q)
        if g.is_zero():
            raise CurveDegeneracy(f"Q[{lab}](f) vanishes identically")
        polys.append(g)
    return k, degs.pop(), polys


@dataclass
class SMTReport:
    q: int
    k: int
    p: int
    d: int
    N: int
    u: int
    b: int
    ratio: Fraction
    coefficient: Fraction
    theorem_coefficient: Fraction
    vacuous: bool
    pointwise: dict
    margin: np.ndarray
    radii: np.ndarray

    def as_dict(self) -> dict:
        return {
            "q": self.q, "k": self.k, "p": self.p, "d": self.d, "N": self.N, "u": self.u, "b": self.b,
            "puN_over_db": format_rational(self.ratio),
            "coefficient": format_rational(self.coefficient),
            "theorem_coefficient": format_rational(self.theorem_coefficient),
            "vacuous": self.vacuous,
            "pointwise": self.pointwise,
            "margin": [float(x) for x in self.margin],
            "margin_tail_min": float(self.margin[len(self.margin) // 2:].min()),
            "radii": [float(x) for x in self.radii],
        }


def pointwise_gap(f: MeromorphicCurve, family: HypersurfaceFamily, k: int, samples: int, radius: float = 2.0,
                  seed: int = 0) -> np.ndarray:
    """Per-sample gap log prod ||f||^d/|Q_i| - p log prod_{j<=n} ||f||^d/|P_Ij| on |z| = radius.

    I lists the k+1 members smallest at the sample, in increasing order; its
    replacement is cached per ordered tuple.
    """
    n = family.n
    p = k - n + 1
    d = family.degrees[0]
    rng = np.random.default_rng(seed)
    z = radius * np.exp(2j * np.pi * rng.random(samples))
    fvals = np.array([c.eval_complex(z) for c in f.components])
    lognorm = 0.5 * np.log(np.sum(np.abs(fvals) ** 2, axis=0))
    qpolys = [f.compose(Q) for Q in family.forms]
    logq = np.array([np.log(np.abs(g.eval_complex(z))) for g in qpolys])
    cache: dict = {}
    gaps = np.empty(samples)
    labels = family.labels
    for s in range(samples):
        order = tuple(np.argsort(logq[:, s], kind="stable")[:k + 1])
        if order not in cache:
            rep = replace_hypersurfaces(family, [labels[i] for i in order], seed)
            cache[order] = [f.compose(P) for P in rep.outputs[:n]]
        lhs = np.sum(d * lognorm[s] - logq[:, s])
        rhs = sum(d * lognorm[s] - math.log(abs(complex(P.eval_complex(z[s])))) for P in cache[order])
        gaps[s] = lhs - p * rhs
    return gaps


def smt_margin(f: MeromorphicCurve, family: HypersurfaceFamily, eps, N_custom: int, grid: RGrid,
               k: int | None = None, samples: int = 10000, radius: float = 2.0, seed: int = 0) -> SMTReport:
    k, d, polys = _family_setup(f, family, k)
    n, q = family.n, family.q
    eps = Fraction(eps) if not isinstance(eps, str) else Fraction(eps)
    if N_custom % d or N_custom <= n * d:
        raise InvalidInput(f"N must be divisible by d={d} and exceed n*d={n * d}")
    p = k - n + 1
    u = comb(N_custom + n, n)
    b, _ = subset_filtrations(family, k, N_custom, seed)
    ratio = Fraction(p * u * N_custom, d * b)
    coef = q - ratio
    gaps = pointwise_gap(f, family, k, samples, radius, seed)
    gaps2 = pointwise_gap(f, family, k, 2 * samples, radius, seed)
    pw = {"samples": samples, "radius": radius, "max_gap": float(gaps.max()),
          "max_gap_doubled": float(gaps2.max()),
          "relative_change": float(abs(gaps2.max() - gaps.max()) / max(abs(gaps.max()), 1e-300))}
    T = characteristic(f, grid)
    total = sum(counting_from_roots(root_data(g), grid, u - 1) for g in polys) / d
    margin = total - float(coef) * T
    return SMTReport(q, k, p, d, N_custom, u, b, ratio, coef, q - p * (n + 1) - eps, coef <= 0, pw, margin,
                     np.array(grid.radii))


@dataclass
class DivisorReport:
    entries: list
    b: int
    p: int
    u: int
    N: int
    truncation_exercised: bool

    @property
    def passed(self) -> bool:
        return all(e["holds"] for e in self.entries)

    def as_dict(self) -> dict:
        return {"b": self.b, "p": self.p, "u": self.u, "N": self.N, "passed": self.passed,
                "truncation_exercised": self.truncation_exercised, "zeros": self.entries}


def monomial_wronskian(f: MeromorphicCurve, N: int) -> UPoly:
    """Ordinary Wronskian of (phi(f)) for the monomial basis phi of V_N."""
    comps = [HomPoly.monomial(a).compose(f.components) for a in _monomials(f.n, N)]
    F = SymbolicTuple.univariate(comps)
    A = AdmissibleSet(1, tuple((i,) for i in range(len(comps))))
    try:
        from .wronskian import _check_independent
        _check_independent(F)
    except DependenceError as exc:
        raise NondegeneracyFailure("f is algebraically degenerate at degree N", exc.combination) from exc
    W = wronskian_eval(F, A, "symbolic").to_univariate()
    if W.is_zero():
        raise NondegeneracyFailure("Wronskian vanishes identically")
    return W


def divisor_truncation_check(f: MeromorphicCurve, family: HypersurfaceFamily, N: int, k: int | None = None,
                             seed: int = 0, b: int | None = None) -> DivisorReport:
    """b sum nu_Qi - p nu_W <= b sum min(u-1, nu_Qi), exactly, at every zero of prod Q_i(f).

    Zeros are grouped by the elements of a coprime base of the Q_i(f) and W,
    so every multiplicity is constant on the (possibly irrational) roots of
    one base element and is obtained by repeated exact division.
    """
    k, d, polys = _family_setup(f, family, k)
    n = family.n
    p = k - n + 1
    u = comb(N + n, n)
    if b is None:
        b, _ = subset_filtrations(family, k, N, seed)
    W = monomial_wronskian(f, N)
    base = coprime_base(polys + [W])
    entries = []
    truncated = False
    for beta in base:
        nus = [vanishing_order(g, beta) for g in polys]
        if not any(nus):
            continue
        nu_w = vanishing_order(W, beta)
        lhs = b * sum(nus) - p * nu_w
        rhs = b * sum(min(u - 1, x) for x in nus)
        truncated = truncated or any(x > u - 1 for x in nus)
        entries.append({"factor": [format_coefficient(c) for c in beta.coeffs], "points": beta.degree,
                        "nu_Q": nus, "nu_W": nu_w, "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs})
    return DivisorReport(entries, b, p, u, N, truncated)
