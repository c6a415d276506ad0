"""The acceptance battery: eleven seeded checks with time budgets.

Shared by ``defectlab selftest`` and the test suite.  Each check returns a
:class:`CriterionResult`; a criterion passes only if its property holds on
every generated case and it finishes inside its budget.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .bounds import theorem_parameters, verify_lemma_new
from .errors import DependenceError
from .filtration import build_filtration, verify_cz
from .gaussmap import PolyImmersion, gauss_map, pluecker_relation
from .nevanlinna import (MeromorphicCurve, RGrid, divisor_truncation_check, fmt_report, multinomial_weights,
                         pointwise_gap, root_data, truncation_identities, veronese_check)
from .polyring import HomPoly, MPoly, _monomials, projective_locus, random_form
from .position import HypersurfaceFamily, check_subgeneral, replace_hypersurfaces, verify_replacement
from .upoly import UPoly, upoly_gcd_many
from .wronskian import SymbolicTuple, admissible_search, wronskian_eval

FMT_GRID = "geom:2,64,24"


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    elapsed: float
    budget: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and self.elapsed <= self.budget

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:>2}. {self.title} ({self.elapsed:.2f}s / {self.budget:.0f}s)"

    def as_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "property_holds": self.ok,
                "elapsed_s": round(self.elapsed, 3), "budget_s": self.budget, "detail": self.detail}


def _timed(number: int, title: str, budget: float, fn: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, title, ok, time.perf_counter() - t0, budget, detail)


# ---------------------------------------------------------------- generators

def empty_family(rng, n: int, d: int, size: int) -> list[HomPoly]:
    while True:
        P = [random_form(rng, n, d) for _ in range(size)]
        if projective_locus(P).empty:
            return P


def binary_gcd_nonempty(forms: list[HomPoly]) -> bool:
    """Oracle for n = 1: common zero iff the dehomogenised gcd is nonconstant or all vanish at (0:1)."""
    dehom = []
    for Q in forms:
        coeffs = [0] * (Q.degree + 1)
        for (a, b), c in Q.terms.items():
            coeffs[b] = c
        dehom.append(UPoly(coeffs))
    at_infinity = all(Q.terms.get((0, Q.degree), 0) == 0 for Q in forms)
    return upoly_gcd_many(dehom).degree > 0 or at_infinity


def random_binary_family(rng) -> list[HomPoly]:
    size = int(rng.integers(1, 5))
    if rng.random() < 0.5:
        lin = random_form(rng, 1, 1, 3)
        return [random_form(rng, 1, int(rng.integers(0, 4)), 3) * lin for _ in range(size)]
    return [random_form(rng, 1, int(rng.integers(1, 5)), 3) for _ in range(size)]


def subgeneral_family(rng, n: int, k: int, d: int) -> HypersurfaceFamily:
    """k+1 members of degree d; the first k share a rational point, so general position fails for k > n."""
    while True:
        x = [Fraction(1)] + [Fraction(int(rng.integers(-3, 4))) for _ in range(n)]
        forms = []
        for _ in range(k):
            R = random_form(rng, n, d, 4)
            forms.append(R - HomPoly.var(n, 0) ** d * R.eval(x))
        forms.append(random_form(rng, n, d, 4))
        if any(Q.is_zero() for Q in forms):
            continue
        fam = HypersurfaceFamily.of(forms, k)
        if check_subgeneral(fam, k).holds:
            return fam


def random_curve(rng, n: int, deg: int, coef: int = 3) -> MeromorphicCurve:
    while True:
        comps = [UPoly([int(c) for c in rng.integers(-coef, coef + 1, int(rng.integers(1, deg + 2)))])
                 for _ in range(n + 1)]
        if all(c.is_zero() for c in comps):
            continue
        f = MeromorphicCurve.reduced(comps)
        if not f.is_constant():
            return f


def fmt_pairs(seed: int, count: int = 20) -> list[tuple[MeromorphicCurve, HomPoly]]:
    rng = np.random.default_rng(seed + 5)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, 4))
        f = random_curve(rng, n, int(rng.integers(1, 5)))
        Q = random_form(rng, n, int(rng.integers(1, 3)), 3)
        if f.compose(Q).is_zero():
            continue
        out.append((f, Q))
    return out


def random_mpoly(rng, m: int, deg: int, coef: int = 4) -> MPoly:
    terms = {}
    for D in range(deg + 1):
        for e in _monomials(m - 1, D):
            if rng.random() < 0.6:
                terms[e] = int(rng.integers(-coef, coef + 1))
    return MPoly(m, terms)


# ---------------------------------------------------------------- criteria

def criterion_cz(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 1)
        tables = failures = 0
        for n, d in itertools.product((1, 2), (1, 2)):
            for _ in range(10):
                P = empty_family(rng, n, d, n + 1)
                for N in range(d, 13, d):
                    rep = verify_cz(build_filtration(P[:n], N, check_locus=False))
                    tables += 1
                    failures += not rep.passed
        return failures == 0, {"tables": tables, "failures": failures}
    return _timed(1, "CZ dimension law m = d^n in the stable range", 120, run)


def criterion_emptiness(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 2)
        mismatches = nonempty = 0
        for _ in range(200):
            fam = random_binary_family(rng)
            fam = [Q for Q in fam if not Q.is_zero()]
            verdict = not projective_locus(fam).empty
            oracle = binary_gcd_nonempty(fam)
            nonempty += oracle
            mismatches += verdict != oracle
        return mismatches == 0, {"families": 200, "nonempty": nonempty, "mismatches": mismatches}
    return _timed(2, "Emptiness verdict agrees with the binary-form gcd oracle (n=1)", 30, run)


def criterion_replacement(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 3)
        ok = 0
        worst_retry = 0
        for i in range(100):
            n = int(rng.integers(1, 3))
            k = int(rng.integers(n, 5))
            d = int(rng.integers(1, 3))
            fam = subgeneral_family(rng, n, k, d)
            res = replace_hypersurfaces(fam, fam.labels, seed=seed + i)
            chk = verify_replacement(fam, res)
            ok += chk["ok"]
            worst_retry = max(worst_retry, max(res.retries))
        return ok == 100, {"families": 100, "succeeded": ok, "max_retries": worst_retry}
    return _timed(3, "Hypersurface replacement: span form, dimension chain, empty locus", 300, run)


def criterion_lemma_new(seed: int = 0) -> CriterionResult:
    def run():
        fails = []
        count = 0
        for n in range(1, 5):
            for k in range(n, 7):
                for d in range(1, 4):
                    for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)):
                        rep = verify_lemma_new(theorem_parameters(n, k, d, eps))
                        count += 1
                        if not rep.passed:
                            fails.append((n, k, d, str(eps)))
        spot = theorem_parameters(1, 1, 1, 1)
        spot_ok = (spot.N, spot.u) == (18, 19)
        return not fails and spot_ok, {"parameter_sets": count, "failures": fails, "spot_N_u": [spot.N, spot.u]}
    return _timed(4, "Parameter lemma (a) and (b), exact rational comparison", 10, run)


def criterion_fmt(seed: int = 0) -> CriterionResult:
    def run():
        grid = RGrid.parse(FMT_GRID, r0=1.0, nodes=4096)
        worst = 0.0
        for f, Q in fmt_pairs(seed):
            rep = fmt_report(f, Q, grid, defect=False)
            worst = max(worst, rep.variation)
        return worst <= 1e-5, {"pairs": 20, "max_variation": worst}
    return _timed(5, "First Main Theorem residual dT - m - N constant to 1e-5", 120, run)


def criterion_wronskian_scaling(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 6)
        done = bad = 0
        while done < 25:
            m = 1 + done % 2
            size = int(rng.integers(2, 5))
            F = SymbolicTuple(m, tuple(random_mpoly(rng, m, int(rng.integers(1, 4))) for _ in range(size)))
            try:
                A = admissible_search(F, seed=seed + done)
            except DependenceError:
                continue
            h = random_mpoly(rng, m, int(rng.integers(1, 4)))
            if h.is_zero():
                continue
            lhs = wronskian_eval(F.scaled(h), A, "symbolic")
            rhs = h ** size * wronskian_eval(F, A, "symbolic")
            bad += lhs != rhs
            done += 1
        return bad == 0, {"cases": done, "violations": bad}
    return _timed(6, "Wronskian scaling W(hF) = h^(L+1) W(F), exact", 30, run)


def criterion_veronese(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 7)
        grid = RGrid.parse(FMT_GRID)
        worst = 0.0
        cases = 0
        for n, d in itertools.product((1, 2), (1, 2)):
            for _ in range(3):
                f = random_curve(rng, n, 3)
                forms = [HomPoly.monomial(a) for a in _monomials(n, d)]
                rep = veronese_check(f, forms, grid, weights=multinomial_weights(n, d))
                worst = max(worst, rep.variation)
                cases += 1
        return worst <= 1e-5, {"cases": cases, "max_variation": worst}
    return _timed(7, "Veronese T_F - d T_f constant to 1e-5", 60, run)


def claim_battery(seed: int = 0) -> list[tuple]:
    """(curve, family, N) triples; includes a zero of multiplicity >= u."""
    w = [HomPoly.var(1, i) for i in range(2)]
    hyp = HypersurfaceFamily.of([w[0], w[1], w[0] + w[1]], 1)
    z = UPoly.z()
    cases = [
        (MeromorphicCurve(1, (UPoly((1,)), z)), hyp, 2),
        (MeromorphicCurve(1, (UPoly((1,)), z ** 3)), hyp, 2),
        (MeromorphicCurve(1, (UPoly((1,)), z ** 5)), hyp, 4),
        (MeromorphicCurve(1, (z * z - 2, (z - 1) ** 4)), hyp, 3),
    ]
    conics = HypersurfaceFamily.of([w[0] * w[0], w[1] * w[1], (w[0] + w[1]) ** 2, w[0] * w[0] + w[0] * w[1] + w[1] * w[1]], 1)
    cases.append((MeromorphicCurve(1, (z + 3, z ** 3)), conics, 4))
    v = [HomPoly.var(2, i) for i in range(3)]
    plane = HypersurfaceFamily.of([v[0], v[1], v[2], v[0] + v[1] + v[2]], 2)
    cases.append((MeromorphicCurve(2, (UPoly((1,)), z, z ** 3)), plane, 2))
    rng = np.random.default_rng(seed + 8)
    while len(cases) < 9:
        f = random_curve(rng, 1, 3)
        if any(f.compose(Q).is_zero() for Q in hyp.forms):
            continue
        cases.append((f, hyp, 3))
    return cases


def criterion_claim(seed: int = 0) -> CriterionResult:
    def run():
        zeros = bad = 0
        truncated = False
        for f, fam, N in claim_battery(seed):
            rep = divisor_truncation_check(f, fam, N, seed=seed)
            zeros += len(rep.entries)
            bad += sum(not e["holds"] for e in rep.entries)
            truncated = truncated or rep.truncation_exercised
        return bad == 0 and truncated, {"zeros": zeros, "violations": bad, "truncation_exercised": truncated}
    return _timed(8, "Divisor inequality with min{u-1, nu} truncation, exact per zero", 60, run)


def criterion_pointwise(seed: int = 0) -> CriterionResult:
    def run():
        w = [HomPoly.var(1, i) for i in range(2)]
        fam = HypersurfaceFamily.of([w[0], w[1], w[0] + w[1]], 1)
        f = MeromorphicCurve(1, (UPoly((1,)), UPoly.z()))
        g1 = pointwise_gap(f, fam, 1, 10000, 2.0, seed)
        g2 = pointwise_gap(f, fam, 1, 20000, 2.0, seed)
        m1, m2 = float(g1.max()), float(g2.max())
        change = abs(m2 - m1) / max(abs(m1), 1e-300)
        ok = bool(np.isfinite(m1) and np.isfinite(m2) and change < 0.01)
        return ok, {"max_gap": m1, "max_gap_doubled": m2, "relative_change": change}
    return _timed(9, "Pointwise chain gap bounded and stable under sample doubling", 60, run)


def criterion_invariants(seed: int = 0) -> CriterionResult:
    def run():
        grid = RGrid.parse(FMT_GRID)
        w = [HomPoly.var(1, i) for i in range(2)]
        z = UPoly.z()
        lin = MeromorphicCurve(1, (UPoly((1,)), z))
        pairs = [(lin, w[1]), (MeromorphicCurve(1, (UPoly((1,)), z * z)), w[0]), (lin, w[0] + w[1]),
                 (MeromorphicCurve(1, (UPoly((1,)), z ** 3)), w[1])] + fmt_pairs(seed)
        failures = []
        for i, (f, Q) in enumerate(pairs):
            for M in (1, 3):
                rep = fmt_report(f, Q, grid, l=M)
                ident = truncation_identities(root_data(f.compose(Q)), M)
                if not (all(rep.invariants.values()) and all(ident.values()) and rep.sandwich_ok):
                    failures.append({"pair": i, "M": M, "invariants": rep.invariants, "identities": ident,
                                     "defect_fit": rep.defect_fit})
        return not failures, {"profiles": 2 * len(pairs), "failures": failures}
    return _timed(10, "Defect sandwich and monotonicity invariants", 60, run)


def _sympy_minors(f: PolyImmersion):
    import sympy
    zs = sympy.symbols(f"z0:{f.m}")
    comps = [sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[v ** k for v, k in zip(zs, e)])
                         for e, c in p.terms.items()]) if p.terms else sympy.Integer(0) for p in f.components]
    J = sympy.Matrix([[sympy.diff(c, v) for c in comps] for v in zs])
    out = []
    for cols in itertools.combinations(range(f.n), f.m):
        out.append(sympy.expand(J.extract(list(range(f.m)), list(cols)).det(method="berkowitz")))
    return zs, out


def _as_sympy(p: MPoly, zs):
    import sympy
    return sympy.expand(sympy.Add(*[sympy.Rational(c.numerator, c.denominator) *
                                    sympy.Mul(*[v ** k for v, k in zip(zs, e)]) for e, c in p.terms.items()]))


def criterion_gauss(seed: int = 0) -> CriterionResult:
    def run():
        rng = np.random.default_rng(seed + 11)
        mismatches = relation_bad = relation_cases = done = 0
        while done < 20:
            m, n = ((2, 4) if done % 4 == 0 else (1 + done % 2, int(rng.integers(2, 5))))
            if n < m:
                continue
            f = PolyImmersion(m, n, tuple(random_mpoly(rng, m, int(rng.integers(1, 4))) for _ in range(n)))
            if f.generic_rank() < m:
                continue
            G = gauss_map(f)
            zs, oracle = _sympy_minors(f)
            mismatches += any(_as_sympy(p, zs) != o for p, o in zip(G.raw, oracle))
            if (m, n) == (2, 4):
                relation_cases += 1
                relation_bad += not pluecker_relation(G).is_zero()
            done += 1
        ok = mismatches == 0 and relation_bad == 0 and relation_cases > 0
        return ok, {"immersions": done, "minor_mismatches": mismatches, "relation_cases": relation_cases,
                    "relation_failures": relation_bad}
    return _timed(11, "Pluecker minors match the symbolic oracle; quadratic relation vanishes", 60, run)


CRITERIA = [criterion_cz, criterion_emptiness, criterion_replacement, criterion_lemma_new, criterion_fmt,
            criterion_wronskian_scaling, criterion_veronese, criterion_claim, criterion_pointwise,
            criterion_invariants, criterion_gauss]


def run_all(seed: int = 0, only=None) -> list[CriterionResult]:
    picked = CRITERIA if not only else [CRITERIA[i - 1] for i in only]
    return [c(seed) for c in picked]
