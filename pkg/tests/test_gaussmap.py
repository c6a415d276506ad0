from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from defectlab.acceptance import random_mpoly
from defectlab.errors import InvalidInput, NondegeneracyFailure, NotAnImmersion
from defectlab.gaussmap import (
    PolyImmersion, affine_invariance, gauss_defect_pipeline, gauss_map, jacobian_minors, pluecker_relation,
    polynomial_gcd,
)
from defectlab.nevanlinna import RGrid
from defectlab.polyring import HomPoly, MPoly
from defectlab.position import HypersurfaceFamily

z = MPoly.var(1, 0)
z1, z2 = MPoly.var(2, 0), MPoly.var(2, 1)
GRID = RGrid.geometric(2, 64, 24)


def test_curve_example():
    G = gauss_map(PolyImmersion(1, 2, (z, z * z)))
    assert G.pluecker == [MPoly.const(1, 1), z * 2]
    assert G.N_amb == 1 and not G.is_constant()


def test_surface_example():
    G = gauss_map(PolyImmersion(2, 3, (z1, z2, z1 * z2)))
    assert G.subsets == [(0, 1), (0, 2), (1, 2)]
    assert G.raw == [MPoly.const(2, 1), z1, -z2]


def test_line_has_constant_gauss_map():
    G = gauss_map(PolyImmersion(1, 2, (z, z * 2)))
    assert G.is_constant()
    fam = HypersurfaceFamily.of([HomPoly.var(1, 0), HomPoly.var(1, 1)], 1)
    with pytest.raises(NondegeneracyFailure):
        gauss_defect_pipeline(PolyImmersion(1, 2, (z, z * 2)), fam, 1, 0, GRID)


def test_not_an_immersion():
    with pytest.raises(NotAnImmersion):
        gauss_map(PolyImmersion(1, 2, (MPoly.const(1, 3), MPoly.const(1, 1))))


def test_gcd_reduction():
    # f = (z^2, z^3): Jacobian (2z, 3z^2) has the common factor z
    G = gauss_map(PolyImmersion(1, 2, (z ** 2, z ** 3)))
    assert G.removed.total_degree() == 1
    assert G.pluecker[0].total_degree() == 0
    assert G.rank_drop_roots() == [0j]
    g = polynomial_gcd([z1 * z1 * z2, z1 * z2 * z2 + z1 * z2])
    assert g.total_degree() == 2 and g.exact_div(z1 * z2).total_degree() == 0


def _sympy_minors(f):
    zs = sympy.symbols(f"z0:{f.m}")
    comps = [sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([v ** k for v, k in zip(zs, e)])
                 for e, c in p.terms.items()) for p in f.components]
    J = sympy.Matrix([[sympy.diff(c, v) for c in comps] for v in zs])
    from itertools import combinations
    return [sympy.expand(J[:, list(cols)].det()) for cols in combinations(range(f.n), f.m)], zs


@given(st.integers(0, 10_000))
def test_minors_match_sympy(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 3))
    n = int(rng.integers(m + 1, 5))
    f = PolyImmersion(m, n, tuple(random_mpoly(rng, m, 3) for _ in range(n)))
    ref, zs = _sympy_minors(f)
    for mine, theirs in zip(jacobian_minors(f), ref):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([v ** k for v, k in zip(zs, e)])
                   for e, c in mine.terms.items())
        assert sympy.expand(expr - theirs) == 0


@given(st.integers(0, 10_000))
def test_pluecker_relation_vanishes(seed):
    rng = np.random.default_rng(seed)
    f = PolyImmersion(2, 4, tuple(random_mpoly(rng, 2, 3) for _ in range(4)))
    if all(p.is_zero() for p in jacobian_minors(f)):
        return
    G = gauss_map(f)
    assert pluecker_relation(G).is_zero()
    assert pluecker_relation(G, reduced=True).is_zero()


@given(st.integers(0, 10_000))
def test_affine_invariance(seed):
    rng = np.random.default_rng(seed)
    f = PolyImmersion(2, 3, tuple(random_mpoly(rng, 2, 2) for _ in range(3)))
    A = [[int(x) for x in rng.integers(-3, 4, 2)] for _ in range(2)]
    if A[0][0] * A[1][1] - A[0][1] * A[1][0] == 0:
        return
    rep = affine_invariance(f, A, [Fraction(int(x), 2) for x in rng.integers(-4, 5, 2)])
    assert rep["minors_scale_by_det"]


def test_affine_invariance_rejects_singular():
    f = PolyImmersion(2, 3, (z1, z2, z1 * z2))
    with pytest.raises(InvalidInput):
        affine_invariance(f, [[1, 2], [2, 4]], [0, 0])


def test_squared_norm_positive_off_rank_drop():
    G = gauss_map(PolyImmersion(1, 3, (z ** 2, z ** 3, z)))
    assert G.squared_norm([0.3 + 0.1j]) > 0
    G = gauss_map(PolyImmersion(1, 2, (z ** 2, z ** 3)))
    assert G.squared_norm([0.0]) == 0 and G.squared_norm([0.5]) > 0


def test_defect_pipeline_parabola():
    f = PolyImmersion(1, 2, (z, z * z))
    fam = HypersurfaceFamily.of([HomPoly.var(1, 0), HomPoly.var(1, 1)], 1)
    rep = gauss_defect_pipeline(f, fam, 1, 0, GRID)
    # G = (1 : 2z) omits w0 = 0 and meets w1 = 0 once
    exact = {row["label"]: row["exact"] for row in rep.defects}
    assert exact == {"Q1": "1", "Q2": "0"}
    assert rep.holds and rep.total_exact == 1 and rep.rhs == 3


def test_defect_pipeline_ambient_check():
    f = PolyImmersion(1, 3, (z, z * z, z ** 3))
    fam = HypersurfaceFamily.of([HomPoly.var(1, 0), HomPoly.var(1, 1)], 1)
    with pytest.raises(InvalidInput):
        gauss_defect_pipeline(f, fam, 1, 0, GRID)


def test_immersion_json_roundtrip():
    f = PolyImmersion(2, 3, (z1, z2, z1 * z2 * Fraction(1, 3)))
    assert PolyImmersion.from_json(f.to_json()) == f
