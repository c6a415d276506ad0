from fractions import Fraction
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from defectlab.bounds import b_lower_bound
from defectlab.errors import InvalidInput
from defectlab.exact_algebra import Subspace
from defectlab.filtration import build_filtration, lex_tuple_order, table_summary, verify_cz, weight_summary
from defectlab.polyring import HomPoly, _monomials, projective_locus, random_form


def mono(*e, c=1):
    return HomPoly.monomial(e, c)


def brute_dims(P, N):
    """dim W_(i) straight from the definition: span of P^(j) x^gamma over all (j) >= (i)."""
    n, d = P[0].n, P[0].degree
    order = lex_tuple_order(n, N // d)
    dims = []
    u = len(_monomials(n, N))
    for s in range(order.K):
        vecs = []
        for t in order.tuples[s:]:
            base = HomPoly.one(n)
            for Pj, e in zip(P, t):
                base = base * Pj ** e
            for gamma in _monomials(n, N - d * sum(t)):
                vecs.append(base.shift(gamma).to_vector())
        dims.append(Subspace.span(vecs, u).dim)
    return dims


def finite_locus_forms(rng, n, d):
    while True:
        P = [random_form(rng, n, d, 3) for _ in range(n)]
        loc = projective_locus(P)
        if not loc.empty and loc.dim == 0:
            return P


def test_tuple_order_examples():
    o = lex_tuple_order(1, 4)
    assert o.tuples == ((0,), (1,), (2,), (3,), (4,)) and o.K == 5
    assert lex_tuple_order(2, 1).tuples == ((0, 0), (0, 1), (1, 0))
    assert lex_tuple_order(2, 4).K == 15


@pytest.mark.parametrize("N,d", [(4, 2), (6, 2), (6, 3), (5, 1)])
def test_dims_match_brute_force(N, d):
    rng = np.random.default_rng(N * 10 + d)
    P = finite_locus_forms(rng, 1, d)
    assert build_filtration(P, N).dims == brute_dims(P, N)


def test_dims_match_brute_force_p2():
    rng = np.random.default_rng(4)
    P = finite_locus_forms(rng, 2, 1)
    assert build_filtration(P, 3).dims == brute_dims(P, 3)


def test_cz_examples():
    P = [mono(2, 0) + mono(0, 2, c=-3)]
    t = build_filtration(P, 8)
    rep = verify_cz(t)
    assert rep.passed and [e[0] for e in rep.entries] == [(0,), (1,), (2,)]
    assert all(e[2] == 2 for e in rep.entries)
    t = build_filtration([mono(1, 0)], 3)
    assert verify_cz(t).passed and all(m == 1 for m in t.jumps)
    rng = np.random.default_rng(8)
    P = [random_form(rng, 2, 1, 4) for _ in range(2)]
    rep = verify_cz(build_filtration(P, 4))
    assert rep.passed and all(e[2] == 1 for e in rep.entries)


def test_weight_summary_examples():
    assert weight_summary([SimpleNamespace(weights=[16])])[0] == 16
    b, per = weight_summary([SimpleNamespace(weights=[16]), SimpleNamespace(weights=[12, 14])])
    assert b == 12 and per == [[16], [12, 14]]
    with pytest.raises(InvalidInput):
        weight_summary([])


def test_validation():
    with pytest.raises(InvalidInput):
        build_filtration([mono(2, 0)], 5)
    with pytest.raises(InvalidInput):
        build_filtration([mono(1, 0, 0), mono(0, 2, 0)], 4)
    with pytest.raises(InvalidInput):
        build_filtration([mono(1, 0, 0)], 4)


@given(st.integers(0, 10_000), st.sampled_from([(1, 1, 6), (1, 2, 8), (2, 1, 4), (1, 3, 9)]))
def test_table_invariants(seed, shape):
    n, d, N = shape
    rng = np.random.default_rng(seed)
    P = [random_form(rng, n, d, 3) for _ in range(n)]
    if projective_locus(P).dim != 0:
        return
    t = build_filtration(P, N)
    # nesting and exhaustion
    assert all(a >= b for a, b in zip(t.dims, t.dims[1:]))
    assert sum(t.jumps) == t.u == len(t.basis) == t.dims[0]
    assert t.check_decompositions()
    assert verify_cz(t).passed
    # the weights dominate the closed-form lower bound
    if N > n * d:
        assert min(t.weights) >= b_lower_bound(n, d, N)
    pt = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(n + 1)]
    for el in t.basis[:: max(1, len(t.basis) // 7)]:
        val = el.h.eval(pt)
        for Pj, e in zip(P, el.exponents):
            val *= Pj.eval(pt) ** e
        assert el.psi.eval(pt) == val


def test_basis_spans_v_n():
    rng = np.random.default_rng(12)
    P = finite_locus_forms(rng, 1, 2)
    t = build_filtration(P, 6)
    assert Subspace.span([el.psi.to_vector() for el in t.basis], t.u) == Subspace.full(t.u)


def test_positive_dimensional_locus_warns():
    with pytest.warns(RuntimeWarning):
        build_filtration([mono(1, 0, 0), mono(1, 0, 0) * 2], 2)


def test_summary_reports_lower_bound_check():
    x0, x1 = HomPoly.var(1, 0), HomPoly.var(1, 1)
    s = table_summary(build_filtration([x0 * x0 + x1 * x1], 8))
    assert (s["b"], s["b_lower_bound"], s["b_ge_lower_bound"]) == (16, "12", True)
    assert "b_lower_bound" not in table_summary(build_filtration([x0 * x0 + x1 * x1], 2))
