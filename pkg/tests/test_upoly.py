from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, strategies as st

from defectlab.upoly import UPoly, coprime_base, squarefree_decomposition, upoly_gcd, vanishing_order

x = sympy.Symbol("x")


def to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x)


small = st.lists(st.integers(-3, 3), min_size=1, max_size=4)


@given(st.lists(st.tuples(small, st.integers(1, 3)), min_size=1, max_size=3), st.integers(-5, 5).filter(bool))
def test_squarefree_against_sympy(factors, lead):
    p = UPoly((lead,))
    for coeffs, e in factors:
        q = UPoly(coeffs)
        if q.is_zero():
            continue
        p = p * q ** e
    lc, parts = squarefree_decomposition(p)
    rebuilt = UPoly((lc,))
    for a, i in parts:
        rebuilt = rebuilt * a ** i
    assert rebuilt == p
    _, ref = sympy.sqf_list(to_sympy(p))
    mine = sorted((i, a.degree) for a, i in parts)
    theirs = {}
    for f, i in ref:
        if f.degree() > 0:
            theirs[i] = theirs.get(i, 0) + f.degree()
    assert mine == sorted(theirs.items())


@given(small, small, small)
def test_gcd_against_sympy(a, b, c):
    A, B, C = UPoly(a), UPoly(b), UPoly(c)
    if A.is_zero() or B.is_zero() or C.is_zero():
        return
    g = upoly_gcd(A * C, B * C)
    assert g.degree == sympy.gcd(to_sympy(A * C), to_sympy(B * C)).degree()


def test_coprime_base_refines_inputs():
    z = UPoly.z()
    polys = [(z - 1) ** 2 * (z * z - 2), (z - 1) * (z + 3), (z * z - 2) ** 3]
    base = coprime_base(polys)
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            assert upoly_gcd(a, b).degree == 0
    for p in polys:
        rest = p
        for b in base:
            rest = rest.exact_div(b ** vanishing_order(rest, b)) if vanishing_order(rest, b) else rest
        assert rest.degree == 0


def test_roots_and_valuation():
    p = UPoly((0, 0, 2, -2))  # 2 z^2 (1 - z)
    assert p.valuation_at_zero() == 2
    assert np.allclose(sorted(abs(r) for r in p.roots()), [0, 0, 1])
    assert p(Fraction(1, 2)) == Fraction(1, 4)
