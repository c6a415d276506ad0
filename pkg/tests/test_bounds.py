from fractions import Fraction
from itertools import product
from math import comb, e

import pytest
import sympy
from hypothesis import given, strategies as st

from defectlab.bounds import (
    E_LOWER, E_UPPER, b_lower_bound, binomial_inequality_holds, gauss_parameters, precondition_ratio,
    strict_ceiling, theorem_parameters, verify_lemma_new,
)
from defectlab.errors import InvalidInput

GRID = list(product(range(1, 5), range(1, 7), range(1, 4), [Fraction(1, 4), Fraction(1, 2), 1, 2]))


def test_strict_ceiling():
    assert strict_ceiling(1) == 2
    assert strict_ceiling(Fraction(1, 2)) == 1
    assert strict_ceiling(Fraction(-1, 2)) == 0
    assert strict_ceiling("7/3") == 3


@pytest.mark.parametrize("args,expected", [
    ((2, 2, 1, 1), dict(p=1, I_eps=2, N=57, u=1711, rhs_full=4)),
    ((1, 1, 1, 1), dict(p=1, N=18, u=19, rhs_full=3)),
    ((1, 2, 2, Fraction(1, 2)), dict(p=2, I_eps=3, N=100, u=101, rhs_full=Fraction(9, 2))),
])
def test_parameter_examples(args, expected):
    ps = theorem_parameters(*args)
    for key, val in expected.items():
        assert getattr(ps, key) == val


def test_parameter_validation():
    for bad in [(0, 1, 1, 1), (2, 1, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0), (1, 1, 1, -1)]:
        with pytest.raises(InvalidInput):
            theorem_parameters(*bad)
    with pytest.raises(InvalidInput):
        theorem_parameters(1, 1, 1, 1, rho=-1)
    with pytest.raises(InvalidInput):
        theorem_parameters(1, 1, 1, 0.5)


def test_b_lower_bound_examples():
    assert b_lower_bound(1, 2, 8) == 12
    assert b_lower_bound(1, 1, 18) == 153
    assert b_lower_bound(2, 1, 4) == 4
    with pytest.raises(InvalidInput):
        b_lower_bound(2, 1, 2)


def test_lemma_new_examples():
    rep = verify_lemma_new(theorem_parameters(1, 1, 1, 1))
    assert rep.b == 153 and rep.ratio == Fraction(342, 153) and rep.bound_a == 3 and rep.a_pass
    assert rep.b_pass and float(rep.bound_b_conservative) == pytest.approx(e ** 3 * 8)
    rep = verify_lemma_new(theorem_parameters(2, 2, 1, 1))
    assert rep.b_pass and float(rep.bound_b_conservative) == pytest.approx(e ** 4 * 324)


def test_e_enclosure():
    assert E_LOWER < E_UPPER and E_UPPER - E_LOWER < Fraction(1, 10 ** 12)
    assert sympy.Rational(E_LOWER.numerator, E_LOWER.denominator) < sympy.E
    assert sympy.Rational(E_UPPER.numerator, E_UPPER.denominator) > sympy.E


def test_lemma_new_grid_against_sympy():
    # oracle: sympy rationals for (a), sympy's exact E for (b)
    for n, k, d, eps in GRID:
        if k < n:
            continue
        ps = theorem_parameters(n, k, d, eps)
        rep = verify_lemma_new(ps)
        p = k - n + 1
        I = sympy.floor(1 / sympy.Rational(eps)) + 1
        N = (n + 1) * d + p * (n + 1) ** 3 * I * d
        u = sympy.binomial(N + n, n)
        b = sympy.prod([N - j * d for j in range(n + 1)]) / (sympy.factorial(n + 1) * d)
        a_oracle = p * u * N / (d * b) <= p * (n + 1) + sympy.Rational(eps)
        b_oracle = u <= sympy.E ** (n + 2) * (d * p * (n + 1) ** 2 * I) ** n
        assert rep.a_pass == bool(a_oracle) is True
        assert rep.b_pass == bool(b_oracle) is True
        assert rep.b_rounding_agree


@given(st.integers(1, 6), st.integers(0, 5), st.integers(1, 4),
       st.fractions(min_value=Fraction(1, 20), max_value=5, max_denominator=20))
def test_precondition_by_construction(n, extra, d, eps):
    ps = theorem_parameters(n, n + extra, d, eps)
    assert ps.N // d - (n + 1) == ps.p * (n + 1) ** 3 * ps.I_eps
    assert precondition_ratio(ps) <= Fraction(1, (n + 1) ** 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_binomial_inequality(n):
    top = Fraction(1, (n + 1) ** 2)
    for j in range(0, 21):
        assert binomial_inequality_holds(n, top * j / 20)


@given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 3),
       st.fractions(min_value=Fraction(1, 10), max_value=3, max_denominator=10),
       st.fractions(min_value=0, max_value=2, max_denominator=10),
       st.fractions(min_value=0, max_value=1, max_denominator=10))
def test_rhs_monotone(n, extra, d, eps, rho, step):
    base = theorem_parameters(n, n + extra, d, eps, rho)
    assert theorem_parameters(n, n + extra, d, eps, rho + step).rhs_full >= base.rhs_full
    # eps enters rhs directly and through N; compare at equal I(1/eps)
    bigger = eps + step
    if strict_ceiling(1 / bigger) == base.I_eps:
        assert theorem_parameters(n, n + extra, d, bigger, rho).rhs_full >= base.rhs_full


@given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 3), st.integers(0, 1000))
def test_lemma_a_monotone_in_b(n, extra, d, bump):
    ps = theorem_parameters(n, n + extra, d, 1)
    b0 = b_lower_bound(n, d, ps.N)
    assert verify_lemma_new(ps, b0 + bump).a_pass


def test_corollary_and_gauss_variant():
    ps = theorem_parameters(1, 1, 1, 1, corollary=True)
    assert ps.corollary["N"] == 2 * (1 + 4) and ps.corollary["u"] == comb(11, 1)
    g = gauss_parameters(2, 2, 1, 1)
    assert g["L"] == 57 and g["N_ambient"] == 2
    assert g["u_le_e_form"] and g["u_le_3_form"]


def test_b_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        verify_lemma_new(theorem_parameters(1, 1, 1, 1), 0)
