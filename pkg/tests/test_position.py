from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from defectlab.acceptance import subgeneral_family
from defectlab.errors import InvalidInput, PositionViolation, SearchFailure
from defectlab.polyring import HomPoly
from defectlab.position import (
    HypersurfaceFamily, check_subgeneral, normalize_degrees, position_constants, replace_hypersurfaces,
    verify_replacement,
)

x0, x1 = sympy.symbols("x0 x1")


def mono(*e, c=1):
    return HomPoly.monomial(e, c)


def test_normalize_degrees():
    fam, d = normalize_degrees(HypersurfaceFamily.of([mono(1, 0), mono(1, 1)]))
    assert d == 2 and fam.forms == [mono(2, 0), mono(1, 1)]
    A, B = mono(2, 0) + mono(0, 2), mono(3, 0) + mono(0, 3)
    fam, d = normalize_degrees(HypersurfaceFamily.of([A, B]))
    assert d == 6 and fam.forms == [A ** 3, B ** 2]


def test_subgeneral_examples():
    assert check_subgeneral(HypersurfaceFamily.of([mono(1, 0), mono(0, 1), mono(1, 0) + mono(0, 1)]), 1).holds
    conics = HypersurfaceFamily.of([mono(2, 0), mono(1, 1), mono(0, 2)])
    res = check_subgeneral(conics, 1)
    assert not res.holds and res.violating == ("Q1", "Q2")
    assert check_subgeneral(conics, 2).holds
    coords = HypersurfaceFamily.of([HomPoly.var(2, i) for i in range(3)])
    assert check_subgeneral(coords, 2).holds


def test_subgeneral_pairwise_gcd_oracle():
    rng = np.random.default_rng(1)
    from defectlab.polyring import random_form
    for _ in range(15):
        forms = [random_form(rng, 1, 1, coef_range=2) for _ in range(4)]
        fam = HypersurfaceFamily.of(forms)
        expected = all(
            sympy.Poly(sympy.gcd(_sym(a), _sym(b)), x0, x1).total_degree() == 0
            for i, a in enumerate(forms) for b in forms[i + 1:])
        assert check_subgeneral(fam, 1).holds == expected


def _sym(P):
    return sum(sympy.Rational(c.numerator, c.denominator) * x0 ** e[0] * x1 ** e[1] for e, c in P.terms.items())


@given(st.integers(0, 500))
def test_subgeneral_monotone_in_k(seed):
    rng = np.random.default_rng(seed)
    fam = subgeneral_family(rng, 1, 2, int(rng.integers(1, 3)))
    fam = HypersurfaceFamily(fam.n, fam.members + (("Z", fam.forms[0] * 1),))
    verdicts = [check_subgeneral(fam, k).holds for k in range(1, fam.q)]
    for a, b in zip(verdicts, verdicts[1:]):
        assert b or not a


def test_replacement_passthrough():
    fam = HypersurfaceFamily.of([mono(1, 0), mono(0, 1)])
    res = replace_hypersurfaces(fam, ["Q1", "Q2"], seed=0)
    assert res.outputs[0] == mono(1, 0)
    c2 = res.combination[0]["Q2"]
    assert c2 != 0 and res.outputs[1] == mono(0, 1, c=c2)
    assert verify_replacement(fam, res)["ok"]


def test_replacement_rejects_bad_input():
    fam = HypersurfaceFamily.of([mono(2, 0), mono(2, 0), mono(1, 1)])
    with pytest.raises(PositionViolation):
        replace_hypersurfaces(fam, ["Q1", "Q2", "Q3"])
    with pytest.raises(InvalidInput):
        HypersurfaceFamily.of([mono(2, 0), HomPoly(1, 2)])


def test_replacement_budget_exhaustion():
    # with no retries allowed P_2 is never drawn
    fam = HypersurfaceFamily.of([mono(1, 0), mono(0, 1)])
    with pytest.raises(SearchFailure):
        replace_hypersurfaces(fam, ["Q1", "Q2"], budget=0)


def test_replacement_p2_chain_and_determinism():
    rng = np.random.default_rng(9)
    for _ in range(5):
        fam = subgeneral_family(rng, 2, 3, 1)
        sub = sorted(fam.labels)[:4]
        a = replace_hypersurfaces(fam, sub, seed=42)
        b = replace_hypersurfaces(fam, sub, seed=42)
        assert a.to_json() == b.to_json()
        chk = verify_replacement(fam, a)
        assert chk["ok"], chk
        assert all(dm <= 2 - t for t, dm in enumerate(chk["chain"], start=1))


def test_constants_warning_on_common_zero():
    fam = HypersurfaceFamily.of([mono(2, 0) + mono(0, 2)])
    with pytest.warns(RuntimeWarning):
        pc = position_constants(fam, samples=500, seed=0)
    assert pc.alpha < 1e-12 and pc.warnings


def test_constants_no_warning_in_general_position():
    fam = HypersurfaceFamily.of([mono(1, 0), mono(0, 1)])
    pc = position_constants(fam, samples=2000, seed=3)
    # max(|x0|, |x1|) on the unit sphere lies in [1/sqrt 2, 1]
    assert 2 ** -0.5 - 1e-9 <= pc.alpha <= 0.75 and pc.beta == pytest.approx(1.0)
    assert not pc.warnings


def test_constants_swap_symmetry():
    A, B = mono(2, 0, c=2) + mono(1, 1), mono(0, 2, c=2) + mono(1, 1)
    fam = HypersurfaceFamily.of([A, B])
    pc = position_constants(fam, samples=400, seed=5)
    swapped = HypersurfaceFamily.of([B, A])
    ps = position_constants(swapped, samples=400, seed=5)
    assert pc.beta == pytest.approx(ps.beta, rel=1e-12)
    assert pc.alpha == pytest.approx(ps.alpha, rel=1e-9)


@given(st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50))
def test_constants_scale_linearly(s):
    fam = HypersurfaceFamily.of([mono(1, 0) + mono(0, 1), mono(1, 0) - mono(0, 1, c=2)])
    a = position_constants(fam, samples=300, seed=1)
    b = position_constants(fam.scaled(s), samples=300, seed=1)
    assert b.alpha == pytest.approx(float(s) * a.alpha, rel=1e-12)
    assert b.beta == pytest.approx(float(s) * a.beta, rel=1e-12)


def test_constants_scale_exactly_by_powers_of_two():
    fam = HypersurfaceFamily.of([mono(1, 0) + mono(0, 1), mono(1, 0) - mono(0, 1, c=2)])
    a = position_constants(fam, samples=300, seed=1)
    b = position_constants(fam.scaled(8), samples=300, seed=1)
    assert (b.alpha, b.beta) == (8 * a.alpha, 8 * a.beta)


def test_family_json_roundtrip():
    fam = HypersurfaceFamily.of([mono(1, 0), mono(0, 1, c=Fraction(-3, 7))], k=1)
    assert HypersurfaceFamily.from_json(fam.to_json()) == fam
