import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from defectlab.errors import AmbientMismatch, InvalidInput
from defectlab.exact_algebra import (
    QI, IncrementalBasis, RatMatrix, Subspace, determinant, format_rational, nullspace, parse_rational, rank,
    rref_rank, subspace_query,
)


def oracle_rank(rows):
    """Integer row reduction with gcd normalisation; no division at all."""
    from math import gcd
    M = []
    for r in rows:
        den = 1
        for x in r:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        M.append([int(Fraction(x) * den) for x in r])
    rk, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rk < len(M) and col < ncols:
        piv = next((i for i in range(rk, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(rk + 1, len(M)):
            a, b = M[rk][col], M[i][col]
            M[i] = [a * y - b * x for x, y in zip(M[rk], M[i])]
            g = 0
            for y in M[i]:
                g = gcd(g, y)
            if g > 1:
                M[i] = [y // g for y in M[i]]
        rk += 1
        col += 1
    return rk


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_rank_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    I3 = RatMatrix.identity(3)
    red, rk = rref_rank(I3)
    assert rk == 3 and red == I3
    assert rank([], 4) == 0


def test_rank_against_oracle():
    rng = random.Random(11)
    for _ in range(50):
        rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(4)] for _ in range(6)]
        if rng.random() < 0.5:
            rows[5] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
            rows[4] = [Fraction(0)] * 4
        assert rank(rows, 4) == oracle_rank(rows)


def test_subspace_examples():
    e1, e2 = [1, 0, 0], [0, 1, 0]
    A, B = Subspace.span([e1], 3), Subspace.span([e2], 3)
    assert subspace_query(A, B, "sum").dim == 2
    assert subspace_query(A + B, mode="contains_vector", v=[1, 1, 0])
    assert not (A + B).contains([0, 0, 1])
    with pytest.raises(AmbientMismatch):
        A + Subspace.span([[1, 0]], 2)


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=5),
       st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=5))
def test_dimension_formula(a, b):
    A, B = Subspace.span(a, 4), Subspace.span(b, 4)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    assert A.intersect(B).issubspace(A) and A.intersect(B).issubspace(B)


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4), st.randoms())
def test_rref_canonical(rows, rnd):
    # a shuffled, rescaled and mixed generating set spans the same space
    other = [list(r) for r in rows]
    rnd.shuffle(other)
    other = [[x * (i + 2) for x in r] for i, r in enumerate(other)]
    if len(other) > 1:
        other[0] = [x + y for x, y in zip(other[0], other[1])]
        other.append(list(rows[0]))
    assert Subspace.span(rows, 3) == Subspace.span(other, 3)


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
       st.fractions(min_value=1, max_value=50, max_denominator=7))
def test_scaling_linearity(rows, s):
    assert determinant([[x * s for x in r] for r in rows]) == s ** 3 * determinant(rows)
    assert rank([[x * s for x in r] for r in rows]) == rank(rows)


def test_nullspace_is_kernel():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(5)] for _ in range(3)]
        ker = nullspace(RatMatrix.from_rows(rows, 5))
        assert len(ker) == 5 - rank(rows, 5)
        for v in ker:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_incremental_basis_matches_rank():
    rng = random.Random(5)
    rows = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(9)]
    ib = IncrementalBasis(6)
    for i, r in enumerate(rows):
        ib.add(r)
        assert ib.rank == rank(rows[:i + 1], 6)


def test_parse_and_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-0.25") == Fraction(-1, 4)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in (0.5, "1e3", "nan", "", True):
        with pytest.raises(InvalidInput):
            parse_rational(bad)


def test_gaussian_rationals():
    i = QI(0, 1)
    assert i * i == QI(-1, 0)
    assert (QI(1, 1) * QI(1, -1)) == QI(2, 0)
