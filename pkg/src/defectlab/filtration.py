"""Filtrations of V_N by powers of n forms, jump dimensions and weights.

For n forms P_1..P_n of degree d and N divisible by d, tuples (i) with
sigma(i) <= N/d index the subspaces

    W_(i) = sum over (j) >= (i) (lex) of P^(j) * V_{N - d sigma(j)}.

They are accumulated from the lex-largest tuple downward.  Because
P^(i) * (P)_D already lies in the next subspace (each P^(i)+e_j is
lex-larger), only a monomial complement of the ideal piece (P)_D has to be
multiplied in at each step; this is exact and keeps the candidate count near
K * d^n instead of K * dim V_D.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .bounds import b_lower_bound
from .errors import InconclusiveLocus, InvalidInput
from .exact_algebra import IncrementalBasis, format_rational
from .polyring import HomPoly, _monomials, ideal_piece_basis, projective_locus


@dataclass(frozen=True)
class TupleOrder:
    n: int
    cap: int
    tuples: tuple

    @property
    def K(self) -> int:
        return len(self.tuples)


def _tuples_upto(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for first in range(cap + 1):
        for rest in _tuples_upto(n - 1, cap - first):
            yield (first,) + rest


def lex_tuple_order(n: int, cap: int) -> TupleOrder:
    """n-tuples with coordinate sum <= cap, lexicographically ascending."""
    if n < 1 or cap < 0:
        raise InvalidInput("lex_tuple_order needs n >= 1 and cap >= 0")
    return TupleOrder(n, cap, tuple(_tuples_upto(n, cap)))


@dataclass(frozen=True)
class BasisElement:
    """psi = P_1^{i_1} ... P_n^{i_n} * h, introduced at tuple index ``s``."""

    s: int
    exponents: tuple
    h: HomPoly
    psi: HomPoly


@dataclass
class FiltrationTable:
    N: int
    d: int
    n: int
    P: list
    order: TupleOrder
    dims: list
    jumps: list
    basis: list
    weights: list
    u: int
    warnings: list = field(default_factory=list)

    @property
    def K(self) -> int:
        return self.order.K

    def check_decompositions(self) -> bool:
        """Re-multiply every psi from its witness and compare exactly."""
        for el in self.basis:
            prod = el.h
            for Pj, e in zip(self.P, el.exponents):
                if e:
                    prod = prod * Pj ** e
            if prod != el.psi:
                return False
        return True

    def to_json(self, include_basis: bool = False) -> dict:
        out = {
            "N": self.N, "d": self.d, "n": self.n, "u": self.u, "K": self.K,
            "P": [p.to_json() for p in self.P],
            "tuples": [list(t) for t in self.order.tuples],
            "dims": list(self.dims), "jumps": list(self.jumps),
            "weights": list(self.weights),
            "warnings": list(self.warnings),
        }
        if include_basis:
            out["basis"] = [{"s": el.s, "exponents": list(el.exponents), "h": el.h.to_json(),
                             "psi": el.psi.to_json()} for el in self.basis]
        return out


def _validate(P: Sequence[HomPoly], N: int) -> tuple[int, int]:
    if not P:
        raise InvalidInput("need at least one form")
    n = P[0].n
    d = P[0].degree
    if any(p.n != n for p in P):
        raise InvalidInput("forms live in different projective spaces")
    if any(p.degree != d for p in P):
        raise InvalidInput("forms must share one degree")
    if any(p.is_zero() for p in P):
        raise InvalidInput("zero form in the filtration family")
    if len(P) != n:
        raise InvalidInput(f"need exactly n={n} forms, got {len(P)}")
    if d < 1:
        raise InvalidInput("forms must have positive degree")
    if N < d or N % d:
        raise InvalidInput(f"N={N} must be a positive multiple of d={d}")
    return n, d


def build_filtration(P: Sequence[HomPoly], N: int, check_locus: bool = True) -> FiltrationTable:
    n, d = _validate(P, N)
    P = list(P)
    notes = []
    if check_locus:
        try:
            loc = projective_locus(P)
            if not loc.empty and loc.dim > 0:
                notes.append(f"common locus of P has dimension {loc.dim} > 0")
        except InconclusiveLocus:
            notes.append("common locus of P not certified")
        for msg in notes:
            warnings.warn(msg, RuntimeWarning, stacklevel=2)

    cap = N // d
    order = lex_tuple_order(n, cap)
    K = order.K
    u = comb(N + n, n)

    complement = {}
    for sigma in range(cap + 1):
        D = N - d * sigma
        free = ideal_piece_basis(P, D, n).free_columns()
        mons = _monomials(n, D)
        complement[D] = [mons[j] for j in free]

    powers: dict = {(0,) * n: HomPoly.one(n)}

    def power_product(t):
        if t not in powers:
            j = next(i for i, e in enumerate(t) if e)
            prev = t[:j] + (t[j] - 1,) + t[j + 1:]
            powers[t] = power_product(prev) * P[j]
        return powers[t]

    acc = IncrementalBasis(u)
    dims = [0] * K
    blocks: list[list] = [[] for _ in range(K)]
    for s in range(K - 1, -1, -1):
        t = order.tuples[s]
        sigma = sum(t)
        D = N - d * sigma
        base = power_product(t)
        for gamma in complement[D]:
            cand = base.shift(gamma)
            if acc.add(cand.to_vector()):
                blocks[s].append(BasisElement(s, t, HomPoly.monomial(gamma), cand))
        dims[s] = acc.rank

    if dims[0] != u:
        raise AssertionError(f"filtration does not exhaust V_N: {dims[0]} != {u}")
    if dims[K - 1] != 1:
        raise AssertionError("last filtration step is not one-dimensional")
    jumps = [dims[s] - dims[s + 1] for s in range(K - 1)] + [1]
    basis = [el for blk in blocks for el in blk]
    weights = [sum(jumps[s] * order.tuples[s][j] for s in range(K)) for j in range(n)]
    return FiltrationTable(N, d, n, P, order, dims, jumps, basis, weights, u, notes)


@dataclass
class CZReport:
    entries: list
    passed: bool
    expected: int

    def as_dict(self) -> dict:
        return {"passed": self.passed, "expected_jump": self.expected,
                "checked": [{"tuple": list(t), "sigma": sg, "jump": m, "ok": ok} for t, sg, m, ok in self.entries]}


def verify_cz(table: FiltrationTable) -> CZReport:
    """Jumps equal d^n on every tuple with d*sigma < N - n*d."""
    expected = table.d ** table.n
    entries = []
    for t, m in zip(table.order.tuples, table.jumps):
        sg = sum(t)
        if table.d * sg < table.N - table.n * table.d:
            entries.append((t, sg, m, m == expected))
    return CZReport(entries, all(e[3] for e in entries), expected)


def weight_summary(tables: Sequence[FiltrationTable]) -> tuple[int, list]:
    """b = minimum weight over every table and index j."""
    if not tables:
        raise InvalidInput("weight_summary needs at least one table")
    per = [list(t.weights) for t in tables]
    return min(min(w) for w in per), per


def table_summary(table: FiltrationTable) -> dict:
    cz = verify_cz(table)
    b = min(table.weights)
    out = {"u": table.u, "K": table.K, "weights": list(table.weights), "b": b,
           "cz": cz.passed, "sum_jumps": sum(table.jumps),
            "b_over_u": format_rational(Fraction(b, table.u))}
    # the closed-form lower bound is only claimed above N = nd; reported, never assumed
    if table.N > table.n * table.d:
        lower = b_lower_bound(table.n, table.d, table.N)
        out["b_lower_bound"] = format_rational(lower)
        out["b_ge_lower_bound"] = b >= lower
    return out
