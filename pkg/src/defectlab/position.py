"""Hypersurface families in k-subgeneral position.

Covers degree normalisation, the subgeneral-position test, the randomised
replacement of k+1 members by n+1 members in general position, and sampled
estimates of the constants alpha, beta bounding
h(x) = max_i |Q_i(x)| / ||x||^d on the unit sphere.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import _kernels
from ._config import pmap, thread_cap
from .errors import InconclusiveLocus, InvalidInput, PositionViolation, SearchFailure
from .exact_algebra import format_rational
from .polyring import HomPoly, projective_locus

DEFAULT_RETRY_BUDGET = 64
DEFAULT_FLOOR = 1e-12


@dataclass(frozen=True)
class HypersurfaceFamily:
    n: int
    members: tuple
    k: int | None = None

    def __post_init__(self):
        members = tuple((str(lab), q) for lab, q in self.members)
        object.__setattr__(self, "members", members)
        labels = [lab for lab, _ in members]
        if len(set(labels)) != len(labels):
            raise InvalidInput("duplicate member labels")
        for lab, q in members:
            if not isinstance(q, HomPoly):
                raise InvalidInput(f"member {lab} is not a form")
            if q.n != self.n:
                raise InvalidInput(f"member {lab} lives in P^{q.n}, family in P^{self.n}")
            if q.is_zero():
                raise InvalidInput(f"member {lab} is the zero polynomial")
            if q.degree < 1:
                raise InvalidInput(f"member {lab} has degree 0")
        if self.k is not None and self.k < self.n:
            raise InvalidInput(f"need k >= n (k={self.k}, n={self.n})")

    @classmethod
    def of(cls, forms: Sequence[HomPoly], k: int | None = None, labels=None) -> "HypersurfaceFamily":
        if not forms:
            raise InvalidInput("empty family")
        labels = labels or [f"Q{i + 1}" for i in range(len(forms))]
        return cls(forms[0].n, tuple(zip(labels, forms)), k)

    @property
    def q(self) -> int:
        return len(self.members)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.members]

    @property
    def forms(self) -> list[HomPoly]:
        return [q for _, q in self.members]

    @property
    def degrees(self) -> list[int]:
        return [q.degree for q in self.forms]

    def get(self, label: str) -> HomPoly:
        for lab, q in self.members:
            if lab == label:
                return q
        raise InvalidInput(f"no member labelled {label!r}")

    def scaled(self, s) -> "HypersurfaceFamily":
        s = Fraction(s)
        return HypersurfaceFamily(self.n, tuple((lab, q * s) for lab, q in self.members), self.k)

    def to_json(self) -> dict:
        out = {"n": self.n, "members": [{"label": lab, "poly": q.to_json()} for lab, q in self.members]}
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "HypersurfaceFamily":
        try:
            n = obj["n"]
            raw = obj["members"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("family JSON needs 'n' and 'members'") from exc
        members = []
        for i, m in enumerate(raw):
            q = HomPoly.from_json(m["poly"])
            if q.n != n:
                raise InvalidInput(f"member {i} has n={q.n}, family has n={n}")
            members.append((m.get("label", f"Q{i + 1}"), q))
        return cls(n, tuple(members), obj.get("k"))


def normalize_degrees(family: HypersurfaceFamily) -> tuple[HypersurfaceFamily, int]:
    """Raise each member to the power d/d_j, d = lcm of the degrees."""
    d = lcm(*family.degrees)
    members = tuple((lab, q if q.degree == d else q ** (d // q.degree)) for lab, q in family.members)
    return HypersurfaceFamily(family.n, members, family.k), d


@dataclass
class SubgeneralResult:
    holds: bool
    k: int
    violating: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {"holds": self.holds, "k": self.k, "checked": self.checked,
                "violating_subset": list(self.violating) if self.violating else None}


def _subset_empty(forms) -> bool:
    return projective_locus(forms).empty


def check_subgeneral(family: HypersurfaceFamily, k: int) -> SubgeneralResult:
    """Every (k+1)-subset must have empty common zero set.

    Subsets are scanned in lexicographic order of the sorted labels; the first
    failing one is reported.  An uncertified subset raises InconclusiveLocus.
    """
    if k < family.n:
        raise InvalidInput(f"need k >= n (k={k}, n={family.n})")
    if family.q < k + 1:
        raise InvalidInput(f"need at least k+1={k + 1} members, have {family.q}")
    labels = sorted(family.labels)
    subsets = list(itertools.combinations(labels, k + 1))
    if thread_cap() > 1:
        verdicts = pmap(_subset_empty, [[family.get(x) for x in sub] for sub in subsets])
        for i, (sub, ok) in enumerate(zip(subsets, verdicts)):
            if not ok:
                return SubgeneralResult(False, k, sub, i + 1)
        return SubgeneralResult(True, k, None, len(subsets))
    for i, sub in enumerate(subsets):
        if not _subset_empty([family.get(x) for x in sub]):
            return SubgeneralResult(False, k, sub, i + 1)
    return SubgeneralResult(True, k, None, len(subsets))


@dataclass
class ReplacementResult:
    source_labels: tuple
    outputs: list
    combination: list
    prefix_dims: list
    retries: list
    seed: int

    def to_json(self) -> dict:
        return {
            "source_labels": list(self.source_labels),
            "outputs": [p.to_json() for p in self.outputs],
            "combination": [{lab: format_rational(c) for lab, c in comb.items()} for comb in self.combination],
            "prefix_dims": self.prefix_dims,
            "retries": self.retries,
            "seed": self.seed,
        }


def _effective_dim(forms) -> int:
    """-1 for an empty locus, else its dimension; uncertified counts as too big."""
    try:
        loc = projective_locus(forms)
    except InconclusiveLocus:
        return forms[0].n + 1
    return -1 if loc.empty else loc.dim


def replace_hypersurfaces(family: HypersurfaceFamily, subset: Sequence[str], seed: int = 0,
                          budget: int = DEFAULT_RETRY_BUDGET) -> ReplacementResult:
    """n+1 forms P_t in general position built from k+1 members with empty intersection.

    P_1 is the first chosen member; P_t (t >= 2) is a random integer
    combination of members 2..k-n+t, accepted once the common locus of
    P_1..P_t has dimension <= n-t.
    """
    n = family.n
    subset = tuple(str(s) for s in subset)
    if len(set(subset)) != len(subset):
        raise InvalidInput("subset repeats a label")
    k = len(subset) - 1
    if k < n:
        raise InvalidInput(f"need k+1 >= n+1 members, got {len(subset)}")
    Q = [family.get(lab) for lab in subset]
    if len({q.degree for q in Q}) != 1:
        raise InvalidInput("chosen members must share one degree (normalize first)")
    if not projective_locus(Q).empty:
        raise PositionViolation(f"members {list(subset)} have a common zero")

    rng = random.Random(seed)
    outputs = [Q[0]]
    combos: list = []
    dims = [_effective_dim(outputs)]
    retries = []
    for t in range(2, n + 2):
        allowed = list(range(1, k - n + t))  # 0-based positions of Q_2..Q_{k-n+t}
        for attempt in range(1, budget + 1):
            bound = 10 * attempt
            coeffs = [rng.randint(-bound, bound) for _ in allowed]
            cand = sum((Q[j] * c for j, c in zip(allowed, coeffs) if c), HomPoly(n, Q[0].degree))
            if cand.is_zero():
                continue
            dim = _effective_dim(outputs + [cand])
            if dim <= n - t:
                outputs.append(cand)
                combos.append({subset[j]: Fraction(c) for j, c in zip(allowed, coeffs)})
                dims.append(dim)
                retries.append(attempt)
                break
        else:
            raise SearchFailure(f"no admissible P_{t} within {budget} retries", outputs)
    return ReplacementResult(subset, outputs, combos, dims, retries, seed)


def verify_replacement(family: HypersurfaceFamily, res: ReplacementResult) -> dict:
    """Independent re-check of the span form, the dimension chain and emptiness."""
    n = family.n
    k = len(res.source_labels) - 1
    Q = [family.get(lab) for lab in res.source_labels]
    span_ok = res.outputs[0] == Q[0]
    for t, (P, comb) in enumerate(zip(res.outputs[1:], res.combination), start=2):
        allowed = set(res.source_labels[1:k - n + t])
        if not set(comb) <= allowed:
            span_ok = False
        rebuilt = sum((family.get(lab) * c for lab, c in comb.items()), HomPoly(n, P.degree))
        span_ok = span_ok and rebuilt == P
    chain = [_effective_dim(res.outputs[:t]) for t in range(1, n + 2)]
    chain_ok = all(dm <= n - t for t, dm in enumerate(chain, start=1))
    return {"span_form": span_ok, "chain": chain, "chain_ok": chain_ok,
            "empty": chain[-1] == -1, "ok": span_ok and chain_ok and chain[-1] == -1}


@dataclass
class PositionConstants:
    alpha: float
    beta: float
    samples: int
    floor: float
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"alpha_est": self.alpha, "beta_est": self.beta, "samples": self.samples,
                "floor": self.floor, "warnings": list(self.warnings)}


def _sphere_samples(n: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((samples, n + 1)) + 1j * rng.standard_normal((samples, n + 1))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return np.vstack([g, np.eye(n + 1, dtype=np.complex128)])


def _values_and_jacobian(exps, coefs, owner, nforms, x):
    nv = exps.shape[1]
    vals = np.zeros(nforms, dtype=np.complex128)
    jac = np.zeros((nforms, nv), dtype=np.complex128)
    for e, c, o in zip(exps, coefs, owner):
        vals[o] += c * np.prod(x ** e)
        for k in range(nv):
            if e[k]:
                ek = e.copy()
                ek[k] -= 1
                jac[o, k] += c * e[k] * np.prod(x ** ek)
    return vals, jac


def _refine(exps, coefs, owner, nforms, x0, steps=40):
    """Gauss-Newton on sum |Q_i|^2 restricted to the unit sphere."""
    x = x0.copy()
    for _ in range(steps):
        vals, J = _values_and_jacobian(exps, coefs, owner, nforms, x)
        # tangent directions orthogonal to x
        _, _, vh = np.linalg.svd(x.conj()[None, :])
        B = vh[1:].conj().T
        y = np.linalg.lstsq(J @ B, -vals, rcond=None)[0]
        x_new = x + B @ y
        x_new /= np.linalg.norm(x_new)
        if np.linalg.norm(x_new - x) < 1e-15:
            return x_new
        x = x_new
    return x


def position_constants(family: HypersurfaceFamily, samples: int = 2000, seed: int = 0,
                       floor: float = DEFAULT_FLOOR, refine: int = 8) -> PositionConstants:
    """Sampled min / max of h over the sphere (alpha_est >= alpha, beta_est <= beta).

    The ``refine`` lowest samples are additionally pushed toward a common zero
    by Gauss-Newton, so a nonempty intersection shows up as a tiny alpha_est.
    """
    degs = set(family.degrees)
    if len(degs) != 1:
        raise InvalidInput("position constants need equal degrees (normalize first)")
    if samples < 1:
        raise InvalidInput("need at least one sample")
    forms = family.forms
    pts = _sphere_samples(family.n, samples, seed)
    exps, coefs, owner = _kernels.flatten_forms(forms)
    h = np.abs(_kernels.eval_forms(exps, coefs, owner, len(forms), pts)).max(axis=1)
    alpha, beta = float(h.min()), float(h.max())
    if refine:
        # refine on a scale-free copy so the iterates do not depend on an overall factor
        unit = coefs / np.abs(coefs).max()
        for i in np.argsort(h)[:refine]:
            x = _refine(exps, unit, owner, len(forms), pts[i])
            hv = np.abs(_kernels.eval_forms(exps, coefs, owner, len(forms), x[None, :])).max()
            alpha = min(alpha, float(hv))
    notes = []
    if alpha < floor:
        notes.append(f"h fell to {alpha:.3e} < {floor:g}: the family may have a common zero")
        warnings.warn(notes[-1], RuntimeWarning, stacklevel=2)
    return PositionConstants(alpha, beta, samples, floor, notes)
