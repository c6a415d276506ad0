"""Numeric hot loops: circle averages of log-norms and batched form evaluation.

Each kernel exists twice, a numba ``@njit`` version and a plain numpy one.
``BACKEND`` records which one is live; set DEFECTLAB_NO_NUMBA=1 (or
DEFECTLAB_BACKEND=numpy) before import to force numpy.
"""
from __future__ import annotations

import math

import numpy as np

from ._config import numba_requested

try:
    if not numba_requested():
        raise ImportError
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    _HAVE_NUMBA = False


def _log_norm_mean_np(C, w, r, nodes, phase):
    theta = phase + 2.0 * np.pi * np.arange(nodes) / nodes
    z = r * np.exp(1j * theta)
    acc = np.zeros(nodes)
    for j in range(C.shape[0]):
        val = np.zeros(nodes, dtype=np.complex128)
        for c in C[j, ::-1]:
            val = val * z + c
        acc += w[j] * (val.real ** 2 + val.imag ** 2)
    with np.errstate(divide="ignore"):
        return 0.5 * np.mean(np.log(acc))


def _eval_forms_np(exps, coefs, owner, nforms, pts):
    # monomial values: prod_k x_k^e_k for every sample and term
    mon = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
    out = np.zeros((pts.shape[0], nforms), dtype=np.complex128)
    vals = mon * coefs[None, :]
    for t in range(exps.shape[0]):
        out[:, owner[t]] += vals[:, t]
    return out


if _HAVE_NUMBA:
    @njit(cache=True)
    def _log_norm_mean_nb(C, w, r, nodes, phase):
        total = 0.0
        ncomp, ncoef = C.shape
        for k in range(nodes):
            th = phase + 2.0 * math.pi * k / nodes
            z = r * complex(math.cos(th), math.sin(th))
            acc = 0.0
            for j in range(ncomp):
                val = 0j
                for i in range(ncoef - 1, -1, -1):
                    val = val * z + C[j, i]
                acc += w[j] * (val.real * val.real + val.imag * val.imag)
            if acc == 0.0:
                return -np.inf
            total += math.log(acc)
        return 0.5 * total / nodes

    @njit(cache=True)
    def _eval_forms_nb(exps, coefs, owner, nforms, pts):
        S = pts.shape[0]
        T, nv = exps.shape
        top = 0
        for t in range(T):
            for k in range(nv):
                top = max(top, exps[t, k])
        out = np.zeros((S, nforms), dtype=np.complex128)
        pw = np.empty((nv, top + 1), dtype=np.complex128)
        for s in range(S):
            # complex ** int goes through exp/log in numba; a power table is far cheaper
            for k in range(nv):
                pw[k, 0] = 1.0
                for e in range(1, top + 1):
                    pw[k, e] = pw[k, e - 1] * pts[s, k]
            for t in range(T):
                m = coefs[t]
                for k in range(nv):
                    m *= pw[k, exps[t, k]]
                out[s, owner[t]] += m
        return out

    BACKEND = "numba"
else:
    BACKEND = "numpy"


def log_norm_mean(C, r: float, nodes: int, w=None, phase: float = 0.0, backend: str | None = None) -> float:
    """Mean over ``nodes`` equispaced angles of log sqrt(sum_j w_j |p_j(r e^{i theta})|^2).

    ``C`` holds one row of ascending coefficients per polynomial p_j.
    """
    C = np.ascontiguousarray(np.atleast_2d(C), dtype=np.complex128)
    w = np.ones(C.shape[0]) if w is None else np.ascontiguousarray(w, dtype=np.float64)
    fn = _pick("log_norm_mean", backend)
    return float(fn(C, w, float(r), int(nodes), float(phase)))


def eval_forms(exps, coefs, owner, nforms: int, pts, backend: str | None = None) -> np.ndarray:
    """Values of ``nforms`` forms (terms flattened, ``owner[t]`` = form of term t) at sample rows."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    coefs = np.ascontiguousarray(coefs, dtype=np.complex128)
    owner = np.ascontiguousarray(owner, dtype=np.int64)
    pts = np.ascontiguousarray(pts, dtype=np.complex128)
    fn = _pick("eval_forms", backend)
    return fn(exps, coefs, owner, int(nforms), pts)


def _pick(name, backend):
    b = backend or BACKEND
    if b == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return {"log_norm_mean": _log_norm_mean_nb, "eval_forms": _eval_forms_nb}[name]
    if b == "numpy":
        return {"log_norm_mean": _log_norm_mean_np, "eval_forms": _eval_forms_np}[name]
    raise ValueError(f"unknown backend {b!r}")


def available_backends() -> list[str]:
    return ["numba", "numpy"] if _HAVE_NUMBA else ["numpy"]


def flatten_forms(forms) -> tuple:
    """(exps, coefs, owner) arrays for :func:`eval_forms` from HomPoly-like objects."""
    exps, coefs, owner = [], [], []
    for i, f in enumerate(forms):
        for e, c in f.terms.items():
            exps.append(e)
            coefs.append(complex(c))
            owner.append(i)
    nv = forms[0].nvars if forms else 0
    return (np.array(exps, dtype=np.int64).reshape(-1, nv), np.array(coefs, dtype=np.complex128),
            np.array(owner, dtype=np.int64))
