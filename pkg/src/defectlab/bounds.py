"""Explicit parameter calculus of the defect relation.

Everything is exact: rationals for epsilon/rho and the lemma ratios,
arbitrary-precision integers for N and u.  The transcendental constant e
enters only through rational enclosures ``E_LOWER < e < E_UPPER``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, floor

from .errors import InvalidInput
from .exact_algebra import format_rational, parse_rational


def _e_enclosure(terms: int = 24) -> tuple[Fraction, Fraction]:
    lower = sum((Fraction(1, factorial(k)) for k in range(terms + 1)), Fraction(0))
    # tail sum_{k>K} 1/k! < 2/(K+1)!
    return lower, lower + Fraction(2, factorial(terms + 1))


E_LOWER, E_UPPER = _e_enclosure()


def strict_ceiling(x) -> int:
    """Least integer strictly greater than x."""
    x = parse_rational(x) if isinstance(x, str) else Fraction(x)
    return floor(x) + 1


def b_lower_bound(n: int, d: int, N: int) -> Fraction:
    """N(N-d)...(N-nd) / ((n+1)! d)."""
    if N <= n * d:
        raise InvalidInput(f"need N > n*d (N={N}, n={n}, d={d})")
    num = 1
    for j in range(n + 1):
        num *= N - j * d
    return Fraction(num, factorial(n + 1) * d)


@dataclass(frozen=True)
class ParameterSet:
    n: int
    k: int
    d: int
    eps: Fraction
    rho: Fraction
    p: int
    I_eps: int
    N: int
    u: int
    rhs_base: Fraction
    rhs_full: Fraction
    corollary: dict | None = None

    def as_dict(self) -> dict:
        out = {
            "n": self.n, "k": self.k, "d": self.d,
            "eps": format_rational(self.eps), "rho": format_rational(self.rho),
            "p": self.p, "I_eps": self.I_eps, "N": self.N, "u": self.u,
            "rhs_base": format_rational(self.rhs_base),
            "rhs": format_rational(self.rhs_full),
        }
        if self.corollary is not None:
            out["corollary"] = self.corollary
        return out


def _as_rational(x, name):
    try:
        return parse_rational(x) if not isinstance(x, Fraction) else x
    except InvalidInput as exc:
        raise InvalidInput(f"{name}: {exc}") from exc


def theorem_parameters(n: int, k: int, d: int, eps, rho=0, corollary: bool = False) -> ParameterSet:
    eps = _as_rational(eps, "eps")
    rho = _as_rational(rho, "rho")
    if not (isinstance(n, int) and isinstance(k, int) and isinstance(d, int)):
        raise InvalidInput("n, k, d must be integers")
    if n < 1 or k < n:
        raise InvalidInput(f"need k >= n >= 1 (got n={n}, k={k})")
    if d < 1:
        raise InvalidInput("need d >= 1")
    if eps <= 0:
        raise InvalidInput("need eps > 0")
    if rho < 0:
        raise InvalidInput("need rho >= 0")
    p = k - n + 1
    I_eps = strict_ceiling(1 / eps)
    N = (n + 1) * d + p * (n + 1) ** 3 * I_eps * d
    u = comb(N + n, n)
    rhs_base = p * (n + 1) + eps
    rhs_full = rhs_base + rho * u * (u - 1) / d
    cor = None
    if corollary:
        # eps = 1 + eps' with eps' -> 0: I(1/eps) = 1 throughout
        Nc = (n + 1) * d * (1 + p * (n + 1) ** 2)
        uc = comb(Nc + n, n)
        cor = {"N": Nc, "u": uc, "rhs": format_rational(p * (n + 1) + 1 + rho * uc * (uc - 1) / d)}
    return ParameterSet(n, k, d, eps, rho, p, I_eps, N, u, rhs_base, rhs_full, cor)


def lemma_b_rhs_base(params: ParameterSet) -> int:
    """The integer d p (n+1)^2 I(1/eps), raised to the n-th power in bound (b)."""
    return params.d * params.p * (params.n + 1) ** 2 * params.I_eps


@dataclass
class LemmaNewReport:
    b: Fraction
    b_source: str
    ratio: Fraction
    bound_a: Fraction
    a_pass: bool
    u: int
    bound_b_conservative: Fraction
    bound_b_anticonservative: Fraction
    b_pass: bool
    b_rounding_agree: bool
    p_le_b: bool
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.a_pass and self.b_pass

    def as_dict(self) -> dict:
        return {
            "b": format_rational(self.b), "b_source": self.b_source,
            "a": {"puN_over_db": format_rational(self.ratio), "bound": format_rational(self.bound_a),
                  "verdict": "pass" if self.a_pass else "fail"},
            "b_bound": {"u": self.u,
                        "upper_conservative": format_rational(self.bound_b_conservative),
                        "upper_anticonservative": format_rational(self.bound_b_anticonservative),
                        "rounding_agree": self.b_rounding_agree,
                        "verdict": "pass" if self.b_pass else "fail"},
            "p_le_b": self.p_le_b,
            "notes": list(self.notes),
        }


def verify_lemma_new(params: ParameterSet, b=None) -> LemmaNewReport:
    """Exact check of puN/(db) <= p(n+1)+eps and u <= e^(n+2) (d p (n+1)^2 I)^n.

    ``b`` defaults to the closed-form lower bound of the weights.
    """
    n, d, p, N, u = params.n, params.d, params.p, params.N, params.u
    if b is None or b == "formula":
        b_val, src = b_lower_bound(n, d, N), "formula"
    else:
        b_val, src = Fraction(b), "supplied"
    if b_val == 0:
        raise ZeroDivisionError("b = 0: degenerate filtration")
    ratio = Fraction(p * u * N) / (d * b_val)
    bound_a = params.rhs_base
    base = lemma_b_rhs_base(params) ** n
    # over-approximating e makes the bound larger, i.e. easier to pass
    hi = E_UPPER ** (n + 2) * base
    lo = E_LOWER ** (n + 2) * base
    pass_hi, pass_lo = u <= hi, u <= lo
    notes = []
    if pass_hi != pass_lo:
        notes.append("bound (b) undecided at the e-enclosure precision")
    return LemmaNewReport(
        b=b_val, b_source=src, ratio=ratio, bound_a=bound_a, a_pass=ratio <= bound_a,
        u=u, bound_b_conservative=lo, bound_b_anticonservative=hi,
        b_pass=pass_hi and pass_lo, b_rounding_agree=pass_hi == pass_lo,
        p_le_b=p <= b_val, notes=notes,
    )


def binomial_inequality_holds(n: int, x) -> bool:
    """(1+x)^n <= 1 + (n+1) x, the auxiliary estimate valid on [0, 1/(n+1)^2]."""
    x = Fraction(x)
    return (1 + x) ** n <= 1 + (n + 1) * x


def precondition_ratio(params: ParameterSet) -> Fraction:
    """(n+1)d / (N - (n+1)d); must not exceed 1/(n+1)^2."""
    n, d, N = params.n, params.d, params.N
    return Fraction((n + 1) * d, N - (n + 1) * d)


def gauss_parameters(N_amb: int, k: int, d: int, eps, rho=0) -> dict:
    """Gauss-map variant: ambient P^N_amb, L in place of N, with both stated u-bounds."""
    ps = theorem_parameters(N_amb, k, d, eps, rho)
    base = lemma_b_rhs_base(ps) ** N_amb
    e_form = E_UPPER ** (N_amb + 2) * base
    three_form = 3 ** (N_amb + 2) * base
    out = ps.as_dict()
    out["L"] = out.pop("N")
    out["N_ambient"] = N_amb
    out["u_bound_e_form"] = format_rational(e_form)
    out["u_bound_3_form"] = str(three_form)
    out["u_le_e_form"] = ps.u <= E_LOWER ** (N_amb + 2) * base
    out["u_le_3_form"] = ps.u <= three_form
    return out


def subgeneral_comparison(n: int, k: int, d: int, eps) -> dict:
    """Older parameter set for the same situation, shown next to ours (not verified)."""
    eps = _as_rational(eps, "eps")
    I_eps = strict_ceiling(1 / eps)
    N_old = 2 * k * d * n ** 2 * (n + 1) ** 2 * I_eps
    u_old = comb(N_old + n, n)
    bound = float((3 * E_UPPER * k * d * I_eps) ** n) * float((n + 1) ** (3 * n))
    return {"N": N_old, "u": u_old, "u_bound_approx": bound,
            "rhs_first_term": k * (n + 1)}
