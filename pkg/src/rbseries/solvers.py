"""Solvers for the linear equations in a complete filtered Rota-Baxter algebra.

Fixed-point (Picard) iteration converges here in at most cap+1 steps because
every iteration's correction gains one t-valuation. The closed forms implement
the exponential solutions: Spitzer for the homogeneous equation and the
generalized identities for the inhomogeneous ones, with the chi recursions
handling the non-commutative cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Optional

from .operators import OperatorSpec, apply, tilde_apply
from .rings import Q
from .series import TruncatedSeries

HOMOGENEOUS = "homogeneous"
INHOM_LEFT = "inhom-left"
INHOM_RIGHT = "inhom-right"

FORMS = (HOMOGENEOUS, INHOM_LEFT, INHOM_RIGHT)


class SolverUsageError(ValueError):
    """Solver invoked outside its stated setting (weight, commutativity, form)."""


@dataclass(frozen=True)
class EquationSpec:
    """One of the three linear equations, with its operator and coefficients.

    homogeneous   b = 1 + P(a1*b)
    inhom-left    b = P((1 + w*a1)*a0) + P(a1*b)
    inhom-right   b = P(a0*(1 + w*a1)) + P(b*a1)

    where w is the operator weight. The right-handed equation is the
    opposite-algebra mirror of the left one; in a commutative ring the two
    coincide.
    """

    form: str
    op: OperatorSpec
    a1: TruncatedSeries
    a0: Optional[TruncatedSeries] = None

    def __post_init__(self) -> None:
        if self.form not in FORMS:
            raise ValueError(f"unknown equation form: {self.form!r}")
        if self.a1.valuation() < 1:
            raise ValueError("a1 must have valuation >= 1")
        if self.form == HOMOGENEOUS:
            if self.a0 is not None:
                raise ValueError("homogeneous equation takes no a0")
        else:
            if self.a0 is None:
                raise ValueError(f"{self.form} equation requires a0")
            if self.a0.valuation() < 1:
                raise ValueError("a0 must have valuation >= 1")


def _rhs(eq: EquationSpec, b: TruncatedSeries) -> TruncatedSeries:
    w = eq.op.weight
    if eq.form == HOMOGENEOUS:
        one = TruncatedSeries.one(eq.a1.ring, eq.a1.cap)
        return one + apply(eq.op, eq.a1 * b)
    unit_shift = TruncatedSeries.one(eq.a1.ring, eq.a1.cap) + eq.a1.scale(w)
    if eq.form == INHOM_LEFT:
        return apply(eq.op, unit_shift * eq.a0) + apply(eq.op, eq.a1 * b)
    return apply(eq.op, eq.a0 * unit_shift) + apply(eq.op, b * eq.a1)


def picard_solve(eq: EquationSpec) -> TruncatedSeries:
    """Unique fixed point of the equation at the truncation cap."""
    b = TruncatedSeries.zero(eq.a1.ring, eq.a1.cap)
    for _ in range(eq.a1.cap + 2):
        nxt = _rhs(eq, b)
        if nxt == b:
            return b
        b = nxt
    return b


def spitzer_closed(op: OperatorSpec, a: TruncatedSeries) -> TruncatedSeries:
    """exp(P(w^-1 log(1 + w*a))); for weight 0 this is exp(P(a))."""
    return apply(op, a.lambda_log(op.weight)).exp()


def inhom_closed_commutative(eq: EquationSpec) -> TruncatedSeries:
    """Closed solution of the inhomogeneous-left equation over a commutative ring."""
    if not eq.a1.ring.commutative:
        raise SolverUsageError(
            "commutative closed form over a non-commutative ring; "
            "use inhom_closed_noncommutative or inhom_closed_weight0"
        )
    if eq.form != INHOM_LEFT:
        raise SolverUsageError("closed form applies to the inhomogeneous-left equation")
    u = eq.a1.lambda_log(eq.op.weight)
    pu = apply(eq.op, u)
    return pu.exp() * apply(eq.op, (-pu).exp() * eq.a0)


def bch(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Baker-Campbell-Hausdorff remainder: log(exp(x)exp(y)) - x - y."""
    one = TruncatedSeries.one(x.ring, x.cap)
    return (x.exp() * y.exp() - one).log1p() - x - y


def chi_lambda(op: OperatorSpec, a: TruncatedSeries) -> TruncatedSeries:
    """BCH-recursion: fixed point of x = a + w^-1 BCH(P(x), Pt(x)).

    Splits exp(-w*a) into exp(P(chi)) * exp(Pt(chi)); requires nonzero weight.
    """
    w = op.weight
    if w == 0:
        raise SolverUsageError("chi_lambda requires nonzero weight; use chi_zero")
    inv_w = 1 / w
    x = a
    for _ in range(a.cap + 1):
        nxt = a + bch(apply(op, x), tilde_apply(op, x)).scale(inv_w)
        if nxt == x:
            return x
        x = nxt
    return x


_BERNOULLI_CACHE = [Q(1)]


def bernoulli(k: int) -> Q:
    """Bernoulli number B_k in the x/(e^x - 1) convention (B_1 = -1/2)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    while len(_BERNOULLI_CACHE) <= k:
        m = len(_BERNOULLI_CACHE)
        acc = Q(0)
        for j in range(m):
            acc += comb(m + 1, j) * _BERNOULLI_CACHE[j]
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[k]


def chi_zero(op: OperatorSpec, a: TruncatedSeries) -> TruncatedSeries:
    """Magnus-type recursion for weight 0.

    Fixed point of x = (1 + sum_k (B_k/k!) ad_{P(x)}^k)(a); then exp(P(chi0(a)))
    solves the homogeneous equation b = 1 + P(a*b).
    """
    if op.weight != 0:
        raise SolverUsageError("chi_zero requires weight 0")
    cap = a.cap

    def step(x: TruncatedSeries) -> TruncatedSeries:
        p = apply(op, x)
        out = a
        term = a
        for k in range(1, cap + 1):
            term = p * term - term * p
            if term.is_zero():
                break
            out = out + term.scale(bernoulli(k) / factorial(k))
        return out

    x = a
    for _ in range(cap + 1):
        nxt = step(x)
        if nxt == x:
            return x
        x = nxt
    return x


def inhom_closed_noncommutative(eq: EquationSpec, side: str = "left") -> TruncatedSeries:
    """Closed non-commutative solutions for nonzero weight.

    side='left' solves the inhomogeneous-left equation; side='right' the
    right-handed mirror. The right side needs the reversed recursion
    -chi_lambda(-u), which splits exp(-w*a) with the exponential factors in
    the opposite order (BCH(-x,-y) = -BCH(y,x)); in a commutative ring both
    recursions degenerate to the identity and the two sides coincide.
    """
    if eq.op.weight == 0:
        raise SolverUsageError("weight 0: use inhom_closed_weight0")
    if side not in ("left", "right"):
        raise ValueError(f"unknown side: {side!r}")
    u = eq.a1.lambda_log(eq.op.weight)
    chi = chi_lambda(eq.op, u) if side == "left" else -chi_lambda(eq.op, -u)
    p_chi = apply(eq.op, chi)
    e_plus = p_chi.exp()
    e_minus = (-p_chi).exp()
    if side == "left":
        return e_plus * apply(eq.op, e_minus * eq.a0)
    return apply(eq.op, eq.a0 * e_minus) * e_plus


def inhom_closed_weight0(eq: EquationSpec) -> TruncatedSeries:
    """Closed non-commutative solution of b = P(a0) + P(a1*b) for weight 0."""
    if eq.op.weight != 0:
        raise SolverUsageError("inhom_closed_weight0 requires weight 0")
    chi = chi_zero(eq.op, eq.a1)
    p_chi = apply(eq.op, chi)
    return p_chi.exp() * apply(eq.op, (-p_chi).exp() * eq.a0)
