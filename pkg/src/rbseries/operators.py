"""The three Rota-Baxter operators on truncated series, plus the tilde companion.

kinds and weights:
  qint    t^n -> q^n t^n / (1 - q^n)   weight  1
  qscale  t^n -> t^n / (1 - q^n)       weight -1
  antider t^n -> t^(n+1) / (n + 1)     weight  0

The two q kinds are only defined on series with zero constant term (the
n = 0 formula divides by 1 - q^0 = 0); q must avoid {0, 1, -1} so that
1 - q^n is invertible for every n >= 1. Over matrix rings all three act
coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import Q, rational
from .series import DomainError, TruncatedSeries

QINT = "qint"
QSCALE = "qscale"
ANTIDER = "antider"

KINDS = (QINT, QSCALE, ANTIDER)


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    q: object = None  # rational; None for antider

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind: {self.kind!r}")
        if self.kind == ANTIDER:
            if self.q is not None:
                raise ValueError("antider takes no q parameter")
            return
        if self.q is None:
            raise ValueError(f"{self.kind} requires a q parameter")
        q = rational(self.q)
        if q in (Q(0), Q(1), Q(-1)):
            raise ValueError("q must avoid {0, 1, -1}")
        object.__setattr__(self, "q", q)

    @property
    def weight(self) -> Q:
        if self.kind == QINT:
            return Q(1)
        if self.kind == QSCALE:
            return Q(-1)
        return Q(0)


def apply(op: OperatorSpec, x: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise action of the operator; preserves the filtration."""
    if op.kind == ANTIDER:
        zero = x.ring.zero()
        out = [zero] * (x.cap + 1)
        for n in range(x.cap):
            out[n + 1] = x.coeffs[n].scale(Q(1, n + 1))
        return TruncatedSeries(x.ring, x.cap, tuple(out))
    if not x.coeffs[0].is_zero():
        raise DomainError(f"{op.kind}: operator undefined on constant term")
    q = op.q
    out = [x.ring.zero()]
    qn = Q(1)
    for n in range(1, x.cap + 1):
        qn = qn * q
        factor = qn / (1 - qn) if op.kind == QINT else 1 / (1 - qn)
        out.append(x.coeffs[n].scale(factor))
    return TruncatedSeries(x.ring, x.cap, tuple(out))


def tilde_apply(op: OperatorSpec, x: TruncatedSeries) -> TruncatedSeries:
    """The companion operator -weight*x - P(x), Rota-Baxter of the same weight."""
    return x.scale(-op.weight) - apply(op, x)
