"""Truncated formal power series in t over an exact coefficient ring.

A series holds coefficients c_0..c_N modulo t^(N+1). Equality is exact,
coefficient by coefficient. The t-adic valuation realizes the filtration:
val(x) is the least k with c_k != 0, or N+1 for the zero series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import (
    Q,
    RingDescriptor,
    RingElement,
    RingMismatchError,
    rational,
    rational_str,
    scalar_ring,
)


class DomainError(ValueError):
    """Input outside an operation's domain (e.g. exp of a unit series)."""


@dataclass(frozen=True)
class TruncatedSeries:
    ring: RingDescriptor
    cap: int
    coeffs: tuple  # cap+1 RingElements, coefficient of t^k at index k

    def __post_init__(self) -> None:
        if self.cap < 0:
            raise ValueError("cap must be >= 0")
        if len(self.coeffs) != self.cap + 1:
            raise ValueError("expected cap+1 coefficients")

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls, ring: RingDescriptor, cap: int) -> "TruncatedSeries":
        z = ring.zero()
        return cls(ring, cap, (z,) * (cap + 1))

    @classmethod
    def one(cls, ring: RingDescriptor, cap: int) -> "TruncatedSeries":
        z = ring.zero()
        return cls(ring, cap, (ring.one(),) + (z,) * cap)

    @classmethod
    def var(cls, ring: RingDescriptor, cap: int) -> "TruncatedSeries":
        """The series t."""
        if cap < 1:
            return cls.zero(ring, cap)
        z = ring.zero()
        return cls(ring, cap, (z, ring.one()) + (z,) * (cap - 1))

    @classmethod
    def from_coeffs(
        cls, ring: RingDescriptor, cap: int, values: Iterable
    ) -> "TruncatedSeries":
        """Coefficients c_0 upward; missing ones are zero, excess is truncated."""
        vals = [ring.element(v) for v in values][: cap + 1]
        vals += [ring.zero()] * (cap + 1 - len(vals))
        return cls(ring, cap, tuple(vals))

    # --------------------------------------------------------------- structure

    def _check(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("series over different rings")
        if self.cap != other.cap:
            raise ValueError("series with different truncation caps")

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.cap + 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def truncate(self, cap: int) -> "TruncatedSeries":
        """Discard coefficients above a smaller cap."""
        if cap > self.cap:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.ring, cap, self.coeffs[: cap + 1])

    def coefficient(self, k: int) -> RingElement:
        return self.coeffs[k]

    # -------------------------------------------------------------- arithmetic

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.ring, self.cap, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.ring, self.cap, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.cap, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product truncated at cap.

        Works on raw coefficient values; per-term RingElement allocation
        dominates the profile otherwise.
        """
        self._check(other)
        ring = self.ring
        cap = self.cap
        if ring.kind == "scalar-rational":
            xs = [c.value for c in self.coeffs]
            ys = [c.value for c in other.coeffs]
            out = [Q(0)] * (cap + 1)
            for i, a in enumerate(xs):
                if a:
                    for j in range(cap + 1 - i):
                        b = ys[j]
                        if b:
                            out[i + j] += a * b
            return TruncatedSeries(
                ring, cap, tuple(RingElement(ring, v) for v in out)
            )
        d = ring.dim
        idx = range(d)
        xs = [c.value for c in self.coeffs]
        # column-major view of the right factors, reused across the i-loop
        ycols = [tuple(zip(*c.value)) for c in other.coeffs]
        yzero = [c.is_zero() for c in other.coeffs]
        xzero = [c.is_zero() for c in self.coeffs]
        zrow = (Q(0),) * d
        out = [[list(zrow) for _ in idx] for _ in range(cap + 1)]
        for i, a in enumerate(xs):
            if xzero[i]:
                continue
            for j in range(cap + 1 - i):
                if yzero[j]:
                    continue
                cols = ycols[j]
                acc = out[i + j]
                for r in idx:
                    ar = a[r]
                    accr = acc[r]
                    for c in idx:
                        col = cols[c]
                        accr[c] += sum(ar[k] * col[k] for k in idx)
        coeffs = tuple(
            RingElement(ring, tuple(tuple(row) for row in m)) for m in out
        )
        return TruncatedSeries(ring, cap, coeffs)

    def scale(self, r) -> "TruncatedSeries":
        """Multiply every coefficient by a central rational."""
        r = rational(r)
        return TruncatedSeries(self.ring, self.cap, tuple(c.scale(r) for c in self.coeffs))

    def pow(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = TruncatedSeries.one(self.ring, self.cap)
        for _ in range(n):
            result = result * self
        return result

    # ------------------------------------------------------------ analytic maps

    def _require_positive_valuation(self, what: str) -> None:
        if not self.coeffs[0].is_zero():
            raise DomainError(f"{what}: series with zero constant term required")

    def exp(self) -> "TruncatedSeries":
        """Sum of x^n/n! for n = 0..cap; needs valuation >= 1."""
        self._require_positive_valuation("exp")
        result = TruncatedSeries.one(self.ring, self.cap)
        term = result
        for n in range(1, self.cap + 1):
            term = (term * self).scale(Q(1, n))
            if term.is_zero():
                break
            result = result + term
        return result

    def log1p(self) -> "TruncatedSeries":
        """log(1 + x) = sum of (-1)^(n-1) x^n / n; needs valuation >= 1."""
        self._require_positive_valuation("log")
        result = TruncatedSeries.zero(self.ring, self.cap)
        power = TruncatedSeries.one(self.ring, self.cap)
        for n in range(1, self.cap + 1):
            power = power * self
            if power.is_zero():
                break
            result = result + power.scale(Q((-1) ** (n - 1), n))
        return result

    def lambda_log(self, lam) -> "TruncatedSeries":
        """The weight-lambda logarithm sum of (-lam)^(n-1) x^n / n.

        At lam = 0 only the n = 1 term survives and the result is x itself.
        """
        self._require_positive_valuation("lambda_log")
        lam = rational(lam)
        result = TruncatedSeries.zero(self.ring, self.cap)
        power = TruncatedSeries.one(self.ring, self.cap)
        sign = Q(1)
        for n in range(1, self.cap + 1):
            power = power * self
            if power.is_zero() or (n > 1 and lam == 0):
                break
            result = result + power.scale(sign / n)
            sign = sign * (-lam)
        return result

    def geom_inv(self, lam) -> "TruncatedSeries":
        """(1 + lam*x)^(-1) = sum of (-lam*x)^n; needs valuation >= 1."""
        self._require_positive_valuation("geom_inv")
        lam = rational(lam)
        result = TruncatedSeries.one(self.ring, self.cap)
        power = result
        for _ in range(self.cap):
            power = (power * self).scale(-lam)
            if power.is_zero():
                break
            result = result + power
        return result

    # ------------------------------------------------------------------- text

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def to_json(self) -> list:
        """Array of rational strings, or of row-major matrices of strings."""
        if self.ring.kind == "scalar-rational":
            return [rational_str(c.value) for c in self.coeffs]
        return [
            [[rational_str(a) for a in row] for row in c.value] for c in self.coeffs
        ]


def parse_series(text: str, ring: RingDescriptor, cap: int) -> TruncatedSeries:
    """Parse the CLI text form: comma-separated coefficients from c_0 upward."""
    text = text.strip()
    values = [] if not text else [v.strip() for v in text.split(",")]
    return TruncatedSeries.from_coeffs(ring, cap, values)


def series_from_json(data: Sequence, ring: RingDescriptor, cap: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs(ring, cap, data)
