"""Executable verification of the algebra identities, with structured reports.

Every check expands both sides of an identity exactly at the truncation cap
and compares coefficient by coefficient; a failure reports the smallest power
where the sides differ. q-dependent identities are checked at rational q
values rather than symbolically (both sides' coefficients are bounded-degree
rational functions of q, so agreement at several points is strong evidence;
this limitation is deliberate).

Two of the q-series statements verified here are recorded as expected
failures in the default manifest together with corrected variants that pass;
the checker reports facts, not intentions.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Mapping, Optional, Sequence

from .operators import ANTIDER, QINT, QSCALE, OperatorSpec, apply, tilde_apply
from .rings import (
    Q,
    RingDescriptor,
    matrix_ring,
    random_element,
    rational,
    scalar_ring,
)
from .series import DomainError, TruncatedSeries
from .solvers import (
    HOMOGENEOUS,
    INHOM_LEFT,
    INHOM_RIGHT,
    EquationSpec,
    SolverUsageError,
    chi_lambda,
    inhom_closed_commutative,
    inhom_closed_noncommutative,
    inhom_closed_weight0,
    picard_solve,
    spitzer_closed,
)

PASS = "pass"
FAIL = "fail"
DOMAIN_ERROR = "domain-error"


@dataclass(frozen=True)
class Mismatch:
    power: int
    lhs: str
    rhs: str


@dataclass
class CheckReport:
    identity_id: str
    params: dict
    status: str
    first_mismatch: Optional[Mismatch] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS


def first_mismatch(lhs: TruncatedSeries, rhs: TruncatedSeries) -> Optional[Mismatch]:
    for k in range(lhs.cap + 1):
        if lhs.coeffs[k] != rhs.coeffs[k]:
            return Mismatch(k, str(lhs.coeffs[k]), str(rhs.coeffs[k]))
    return None


# ------------------------------------------------------------------ utilities


def _operator(params: Mapping) -> OperatorSpec:
    kind = params.get("operator", QINT)
    if kind == ANTIDER:
        return OperatorSpec(ANTIDER)
    return OperatorSpec(kind, rational(params.get("q", "1/2")))


def _ring(params: Mapping) -> RingDescriptor:
    dim = int(params.get("dim", 1))
    return scalar_ring() if dim == 1 else matrix_ring(dim)


def _int(params: Mapping, key: str, default: int) -> int:
    return int(params.get(key, default))


def random_series(
    ring: RingDescriptor,
    cap: int,
    rng: random.Random,
    bound: int = 5,
    min_valuation: int = 1,
) -> TruncatedSeries:
    """Random series with the given minimal valuation and a nonzero lead term."""
    coeffs = [ring.zero()] * min_valuation
    coeffs += [random_element(ring, rng, bound) for _ in range(cap + 1 - min_valuation)]
    return TruncatedSeries(ring, cap, tuple(coeffs))


def poch(q: Q, n: int) -> Q:
    """(1-q)(1-q^2)...(1-q^n)."""
    out = Q(1)
    qk = Q(1)
    for _ in range(n):
        qk = qk * q
        out = out * (1 - qk)
    return out


def _power_sum_product(q: Q, cap: int, sign: int, inverse: bool) -> TruncatedSeries:
    """Product over n >= 1 of (1 + sign*q^n t)^(+-1), via its logarithm.

    log prod (1 + s q^n t) = sum_j (-1)^(j-1) s^j p_j t^j / j with the power
    sums p_j = sum_n q^(jn) evaluated in closed form as q^j/(1-q^j). This is
    exact for every rational q with |q| != 1, including |q| > 1 where partial
    products do not converge coefficientwise.
    """
    ring = scalar_ring()
    coeffs = [Q(0)]
    qj = Q(1)
    for j in range(1, cap + 1):
        qj = qj * q
        pj = qj / (1 - qj)
        coeffs.append(Q((-1) ** (j - 1) * sign**j, j) * pj)
    log_series = TruncatedSeries.from_coeffs(ring, cap, coeffs)
    if inverse:
        log_series = -log_series
    return log_series.exp()


def q_product(form: str, q, cap: int) -> TruncatedSeries:
    """Truncated infinite products over n >= 1 of (1 + q^n t) or 1/(1 - q^n t)."""
    q = rational(q)
    if form == "prod-one-plus":
        return _power_sum_product(q, cap, 1, inverse=False)
    if form == "prod-one-minus-inv":
        return _power_sum_product(q, cap, -1, inverse=True)
    raise ValueError(f"unknown product form: {form!r}")


def _report(
    identity_id: str,
    params: Mapping,
    pairs: Sequence[tuple[TruncatedSeries, TruncatedSeries]],
    started: float,
) -> CheckReport:
    """Compare lhs/rhs pairs; first mismatching pair decides the report."""
    for lhs, rhs in pairs:
        mm = first_mismatch(lhs, rhs)
        if mm is not None:
            return CheckReport(
                identity_id, dict(params), FAIL, mm, time.perf_counter() - started
            )
    return CheckReport(identity_id, dict(params), PASS, None, time.perf_counter() - started)


# ----------------------------------------------------------------- the checks


def check_rb_axiom(params: Mapping) -> CheckReport:
    """P(x)P(y) = P(xP(y)) + P(P(x)y) + w P(xy), for P and its tilde companion."""
    started = time.perf_counter()
    op = _operator(params)
    ring = _ring(params)
    cap = _int(params, "order", 16)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    w = op.weight
    min_val = 0 if op.kind == ANTIDER else 1
    for _ in range(samples):
        x = random_series(ring, cap, rng, min_valuation=min_val)
        y = random_series(ring, cap, rng, min_valuation=min_val)
        for p in (lambda s: apply(op, s), lambda s: tilde_apply(op, s)):
            lhs = p(x) * p(y)
            rhs = p(x * p(y)) + p(p(x) * y) + p(x * y).scale(w)
            mm = first_mismatch(lhs, rhs)
            if mm is not None:
                return CheckReport(
                    "rb-axiom", dict(params), FAIL, mm, time.perf_counter() - started
                )
    return CheckReport("rb-axiom", dict(params), PASS, None, time.perf_counter() - started)


def check_kingman(params: Mapping) -> CheckReport:
    """w P(u)^n = P((-Pt(u))^n - P(u)^n) for n = 1..nmax."""
    started = time.perf_counter()
    op = _operator(params)
    if op.weight == 0:
        return CheckReport("kingman", dict(params), DOMAIN_ERROR, None,
                           time.perf_counter() - started)
    ring = _ring(params)
    cap = _int(params, "order", 12)
    nmax = _int(params, "nmax", 6)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    pairs = []
    for s in range(samples):
        u = TruncatedSeries.var(ring, cap) if s == 0 else random_series(ring, cap, rng)
        pu = apply(op, u)
        ptu = tilde_apply(op, u)
        for n in range(1, nmax + 1):
            lhs = pu.pow(n).scale(op.weight)
            rhs = apply(op, (-ptu).pow(n) - pu.pow(n))
            pairs.append((lhs, rhs))
    return _report("kingman", params, pairs, started)


def _nested(op: OperatorSpec, a: TruncatedSeries, k: int,
            inner: Optional[TruncatedSeries] = None) -> TruncatedSeries:
    """P(a ... P(a P(inner)) ...) with k nestings of a; inner omitted for the
    homogeneous pattern P(a...P(a)...)."""
    if inner is not None:
        out = apply(op, inner)
    else:
        out = TruncatedSeries.one(a.ring, a.cap)
    for _ in range(k):
        out = apply(op, a * out)
    return out


def check_lemma_iteration(params: Mapping) -> CheckReport:
    """Weight-0 commutative iteration lemma, items A and B."""
    started = time.perf_counter()
    item = str(params.get("item", "A")).upper()
    op = OperatorSpec(ANTIDER)
    ring = scalar_ring()
    cap = _int(params, "order", 12)
    kmax = _int(params, "kmax", 6)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    pairs = []
    for s in range(samples):
        a = TruncatedSeries.var(ring, cap) if s == 0 else random_series(
            ring, cap, rng, min_valuation=0)
        nested = [_nested(op, a, k) for k in range(kmax + 2)]
        pa = apply(op, a)
        for k in range(kmax + 1):
            if item == "A":
                pairs.append((nested[k], pa.pow(k).scale(Q(1, _factorial(k)))))
            else:
                acc = TruncatedSeries.zero(ring, cap)
                for l in range(k + 1):
                    term = nested[k + 1 - l] * nested[l]
                    acc = acc + (term if l % 2 == 0 else -term)
                rhs = nested[k + 1] if k % 2 == 0 else -nested[k + 1]
                pairs.append((acc, rhs))
    ident = "lemma-iter-a" if item == "A" else "lemma-iter-b"
    return _report(ident, params, pairs, started)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def check_spitzer(params: Mapping) -> CheckReport:
    """Closed Spitzer exponential against the Picard sum, commutative setting."""
    started = time.perf_counter()
    op = _operator(params)
    ring = scalar_ring()
    cap = _int(params, "order", 20)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    pairs = []
    for s in range(samples):
        a = TruncatedSeries.var(ring, cap) if s == 0 else random_series(ring, cap, rng)
        closed = spitzer_closed(op, a)
        iterated = picard_solve(EquationSpec(HOMOGENEOUS, op, a))
        pairs.append((closed, iterated))
    return _report("spitzer", params, pairs, started)


def check_generalized_spitzer(params: Mapping) -> CheckReport:
    """Closed inhomogeneous solutions against the Picard fixed point."""
    started = time.perf_counter()
    op = _operator(params)
    ring = _ring(params)
    cap = _int(params, "order", 12)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    ident = _gen_spitzer_id(op, ring)
    pairs = []
    for s in range(samples):
        if s == 0:
            a0 = a1 = TruncatedSeries.var(ring, cap)
        else:
            a0 = random_series(ring, cap, rng)
            a1 = random_series(ring, cap, rng)
        eq = EquationSpec(INHOM_LEFT, op, a1, a0)
        if ring.commutative and op.weight != 0:
            closed = inhom_closed_commutative(eq)
        elif op.weight == 0:
            closed = inhom_closed_weight0(eq)
        else:
            closed = inhom_closed_noncommutative(eq, "left")
        pairs.append((closed, picard_solve(eq)))
        if not ring.commutative and op.weight != 0:
            eq_r = EquationSpec(INHOM_RIGHT, op, a1, a0)
            pairs.append((inhom_closed_noncommutative(eq_r, "right"), picard_solve(eq_r)))
    return _report(ident, params, pairs, started)


def _gen_spitzer_id(op: OperatorSpec, ring: RingDescriptor) -> str:
    if op.weight == 0:
        return "gen-spitzer-weight0"
    return "gen-spitzer-comm" if ring.commutative else "gen-spitzer-noncomm"


def check_bch_chl_factorization(params: Mapping) -> CheckReport:
    """exp(-w a) = exp(P(chi(a))) exp(Pt(chi(a)))."""
    started = time.perf_counter()
    op = _operator(params)
    if op.weight == 0:
        return CheckReport("bch-chl-factorization", dict(params), DOMAIN_ERROR, None,
                           time.perf_counter() - started)
    ring = _ring(params)
    cap = _int(params, "order", 10)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    pairs = []
    for _ in range(samples):
        a = random_series(ring, cap, rng)
        chi = chi_lambda(op, a)
        lhs = a.scale(-op.weight).exp()
        rhs = apply(op, chi).exp() * tilde_apply(op, chi).exp()
        pairs.append((lhs, rhs))
    return _report("bch-chl-factorization", params, pairs, started)


def check_special_equality(params: Mapping) -> CheckReport:
    """1 - P(exp(-P(u)) (1+w a1)^-1 a1) = exp(-P(u)), and that element solves
    d = 1 + P(-(1+w a1)^-1 a1 d)."""
    started = time.perf_counter()
    op = _operator(params)
    if op.weight == 0:
        return CheckReport("special-equality", dict(params), DOMAIN_ERROR, None,
                           time.perf_counter() - started)
    ring = scalar_ring()
    cap = _int(params, "order", 12)
    samples = _int(params, "samples", 10)
    rng = random.Random(_int(params, "seed", 0))
    one = TruncatedSeries.one(ring, cap)
    pairs = []
    for s in range(samples):
        a1 = TruncatedSeries.var(ring, cap) if s == 0 else random_series(ring, cap, rng)
        u = a1.lambda_log(op.weight)
        e_minus = (-apply(op, u)).exp()
        inv = a1.geom_inv(op.weight)
        lhs = one - apply(op, e_minus * inv * a1)
        pairs.append((lhs, e_minus))
        # d = exp(-P(u)) solves the companion equation
        d_rhs = one + apply(op, (-(inv * a1)) * e_minus)
        pairs.append((e_minus, d_rhs))
    return _report("special-equality", params, pairs, started)


def _q_sum(cap: int, q: Q, exponent: Callable[[int], int],
           sign: Callable[[int], int] = lambda n: 1) -> TruncatedSeries:
    """1 + sum over n >= 1 of sign(n) q^exponent(n) t^n / ((1-q)...(1-q^n))."""
    ring = scalar_ring()
    coeffs = [Q(1)]
    for n in range(1, cap + 1):
        coeffs.append(sign(n) * q ** exponent(n) / poch(q, n))
    return TruncatedSeries.from_coeffs(ring, cap, coeffs)


def check_eulerian(params: Mapping) -> CheckReport:
    """q-series identities: both printed statements and corrected variants."""
    started = time.perf_counter()
    variant = str(params["variant"])
    q = rational(params.get("q", "1/2"))
    cap = _int(params, "order", 30)
    ring = scalar_ring()
    one = TruncatedSeries.one(ring, cap)
    t = TruncatedSeries.var(ring, cap)
    prod_inv = q_product("prod-one-minus-inv", q, cap)
    if variant == "prop-one-printed":
        lhs = _q_sum(cap, q, lambda n: 2 * n - 1)
        rhs = (one - t) * prod_inv
    elif variant == "prop-one-corrected":
        lhs = _q_sum(cap, q, lambda n: 2 * n - 1)
        rhs = (one.scale(1 / q) - t) * prod_inv + one.scale(1 - 1 / q)
    elif variant == "prop-two":
        lhs = _q_sum(cap, q, lambda n: n)
        rhs = prod_inv
    elif variant == "qbinomial-printed":
        lhs = _q_sum(cap, q, lambda n: n * (n + 1) // 2 - 1)
        rhs = q_product("prod-one-plus", q, cap)
    elif variant == "qbinomial-corrected":
        lhs = _q_sum(cap, q, lambda n: n * (n + 1) // 2)
        rhs = q_product("prod-one-plus", q, cap)
    elif variant == "interior-lemma":
        # prod 1/(1+q^k t) = (1+t)(1 + sum (-t)^n / ((1-q)...(1-q^n)))
        lhs = _alternating_inverse_product(q, cap)
        rhs = (one + t) * _q_sum(cap, q, lambda n: 0, sign=lambda n: (-1) ** n)
    else:
        raise KeyError(f"unknown eulerian variant: {variant!r}")
    ident = f"eulerian-{variant}"
    return _report(ident, params, [(lhs, rhs)], started)


def _alternating_inverse_product(q: Q, cap: int) -> TruncatedSeries:
    """Truncated infinite product over k >= 1 of 1/(1 + q^k t)."""
    return _power_sum_product(q, cap, 1, inverse=True)


def check_computation_one(params: Mapping) -> CheckReport:
    """exp(-P(log(1+t))) equals the product of 1/(1+q^k t) for the q-integral."""
    started = time.perf_counter()
    q = rational(params.get("q", "1/2"))
    cap = _int(params, "order", 16)
    op = OperatorSpec(QINT, q)
    t = TruncatedSeries.var(scalar_ring(), cap)
    lhs = (-apply(op, t.log1p())).exp()
    rhs = _alternating_inverse_product(q, cap)
    return _report("computation-one", params, [(lhs, rhs)], started)


def check_eulerian_third(params: Mapping) -> CheckReport:
    """P(exp(-P(log(1+t))) t) as an explicit alternating q-Pochhammer sum."""
    started = time.perf_counter()
    q = rational(params.get("q", "1/2"))
    cap = _int(params, "order", 16)
    op = OperatorSpec(QINT, q)
    ring = scalar_ring()
    t = TruncatedSeries.var(ring, cap)
    lhs = apply(op, (-apply(op, t.log1p())).exp() * t)
    coeffs = [Q(0)]
    for m in range(1, cap + 1):
        coeffs.append(-((-1) ** m) * q ** (2 * m - 1) / poch(q, m))
    rhs = TruncatedSeries.from_coeffs(ring, cap, coeffs)
    return _report("eulerian-third", params, [(lhs, rhs)], started)


def check_eulerian_first_partial(params: Mapping) -> CheckReport:
    """The nested inhomogeneous sum for a0 = a1 = t against its explicit
    q-binomial form qt/(1-q) + sum_{n>=2} q^(n(n+1)/2-1) t^n / poch(n)."""
    started = time.perf_counter()
    q = rational(params.get("q", "1/2"))
    cap = _int(params, "order", 16)
    op = OperatorSpec(QINT, q)
    ring = scalar_ring()
    t = TruncatedSeries.var(ring, cap)
    lhs = picard_solve(EquationSpec(INHOM_LEFT, op, t, t))
    coeffs = [Q(0), q / (1 - q)]
    for n in range(2, cap + 1):
        coeffs.append(q ** (n * (n + 1) // 2 - 1) / poch(q, n))
    rhs = TruncatedSeries.from_coeffs(ring, cap, coeffs)
    return _report("eulerian-first-partial", params, [(lhs, rhs)], started)


# ------------------------------------------------------------------- registry


def _eulerian_runner(variant: str) -> Callable[[Mapping], CheckReport]:
    def run(params: Mapping) -> CheckReport:
        merged = dict(params)
        merged["variant"] = variant
        return check_eulerian(merged)

    return run


def _lemma_runner(item: str) -> Callable[[Mapping], CheckReport]:
    def run(params: Mapping) -> CheckReport:
        merged = dict(params)
        merged["item"] = item
        return check_lemma_iteration(merged)

    return run


IDENTITIES: dict[str, Callable[[Mapping], CheckReport]] = {
    "rb-axiom": check_rb_axiom,
    "kingman": check_kingman,
    "lemma-iter-a": _lemma_runner("A"),
    "lemma-iter-b": _lemma_runner("B"),
    "spitzer": check_spitzer,
    "gen-spitzer-comm": check_generalized_spitzer,
    "gen-spitzer-noncomm": check_generalized_spitzer,
    "gen-spitzer-weight0": check_generalized_spitzer,
    "bch-chl-factorization": check_bch_chl_factorization,
    "special-equality": check_special_equality,
    "eulerian-prop-one-printed": _eulerian_runner("prop-one-printed"),
    "eulerian-prop-one-corrected": _eulerian_runner("prop-one-corrected"),
    "eulerian-prop-two": _eulerian_runner("prop-two"),
    "eulerian-qbinomial-printed": _eulerian_runner("qbinomial-printed"),
    "eulerian-qbinomial-corrected": _eulerian_runner("qbinomial-corrected"),
    "eulerian-interior-lemma": _eulerian_runner("interior-lemma"),
    "computation-one": check_computation_one,
    "eulerian-third": check_eulerian_third,
    "eulerian-first-partial": check_eulerian_first_partial,
}


class UnknownIdentityError(KeyError):
    pass


def run_check(identity_id: str, params: Mapping) -> CheckReport:
    try:
        runner = IDENTITIES[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None
    try:
        report = runner(params)
    except (DomainError, SolverUsageError):
        return CheckReport(identity_id, dict(params), DOMAIN_ERROR)
    report.identity_id = identity_id
    return report


# -------------------------------------------------------------------- manifest


@dataclass(frozen=True)
class ManifestEntry:
    identity_id: str
    params: dict = field(default_factory=dict)
    expected: str = PASS


@dataclass(frozen=True)
class SuiteManifest:
    entries: tuple


def load_manifest(data: dict) -> SuiteManifest:
    entries = tuple(
        ManifestEntry(
            e["id"], dict(e.get("params", {})), e.get("expect", PASS)
        )
        for e in data["entries"]
    )
    return SuiteManifest(entries)


def load_manifest_file(path: str) -> SuiteManifest:
    with open(path, encoding="utf-8") as fh:
        return load_manifest(json.load(fh))


def default_manifest() -> SuiteManifest:
    text = resources.files("rbseries").joinpath("data/default_manifest.json").read_text()
    return load_manifest(json.loads(text))


def run_suite(manifest: SuiteManifest) -> list[CheckReport]:
    return [run_check(e.identity_id, e.params) for e in manifest.entries]


def suite_ok(manifest: SuiteManifest, reports: Sequence[CheckReport]) -> bool:
    return all(r.status == e.expected for e, r in zip(manifest.entries, reports))
