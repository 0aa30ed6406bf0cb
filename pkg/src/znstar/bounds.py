"""Numeric verification of the analytic inequalities the library leans on.

Every check returns a violation list rather than a boolean: a genuine
violation of a cited classical bound would be the most important output
this package could produce and must carry evidence.  Comparisons that
could be decided by floating point alone are re-done exactly (integer
bit-length arithmetic) wherever the compared quantities are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import sieve_primes
from .errors import DomainError, FalsificationError, ResourceLimitError

__all__ = [
    "ThresholdReport",
    "BoundViolation",
    "PrimorialGrowthReport",
    "TailInequalityFailure",
    "phi_ratio_constant",
    "phi_over_2omega_scan",
    "rosser_schoenfeld_check",
    "robin_omega_check",
    "primorial_growth_check",
]

_PHI_SCAN_CAP = 10**7
_OMEGA_SCAN_CAP = 10**7
_GROWTH_CAP = 10**4


def phi_ratio_constant(a: int) -> int:
    """Explicit c with phi(n)/2^omega(n) > a for every n > c.

    With m the least integer satisfying 2^m > a >= 2^(m-1), c is the
    product of all primes up to 4a + 1, raised to the power m + 2.
    Sufficiency, not minimality, is what the constant provides.
    """
    if a < 1:
        raise DomainError(f"parameter a must be positive, got {a}")
    m = a.bit_length()
    prod = 1
    for p in sieve_primes(4 * a + 1).as_list():
        prod *= p
    return prod ** (m + 2)


@dataclass(frozen=True)
class ThresholdReport:
    """Largest scanned violation of a thresholded inequality vs the explicit constant."""

    statement: str
    parameter: int
    paper_constant: int
    empirical_threshold: int | None
    scan_limit: int


@lru_cache(maxsize=2)
def _phi_omega_sieve(limit: int) -> tuple[np.ndarray, np.ndarray]:
    phi = np.arange(limit + 1, dtype=np.int64)
    omega = np.zeros(limit + 1, dtype=np.int8)
    for p in sieve_primes(limit).as_list():
        phi[p::p] -= phi[p::p] // p
        omega[p::p] += 1
    phi.setflags(write=False)
    omega.setflags(write=False)
    return phi, omega


def phi_over_2omega_scan(a: int, scan_limit: int, cap: int = _PHI_SCAN_CAP) -> ThresholdReport:
    """Largest n <= scan_limit with phi(n)/2^omega(n) <= a, checked exhaustively.

    All comparisons are exact integer comparisons phi(n) <= a * 2^omega(n).
    The scan also asserts the weaker totient threshold (phi(n) > a above
    the reported point), which the ratio bound implies.
    """
    if a < 1:
        raise DomainError(f"parameter a must be positive, got {a}")
    if scan_limit > cap:
        raise ResourceLimitError(f"scan limit {scan_limit} exceeds cap {cap}")
    if scan_limit < 2:
        raise DomainError(f"scan limit {scan_limit} too small")
    phi, omega = _phi_omega_sieve(scan_limit)
    ns = np.arange(1, scan_limit + 1)
    ratio_viol = ns[phi[1:] <= a * np.left_shift(np.int64(1), omega[1:].astype(np.int64))]
    threshold = int(ratio_viol[-1]) if len(ratio_viol) else None
    phi_viol = ns[phi[1:] <= a]
    phi_threshold = int(phi_viol[-1]) if len(phi_viol) else 0
    if threshold is not None and phi_threshold > threshold:
        raise FalsificationError(
            f"phi(n) <= {a} at n = {phi_threshold} beyond the ratio threshold "
            f"{threshold}; phi <= a must imply phi/2^omega <= a"
        )
    return ThresholdReport(
        statement="phi-over-2omega",
        parameter=a,
        paper_constant=phi_ratio_constant(a),
        empirical_threshold=threshold,
        scan_limit=scan_limit,
    )


@dataclass(frozen=True)
class BoundViolation:
    """One point where a checked inequality fails, with both sides."""

    n: int
    observed: float
    bound: float


def rosser_schoenfeld_check(r_limit: int, cap: int | None = None) -> list[BoundViolation]:
    """pi(r) >= r / ln r for every integer r in [17, r_limit].

    Returns the violations (expected empty).
    """
    if r_limit < 17:
        raise DomainError(f"the inequality is stated from 17, got limit {r_limit}")
    table = sieve_primes(r_limit, cap=cap)
    counts = np.zeros(r_limit + 1, dtype=np.int64)
    counts[table.primes] = 1
    pi = np.cumsum(counts)
    rs = np.arange(17, r_limit + 1, dtype=np.float64)
    bound = rs / np.log(rs)
    mask = pi[17:] < bound
    return [
        BoundViolation(n=int(r), observed=float(pi[int(r)]), bound=float(b))
        for r, b in zip(rs[mask], bound[mask])
    ]


def robin_omega_check(n_limit: int, cap: int = _OMEGA_SCAN_CAP) -> list[BoundViolation]:
    """omega(n) <= ln n / (ln ln n - 1.1714) for every n in [26, n_limit].

    Returns the violations (expected empty).
    """
    if n_limit < 26:
        raise DomainError(f"the inequality is stated from 26, got limit {n_limit}")
    if n_limit > cap:
        raise ResourceLimitError(f"limit {n_limit} exceeds cap {cap}")
    _, omega = _phi_omega_sieve(n_limit)
    ns = np.arange(26, n_limit + 1, dtype=np.float64)
    log_ns = np.log(ns)
    bound = log_ns / (np.log(log_ns) - 1.1714)
    mask = omega[26:].astype(np.float64) > bound
    return [
        BoundViolation(n=int(n), observed=float(omega[int(n)]), bound=float(b))
        for n, b in zip(ns[mask], bound[mask])
    ]


@dataclass(frozen=True)
class TailInequalityFailure:
    """A point where the quoted Chebyshev-type log-sum bound fails."""

    k: int
    p_k: int
    log_sum: float
    lower_bound: float


@dataclass(frozen=True)
class PrimorialGrowthReport:
    """2^k * (p_1 ... p_k) > 2^(p_(k+1)): exact main check plus the auxiliary bound.

    The auxiliary inequality sum_{i<=k} ln p_i > p_k - p_k / (2 ln p_k) is
    quoted in the literature without a validity range and fails for small
    p_k; the report states what was observed instead of assuming a range.
    """

    k_limit: int
    main_violations: tuple[BoundViolation, ...]
    auxiliary_failures: tuple[TailInequalityFailure, ...]
    auxiliary_holds_from_k: int | None


def primorial_growth_check(k_limit: int, cap: int = _GROWTH_CAP) -> PrimorialGrowthReport:
    """Check the primorial growth inequality for all 3 <= k <= k_limit.

    The main comparison is exact: with Q = p_1 ... p_k it reduces to bit
    lengths of Q * 2^k and 2^(p_(k+1)), falling back to full integer
    comparison when the bit lengths tie.  The auxiliary log-sum bound is
    evaluated in compensated floating point and reported as observed.
    """
    if k_limit < 3:
        raise DomainError(f"k_limit must be at least 3, got {k_limit}")
    if k_limit > cap:
        raise ResourceLimitError(f"k_limit {k_limit} exceeds cap {cap}")
    limit = 40
    while True:
        primes = sieve_primes(limit).as_list()
        if len(primes) >= k_limit + 1:
            break
        limit *= 2
    main_violations = []
    aux_failures = []
    product = 1
    log_sum = 0.0
    comp = 0.0  # Kahan compensation for the running log sum
    for k in range(1, k_limit + 1):
        p = primes[k - 1]
        product *= p
        term = math.log(p) - comp
        fresh = log_sum + term
        comp = (fresh - log_sum) - term
        log_sum = fresh
        if k < 3:
            continue
        p_next = primes[k]
        lhs_bits = product.bit_length() + k
        rhs_bits = p_next + 1
        if lhs_bits == rhs_bits:
            holds = product << k > 1 << p_next
        else:
            holds = lhs_bits > rhs_bits
        if not holds:
            main_violations.append(
                BoundViolation(n=k, observed=float(lhs_bits), bound=float(rhs_bits))
            )
        aux_rhs = p - p / (2.0 * math.log(p))
        if not log_sum > aux_rhs:
            aux_failures.append(
                TailInequalityFailure(k=k, p_k=p, log_sum=log_sum, lower_bound=aux_rhs)
            )
    holds_from = (aux_failures[-1].k + 1) if aux_failures else 3
    if holds_from > k_limit:
        holds_from = None
    return PrimorialGrowthReport(
        k_limit=k_limit,
        main_violations=tuple(main_violations),
        auxiliary_failures=tuple(aux_failures),
        auxiliary_holds_from_k=holds_from,
    )
