"""Prime-gap statistics against the conjectured pair density.

The density model for consecutive primes differing by 2k is
C * prod_{q | k, q odd prime} (q-1)/(q-2) * x / (ln x)^2 with C the
twin-prime constant 2 * prod_{p >= 3} (1 - 1/(p-1)^2).  C is always
computed from a truncated product, never hard-coded.  The x/(ln x)^2
form under-predicts at desk scale; ratios, not differences, are the
meaningful output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import config
from .arith import factorize, lucas_lehmer, sieve_primes
from .errors import DomainError, ResourceLimitError

__all__ = [
    "TwinConstant",
    "GapCensusRow",
    "SumOrDifferenceResult",
    "MersenneDensityReport",
    "hardy_littlewood_constant",
    "gap_census",
    "gap_census_table",
    "weakened_polignac_check",
    "sum_or_difference_check",
    "mersenne_density_prediction",
]

_EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class TwinConstant:
    """Truncated twin-prime constant with a monotone tail bound.

    The true constant lies in [value * (1 - tail_bound/value), value];
    the product only shrinks as the truncation grows.
    """

    value: float
    tail_bound: float
    truncation: int


def hardy_littlewood_constant(truncation: int) -> TwinConstant:
    """2 * prod_{3 <= p <= truncation} (1 - 1/(p-1)^2) with an error bound.

    The removed tail factors satisfy sum_{p > T} 1/(p-1)^2 < 1/(T-1),
    giving the reported bound.
    """
    if truncation < 3:
        raise DomainError(f"truncation {truncation} < 3 leaves an empty product")
    ps = sieve_primes(truncation).primes
    odd = ps[ps >= 3].astype(np.float64)
    value = 2.0 * float(np.prod(1.0 - 1.0 / (odd - 1.0) ** 2))
    return TwinConstant(value=value, tail_bound=value / (truncation - 1), truncation=truncation)


@dataclass(frozen=True)
class GapCensusRow:
    k: int
    x_limit: int
    empirical: int
    predicted: float
    ratio: float | None


def _primes_through(x_limit: int, cap: int | None) -> np.ndarray:
    """Primes up to a point strictly beyond x_limit (so successors exist)."""
    pad = 600
    while True:
        ps = sieve_primes(x_limit + pad, cap=cap).primes
        if int(ps[-1]) > x_limit:
            return ps
        pad *= 4


def _k_factor(k: int) -> float:
    out = 1.0
    for q, _ in factorize(k).factors:
        if q > 2:
            out *= (q - 1) / (q - 2)
    return out


def _predicted(k: int, x_limit: int, constant: TwinConstant) -> float:
    return constant.value * _k_factor(k) * x_limit / math.log(x_limit) ** 2


def gap_census_table(
    x_limit: int,
    k_max: int,
    constant: TwinConstant | None = None,
    cap: int | None = None,
) -> list[GapCensusRow]:
    """Exact consecutive-gap counts for k = 1..k_max over one shared sieve.

    Counts pairs (p_n, p_n+1) with n > 1 and p_n <= x_limit, exactly as the
    density statement is phrased; the successor may exceed x_limit.
    """
    if x_limit < 3:
        raise DomainError(f"x_limit {x_limit} is too small for gap statistics")
    if k_max < 1:
        raise DomainError(f"k_max {k_max} < 1")
    constant = constant or hardy_littlewood_constant(10**5)
    ps = _primes_through(x_limit, cap)
    gaps = np.diff(ps)
    gaps = gaps[1:][ps[1:-1] <= x_limit]  # n > 1: drop the pair starting at 2
    counts = np.bincount(gaps, minlength=2 * k_max + 1)
    rows = []
    for k in range(1, k_max + 1):
        empirical = int(counts[2 * k]) if 2 * k < len(counts) else 0
        predicted = _predicted(k, x_limit, constant)
        ratio = empirical / predicted if predicted > 0 else None
        rows.append(GapCensusRow(k, x_limit, empirical, predicted, ratio))
    return rows


def gap_census(
    x_limit: int,
    k: int,
    constant: TwinConstant | None = None,
    cap: int | None = None,
) -> GapCensusRow:
    """Exact count of consecutive primes p_n <= x_limit with gap 2k, plus the prediction."""
    return gap_census_table(x_limit, k, constant=constant, cap=cap)[k - 1]


def _prime_flags(limit: int, cap: int | None) -> np.ndarray:
    sieve_primes(limit, cap=cap)  # cap check before touching the cache
    return _flags_cached(limit)


@lru_cache(maxsize=4)
def _flags_cached(limit: int) -> np.ndarray:
    flags = np.zeros(limit + 1, dtype=bool)
    flags[sieve_primes(limit).primes] = True
    flags.setflags(write=False)
    return flags


@lru_cache(maxsize=4)
def _prime_list(limit: int) -> list[int]:
    return sieve_primes(limit).as_list()


def weakened_polignac_check(
    k: int, prime_limit: int, cap: int | None = None
) -> tuple[int, int] | None:
    """Smallest prime pair (p, q) with p - q = 2k and both <= prime_limit.

    Primes need not be consecutive; smallest means smallest q.
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    flags = _prime_flags(prime_limit, cap)
    gap = 2 * k
    for q in _prime_list(prime_limit):
        p = q + gap
        if p > prime_limit:
            break
        if flags[p]:
            return p, q
    return None


@dataclass(frozen=True)
class SumOrDifferenceResult:
    """Whether an even number is a sum and/or difference of two primes."""

    two_k: int
    prime_limit: int
    sum_pair: tuple[int, int] | None
    difference_pair: tuple[int, int] | None

    @property
    def classification(self) -> str:
        if self.sum_pair and self.difference_pair:
            return "both"
        if self.sum_pair:
            return "sum"
        if self.difference_pair:
            return "difference"
        return "neither"


def sum_or_difference_check(
    two_k: int, prime_limit: int, cap: int | None = None
) -> SumOrDifferenceResult:
    """Search 2k = p + q and 2k = p - q within the prime limit.

    Sum pairs are reported smaller-first with the smallest possible first
    prime; difference pairs as (q + 2k, q) with the smallest q.
    """
    if two_k < 4 or two_k % 2:
        raise DomainError(f"need an even integer >= 4, got {two_k}")
    if two_k > prime_limit:
        raise DomainError(f"2k = {two_k} exceeds the prime limit {prime_limit}")
    flags = _prime_flags(prime_limit, cap)
    primes = _prime_list(prime_limit)
    sum_pair = None
    for q in primes:
        if q > two_k // 2:
            break
        if flags[two_k - q]:
            sum_pair = (q, two_k - q)
            break
    difference_pair = None
    for q in primes:
        p = q + two_k
        if p > prime_limit:
            break
        if flags[p]:
            difference_pair = (p, q)
            break
    return SumOrDifferenceResult(two_k, prime_limit, sum_pair, difference_pair)


@dataclass(frozen=True)
class MersenneDensityReport:
    model: str
    x_limit: int
    predicted: float
    actual: int
    exponents: tuple[int, ...]


def mersenne_density_prediction(
    x_limit: int, model: str, ll_budget: int | None = None
) -> MersenneDensityReport:
    """Predicted vs actual count of Mersenne primes up to x_limit.

    Predictions: (2/ln 2) * ln ln x (Gillies) or (e^gamma / ln 2) * ln ln x
    (Wagstaff).  The actual count runs Lucas-Lehmer over every prime
    exponent in range; known-exponent lists are never consulted.
    """
    if model not in ("gillies", "wagstaff"):
        raise DomainError(f"unknown model {model!r}")
    if x_limit < 8:
        raise DomainError(f"x_limit {x_limit} < 8")
    ll_budget = config.ll_exponent_budget() if ll_budget is None else ll_budget
    r = (x_limit + 1).bit_length() - 1  # largest p with 2^p - 1 <= x_limit
    if r > ll_budget:
        raise ResourceLimitError(
            f"exponents up to {r} exceed the Lucas-Lehmer budget {ll_budget}"
        )
    exponents = tuple(
        int(p) for p in sieve_primes(max(r, 2)).primes if p <= r and lucas_lehmer(int(p))
    )
    loglog = math.log(math.log(x_limit))
    if model == "gillies":
        predicted = (2.0 / math.log(2.0)) * loglog
    else:
        predicted = (math.exp(_EULER_GAMMA) / math.log(2.0)) * loglog
    return MersenneDensityReport(
        model=model,
        x_limit=x_limit,
        predicted=predicted,
        actual=len(exponents),
        exponents=exponents,
    )
