"""Exact integer arithmetic primitives.

Sieving, factorization, primality, totients, primorials and
multiplicative orders.  Everything is pure and deterministic;
arbitrary-precision integers are used wherever values can exceed
64 bits, so results never depend on word size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import config
from .errors import DomainError, FalsificationError, ResourceLimitError

__all__ = [
    "PrimeTable",
    "FactoredInteger",
    "PrimalityVerdict",
    "sieve_primes",
    "factorize",
    "is_prime",
    "prime_verdict",
    "lucas_lehmer",
    "smallest_coprime",
    "primorial",
    "multiplicative_order",
]

_SEGMENT = 1 << 23

# Bases making Miller-Rabin deterministic for all n < 3.3e24 (well past 2^64).
_MR_EXACT_LIMIT = 3317044064679887385961981
_MR_EXACT_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LARGE_ROUNDS = 40


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending.  Immutable after construction."""

    limit: int
    primes: np.ndarray  # int64, ascending, read-only

    def __contains__(self, n: int) -> bool:
        if n < 2 or n > self.limit:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < len(self.primes) and int(self.primes[i]) == n

    def __len__(self) -> int:
        return len(self.primes)

    def pi(self, x: int) -> int:
        """Number of primes <= x (x must not exceed the table limit)."""
        if x > self.limit:
            raise DomainError(f"pi({x}) exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def as_list(self) -> list[int]:
        return self.primes.tolist()


def _simple_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_primes(limit: int, cap: int | None = None) -> PrimeTable:
    """Sieve of Eratosthenes, segmented above 2^23 to bound memory.

    Tables are immutable and cached, so repeated calls at the same limit
    are free.
    """
    cap = config.sieve_cap() if cap is None else cap
    if limit < 2:
        raise DomainError(f"sieve limit {limit} < 2 would produce an empty table")
    if limit > cap:
        raise ResourceLimitError(f"sieve limit {limit} exceeds cap {cap}")
    return _sieve_cached(limit)


@lru_cache(maxsize=6)
def _sieve_cached(limit: int) -> PrimeTable:
    if limit <= _SEGMENT:
        primes = _simple_sieve(limit)
    else:
        root = math.isqrt(limit)
        base = _simple_sieve(root)
        base_list = base.tolist()
        chunks = [base]
        for lo in range(root + 1, limit + 1, _SEGMENT):
            hi = min(lo + _SEGMENT - 1, limit)
            flags = np.ones(hi - lo + 1, dtype=bool)
            for p in base_list:
                start = max(p * p, ((lo + p - 1) // p) * p)
                if start <= hi:
                    flags[start - lo :: p] = False
            chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
        primes = np.concatenate(chunks)
    primes.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes)


# Shared small primes for trial division and primorials of modest n.
_TRIAL_LIMIT = 10**4
_TRIAL_PRIMES: tuple[int, ...] = tuple(_simple_sieve(_TRIAL_LIMIT).tolist())


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer with its full factorization and derived data.

    ``factors`` is ordered by increasing prime; ``phi`` is Euler's totient
    and ``omega`` the number of distinct prime factors.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    phi: int
    omega: int

    def validate(self) -> None:
        assert self.value >= 1
        prod, phi = 1, 1
        prev = 0
        for p, e in self.factors:
            assert p > prev and e >= 1
            prev = p
            prod *= p**e
            phi *= p ** (e - 1) * (p - 1)
        assert prod == self.value
        assert phi == self.phi
        assert len(self.factors) == self.omega


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite n.  Deterministic polynomial seeds."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise FalsificationError(f"pollard rho failed on {n}")


def factorize(n: int) -> FactoredInteger:
    """Full factorization: trial division by sieved primes, then Pollard rho.

    Total on positive integers; factorize(1) has an empty factor list.
    Exactness is asserted by reassembling the product.
    """
    if n < 1:
        raise DomainError(f"cannot factorize {n}: not a positive integer")
    m = n
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            counts[m] = counts.get(m, 0) + 1
        else:
            stack = [m]
            while stack:
                v = stack.pop()
                if is_prime(v):
                    counts[v] = counts.get(v, 0) + 1
                    continue
                d = _pollard_rho(v)
                stack.append(d)
                stack.append(v // d)
    factors = tuple(sorted(counts.items()))
    phi = 1
    check = 1
    for p, e in factors:
        phi *= p ** (e - 1) * (p - 1)
        check *= p**e
    if check != n:
        raise FalsificationError(f"factorization of {n} does not reassemble")
    return FactoredInteger(value=n, factors=factors, phi=phi, omega=len(factors))


@dataclass(frozen=True)
class PrimalityVerdict:
    """Primality answer plus how it was reached and whether it is exact."""

    is_prime: bool
    method: str  # trial-division | lucas-lehmer | miller-rabin | miller-rabin-probabilistic
    exact: bool


def _sprp(n: int, a: int) -> bool:
    """Strong probable-prime test of odd n > 2 to base a."""
    a %= n
    if a == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def lucas_lehmer(p: int) -> bool:
    """Exact primality of 2^p - 1 for prime exponent p.

    Uses the s -> s^2 - 2 recurrence with shift-and-fold reduction
    modulo the Mersenne number.  p = 2 is the trivial case (3 is prime).
    """
    if p == 2:
        return True
    if p < 2 or not is_prime(p):
        raise DomainError(f"Lucas-Lehmer needs a prime exponent, got {p}")
    m = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = s * s - 2
        s = (s & m) + (s >> p)
        if s >= m:
            s -= m
    return s == 0


def _mersenne_exponent(n: int) -> int | None:
    """p if n = 2^p - 1 with p an odd prime, else None."""
    m = n + 1
    if m & (m - 1):
        return None
    p = m.bit_length() - 1
    if p >= 3 and is_prime(p):
        return p
    return None


def prime_verdict(n: int) -> PrimalityVerdict:
    """Primality with metadata.

    Exact for n below ~3.3e24 (fixed Miller-Rabin bases) and for all
    Mersenne-form inputs 2^p - 1 with p prime (Lucas-Lehmer).  Larger
    general n get a 40-round strong probable-prime test; a composite
    answer is then still certain, a prime answer is probabilistic.
    """
    if n < 2:
        return PrimalityVerdict(False, "trial-division", True)
    if n < 9:
        return PrimalityVerdict(n in (2, 3, 5, 7), "trial-division", True)
    if n % 2 == 0:
        return PrimalityVerdict(False, "trial-division", True)
    p = _mersenne_exponent(n)
    if p is not None:
        return PrimalityVerdict(lucas_lehmer(p), "lucas-lehmer", True)
    if n < _MR_EXACT_LIMIT:
        ok = all(_sprp(n, a) for a in _MR_EXACT_BASES)
        return PrimalityVerdict(ok, "miller-rabin", True)
    bases = _TRIAL_PRIMES[:_MR_LARGE_ROUNDS]
    ok = all(_sprp(n, a) for a in bases)
    return PrimalityVerdict(ok, "miller-rabin-probabilistic", not ok)


def is_prime(n: int) -> bool:
    return prime_verdict(n).is_prime


def smallest_coprime(m: FactoredInteger) -> int:
    """Smallest a > 1 with gcd(a, m.value) = 1.

    Such an a is always prime (a composite a would have a smaller prime
    factor that is also coprime to m); this is asserted before returning.
    m.value = 1 is degenerate: every a > 1 qualifies and 2 is returned.
    """
    v = m.value
    if v < 1:
        raise DomainError(f"modulus {v} is not a positive integer")
    if v == 1:
        return 2
    a = 2
    while math.gcd(a, v) != 1:
        a += 1
    if not is_prime(a):
        raise FalsificationError(
            f"smallest coprime {a} to {v} is not prime; this contradicts "
            "minimality and indicates a bug"
        )
    return a


@lru_cache(maxsize=128)
def primorial(n: int) -> int:
    """Product of all primes <= n; 1 for n = 1."""
    if n < 1:
        raise DomainError(f"primorial of {n} undefined")
    if n < 2:
        return 1
    if n <= _TRIAL_LIMIT:
        prod = 1
        for p in _TRIAL_PRIMES:
            if p > n:
                break
            prod *= p
        return prod
    return math.prod(sieve_primes(n).as_list())


def multiplicative_order(base: int, p: int) -> int:
    """Smallest d >= 1 with base^d = 1 (mod p), for odd prime p.

    The order divides p - 1; it is found by stripping prime factors
    from p - 1 while the power stays 1.
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if math.gcd(base, p) != 1:
        raise DomainError(f"gcd({base}, {p}) != 1, order undefined")
    d = p - 1
    for q, _ in factorize(p - 1).factors:
        while d % q == 0 and pow(base, d // q, p) == 1:
            d //= q
    return d
