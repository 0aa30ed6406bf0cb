import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from znstar.arith import (
    _MR_EXACT_BASES,
    _sprp,
    FactoredInteger,
    factorize,
    is_prime,
    lucas_lehmer,
    multiplicative_order,
    prime_verdict,
    primorial,
    sieve_primes,
    smallest_coprime,
)
from znstar.errors import DomainError, ResourceLimitError


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


class TestSieve:
    def test_small_examples(self):
        assert sieve_primes(10).as_list() == [2, 3, 5, 7]
        assert sieve_primes(2).as_list() == [2]

    def test_pi_at_4a_plus_1(self):
        # a = 1: all primes <= 5 are 2, 3, 5
        table = sieve_primes(5)
        assert table.as_list() == [2, 3, 5]
        assert table.pi(5) == 3

    def test_membership_agrees_with_direct_primality(self):
        table = sieve_primes(2000)
        for n in range(2001):
            assert (n in table) == trial_division_is_prime(n), n

    def test_limit_below_two_rejected(self):
        with pytest.raises(DomainError):
            sieve_primes(1)

    def test_limit_over_cap_rejected(self):
        with pytest.raises(ResourceLimitError):
            sieve_primes(10**6, cap=10**5)

    def test_segmented_path_matches_simple(self):
        # force segmentation with a tiny segment boundary via a large limit
        big = sieve_primes(2**23 + 5000)
        small = sieve_primes(5000)
        assert big.primes[: len(small.primes)].tolist() == small.as_list()
        assert big.pi(5000) == small.pi(5000)

    def test_table_is_immutable(self):
        table = sieve_primes(100)
        with pytest.raises(ValueError):
            table.primes[0] = 4


class TestFactorize:
    def test_pinned_factorizations(self):
        assert factorize(82677).factors == ((3, 1), (7, 1), (31, 1), (127, 1))
        assert factorize(2047).factors == ((23, 1), (89, 1))

    def test_one(self):
        fi = factorize(1)
        assert fi.factors == () and fi.phi == 1 and fi.omega == 0

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            factorize(0)

    def test_reassembly_and_phi_small_range(self):
        for n in range(2, 2000):
            fi = factorize(n)
            fi.validate()
            brute_phi = sum(1 for x in range(1, n) if math.gcd(x, n) == 1)
            assert fi.phi == brute_phi, n

    @settings(max_examples=150, deadline=None)
    @given(st.integers(2, 10**5))
    def test_reassembly_and_phi_sampled(self, n):
        fi = factorize(n)
        fi.validate()
        assert fi.phi == sum(1 for x in range(1, n) if math.gcd(x, n) == 1)

    def test_large_semiprime(self):
        p, q = 1000003, 1000033
        assert factorize(p * q).factors == ((p, 1), (q, 1))


class TestPrimality:
    def test_pinned_values(self):
        assert is_prime(2047) is False
        assert is_prime(127) is True

    def test_large_mersenne_via_lucas_lehmer(self):
        verdict = prime_verdict(2**89 - 1)
        assert verdict.is_prime and verdict.method == "lucas-lehmer" and verdict.exact

    def test_agrees_with_trial_division(self):
        for n in range(1, 3000):
            assert is_prime(n) == trial_division_is_prime(n), n

    def test_lucas_lehmer_agrees_with_strong_prp(self):
        # independent check: deterministic Miller-Rabin on 2^p - 1 for p <= 61
        for p in sieve_primes(61).as_list():
            m = (1 << p) - 1
            mr = m in (3, 7) or all(_sprp(m, a) for a in _MR_EXACT_BASES)
            assert lucas_lehmer(p) == mr, p

    def test_lucas_lehmer_rejects_composite_exponent(self):
        with pytest.raises(DomainError):
            lucas_lehmer(9)

    def test_probabilistic_flagging_beyond_exact_range(self):
        n = 2**89 + 7  # not Mersenne-form, above the deterministic base range
        verdict = prime_verdict(n)
        assert verdict.method == "miller-rabin-probabilistic"
        # composite answers stay exact: a witness was found
        if not verdict.is_prime:
            assert verdict.exact


class TestSmallestCoprime:
    @pytest.mark.parametrize("m,expected", [(6, 5), (2, 3), (30, 7)])
    def test_examples(self, m, expected):
        assert smallest_coprime(factorize(m)) == expected

    def test_degenerate_modulus_one(self):
        assert smallest_coprime(factorize(1)) == 2

    def test_always_prime_exhaustive(self):
        # scanning by hand keeps this exhaustive range affordable
        for m in range(2, 10**5):
            a = 2
            while math.gcd(a, m) != 1:
                a += 1
            assert trial_division_is_prime(a), m

    @settings(max_examples=200, deadline=None)
    @given(st.integers(10**5, 10**6))
    def test_always_prime_sampled(self, m):
        assert is_prime(smallest_coprime(factorize(m)))


class TestMersenneGcdIdentity:
    def test_exhaustive_to_64(self):
        for i in range(2, 65):
            for j in range(2, 65):
                lhs = math.gcd(2**i - 1, 2**j - 1)
                assert lhs == 2 ** math.gcd(i, j) - 1


class TestPrimorial:
    @pytest.mark.parametrize("n,expected", [(1, 1), (5, 30), (7, 210), (23, 223092870)])
    def test_examples(self, n, expected):
        assert primorial(n) == expected

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            primorial(0)


class TestMultiplicativeOrder:
    @pytest.mark.parametrize("base,p,expected", [(2, 7, 3), (2, 23, 11), (2, 3, 2)])
    def test_examples(self, base, p, expected):
        assert multiplicative_order(base, p) == expected

    def test_requires_coprimality(self):
        with pytest.raises(DomainError):
            multiplicative_order(14, 7)

    def test_requires_odd_prime(self):
        with pytest.raises(DomainError):
            multiplicative_order(3, 8)

    def test_order_divides_p_minus_1(self):
        for p in sieve_primes(10**4).as_list()[1:]:
            assert (p - 1) % multiplicative_order(2, p) == 0

    def test_divisibility_of_mersenne_values(self):
        # p | 2^x - 1 exactly when ord_p(2) | x
        for p in sieve_primes(10**4).as_list()[1:]:
            d = multiplicative_order(2, p)
            cur = 1
            for x in range(1, 201):
                cur = cur * 2 % p
                assert (cur == 1) == (x % d == 0), (p, x)
