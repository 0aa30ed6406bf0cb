import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from znstar.arith import factorize
from znstar.census import (
    build_census_report,
    census_brute,
    census_formula,
    generalized_totient,
)
from znstar.errors import (
    HypothesisViolationError,
    ResourceLimitError,
    UnsupportedFamilyError,
)
from znstar.families import (
    LinearForm,
    fermat_numbers,
    linear_family,
    mersenne_numbers,
    quadratic_plus_one,
    shifted_pair,
)


class TestCensusFormula:
    @pytest.mark.parametrize(
        "n,a,b,expected",
        [
            (5, 1, 2, 3),   # odd p not dividing ab: p - 2
            (8, 1, 2, 4),   # power of two, even ab: 2^(e-1)
            (8, 1, 3, 0),   # power of two, odd ab: empty
            (9, 1, 3, 6),   # odd p dividing ab: p^(e-1) * (p - 1)
            (15, 1, 2, 3),
        ],
    )
    def test_pinned_examples(self, n, a, b, expected):
        assert census_formula(factorize(n), LinearForm(a, b)) == expected

    def test_modulus_one_counts_zero(self):
        # Z_1* is empty, and the brute oracle agrees
        form = LinearForm(1, 2)
        assert census_formula(factorize(1), form) == 0
        assert census_brute(1, form) == 0

    def test_rejects_non_coprime_form(self):
        with pytest.raises(HypothesisViolationError):
            census_formula(factorize(10), LinearForm(2, 4))


class TestCensusBrute:
    def test_pinned_examples(self):
        assert census_brute(15, LinearForm(1, 2)) == 3
        assert census_brute(5, LinearForm(1, 2)) == 3

    def test_enumeration_matches_definition(self):
        # x in [1, n) coprime to n with a*x + b coprime to n, residues canonical
        n, form = 36, LinearForm(5, -7)
        expected = sum(
            1
            for x in range(1, n)
            if math.gcd(x, n) == 1 and math.gcd((form.a * x + form.b) % n, n) == 1
        )
        assert census_brute(n, form) == expected

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            census_brute(10**6, LinearForm(1, 2), cap=10**5)

    def test_negative_b_allowed(self):
        # y - 6a style forms appear in the shifted-pair construction
        assert census_brute(35, LinearForm(1, -6)) == census_formula(
            factorize(35), LinearForm(1, -6)
        )


class TestFormulaAgainstOracle:
    def test_exhaustive_small(self):
        forms = [
            LinearForm(a, b)
            for a in (1, 2, 3)
            for b in range(-10, 11)
            if b and math.gcd(a, b) == 1
        ]
        for n in range(1, 800):
            fi = factorize(n)
            for form in forms:
                assert census_formula(fi, form) == census_brute(n, form), (n, form)

    @settings(max_examples=200, deadline=None)
    @given(
        st.integers(1, 10**4),
        st.integers(1, 3),
        st.integers(-10, 10).filter(bool),
    )
    def test_sampled(self, n, a, b):
        if math.gcd(a, b) != 1:
            return
        assert census_formula(factorize(n), LinearForm(a, b)) == census_brute(
            n, LinearForm(a, b)
        )


class TestMultiplicativity:
    def test_coprime_moduli_multiply(self):
        form = LinearForm(1, 2)
        cache = {n: census_formula(factorize(n), form) for n in range(1, 301)}
        for n1 in range(2, 301):
            for n2 in range(n1, 301):
                if math.gcd(n1, n2) == 1:
                    assert census_formula(factorize(n1 * n2), form) == cache[n1] * cache[n2]


class TestLowerBound:
    def test_phi_over_2_omega(self):
        # the even-shift census dominates phi(n)/2^omega(n)
        for a in range(1, 6):
            form = LinearForm(1, 2 * a)
            for n in range(2, 10**4 + 1):
                fi = factorize(n)
                count = census_formula(fi, form)
                assert count >= Fraction(fi.phi, 2**fi.omega), (a, n)

    def test_report_carries_bound(self):
        report = build_census_report(15, LinearForm(1, 2), brute=True)
        assert report.formula_count == report.brute_count == 3
        assert report.lower_bound == Fraction(8, 4)


class TestOddSquarefreeSpecialization:
    def test_phi_times_prime_ratio(self):
        # for odd n coprime to a*b with even a*b the count is
        # phi(n) * prod (p-2)/(p-1) over the primes of n
        form = LinearForm(1, 2)
        for n in range(3, 2000, 2):
            fi = factorize(n)
            if math.gcd(n, 2) != 1 or math.gcd(n, form.a * form.b) != 1:
                continue
            expected = Fraction(fi.phi)
            for p, _ in fi.factors:
                expected *= Fraction(p - 2, p - 1)
            assert census_formula(fi, form) == expected


class TestGeneralizedTotient:
    def test_singleton_is_euler_phi(self):
        family = linear_family([LinearForm(1, 0)])
        assert generalized_totient(family, 12) == 4
        for n in range(1, 300):
            assert generalized_totient(family, n) == factorize(n).phi, n

    def test_pair_matches_census(self):
        assert generalized_totient(shifted_pair(1), 15) == 3
        assert generalized_totient(shifted_pair(1), 15) == census_brute(15, LinearForm(1, 2))

    def test_quadratic_example(self):
        # x in {0, 1, 4} give 1, 2, 17, all coprime to 5
        assert generalized_totient(quadratic_plus_one(), 5) == 3

    def test_exponential_families_rejected(self):
        with pytest.raises(UnsupportedFamilyError):
            generalized_totient(mersenne_numbers(), 10)
        with pytest.raises(UnsupportedFamilyError):
            generalized_totient(fermat_numbers(), 10)

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            generalized_totient(shifted_pair(1), 10**6, cap=10**5)
