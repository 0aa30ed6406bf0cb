"""Coprime residue witnesses over Z_n* and over factorial moduli.

Core surface: exact arithmetic primitives, the coprime-shift census with
its multiplicative formula and brute oracle, smallest and constructed
witnesses for the classic function families, factorial-moduli conjecture
harnesses, prime-gap statistics, and checks of the analytic bounds the
constructions rely on.
"""

from .arith import (
    FactoredInteger,
    PrimalityVerdict,
    PrimeTable,
    factorize,
    is_prime,
    lucas_lehmer,
    multiplicative_order,
    prime_verdict,
    primorial,
    sieve_primes,
    smallest_coprime,
)
from .bounds import (
    phi_over_2omega_scan,
    phi_ratio_constant,
    primorial_growth_check,
    robin_omega_check,
    rosser_schoenfeld_check,
)
from .census import (
    CensusReport,
    build_census_report,
    census_brute,
    census_formula,
    generalized_totient,
)
from .conjectures import (
    ConjectureRecord,
    check_conjecture,
    factorial_smallest_witness,
    scan_conjecture,
)
from .errors import (
    BelowThresholdError,
    DomainError,
    ExceptionalModulusError,
    FalsificationError,
    HypothesisViolationError,
    ResourceLimitError,
    UnsupportedFamilyError,
    ZnStarError,
)
from .families import (
    FunctionFamily,
    LinearForm,
    fermat_numbers,
    linear_family,
    mersenne_numbers,
    quadratic_plus_one,
    shifted_pair,
    sophie_germain_pair,
)
from .gaps import (
    gap_census,
    gap_census_table,
    hardy_littlewood_constant,
    mersenne_density_prediction,
    sum_or_difference_check,
    weakened_polignac_check,
)
from .witness import (
    CoprimeSubsetReport,
    WitnessReport,
    construct_shifted_pair_witness,
    construct_sophie_germain_witness,
    exceptional_set_scan,
    fermat_obstruction,
    find_smallest_witness,
    lift_sophie_germain_witness,
    max_coprime_subset_brute,
    mersenne_pi_generalized,
)

__version__ = "0.1.0"
