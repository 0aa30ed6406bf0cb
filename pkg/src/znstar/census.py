"""Exact counts of coprime shifts over reduced residue systems.

The census counts #{x in Z_n* : gcd(a*x + b, n) = 1}.  The count is a
multiplicative function of n and is computed prime power by prime
power; the brute-force enumeration is kept as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import config
from .arith import FactoredInteger, factorize
from .errors import HypothesisViolationError, ResourceLimitError, UnsupportedFamilyError
from .families import FunctionFamily, LinearForm

__all__ = [
    "CensusReport",
    "census_formula",
    "census_brute",
    "build_census_report",
    "generalized_totient",
]


def census_formula(n: FactoredInteger, form: LinearForm) -> int:
    """Count of x in Z_n* with a*x + b also coprime to n, by formula.

    Per odd prime power p^e dividing n the factor is p^(e-1)*(p-1) when
    p | a*b and p^(e-1)*(p-2) otherwise; per power of two it is 2^(e-1)
    when a*b is even and 0 otherwise.  Requires gcd(a, b) = 1.  Counts
    are 0 for n = 1 because Z_1* is empty.
    """
    if math.gcd(form.a, form.b) != 1:
        raise HypothesisViolationError(
            f"census formula needs gcd(a, b) = 1, got ({form.a}, {form.b})"
        )
    if n.value == 1:
        return 0
    ab = form.a * form.b
    total = 1
    for p, e in n.factors:
        if p == 2:
            total *= 2 ** (e - 1) if ab % 2 == 0 else 0
        elif ab % p == 0:
            total *= p ** (e - 1) * (p - 1)
        else:
            total *= p ** (e - 1) * (p - 2)
    return total


@lru_cache(maxsize=4)
def _residue_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Z_n* as an array plus a coprime-to-n lookup over [0, n)."""
    xs = np.arange(n, dtype=np.int64)
    coprime = np.gcd(xs, n) == 1
    coprime[0] = n == 1
    zn = xs[1:][coprime[1:]]
    zn.setflags(write=False)
    coprime.setflags(write=False)
    return zn, coprime


def census_brute(n: int, form: LinearForm, cap: int | None = None) -> int:
    """Direct enumeration oracle for the census.

    Scans x in [1, n) with gcd(x, n) = 1 and counts gcd(a*x + b, n) = 1
    on canonical residues; no range condition is put on a*x + b itself.
    """
    cap = config.brute_cap() if cap is None else cap
    if n < 1:
        raise HypothesisViolationError(f"modulus {n} is not positive")
    if n > cap:
        raise ResourceLimitError(f"brute census at {n} exceeds cap {cap}")
    if n == 1:
        return 0
    if max(abs(form.a), abs(form.b)) * n < 2**62:
        zn, coprime = _residue_tables(n)
        vals = (form.a * zn + form.b) % n
        return int(np.count_nonzero(coprime[vals]))
    return sum(
        1
        for x in range(1, n)
        if math.gcd(x, n) == 1 and math.gcd((form.a * x + form.b) % n, n) == 1
    )


@dataclass(frozen=True)
class CensusReport:
    """Formula count next to the optional brute count and the phi/2^omega bound."""

    modulus: FactoredInteger
    form: LinearForm
    formula_count: int
    brute_count: int | None
    lower_bound: Fraction


def build_census_report(
    n: int, form: LinearForm, brute: bool = False, cap: int | None = None
) -> CensusReport:
    fi = factorize(n)
    return CensusReport(
        modulus=fi,
        form=form,
        formula_count=census_formula(fi, form),
        brute_count=census_brute(n, form, cap=cap) if brute else None,
        lower_bound=Fraction(fi.phi, 2**fi.omega),
    )


def generalized_totient(family: FunctionFamily, n: int, cap: int | None = None) -> int:
    """Count of x in one residue period [0, n) with every family value coprime to n.

    Defined for polynomial-argument families only: their values depend on
    x mod n, so one period determines the count.  For the singleton family
    {x} this is Euler's totient.
    """
    cap = config.brute_cap() if cap is None else cap
    if not family.is_polynomial:
        raise UnsupportedFamilyError(
            f"{family.kind} values are not periodic in x mod n"
        )
    if n < 1:
        raise HypothesisViolationError(f"modulus {n} is not positive")
    if n > cap:
        raise ResourceLimitError(f"generalized totient at {n} exceeds cap {cap}")
    count = 0
    for x in range(n):
        if all(math.gcd(v % n, n) == 1 for v in family.evaluate(x)):
            count += 1
    return count
