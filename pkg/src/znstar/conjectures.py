"""Factorial-moduli harnesses for the smallest-witness primality conjectures.

For each modulus parameter n the harness finds the smallest x whose
family values all lie in Z_(n!)* and tests those values for primality.
n! is never materialized: coprimality to n! equals coprimality to the
primorial radical (the product of primes <= n), and the value bound
v < n! is certified by v < primorial(n)^2 <= n! with an exact factorial
comparison at small n.  This is what lets the harness run far beyond
the point where n! itself becomes unmanageable.

Four conjectures are wired in: twin ({x, x + 2}), sophie-germain
({x, 2x + 1}), mersenne ({2^x - 1}) and landau ({x^2 + 1}).  Each can
also be checked against the plain modulus n, where the smallest-witness
pattern is known to break (the Mersenne witness at n = 82677 has the
composite value 2047 = 23 * 89).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import config
from .arith import factorize, multiplicative_order, prime_verdict, primorial, sieve_primes
from .errors import DomainError, ResourceLimitError
from .families import (
    KIND_MERSENNE,
    KIND_QUADRATIC,
    KIND_SHIFTED,
    KIND_SOPHIE_GERMAIN,
    FunctionFamily,
    mersenne_numbers,
    quadratic_plus_one,
    shifted_pair,
    sophie_germain_pair,
)
from .witness import METHOD_FACTORIAL_SEARCH, WitnessReport, _verified, find_smallest_witness

__all__ = [
    "CONJECTURES",
    "MODES",
    "ConjectureRecord",
    "conjecture_family",
    "fits_below_factorial",
    "factorial_smallest_witness",
    "check_conjecture",
    "scan_conjecture",
    "record_to_json_dict",
    "write_records_jsonl",
    "write_counterexamples",
]

CONJECTURES = ("twin", "sophie-germain", "mersenne", "landau")
MODES = ("factorial", "plain")

VERDICT_HOLDS = "holds"
VERDICT_FAILS = "fails"
VERDICT_NO_WITNESS = "no-witness"
VERDICT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConjectureRecord:
    """One harness row: parameter, witness, values, primality, verdict.

    ``primality`` entries are None when a value's primality was not
    decided within the configured budget; the verdict is then "unknown".
    """

    conjecture: str
    n: int
    modulus_mode: str
    witness_x: int | None
    values: tuple[int, ...]
    primality: tuple[bool | None, ...]
    verdict: str
    search_bound: int


def conjecture_family(conjecture: str) -> FunctionFamily:
    if conjecture == "twin":
        return shifted_pair(1)
    if conjecture == "sophie-germain":
        return sophie_germain_pair()
    if conjecture == "mersenne":
        return mersenne_numbers()
    if conjecture == "landau":
        return quadratic_plus_one()
    raise DomainError(f"unknown conjecture {conjecture!r}")


# ---------------------------------------------------------------------------
# value bound v < n! without materializing n!

_EXACT_FACTORIAL_LIMIT = 25


@lru_cache(maxsize=1024)
def _primorial_sq_below_factorial(n: int) -> bool:
    """Whether primorial(n)^2 <= n!, decided exactly near the margin."""
    if n <= 200:
        return primorial(n) ** 2 <= math.factorial(n)
    # 2 * sum(ln p) vs ln(n!): the gap grows like n ln n, floats suffice,
    # with an exact fallback if the margin ever looks tight.
    log_prim = math.fsum(math.log(p) for p in sieve_primes(n).as_list())
    margin = math.lgamma(n + 1) - 2.0 * log_prim
    if margin > 1e-6:
        return True
    return primorial(n) ** 2 <= math.factorial(n)


def fits_below_factorial(v: int, n: int) -> bool:
    """Certify v < n! without building n! except at small n."""
    if n <= _EXACT_FACTORIAL_LIMIT:
        return v < math.factorial(n)
    p = primorial(n)
    if v < p * p and _primorial_sq_below_factorial(n):
        return True
    return v < math.factorial(n)


# ---------------------------------------------------------------------------
# smallest witness modulo n! (via the primorial radical)

# Residues mod 2*3*5*7 that can be coprime to any primorial(n) with n >= 7.
_WHEEL = 210
_WHEEL_COPRIME = tuple(r for r in range(_WHEEL) if math.gcd(r, _WHEEL) == 1)


@lru_cache(maxsize=32)
def _wheel_pairs(gap: int) -> tuple[int, ...]:
    return tuple(
        r for r in _WHEEL_COPRIME if math.gcd((r + gap) % _WHEEL, _WHEEL) == 1
    )


@lru_cache(maxsize=8)
def _wheel_sophie() -> tuple[int, ...]:
    return tuple(
        r for r in _WHEEL_COPRIME if math.gcd((2 * r + 1) % _WHEEL, _WHEEL) == 1
    )


def _search_bound(n: int) -> int:
    return max(64, math.ceil(10 * n * math.log(n) ** 2))


def _wheel_candidates(residues: tuple[int, ...], lo: int, hi: int):
    base = (lo // _WHEEL) * _WHEEL
    while base <= hi:
        for r in residues:
            x = base + r
            if x < lo:
                continue
            if x > hi:
                return
            yield x
        base += _WHEEL


def _pair_witness_x(n: int, gap: int, lo: int, prim: int) -> int | None:
    """Smallest x >= lo with x and x + gap coprime to prim and both < n!."""
    gcd = math.gcd
    bound = _search_bound(n)
    for _ in range(4):
        if n >= 7:
            candidates = _wheel_candidates(_wheel_pairs(gap % _WHEEL), lo, bound)
        else:
            candidates = range(lo, bound + 1)
        for x in candidates:
            if gcd(x, prim) == 1 and gcd(x + gap, prim) == 1:
                if fits_below_factorial(x + gap, n):
                    return x
                return None  # values only grow past n! from here
        lo, bound = bound + 1, bound * 2
    return None


def _sophie_witness_x(n: int, lo: int, prim: int) -> int | None:
    gcd = math.gcd
    bound = _search_bound(n)
    for _ in range(4):
        if n >= 7:
            candidates = _wheel_candidates(_wheel_sophie(), lo, bound)
        else:
            candidates = range(lo, bound + 1)
        for x in candidates:
            if gcd(x, prim) == 1 and gcd(2 * x + 1, prim) == 1:
                if fits_below_factorial(2 * x + 1, n):
                    return x
                return None
        lo, bound = bound + 1, bound * 2
    return None


@lru_cache(maxsize=None)
def _order_of_two(p: int) -> int:
    return multiplicative_order(2, p)


def _mersenne_witness_x(n: int, lo: int) -> int | None:
    """Smallest x >= lo with 2^x - 1 coprime to primorial(n).

    An odd prime p <= n divides 2^x - 1 exactly when ord_p(2) divides x,
    so x must avoid every multiple of every such order; a small sieve over
    candidate exponents finds the first survivor without any big-integer
    work.
    """
    orders = sorted(
        {_order_of_two(int(p)) for p in sieve_primes(max(n, 3)).primes[1:] if p <= n}
    )
    bound = 64
    limit = _search_bound(n) * 8
    while bound <= limit * 2:
        marked = bytearray(bound + 1)
        for d in orders:
            if d > bound:
                break
            marked[d::d] = b"\x01" * (bound // d)
        for x in range(lo, bound + 1):
            if not marked[x]:
                if fits_below_factorial((1 << x) - 1, n):
                    return x
                return None  # 2^x - 1 only grows past n! from here
        bound *= 2
    return None


def _quadratic_witness_x(n: int, lo: int, prim: int) -> int | None:
    gcd = math.gcd
    bound = _search_bound(n)
    for _ in range(4):
        for x in range(lo, bound + 1):
            v = x * x + 1
            if gcd(v, prim) == 1:
                if fits_below_factorial(v, n):
                    return x
                return None
        lo, bound = bound + 1, bound * 2
    return None


def _generic_factorial_witness_x(family: FunctionFamily, n: int, prim: int) -> int | None:
    gcd = math.gcd
    bound = _search_bound(n)
    for x in range(family.min_arg, bound + 1):
        values = family.evaluate(x)
        if any(v < 1 for v in values):
            continue
        if not all(fits_below_factorial(v, n) for v in values):
            return None  # monotone growth: later arguments only get larger
        if all(gcd(v, prim) == 1 for v in values):
            return x
    return None


def _factorial_witness_x(
    family: FunctionFamily, n: int, prim: int | None = None
) -> tuple[int | None, int]:
    prim = primorial(n) if prim is None else prim
    lo = family.min_arg
    kind = family.kind
    if kind == KIND_SHIFTED:
        x = _pair_witness_x(n, 2 * family.shift, lo, prim)
    elif kind == KIND_SOPHIE_GERMAIN:
        x = _sophie_witness_x(n, lo, prim)
    elif kind == KIND_MERSENNE:
        x = _mersenne_witness_x(n, lo)
    elif kind == KIND_QUADRATIC:
        x = _quadratic_witness_x(n, lo, prim)
    else:
        x = _generic_factorial_witness_x(family, n, prim)
    bound = _search_bound(n) * (8 if x is None else 1)
    return x, bound


def factorial_smallest_witness(
    family: FunctionFamily, n: int, cap: int | None = None
) -> WitnessReport:
    """Smallest x whose family values all lie in Z_(n!)*.

    Coprimality to n! is decided against primorial(n), recorded as the
    report's modulus; the value bound is n! itself (``factorial_of``),
    certified without materializing the factorial.  A missed witness
    within the backed-off search bound yields a report with witness None
    so under-search is distinguishable from proven absence.
    """
    cap = config.harness_cap() if cap is None else cap
    if n < 2:
        raise DomainError(f"factorial modulus parameter must be >= 2, got {n}")
    if n > cap:
        raise ResourceLimitError(f"n = {n} exceeds the harness cap {cap}")
    x, _bound = _factorial_witness_x(family, n)
    prim = primorial(n)
    if x is None:
        return WitnessReport(
            modulus=prim,
            family=family,
            witness=None,
            values=(),
            method=METHOD_FACTORIAL_SEARCH,
            verified=False,
            factorial_of=n,
        )
    report = WitnessReport(
        modulus=prim,
        family=family,
        witness=x,
        values=tuple(family.evaluate(x)),
        method=METHOD_FACTORIAL_SEARCH,
        verified=False,
        factorial_of=n,
    )
    return _verified(report)


# ---------------------------------------------------------------------------
# conjecture records

def _value_primality(
    conjecture: str, x: int, value: int, ll_budget: int
) -> bool | None:
    # prime_verdict routes 2^p - 1 with prime p through Lucas-Lehmer, which
    # is exact; the budget keeps unboundedly large exponents out.
    if conjecture == "mersenne" and x > ll_budget:
        return None
    return prime_verdict(value).is_prime


def check_conjecture(
    conjecture: str,
    n: int,
    modulus_mode: str = "factorial",
    cap: int | None = None,
    ll_budget: int | None = None,
    _primorial: int | None = None,
) -> ConjectureRecord:
    """Smallest witness under the selected modulus mode, with primality verdicts.

    Mersenne values are decided exactly by Lucas-Lehmer up to the exponent
    budget; all other values in reach are below the deterministic
    Miller-Rabin range, so verdicts are exact.
    """
    if conjecture not in CONJECTURES:
        raise DomainError(f"unknown conjecture {conjecture!r}")
    if modulus_mode not in MODES:
        raise DomainError(f"unknown modulus mode {modulus_mode!r}")
    min_n = 3 if conjecture == "landau" else 4
    if n < min_n:
        raise DomainError(f"{conjecture} conjecture is stated for n >= {min_n}")
    ll_budget = config.ll_exponent_budget() if ll_budget is None else ll_budget
    family = conjecture_family(conjecture)
    if modulus_mode == "factorial":
        cap = config.harness_cap() if cap is None else cap
        if n > cap:
            raise ResourceLimitError(f"n = {n} exceeds the harness cap {cap}")
        x, bound = _factorial_witness_x(family, n, _primorial)
        values = tuple(family.evaluate(x)) if x is not None else ()
    else:
        report = find_smallest_witness(family, n)
        bound = family.max_arg(n)
        x = report.witness if report is not None else None
        values = report.values if report is not None else ()
    if x is None:
        return ConjectureRecord(
            conjecture, n, modulus_mode, None, (), (), VERDICT_NO_WITNESS, bound
        )
    primality = tuple(_value_primality(conjecture, x, v, ll_budget) for v in values)
    if any(p is None for p in primality):
        verdict = VERDICT_UNKNOWN
    elif all(primality):
        verdict = VERDICT_HOLDS
    else:
        verdict = VERDICT_FAILS
    return ConjectureRecord(conjecture, n, modulus_mode, x, values, primality, verdict, bound)


def _scan_span(
    conjecture: str, start: int, stop: int, modulus_mode: str, ll_budget: int | None
) -> list[ConjectureRecord]:
    records = []
    prim = None
    if modulus_mode == "factorial":
        prim = primorial(max(start - 1, 1))
        table = sieve_primes(max(stop, 2)).as_list()
        prime_set = set(table)
    for n in range(start, stop + 1):
        if prim is not None and n in prime_set:
            prim *= n
        records.append(
            check_conjecture(
                conjecture, n, modulus_mode, cap=stop, ll_budget=ll_budget, _primorial=prim
            )
        )
    return records


def scan_conjecture(
    conjecture: str,
    n_from: int,
    n_to: int,
    modulus_mode: str = "factorial",
    cap: int | None = None,
    ll_budget: int | None = None,
    workers: int = 1,
) -> tuple[list[ConjectureRecord], dict]:
    """One record per n in [n_from, n_to], plus a verdict summary.

    A fails verdict never aborts the scan; detecting one is the point.
    Records are computed per n independently, so worker partitioning
    cannot change the output.
    """
    cap = config.harness_cap() if cap is None else cap
    if n_to > cap:
        raise ResourceLimitError(f"scan end {n_to} exceeds the harness cap {cap}")
    if n_from > n_to:
        raise DomainError(f"empty scan range [{n_from}, {n_to}]")
    if workers <= 1:
        records = _scan_span(conjecture, n_from, n_to, modulus_mode, ll_budget)
    else:
        size = n_to - n_from + 1
        chunk = -(-size // workers)
        spans = [
            (s, min(s + chunk - 1, n_to)) for s in range(n_from, n_to + 1, chunk)
        ]
        records = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _scan_span,
                [conjecture] * len(spans),
                [s for s, _ in spans],
                [t for _, t in spans],
                [modulus_mode] * len(spans),
                [ll_budget] * len(spans),
            )
            for part in parts:
                records.extend(part)
    summary = {
        "conjecture": conjecture,
        "mode": modulus_mode,
        "from": n_from,
        "to": n_to,
        "total": len(records),
        "holds": sum(r.verdict == VERDICT_HOLDS for r in records),
        "fails": sum(r.verdict == VERDICT_FAILS for r in records),
        "no_witness": sum(r.verdict == VERDICT_NO_WITNESS for r in records),
        "unknown": sum(r.verdict == VERDICT_UNKNOWN for r in records),
    }
    return records, summary


# ---------------------------------------------------------------------------
# persistence

def record_to_json_dict(record: ConjectureRecord) -> dict:
    """The JSONL schema: values as decimal strings, key order fixed."""
    return {
        "conjecture": record.conjecture,
        "n": record.n,
        "mode": record.modulus_mode,
        "x": record.witness_x,
        "values": [str(v) for v in record.values],
        "prime": list(record.primality),
        "verdict": record.verdict,
        "search_bound": record.search_bound,
    }


def write_records_jsonl(records, path) -> None:
    with open(path, "w", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record_to_json_dict(record)) + "\n")


def write_counterexamples(records, path) -> int:
    """Write failing records with factorization evidence; returns the count."""
    failing = [r for r in records if r.verdict == VERDICT_FAILS]
    if not failing:
        return 0
    with open(path, "w", newline="\n") as fh:
        for record in failing:
            evidence = {
                "record": record_to_json_dict(record),
                "composite_factors": {
                    str(v): [[p, e] for p, e in factorize(v).factors]
                    for v, ok in zip(record.values, record.primality)
                    if ok is False
                },
            }
            fh.write(json.dumps(evidence) + "\n")
    return len(failing)
