"""Existence and construction of coprime witnesses.

A witness for modulus n and a function family is an argument x whose
family values all lie in Z_n* = {v : 1 <= v < n, gcd(v, n) = 1}.  The
strict value bound v < n is enforced everywhere; mere coprimality is
not membership.

Besides exhaustive smallest-witness search this module implements the
constructive algorithms for the Sophie Germain pair {x, 2x + 1} (case
analysis on the factorization, with a CRT-style lift from modulus m to
m*p) and for the shifted pair {x, x + 2a} (forbidden-residue avoidance
per prime power, combined by the Chinese Remainder Theorem), the
generalized prime-count for Mersenne values with its exhaustive oracle,
and the Fermat obstruction moduli.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from . import config
from .arith import FactoredInteger, is_prime, sieve_primes
from .errors import (
    BelowThresholdError,
    DomainError,
    ExceptionalModulusError,
    FalsificationError,
    ResourceLimitError,
)
from .families import (
    KIND_FERMAT,
    KIND_MERSENNE,
    KIND_QUADRATIC,
    KIND_SHIFTED,
    KIND_SOPHIE_GERMAIN,
    FunctionFamily,
    mersenne_numbers,
    shifted_pair,
    sophie_germain_pair,
)

__all__ = [
    "WitnessReport",
    "CoprimeSubsetReport",
    "METHOD_SEARCH",
    "METHOD_CONSTRUCT_SOPHIE_GERMAIN",
    "METHOD_CONSTRUCT_SHIFTED_PAIR",
    "METHOD_FACTORIAL_SEARCH",
    "find_smallest_witness",
    "exceptional_set_scan",
    "construct_sophie_germain_witness",
    "lift_sophie_germain_witness",
    "construct_shifted_pair_witness",
    "mersenne_pi_generalized",
    "max_coprime_subset_brute",
    "fermat_obstruction",
]

log = logging.getLogger("znstar")

# Wire tokens; the CLI contract names the construction routes after the
# flag values it accepts.
METHOD_SEARCH = "search"
METHOD_CONSTRUCT_SOPHIE_GERMAIN = "construct-appendix-a"
METHOD_CONSTRUCT_SHIFTED_PAIR = "construct-appendix-c"
METHOD_FACTORIAL_SEARCH = "factorial-search"

SOPHIE_GERMAIN_EXCEPTIONAL = frozenset({2, 3, 4, 5, 6, 15})


@dataclass(frozen=True)
class WitnessReport:
    """A witness (or its absence) with verification evidence.

    When ``factorial_of`` is None the values are required to lie in
    Z_modulus*.  When it is n, the report comes from a factorial-moduli
    search: ``modulus`` then holds the primorial radical of n! (the
    product of primes <= n), coprimality is taken against it, and the
    value bound is n! itself, certified symbolically.
    """

    modulus: int
    family: FunctionFamily
    witness: int | None
    values: tuple[int, ...]
    method: str
    verified: bool
    factorial_of: int | None = None


def _in_zn_star(v: int, n: int) -> bool:
    return 1 <= v < n and math.gcd(v, n) == 1


def _recheck(report: WitnessReport) -> bool:
    """Independent range-and-gcd verification of a witness report."""
    x = report.witness
    if x is None:
        return False
    if report.family.require_x_gt_1 and x <= 1:
        return False
    if x < 1:
        return False
    values = report.family.evaluate(x)
    if tuple(values) != report.values:
        return False
    if report.factorial_of is not None:
        from .conjectures import fits_below_factorial

        n = report.factorial_of
        return all(
            v >= 1 and math.gcd(v, report.modulus) == 1 and fits_below_factorial(v, n)
            for v in values
        )
    return all(_in_zn_star(v, report.modulus) for v in values)


def _verified(report: WitnessReport) -> WitnessReport:
    if not _recheck(report):
        log.error("witness verification failed: %r", report)
        raise FalsificationError(f"witness failed verification: {report!r}")
    return replace(report, verified=True)


def _smallest_witness_x(family: FunctionFamily, n: int) -> int | None:
    """Kernel shared by the smallest-witness search and the exceptional scan."""
    lo = family.min_arg
    hi = family.max_arg(n)
    if hi < lo:
        return None
    gcd = math.gcd
    kind = family.kind
    if kind == KIND_SHIFTED:
        g = 2 * family.shift
        for x in range(lo, hi + 1):
            if gcd(x, n) == 1 and gcd(x + g, n) == 1:
                return x
        return None
    if kind == KIND_SOPHIE_GERMAIN:
        for x in range(lo, hi + 1):
            if gcd(x, n) == 1 and gcd(2 * x + 1, n) == 1:
                return x
        return None
    if kind == KIND_MERSENNE:
        for x in range(lo, hi + 1):
            if gcd((1 << x) - 1, n) == 1:
                return x
        return None
    if kind == KIND_QUADRATIC:
        for x in range(lo, hi + 1):
            if gcd(x * x + 1, n) == 1:
                return x
        return None
    for x in range(lo, hi + 1):
        values = family.evaluate(x)
        if all(v >= 1 and gcd(v, n) == 1 for v in values):
            return x
    return None


def find_smallest_witness(family: FunctionFamily, n: int) -> WitnessReport | None:
    """Smallest x whose family values all lie in Z_n*, or None.

    The search space is finite because values must stay below n; absence
    is therefore definitive, not a timeout.
    """
    if n < 1:
        raise DomainError(f"modulus {n} is not a positive integer")
    x = _smallest_witness_x(family, n)
    if x is None:
        return None
    report = WitnessReport(
        modulus=n,
        family=family,
        witness=x,
        values=tuple(family.evaluate(x)),
        method=METHOD_SEARCH,
        verified=False,
    )
    return _verified(report)


def _scan_chunk(family: FunctionFamily, start: int, stop: int) -> list[int]:
    return [n for n in range(start, stop) if _smallest_witness_x(family, n) is None]


def exceptional_set_scan(
    family: FunctionFamily,
    limit: int,
    cap: int | None = None,
    workers: int = 1,
) -> list[int]:
    """All n in [2, limit] without a witness, ascending.

    The range is partitioned across workers when requested; chunk results
    are concatenated in order, so output does not depend on scheduling.
    """
    cap = config.scan_cap() if cap is None else cap
    if limit > cap:
        raise ResourceLimitError(f"scan limit {limit} exceeds cap {cap}")
    if limit < 2:
        return []
    if workers <= 1:
        return _scan_chunk(family, 2, limit + 1)
    chunk = -(-(limit - 1) // workers)
    spans = [(s, min(s + chunk, limit + 1)) for s in range(2, limit + 1, chunk)]
    out: list[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            _scan_chunk,
            [family] * len(spans),
            [s for s, _ in spans],
            [t for _, t in spans],
        )
        for part in parts:
            out.extend(part)
    return out


def lift_sophie_germain_witness(a: int, m: int, p: int) -> int:
    """Lift a Sophie Germain witness from modulus m to modulus m*p.

    Given a with a and 2a + 1 in Z_m* and a prime p > 5 coprime to m,
    picks the smallest b in [0, p) with b != a (mod p) and
    b(2b+1)(2a-b)(2(2a-b)+1) coprime to p (at most five residue classes
    are excluded, and p has at least six), then forms
    y = m*((b-a)*m^-1 mod p) + a and its mirror z; one of 2y+1, 2z+1 is
    below m*p because the strict bound 2a + 1 < m caps a.
    """
    if p <= 5 or not is_prime(p):
        raise DomainError(f"lift prime must exceed 5, got {p}")
    if math.gcd(m, p) != 1:
        raise DomainError(f"gcd({m}, {p}) != 1")
    if not (1 <= a < m and math.gcd(a, m) == 1):
        raise DomainError(f"a = {a} is not in the reduced residues mod {m}")
    t = 2 * a + 1
    if not (t < m and math.gcd(t, m) == 1):
        raise DomainError(f"2a + 1 = {t} is not in the reduced residues mod {m}")
    b = next(
        b
        for b in range(p)
        if (b - a) % p != 0
        and (b * (2 * b + 1) * (2 * a - b) * (2 * (2 * a - b) + 1)) % p != 0
    )
    inv = pow(m, -1, p)
    y = m * ((b - a) * inv % p) + a
    z = m * (-(b - a) * inv % p) + a
    x = y if 2 * y + 1 < m * p else z
    mp = m * p
    if not (1 < x < mp and 2 * x + 1 < mp and math.gcd(x * (2 * x + 1), mp) == 1):
        log.error("lift failed: a=%d m=%d p=%d -> x=%d", a, m, p, x)
        raise FalsificationError(f"lift produced an invalid witness x={x} for m*p={mp}")
    return x


def _sg_construct_multiple_of_three(n: FactoredInteger) -> int:
    """Witness for 3 | n, n not in {3, 6, 15}."""
    v = n.value
    for p, e in n.factors:
        if e >= 2:
            return v // p - 1
    # square-free n = 3m with m > 1 coprime to 3
    odd = [p for p, _ in n.factors if p != 3]
    if len(odd) == 1:
        return 2  # the lone cofactor prime exceeds 5 here
    if len(odd) == 2:
        p, q = odd
        shared = math.gcd(10, p * q)
        if shared == 1:
            return 2
        if shared == 2:
            return 23 if q == 11 else 5
        if shared == 5:
            return 11 if q == 17 else 8
        return 11  # shared == 10, i.e. n = 30
    p = next(q for q in odd if q > 5)
    rest = v // (3 * p)
    inner = construct_sophie_germain_witness(_refactor(n, drop=p, keep=3 * rest))
    return lift_sophie_germain_witness(inner.witness, 3 * rest, p)


def _refactor(n: FactoredInteger, drop: int, keep: int) -> FactoredInteger:
    factors = tuple((p, e) for p, e in n.factors if p != drop)
    phi = 1
    for p, e in factors:
        phi *= p ** (e - 1) * (p - 1)
    return FactoredInteger(value=keep, factors=factors, phi=phi, omega=len(factors))


def _sg_construct_seven_case(n: FactoredInteger) -> int:
    """Witness for 3 not dividing n and 7 | n."""
    v = n.value
    t = next(e for p, e in n.factors if p == 7)
    m = v // 7**t
    if t >= 2:
        return 7 * m - 1
    table = {1: 2, 2: 5, 4: 5, 5: 11, 6: 5}
    if m in table:
        return table[m]
    return lift_sophie_germain_witness(3, m, 7)


def construct_sophie_germain_witness(n: FactoredInteger) -> WitnessReport:
    """Constructive (not necessarily minimal) witness for {x, 2x + 1}.

    Case analysis: a squared prime factor p gives x = n/p - 1 directly;
    square-free multiples of 3 follow an explicit two-prime table plus
    induction by the prime lift; moduli prime to 21 take x = 3; multiples
    of 7 prime to 3 take a small table or a lift from a = 3.  Every branch
    output is re-verified; a failure would falsify the underlying proof
    and raises instead of falling back.
    """
    v = n.value
    if v < 2 or v in SOPHIE_GERMAIN_EXCEPTIONAL:
        raise ExceptionalModulusError(f"no witness exists for modulus {v}")
    if v % 3 == 0:
        x = _sg_construct_multiple_of_three(n)
    elif v % 7 != 0:
        x = 3
    else:
        x = _sg_construct_seven_case(n)
    report = WitnessReport(
        modulus=v,
        family=sophie_germain_pair(),
        witness=x,
        values=(x, 2 * x + 1),
        method=METHOD_CONSTRUCT_SOPHIE_GERMAIN,
        verified=False,
    )
    return _verified(report)


def _has_six_residues(p: int, e: int) -> bool:
    # phi(p^e) > 5: p >= 7 always, else 5^2, 3^2 or 2^4 and up.
    return p >= 7 or (p == 5 and e >= 2) or (p == 3 and e >= 2) or (p == 2 and e >= 4)


def _crt(residues: list[int], moduli: list[int]) -> int:
    x, m = 0, 1
    for r, mod in zip(residues, moduli):
        x += m * ((r - x) * pow(m, -1, mod) % mod)
        m *= mod
    return x


def construct_shifted_pair_witness(a: int, n: FactoredInteger) -> WitnessReport:
    """Constructive witness for {x, x + 2a} when n > max(120, 8a + 1).

    Per prime power p^r of n the residue y must avoid the root classes
    {0, -2a, 6a, 4a} modulo p so that y(y+2a)(y-6a)(y-4a) stays coprime
    to n; a component with more than five residue classes available
    (p >= 7, or 5^2, 3^2, 2^4 and up — one exists for every n > 120)
    additionally avoids 1 mod p^r, which forces y != 1 mod n.  Components
    pick their smallest admissible residue and combine by CRT.  The
    witness is y itself when y + 2a < n and y - 6a otherwise (then
    y > 6a + 1 because n > 8a + 1).
    """
    if a < 1:
        raise DomainError(f"half-gap a must be positive, got {a}")
    threshold = max(120, 8 * a + 1)
    v = n.value
    if v <= threshold:
        raise BelowThresholdError(
            f"modulus {v} does not exceed the construction threshold {threshold}"
        )
    residues: list[int] = []
    moduli: list[int] = []
    strong_seen = False
    for p, e in n.factors:
        pe = p**e
        # The quartic is coprime to p^e iff y avoids the root classes mod p.
        forbidden = {0, (-2 * a) % p, (6 * a) % p, (4 * a) % p}
        strong = _has_six_residues(p, e)
        strong_seen = strong_seen or strong
        r = next(
            (
                r
                for r in range(pe)
                if r % p not in forbidden and not (strong and r == 1)
            ),
            None,
        )
        if r is None:
            raise FalsificationError(f"no admissible residue mod {pe} for a={a}")
        residues.append(r)
        moduli.append(pe)
    if not strong_seen:
        raise FalsificationError(
            f"{v} > 120 has no prime-power component with more than five residues; "
            "this contradicts the divisor lemma behind the construction"
        )
    y = _crt(residues, moduli)
    x = y if y + 2 * a < v else y - 6 * a
    report = WitnessReport(
        modulus=v,
        family=shifted_pair(a),
        witness=x,
        values=(x, x + 2 * a),
        method=METHOD_CONSTRUCT_SHIFTED_PAIR,
        verified=False,
    )
    return _verified(report)


@dataclass(frozen=True)
class CoprimeSubsetReport:
    """Largest pairwise-coprime set of family values not exceeding a limit.

    ``witness_set`` holds the arguments; their values (all > 1, <= limit)
    are pairwise coprime and realize ``pi_generalized``.
    """

    limit: int
    family: FunctionFamily
    pi_generalized: int
    witness_set: tuple[int, ...]
    exponent_bound: int

    def values(self) -> list[int]:
        return [self.family.evaluate(x)[0] for x in self.witness_set]


def mersenne_pi_generalized(limit: int) -> CoprimeSubsetReport:
    """Size of the largest pairwise-coprime set of Mersenne values <= limit.

    With r the largest exponent with 2^r - 1 <= limit the answer is pi(r):
    gcd(2^i - 1, 2^j - 1) = 2^gcd(i, j) - 1 reduces the problem to pairwise
    coprime exponents in [2, r], of which there are at most pi(r) (distinct
    least prime factors) and exactly pi(r) (prime exponents).  The witness
    set is {2^q - 1 : q prime <= r}.
    """
    if limit < 2:
        raise DomainError(f"limit {limit} < 2 admits no Mersenne value above 1")
    r = (limit + 1).bit_length() - 1
    if r < 2:
        qs: tuple[int, ...] = ()
    else:
        qs = tuple(int(q) for q in sieve_primes(r).primes)
    return CoprimeSubsetReport(
        limit=limit,
        family=mersenne_numbers(),
        pi_generalized=len(qs),
        witness_set=qs,
        exponent_bound=r,
    )


def max_coprime_subset_brute(values, cap: int | None = None) -> int:
    """Exhaustive size of the largest pairwise-coprime subset of values > 1."""
    cap = config.subset_cap() if cap is None else cap
    values = list(values)
    if len(values) > cap:
        raise ResourceLimitError(f"{len(values)} values exceed the subset cap {cap}")
    vals = sorted({v for v in values if v > 1})
    best = 0

    def extend(i: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) + (len(vals) - i) <= best:
            return
        if i == len(vals):
            best = max(best, len(chosen))
            return
        v = vals[i]
        if all(math.gcd(v, c) == 1 for c in chosen):
            chosen.append(v)
            extend(i + 1, chosen)
            chosen.pop()
        extend(i + 1, chosen)

    extend(0, [])
    return best


def fermat_obstruction(k: int, cap: int | None = None) -> tuple[int, bool]:
    """A modulus m admitting no Fermat-number witness at all.

    m is the product of the Fermat numbers F_0..F_k, which telescopes to
    2^(2^(k+1)) - 1 (asserted by direct multiplication).  Every F_i with
    i <= k divides m, and F_(k+1) = m + 2 already exceeds m; Fermat values
    are strictly increasing, so none lies in Z_m*.  Since k is arbitrary,
    such moduli are arbitrarily large.
    """
    cap = config.fermat_cap() if cap is None else cap
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if k > cap:
        raise ResourceLimitError(f"k = {k} exceeds the doubly-exponential cap {cap}")
    fermats = [(1 << (1 << i)) + 1 for i in range(k + 2)]
    m = math.prod(fermats[: k + 1])
    if m != (1 << (1 << (k + 1))) - 1:
        raise FalsificationError("Fermat product does not telescope")
    for f in fermats[: k + 1]:
        if m % f != 0:
            raise FalsificationError(f"{f} does not divide {m}")
    if fermats[k + 1] != m + 2:
        raise FalsificationError("next Fermat number is not m + 2")
    return m, True
