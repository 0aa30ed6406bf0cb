"""Resource caps, overridable through environment variables.

Every long-running operation takes an explicit cap argument; when the
caller passes None the values below apply.  The environment variable
names are part of the CLI contract (see README).
"""

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def sieve_cap() -> int:
    return _env_int("ZNSTAR_SIEVE_CAP", 10**9)


def brute_cap() -> int:
    return _env_int("ZNSTAR_BRUTE_CAP", 10**5)


def scan_cap() -> int:
    return _env_int("ZNSTAR_SCAN_CAP", 10**6)


def harness_cap() -> int:
    return _env_int("ZNSTAR_HARNESS_CAP", 10**5)


def subset_cap() -> int:
    return _env_int("ZNSTAR_SUBSET_CAP", 25)


def ll_exponent_budget() -> int:
    return _env_int("ZNSTAR_LL_MAX_EXPONENT", 3500)


def fermat_cap() -> int:
    return _env_int("ZNSTAR_FERMAT_CAP", 6)


def default_workers() -> int:
    return _env_int("ZNSTAR_WORKERS", 1)
