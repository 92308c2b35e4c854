"""Global run configuration: prime modulus and master seed.

Both are read once from the environment (OSCUSEC_PRIME / OSCUSEC_SEED) and can
be overridden programmatically or via CLI flags. The modulus must be a prime
larger than 2^16 so that fat-point multiplicities and degrees stay far below
the characteristic.
"""

from __future__ import annotations

import os

from .errors import BadModulus

DEFAULT_PRIME = 1_000_003
DEFAULT_SEED = 20050403

_MIN_PRIME = 1 << 16

_prime: int | None = None
_seed: int | None = None


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _validate_prime(p: int) -> int:
    if p <= _MIN_PRIME:
        raise BadModulus(f"modulus {p} must exceed 2^16")
    if not is_prime(p):
        raise BadModulus(f"modulus {p} is not prime")
    return p


def get_prime() -> int:
    global _prime
    if _prime is None:
        _prime = _validate_prime(int(os.environ.get("OSCUSEC_PRIME", DEFAULT_PRIME)))
    return _prime


def set_prime(p: int) -> None:
    global _prime
    _prime = _validate_prime(p)


def get_seed() -> int:
    global _seed
    if _seed is None:
        _seed = int(os.environ.get("OSCUSEC_SEED", DEFAULT_SEED))
    return _seed


def set_seed(seed: int) -> None:
    global _seed
    _seed = int(seed)
