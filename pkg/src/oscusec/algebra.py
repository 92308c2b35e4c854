"""Exact arithmetic over GF(p) and dense matrix rank.

Everything downstream reduces to ranks of integer matrices mod a large prime.
Matrices are numpy int64 arrays with entries in [0, p); intermediate products
stay below p^2 < 2^40, far inside int64 range, so elimination is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import get_prime
from .errors import ZeroInverse


def field_inverse(x: int, p: int | None = None) -> int:
    """Multiplicative inverse mod p via Fermat's little theorem."""
    p = p or get_prime()
    x %= p
    if x == 0:
        raise ZeroInverse("cannot invert 0 in GF(p)")
    return pow(x, p - 2, p)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix over GF(p)."""

    data: np.ndarray
    prime: int = field(default_factory=get_prime)

    def __post_init__(self):
        a = np.ascontiguousarray(np.asarray(self.data, dtype=np.int64) % self.prime)
        if a.ndim != 2:
            raise ValueError("ExactMatrix expects a 2-d array")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def rank(self) -> int:
        return matrix_rank_mod(self.data, self.prime)


def matrix_rank_mod(a: np.ndarray, p: int | None = None) -> int:
    """Exact rank over GF(p) by row reduction with first-nonzero pivoting."""
    p = p or get_prime()
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        if r + 1 < rows:
            a[r + 1 :] = (a[r + 1 :] - np.outer(a[r + 1 :, c], a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def rank(m: ExactMatrix | np.ndarray, p: int | None = None) -> int:
    """Rank of an ExactMatrix or raw int array over GF(p)."""
    if isinstance(m, ExactMatrix):
        return m.rank()
    return matrix_rank_mod(m, p)


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Independent deterministic stream keyed by (seed, *key).

    Same (seed, key) gives bit-identical draws regardless of how many other
    streams exist or in which order they are consumed, so parallel sweeps stay
    reproducible.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def random_affine_point(dim: int, rng: np.random.Generator, p: int | None = None) -> np.ndarray:
    """Uniform point with all coordinates in [1, p-1].

    Zero is excluded so sampled points avoid the coordinate hyperplanes and
    every point is valid in the affine chart.
    """
    p = p or get_prime()
    if dim < 0:
        raise ValueError("dim must be >= 0")
    return rng.integers(1, p, size=dim, dtype=np.int64)
