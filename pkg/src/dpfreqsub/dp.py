"""Noise sources and privacy mechanisms.

Laplace noise is drawn by inverting the CDF of a uniform variate taken from
a counter-based (Philox) generator, so a seed reproduces a run exactly on
any platform numpy supports.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass

import numpy as np

from .errors import EmptyStreamError, ParameterError, StreamExhaustedError


def ceil_log2(x: float) -> int:
    """``ceil(log2(x))`` clamped to at least 1."""
    if x <= 2:
        return 1
    return math.ceil(math.log2(x))


def new_seed() -> int:
    return secrets.randbits(64)


class NoiseSource:
    """Seeded randomness for all mechanisms of one run."""

    def __init__(self, seed: int | None = None):
        self.seed = new_seed() if seed is None else int(seed)
        self._gen = np.random.Generator(np.random.Philox(self.seed))

    def uniform(self, size=None):
        return self._gen.random(size)

    def laplace(self, scale: float, size=None):
        return laplace(scale, self, size)

    def spawn(self) -> "NoiseSource":
        child = NoiseSource.__new__(NoiseSource)
        child.seed = self.seed
        child._gen = self._gen.spawn(1)[0]
        return child


def laplace(scale: float, rng: NoiseSource, size=None):
    """Draw ``Laplace(0, scale)`` samples; ``scale == 0`` gives exact zeros."""
    if scale < 0 or math.isnan(scale):
        raise ParameterError(f"Laplace scale must be non-negative, got {scale}")
    if scale == 0:
        return 0.0 if size is None else np.zeros(size)
    if size is None:
        u = rng.uniform()
        while u == 0.0:
            u = rng.uniform()
        if u < 0.5:
            return scale * math.log(2.0 * u)
        return -scale * math.log(2.0 * (1.0 - u))
    u = rng.uniform(size)
    u[u == 0.0] = 0.5
    lower = u < 0.5
    out = np.empty_like(u)
    out[lower] = scale * np.log(2.0 * u[lower])
    out[~lower] = -scale * np.log(2.0 * (1.0 - u[~lower]))
    return out


class BtmCounter:
    """Streaming binary tree mechanism over a stream of at most ``capacity`` values.

    After the ``t``-th increment the running estimate is the sum of the noisy
    dyadic cells picked out by the binary digits of ``t``. A cell receives its
    noise once, when it is completed, and keeps it until a larger cell
    absorbs it; only one cell per level is alive at any time.
    """

    __slots__ = ("capacity", "sigma", "position", "_exact", "_noisy", "_rng")

    def __init__(self, capacity: int, sigma: float, rng: NoiseSource | None = None):
        if capacity < 1:
            raise ParameterError(f"capacity must be at least 1, got {capacity}")
        if sigma < 0:
            raise ParameterError(f"sigma must be non-negative, got {sigma}")
        if sigma > 0 and rng is None:
            raise ParameterError("a noise source is required when sigma > 0")
        levels = capacity.bit_length()
        self.capacity = capacity
        self.sigma = sigma
        self.position = 0
        self._exact = [0.0] * levels
        self._noisy = [0.0] * levels
        self._rng = rng

    @property
    def levels(self) -> int:
        return len(self._exact)

    def increment(self, value: float) -> "BtmCounter":
        if self.position >= self.capacity:
            raise StreamExhaustedError(f"counter of capacity {self.capacity} is full")
        t = self.position + 1
        level = (t & -t).bit_length() - 1
        exact = self._exact
        total = value
        for j in range(level):
            total += exact[j]
            exact[j] = 0.0
            self._noisy[j] = 0.0
        exact[level] = total
        noise = laplace(self.sigma, self._rng) if self.sigma else 0.0
        self._noisy[level] = total + noise
        self.position = t
        return self

    def query(self) -> float:
        t = self.position
        if t == 0:
            raise EmptyStreamError("query before any increment")
        total = 0.0
        j = 0
        noisy = self._noisy
        while t:
            if t & 1:
                total += noisy[j]
            t >>= 1
            j += 1
        return total


@dataclass(frozen=True)
class NoiseConfig:
    """Privacy budget split for one run.

    ``epsilon0`` is the budget of each heavy-path mechanism and ``sigma`` the
    Laplace scale of every binary-tree cell.
    """

    epsilon: float
    beta: float
    epsilon0: float
    sigma: float
    phase_count: int
    noiseless: bool = False
    seed: int = 0

    @classmethod
    def derive(cls, epsilon: float, beta: float, n: int, ell: int, ell_bit: int,
               noiseless: bool = False, seed: int | None = None) -> "NoiseConfig":
        if not epsilon > 0:
            raise ParameterError(f"epsilon must be positive, got {epsilon}")
        if not 0 < beta < 1:
            raise ParameterError(f"beta must lie in (0, 1), got {beta}")
        # one base screening plus one extension per doubling of the length
        phases = 1 + (math.ceil(math.log2(ell)) if ell > 1 else 0)
        eps0 = (epsilon / phases) / (4 * ell * ceil_log2(n * ell_bit))
        sigma = ceil_log2(ell_bit) / eps0
        return cls(epsilon, beta, eps0, sigma, phases, noiseless,
                   new_seed() if seed is None else int(seed))
