# -*- coding: utf-8 -*-
"""
Counter based splitmix64 pseudo-random generator.

The generator state is a single unsigned 64-bit integer. Output number ``i``
(counting from 0) of a generator seeded with ``s`` is::

    z = (s + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output = z ^ (z >> 31)

Uniform doubles take the upper 53 bits of an output and sit at the midpoint of their
interval, ``u = ((z >> 11) + 0.5) / 2**53``, so that ``0 < u < 1``. Exponential
variates are drawn by inverse CDF, ``-log(1 - u) / lambda``.

Independent streams, e.g. one per simulation trial, are seeded with output number
``index`` of the parent generator: ``SplitMix64(seed).spawn(index)`` has the seed
``mix64(seed + (index + 1) * 0x9E3779B97F4A7C15)``. This is the same in every
implementation of the algorithm and does not depend on how trials are scheduled.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z):
    """
    splitmix64 output function.

    :param z: Python int or ``np.uint64`` array.
    :returns: Mixed value(s) of the same kind.
    """
    if isinstance(z, np.ndarray):
        with np.errstate(over="ignore"):
            z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
            return z ^ (z >> np.uint64(31))

    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """
    splitmix64 generator producing numpy arrays.

    :param seed: Integer seed, reduced modulo 2**64.
    """

    def __init__(self, seed: int) -> None:
        self.seed = int(seed) & MASK64
        self.counter = 0

    def spawn(self, index: int) -> "SplitMix64":
        """Returns the independent child stream number ``index``."""
        return SplitMix64(mix64(self.seed + (int(index) + 1) * GOLDEN_GAMMA))

    def integers(self, n: int) -> np.ndarray:
        """Returns the next ``n`` raw 64-bit outputs as ``np.uint64``."""
        counters = np.arange(self.counter + 1, self.counter + n + 1, dtype=np.uint64)
        self.counter += n

        with np.errstate(over="ignore"):
            z = np.uint64(self.seed) + counters * np.uint64(GOLDEN_GAMMA)

        return mix64(z)

    def random(self, n: int) -> np.ndarray:
        """Returns ``n`` uniform doubles in the open interval (0, 1)."""
        top = (self.integers(n) >> np.uint64(11)).astype(np.float64)
        return (top + 0.5) * 2.0 ** -53

    def exponential(self, n: int, lam: float = 1.0) -> np.ndarray:
        """Returns ``n`` draws from the exponential distribution with rate ``lam``."""
        if lam <= 0:
            raise ValueError("Rate must be positive, got {}.".format(lam))
        return -np.log1p(-self.random(n)) / lam

    def __repr__(self) -> str:
        return "<{0}(seed={1:#018x}, counter={2})>".format(
            self.__class__.__name__, self.seed, self.counter
        )
