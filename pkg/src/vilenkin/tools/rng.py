"""Seeded splitmix64 stream and the random test functions built on it.

Output i (i = 1, 2, ...) is mix(seed + i * 0x9E3779B97F4A7C15) in 64-bit
wrap-around arithmetic. A uniform double is (z >> 11) * 2^-53.
"""

import numpy as np

from vilenkin.analysis.spectral import GridFunction
from vilenkin.analysis.vgroup import GroupSpec

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, count: int) -> np.ndarray:
    """The first ``count`` outputs of the generator seeded with ``seed``."""
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    i = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + i * GOLDEN
        z = (z ^ (z >> np.uint64(30))) * MIX1
        z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


def uniform(seed: int, count: int) -> np.ndarray:
    """Doubles in [0, 1) with 53 random bits each."""
    return (splitmix64(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def random_function(spec: GroupSpec, seed: int) -> GridFunction:
    """Mean-zero step function with parts drawn uniformly from [-1, 1].

    The point of rank r takes its real part from output 2r+1 and its
    imaginary part from output 2r+2.
    """
    u = 2.0 * uniform(seed, 2 * spec.size) - 1.0
    values = u[0::2] + 1j * u[1::2]
    return GridFunction(spec, values - values.mean())
