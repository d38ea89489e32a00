"""Vilenkin characters, transforms, partial sums, L^p norms and convolution.

Conventions: analyze uses conj(psi_k) with the 1/M_L factor, synthesize uses
psi_k without normalization, so synthesize(analyze(f)) == f.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from vilenkin.analysis.vgroup import (
    GroupSpec,
    Point,
    VIndex,
    digits,
    in_coset,
    negated_ranks,
    unrank,
)
from vilenkin.errors import IndexRangeError, NormOrderError, SpecMismatchError

logger = logging.getLogger(__name__)

P_MAX = 64.0

Scalar = Union[int, float, complex]


def _frozen_complex(values: np.ndarray, size: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != size:
        raise IndexRangeError(f"{what} needs {size} values, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} values must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A step function constant on the cosets of I_L, stored by rank."""

    spec: GroupSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", _frozen_complex(self.values, self.spec.size, "grid")
        )

    @classmethod
    def zero(cls, spec: GroupSpec) -> "GridFunction":
        return cls(spec, np.zeros(spec.size, dtype=np.complex128))

    @classmethod
    def constant(cls, spec: GroupSpec, c: Scalar) -> "GridFunction":
        return cls(spec, np.full(spec.size, complex(c)))

    def tensor(self) -> np.ndarray:
        """Values as an m_0 x ... x m_{L-1} array, axis k is digit k."""
        return self.values.reshape(self.spec.shape, order="F")

    def at(self, x: Point) -> complex:
        r = sum(d * m for d, m in zip(x.digits, self.spec.powers))
        return complex(self.values[r])

    def _other(self, other: "GridFunction") -> np.ndarray:
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec.label()} vs {other.spec.label()}")
        return other.values

    def __add__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.spec, self.values + self._other(other))

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return GridFunction(self.spec, self.values - self._other(other))

    def __mul__(self, c: Scalar) -> "GridFunction":
        return GridFunction(self.spec, self.values * c)

    __rmul__ = __mul__

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.spec, -self.values)

    def conj(self) -> "GridFunction":
        return GridFunction(self.spec, np.conj(self.values))

    def reflect(self) -> "GridFunction":
        """x -> f(-x)."""
        return GridFunction(self.spec, self.values[negated_ranks(self.spec)])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Vilenkin-Fourier coefficients f^(0), ..., f^(M_L - 1)."""

    spec: GroupSpec
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", _frozen_complex(self.coeffs, self.spec.size, "spectrum")
        )

    @classmethod
    def unit(cls, spec: GroupSpec, k: int) -> "Spectrum":
        if not 0 <= k < spec.size:
            raise IndexRangeError(f"index {k} outside [0, {spec.size})")
        coeffs = np.zeros(spec.size, dtype=np.complex128)
        coeffs[k] = 1.0
        return cls(spec, coeffs)


def max_abs_diff(f: GridFunction, g: GridFunction) -> float:
    return float(np.max(np.abs(f.values - f._other(g)))) if f.spec.size else 0.0


# --- characters ------------------------------------------------------------


def _as_index(n: Union[int, VIndex], spec: GroupSpec) -> VIndex:
    return n if isinstance(n, VIndex) else digits(n, spec)


def psi(n: Union[int, VIndex], x: Point) -> complex:
    """psi_n(x) = prod_k exp(2 pi i n_k x_k / m_k)."""
    index = _as_index(n, x.spec)
    turns = sum(
        ((nk * xk) % m) / m for nk, xk, m in zip(index.digits, x.digits, x.spec.radices)
    )
    return cmath.exp(2j * math.pi * (turns % 1.0))


def psi_vector(spec: GroupSpec, n: Union[int, VIndex]) -> np.ndarray:
    """psi_n at every grid point, in rank order."""
    index = _as_index(n, spec)
    turns = np.zeros(spec.size, dtype=np.float64)
    for k, (nk, m) in enumerate(zip(index.digits, spec.radices)):
        if nk:
            turns += ((nk * spec.digit_grid[k].astype(np.int64)) % m) / m
    return np.exp(2j * np.pi * np.mod(turns, 1.0))


def character(spec: GroupSpec, n: int) -> GridFunction:
    return GridFunction(spec, psi_vector(spec, n))


def rademacher(spec: GroupSpec, k: int) -> GridFunction:
    """r_k = psi_{M_k}."""
    if not 0 <= k < spec.level:
        raise IndexRangeError(f"Rademacher index {k} outside [0, {spec.level})")
    return character(spec, spec.powers[k])


def coset_indicator(
    spec: GroupSpec, s: int, x: Union[Point, None] = None
) -> GridFunction:
    """Indicator of I_s(x)."""
    return GridFunction(spec, in_coset(spec, s, x).astype(np.complex128))


# --- transforms ------------------------------------------------------------


def analyze_naive(f: GridFunction) -> Spectrum:
    """O(M_L^2) oracle: one inner product per character."""
    spec = f.spec
    coeffs = np.empty(spec.size, dtype=np.complex128)
    for k in range(spec.size):
        coeffs[k] = np.vdot(psi_vector(spec, k), f.values) / spec.size
    return Spectrum(spec, coeffs)


def analyze_fast(f: GridFunction) -> Spectrum:
    """Separable transform: one length-m_k DFT along every digit axis.

    Axes are processed in the fixed order 0, ..., L-1.
    """
    spec = f.spec
    tensor = f.tensor()
    for axis in range(spec.level):
        tensor = np.fft.fft(tensor, axis=axis)
    coeffs = tensor.reshape(-1, order="F") / spec.size
    return Spectrum(spec, coeffs)


def analyze(f: GridFunction, method: str = "fast") -> Spectrum:
    if method == "fast":
        return analyze_fast(f)
    if method == "naive":
        return analyze_naive(f)
    raise ValueError(f"unknown transform method {method!r}")


def synthesize(s: Spectrum) -> GridFunction:
    """f(x) = sum_k coeffs[k] psi_k(x)."""
    spec = s.spec
    tensor = s.coeffs.reshape(spec.shape, order="F")
    for axis in range(spec.level):
        tensor = np.fft.ifft(tensor, axis=axis, norm="forward")
    return GridFunction(spec, tensor.reshape(-1, order="F"))


def synthesize_naive(s: Spectrum) -> GridFunction:
    spec = s.spec
    values = np.zeros(spec.size, dtype=np.complex128)
    for k in np.flatnonzero(s.coeffs):
        values += s.coeffs[k] * psi_vector(spec, int(k))
    return GridFunction(spec, values)


def apply_multiplier(f: GridFunction, lam: np.ndarray) -> GridFunction:
    """synthesize(lam_k f^(k)); lam shorter than M_L is padded with zeros."""
    spec = f.spec
    full = np.zeros(spec.size, dtype=np.complex128)
    lam = np.asarray(lam)
    if lam.shape[0] > spec.size:
        raise IndexRangeError(f"multiplier longer than {spec.size}")
    full[: lam.shape[0]] = lam
    return synthesize(Spectrum(spec, analyze_fast(f).coeffs * full))


def partial_sum(f: GridFunction, n: int) -> GridFunction:
    """S_n f = sum_{k<n} f^(k) psi_k, with S_0 f = 0."""
    if not 0 <= n <= f.spec.size:
        raise IndexRangeError(f"partial sum index {n} outside [0, {f.spec.size}]")
    if n == 0:
        return GridFunction.zero(f.spec)
    return apply_multiplier(f, np.ones(n))


# --- norms and convolution -------------------------------------------------


def check_p(p: float) -> float:
    if not (isinstance(p, (int, float)) and 1.0 <= p <= P_MAX):
        raise NormOrderError(f"p must lie in [1, {P_MAX:g}], got {p!r}")
    return float(p)


def lp_norm(f: GridFunction, p: float) -> float:
    """((1/M_L) sum_x |f(x)|^p)^(1/p)."""
    p = check_p(p)
    mags = np.abs(f.values)
    top = float(np.max(mags)) if mags.size else 0.0
    if top == 0.0:
        return 0.0
    # scale first so large p cannot overflow
    return top * float(np.mean((mags / top) ** p)) ** (1.0 / p)


def translate(f: GridFunction, t: Union[Point, int]) -> GridFunction:
    """x -> f(x - t)."""
    point = t if isinstance(t, Point) else unrank(int(t), f.spec)
    if point.spec != f.spec:
        raise SpecMismatchError(f"{f.spec.label()} vs {point.spec.label()}")
    shifted = np.roll(f.tensor(), shift=point.digits, axis=tuple(range(f.spec.level)))
    return GridFunction(f.spec, shifted.reshape(-1, order="F"))


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """(f*g)(x) = integral f(x - t) g(t) dmu(t), via the product of spectra."""
    if f.spec != g.spec:
        raise SpecMismatchError(f"{f.spec.label()} vs {g.spec.label()}")
    product = analyze_fast(f).coeffs * analyze_fast(g).coeffs
    return synthesize(Spectrum(f.spec, product))


def convolve_direct(f: GridFunction, g: GridFunction) -> GridFunction:
    """Direct double sum; O(M_L^2) oracle for convolve."""
    if f.spec != g.spec:
        raise SpecMismatchError(f"{f.spec.label()} vs {g.spec.label()}")
    spec = f.spec
    out = np.zeros(spec.size, dtype=np.complex128)
    for t in range(spec.size):
        if g.values[t] != 0:
            out += translate(f, t).values * g.values[t]
    return GridFunction(spec, out / spec.size)
