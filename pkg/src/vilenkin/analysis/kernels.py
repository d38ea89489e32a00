"""Dirichlet, Fejer and T-mean kernels with their closed forms and bounds."""

import logging
import threading
from collections import OrderedDict
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, Optional, Tuple

import numpy as np

from vilenkin.analysis.spectral import (
    GridFunction,
    apply_multiplier,
    coset_indicator,
    psi_vector,
)
from vilenkin.analysis.vgroup import GroupSpec, digits
from vilenkin.errors import IndexRangeError, WeightError

if TYPE_CHECKING:
    from vilenkin.analysis.means import WeightSeq

logger = logging.getLogger(__name__)

KINDS = ("dirichlet", "fejer", "tkernel")


def _delta(spec: GroupSpec) -> GridFunction:
    values = np.zeros(spec.size, dtype=np.complex128)
    values[0] = spec.size
    return GridFunction(spec, values)


def _check_n(spec: GroupSpec, n: int) -> None:
    if not 1 <= n <= spec.size:
        raise IndexRangeError(f"kernel index {n} outside [1, {spec.size}]")


def dirichlet_multipliers(n: int) -> np.ndarray:
    return np.ones(n)


def fejer_multipliers(n: int) -> np.ndarray:
    """(n - k)/n for k < n: the eigenvalue of sigma_n on psi_k."""
    k = np.arange(n, dtype=np.float64)
    return (n - k) / n


def t_multipliers(q: "WeightSeq", n: int) -> np.ndarray:
    """(Q_n - Q_{k+1})/Q_n for k <= n-2, zero from k = n-1 on."""
    if n < 1 or len(q) < n:
        raise WeightError(f"weights of length {len(q)} do not reach index {n - 1}")
    qn = q.partial(n)
    if qn <= 0:
        raise WeightError(f"Q_{n} = {qn} is not positive")
    partials = np.asarray(q.partials[1:n], dtype=np.float64)
    lam = np.zeros(n, dtype=np.float64)
    lam[: n - 1] = (qn - partials) / qn
    return lam


def _build(
    spec: GroupSpec, kind: str, n: int, q: Optional["WeightSeq"]
) -> GridFunction:
    # the kernel is the image of the delta mass under the mean's multiplier
    if kind == "dirichlet":
        lam = dirichlet_multipliers(n)
    elif kind == "fejer":
        lam = fejer_multipliers(n)
    elif kind == "tkernel":
        if q is None:
            raise WeightError("tkernel needs a weight sequence")
        lam = t_multipliers(q, n)
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")
    return apply_multiplier(_delta(spec), lam)


class KernelFamily:
    """Memoized kernels of one kind on one group.

    Kernels are materialized as GridFunctions and kept in a lock-guarded LRU
    cache keyed by n; results never depend on the cache state.
    """

    def __init__(
        self,
        spec: GroupSpec,
        kind: str,
        weights: Optional["WeightSeq"] = None,
        cache_size: int = 256,
    ):
        """Initialize the family.

        Args:
            spec: the group
            kind: one of dirichlet, fejer, tkernel
            weights: the weight sequence, required for tkernel
            cache_size: number of kernels kept in memory
        """
        if kind not in KINDS:
            raise ValueError(f"kernel kind must be one of {KINDS}, got {kind!r}")
        if kind == "tkernel" and weights is None:
            raise WeightError("tkernel needs a weight sequence")
        self.spec = spec
        self.kind = kind
        self.weights = weights
        self.cache_size = cache_size
        self._cache: "OrderedDict[int, GridFunction]" = OrderedDict()
        self._lock = threading.Lock()

    def __call__(self, n: int) -> GridFunction:
        _check_n(self.spec, n)
        with self._lock:
            hit = self._cache.get(n)
            if hit is not None:
                self._cache.move_to_end(n)
                return hit
        kernel = _build(self.spec, self.kind, n, self.weights)
        with self._lock:
            self._cache[n] = kernel
            while len(self._cache) > self.cache_size:
                self._cache.popitem(last=False)
        return kernel


@lru_cache(maxsize=64)
def kernel_family(
    spec: GroupSpec, kind: str, weights: Optional["WeightSeq"] = None
) -> KernelFamily:
    return KernelFamily(spec, kind, weights)


def dirichlet_kernel(spec: GroupSpec, n: int) -> GridFunction:
    """D_n = sum_{k<n} psi_k."""
    return kernel_family(spec, "dirichlet")(n)


def dirichlet_kernel_naive(spec: GroupSpec, n: int) -> GridFunction:
    """D_n by direct character summation."""
    _check_n(spec, n)
    values = np.zeros(spec.size, dtype=np.complex128)
    for k in range(n):
        values += psi_vector(spec, k)
    return GridFunction(spec, values)


def dirichlet_closed(spec: GroupSpec, s: int) -> GridFunction:
    """D_{M_s} = M_s on I_s and 0 elsewhere."""
    return coset_indicator(spec, s) * spec.powers[s]


def fejer_kernel(spec: GroupSpec, n: int) -> GridFunction:
    """K_n = (1/n) sum_{k=1}^{n} D_k."""
    return kernel_family(spec, "fejer")(n)


def t_kernel(spec: GroupSpec, q: "WeightSeq", n: int) -> GridFunction:
    """F_n = (1/Q_n) sum_{k<n} q_k D_k."""
    return kernel_family(spec, "tkernel", q)(n)


def fejer_MN_closed(spec: GroupSpec, n: int) -> GridFunction:
    """The three-branch closed form of K_{M_n}.

    (M_n + 1)/2 on I_n; M_t/(1 - r_t(x)) on I_t minus I_{t+1} when x - x_t e_t
    lies in I_n (t < n); zero otherwise.
    """
    if not 0 <= n <= spec.level:
        raise IndexRangeError(f"level {n} outside [0, {spec.level}]")
    grid = spec.digit_grid[:n].astype(np.int64)
    values = np.zeros(spec.size, dtype=np.complex128)
    nonzero = grid != 0
    count = nonzero.sum(axis=0)
    values[count == 0] = (spec.powers[n] + 1) / 2
    if n == 0:
        return GridFunction(spec, values)
    # with one nonzero digit among the first n, that digit is x_t and the
    # remaining first-n digits vanish, which is exactly x - x_t e_t in I_n
    single = count == 1
    t = np.argmax(nonzero, axis=0)
    for level in range(n):
        where = single & (t == level)
        if not np.any(where):
            continue
        xt = grid[level, where]
        r = np.exp(2j * np.pi * xt / spec.radices[level])
        assert np.all(np.abs(1 - r) > 1e-12), "r_t(x) = 1 on the off-coset branch"
        values[where] = spec.powers[level] / (1 - r)
    return GridFunction(spec, values)


def dirichlet_complement(
    spec: GroupSpec, n: int, j: int, form: str = "conjugate"
) -> float:
    """Worst residual of D_{M_n - j} = D_{M_n} - psi_{M_n - 1} conj(D_j).

    With ``form="reflected"`` the right side is
    D_{M_n}(x) - conj(psi_{M_n - 1}(-x)) D_j(-x).
    """
    if not 0 <= n <= spec.level:
        raise IndexRangeError(f"level {n} outside [0, {spec.level}]")
    mn = spec.powers[n]
    if not 0 <= j < mn:
        raise IndexRangeError(f"j = {j} outside [0, {mn})")
    left = dirichlet_kernel(spec, mn - j).values
    psi_last = psi_vector(spec, mn - 1)
    dj = dirichlet_kernel(spec, j).values if j else np.zeros(spec.size, complex)
    if form == "conjugate":
        right = dirichlet_kernel(spec, mn).values - psi_last * np.conj(dj)
    elif form == "reflected":
        neg = GridFunction(spec, psi_last).reflect().values
        dj_neg = GridFunction(spec, dj).reflect().values
        right = dirichlet_kernel(spec, mn).values - np.conj(neg) * dj_neg
    else:
        raise ValueError(f"unknown form {form!r}")
    return float(np.max(np.abs(left - right)))


def iter_fejer_scaled(spec: GroupSpec) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """Yield (n, D_n, n K_n) for n = 1..M_L, one character added per step.

    The yielded arrays are reused between steps; copy them to keep them.
    """
    dn = np.zeros(spec.size, dtype=np.complex128)
    scaled = np.zeros(spec.size, dtype=np.complex128)
    for n in range(1, spec.size + 1):
        dn += psi_vector(spec, n - 1)
        scaled += dn
        yield n, dn, scaled


def fn5_majorants(spec: GroupSpec) -> np.ndarray:
    """Row N holds 2R^2 sum_{l<=N} M_l |K_{M_l}|, for N = 0..L-1."""
    acc = np.zeros(spec.size, dtype=np.float64)
    rows = np.empty((spec.level, spec.size), dtype=np.float64)
    for level in range(spec.level):
        acc = acc + spec.powers[level] * np.abs(fejer_MN_closed(spec, level).values)
        rows[level] = 2 * spec.bound**2 * acc
    return rows


def fn5_slack(
    n: int, scaled: np.ndarray, majorants: np.ndarray, spec: GroupSpec
) -> float:
    """max_x of n|K_n(x)| - 2R^2 sum_{l<=|n|} M_l |K_{M_l}(x)|; <= 0 when it holds."""
    order = digits(n, spec).order
    return float(np.max(np.abs(scaled) - majorants[order]))
