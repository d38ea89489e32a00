"""Weight sequences and the Fejer, Norlund and T summability means.

Every mean is a spectral multiplier: with S_k psi_j = psi_j exactly when
k > j, the eigenvalue of a mean on psi_j is the normalized weight of the
partial sums that contain psi_j.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from vilenkin.analysis.kernels import fejer_multipliers, t_multipliers
from vilenkin.analysis.spectral import (
    GridFunction,
    Spectrum,
    analyze_fast,
    apply_multiplier,
    synthesize,
)
from vilenkin.errors import IdentityError, IndexRangeError, WeightError
from vilenkin.tools.config import parse_weights

logger = logging.getLogger(__name__)

NON_INCREASING = "non_increasing"
NON_DECREASING = "non_decreasing"
OTHER = "other"

ABEL_TOLERANCE = 1e-10


def _compensated_partials(values: Sequence[float]) -> Tuple[float, ...]:
    """Q_0 = 0, Q_{n+1} = Q_n + q_n accumulated with Neumaier compensation."""
    partials = [0.0]
    total = 0.0
    carry = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            carry += (total - t) + v
        else:
            carry += (v - t) + total
        total = t
        partials.append(total + carry)
    return tuple(partials)


def _classify(values: Sequence[float]) -> str:
    diffs = np.diff(np.asarray(values, dtype=np.float64))
    if np.all(diffs >= 0):
        # constant sequences land here by convention
        return NON_DECREASING
    if np.all(diffs <= 0):
        return NON_INCREASING
    return OTHER


@dataclass(frozen=True)
class WeightSeq:
    """Weights q_0..q_{nmax-1} with partial sums Q_0..Q_nmax.

    Attributes:
        values: the weights, q_0 > 0 and q_k >= 0.
        partials: Q_n = sum_{k<n} q_k.
        monotonicity: non_increasing, non_decreasing or other.
        kind: generating kind (const, pow, logpow, custom).
        param: gamma for pow, beta for logpow, None otherwise.
        regular: discrete proxy of Q_n -> infinity, Q_nmax > Q_{nmax // 2}.
        cond2: max over 2 <= n <= nmax of n q_{n-1} / Q_n.
        cond3: max over 1 <= n <= nmax of n q_0 / Q_n.
    """

    values: Tuple[float, ...]
    kind: str = "custom"
    param: Optional[float] = None
    partials: Tuple[float, ...] = field(init=False, compare=False, repr=False)
    monotonicity: str = field(init=False, compare=False)
    regular: bool = field(init=False, compare=False)
    cond2: float = field(init=False, compare=False)
    cond3: float = field(init=False, compare=False)

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not values:
            raise WeightError("empty weight sequence")
        if not all(math.isfinite(v) for v in values):
            raise WeightError("weights must be finite")
        if not values[0] > 0:
            raise WeightError(f"q_0 must be positive, got {values[0]}")
        if any(v < 0 for v in values):
            raise WeightError("weights must be non-negative")
        partials = _compensated_partials(values)
        nmax = len(values)
        n = np.arange(1, nmax + 1, dtype=np.float64)
        q_arr = np.asarray(values)
        big_q = np.asarray(partials[1:])
        cond2 = float(np.max(n[1:] * q_arr[1:] / big_q[1:])) if nmax >= 2 else 0.0
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "partials", partials)
        object.__setattr__(self, "monotonicity", _classify(values))
        object.__setattr__(self, "regular", partials[nmax] > partials[nmax // 2])
        object.__setattr__(self, "cond2", cond2)
        object.__setattr__(self, "cond3", float(np.max(n * values[0] / big_q)))

    def __len__(self) -> int:
        return len(self.values)

    def q(self, k: int) -> float:
        if not 0 <= k < len(self.values):
            raise WeightError(f"weight index {k} outside [0, {len(self.values)})")
        return self.values[k]

    def partial(self, n: int) -> float:
        if not 0 <= n <= len(self.values):
            raise WeightError(f"partial sum Q_{n} outside [0, {len(self.values)}]")
        return self.partials[n]

    @property
    def is_non_increasing(self) -> bool:
        return bool(np.all(np.diff(np.asarray(self.values)) <= 0))

    @property
    def is_non_decreasing(self) -> bool:
        return bool(np.all(np.diff(np.asarray(self.values)) >= 0))

    @property
    def label(self) -> str:
        if self.kind == "const":
            return "const"
        if self.kind in ("pow", "logpow"):
            return f"{self.kind}:{self.param:g}"
        return "custom:" + ",".join(f"{v:g}" for v in self.values)


def make_weights(kind: str, params: object = None, nmax: int = 1) -> WeightSeq:
    """Generate a weight sequence.

    Args:
        kind: const (q_k = 1), pow ((k+1)^gamma), logpow ((log(k+2))^-beta)
            or custom (an explicit list)
        params: gamma for pow, beta > 0 for logpow, the list for custom
        nmax: number of weights to generate (ignored for custom)

    Returns:
        The WeightSeq with partial sums, class tag, regularity and cond2.
    """
    if kind != "custom" and nmax < 1:
        raise WeightError(f"nmax must be at least 1, got {nmax}")
    k = np.arange(nmax, dtype=np.float64)
    if kind == "const":
        return WeightSeq(tuple(np.ones(nmax)), kind="const")
    if kind == "pow":
        gamma = float(params)  # type: ignore[arg-type]
        return WeightSeq(tuple((k + 1.0) ** gamma), kind="pow", param=gamma)
    if kind == "logpow":
        beta = float(params)  # type: ignore[arg-type]
        if not beta > 0:
            raise WeightError(f"logpow needs beta > 0, got {beta}")
        return WeightSeq(tuple(np.log(k + 2.0) ** (-beta)), kind="logpow", param=beta)
    if kind == "custom":
        values = tuple(float(v) for v in (params or ()))  # type: ignore[union-attr]
        if not values:
            raise WeightError("empty custom weight list")
        return WeightSeq(values, kind="custom")
    raise WeightError(f"unknown weight kind {kind!r}")


def weights_from_string(text: str, nmax: int) -> WeightSeq:
    """``const``, ``pow:<gamma>``, ``logpow:<beta>`` or ``custom:<list>``."""
    parsed = parse_weights(text)
    if parsed.kind == "custom":
        return make_weights("custom", parsed.values)
    return make_weights(parsed.kind, parsed.param, nmax)


# --- multipliers -----------------------------------------------------------


def norlund_multipliers(q: WeightSeq, n: int) -> np.ndarray:
    """Q_{n-k}/Q_n for k < n."""
    if n < 1 or len(q) < n:
        raise WeightError(f"weights of length {len(q)} do not reach index {n - 1}")
    partials = np.asarray(q.partials, dtype=np.float64)
    return partials[n - np.arange(n)] / partials[n]


def _check_n(f: GridFunction, n: int, low: int = 1) -> None:
    if not low <= n <= f.spec.size:
        raise IndexRangeError(f"mean index {n} outside [{low}, {f.spec.size}]")


# --- means -----------------------------------------------------------------


def fejer_mean(f: GridFunction, n: int) -> GridFunction:
    """sigma_n f = (1/n) sum_{k=1}^{n} S_k f."""
    _check_n(f, n)
    return apply_multiplier(f, fejer_multipliers(n))


def t_mean(f: GridFunction, q: WeightSeq, n: int) -> GridFunction:
    """T_n f = (1/Q_n) sum_{k=0}^{n-1} q_k S_k f, with S_0 f = 0."""
    _check_n(f, n)
    return apply_multiplier(f, t_multipliers(q, n))


def norlund_mean(f: GridFunction, q: WeightSeq, n: int) -> GridFunction:
    """t_n f = (1/Q_n) sum_{k=1}^{n} q_{n-k} S_k f."""
    _check_n(f, n)
    return apply_multiplier(f, norlund_multipliers(q, n))


def _partial_sum_table(f: GridFunction, upto: int) -> np.ndarray:
    """Rows k = 0..upto hold S_k f; row 0 is the zero function."""
    spectrum = analyze_fast(f)
    table = np.zeros((upto + 1, f.spec.size), dtype=np.complex128)
    mask = np.zeros(f.spec.size, dtype=np.complex128)
    for k in range(1, upto + 1):
        mask[k - 1] = spectrum.coeffs[k - 1]
        table[k] = synthesize(Spectrum(f.spec, mask)).values
    return table


def fejer_mean_direct(f: GridFunction, n: int) -> GridFunction:
    """Definitional oracle for fejer_mean."""
    _check_n(f, n)
    table = _partial_sum_table(f, n)
    return GridFunction(f.spec, table[1:].sum(axis=0) / n)


def t_mean_direct(f: GridFunction, q: WeightSeq, n: int) -> GridFunction:
    """Definitional oracle for t_mean."""
    _check_n(f, n)
    if len(q) < n:
        raise WeightError(f"weights of length {len(q)} do not reach index {n - 1}")
    table = _partial_sum_table(f, n - 1)
    weights = np.asarray(q.values[:n])
    return GridFunction(f.spec, weights @ table / q.partial(n))


def norlund_mean_direct(f: GridFunction, q: WeightSeq, n: int) -> GridFunction:
    """Definitional oracle for norlund_mean."""
    _check_n(f, n)
    if len(q) < n:
        raise WeightError(f"weights of length {len(q)} do not reach index {n - 1}")
    table = _partial_sum_table(f, n)
    weights = np.asarray([q.values[n - k] for k in range(1, n + 1)])
    return GridFunction(f.spec, weights @ table[1:] / q.partial(n))


def abel_identity_residual(q: WeightSeq, n: int) -> float:
    """|(Q_n - q_0) - (sum_{k=0}^{n-2} (q_k - q_{k+1}) k + q_{n-1} (n-1))|.

    Summation by parts gives Q_n - q_0 on the right, never Q_n itself.
    """
    if n < 2 or len(q) < n:
        raise WeightError(f"Abel identity needs 2 <= n <= {len(q)}, got {n}")
    vals = np.asarray(q.values[:n], dtype=np.float64)
    k = np.arange(n - 1, dtype=np.float64)
    right = math.fsum((vals[:-1] - vals[1:]) * k) + vals[n - 1] * (n - 1)
    return abs(q.partial(n) - vals[0] - right)


def t_mean_abel(f: GridFunction, q: WeightSeq, n: int) -> GridFunction:
    """T_n f through the Abel-transformed sum of Fejer means.

    (1/Q_n)[sum_{k=0}^{n-2} (q_k - q_{k+1}) k sigma_k f + q_{n-1}(n-1) sigma_{n-1} f],
    with sigma_0 f taken as 0. The scalar identity for Q_n - q_0 is checked first.
    """
    _check_n(f, n, low=2)
    residual = abel_identity_residual(q, n)
    qn = q.partial(n)
    if residual > ABEL_TOLERANCE * max(1.0, qn):
        raise IdentityError(f"Abel identity for Q_{n} - q_0 off by {residual:.3e}")
    vals = np.asarray(q.values[:n], dtype=np.float64)
    lam = np.zeros(n - 1, dtype=np.float64)
    for k in range(1, n - 1):
        # k sigma_k has eigenvalue (k - j) on psi_j, j < k
        lam[:k] += (vals[k] - vals[k + 1]) * (k - np.arange(k))
    lam += vals[n - 1] * ((n - 1) - np.arange(n - 1))
    logger.debug("abel form for n=%d, Q_n=%g, residual=%.2e", n, qn, residual)
    return apply_multiplier(f, lam / qn)
