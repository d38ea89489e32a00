"""Moduli of continuity, Lipschitz test functions and the approximation bounds.

Moduli are measured at the scales 1/M_s only, where the ball |t| < 1/M_s is
the subgroup I_s and its grid points are the multiples of M_s.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from vilenkin.analysis.means import WeightSeq, fejer_mean
from vilenkin.analysis.spectral import (
    GridFunction,
    Spectrum,
    analyze_fast,
    character,
    check_p,
    lp_norm,
    psi_vector,
    synthesize,
    translate,
)
from vilenkin.analysis.vgroup import GroupSpec, level_of
from vilenkin.errors import (
    IndexRangeError,
    RateFitError,
    SpecMismatchError,
    WeightClassError,
    WeightError,
)

logger = logging.getLogger(__name__)

PASS_SLACK = 1e-9
ZERO_LHS = 1e-12


@dataclass(frozen=True)
class ModulusProfile:
    """omega_p(1/M_s, f) for s = 0..L."""

    spec: GroupSpec
    p: float
    omegas: Tuple[float, ...]

    def __getitem__(self, s: int) -> float:
        if not 0 <= s <= self.spec.level:
            raise IndexRangeError(f"scale {s} outside [0, {self.spec.level}]")
        return self.omegas[s]


def _translation_errors(f: GridFunction, p: float) -> np.ndarray:
    """d(t) = ||f(. - t) - f||_p for every grid rank t."""
    out = np.empty(f.spec.size, dtype=np.float64)
    for t in range(f.spec.size):
        out[t] = lp_norm(translate(f, t) - f, p)
    return out


def _translation_errors_l2(f: GridFunction) -> np.ndarray:
    # ||f(.-t) - f||_2^2 = 2 sum |c_k|^2 - 2 Re sum |c_k|^2 psi_k(t)
    power = np.abs(analyze_fast(f).coeffs) ** 2
    auto = synthesize(Spectrum(f.spec, power)).values.real
    return np.sqrt(np.clip(2.0 * power.sum() - 2.0 * auto, 0.0, None))


def modulus_profile(
    f: GridFunction, p: float, method: str = "direct"
) -> ModulusProfile:
    """Every omega_p(1/M_s, f), s = 0..L, from one sweep over translations.

    Args:
        f: the step function
        p: exponent in [1, 64]
        method: ``direct`` translates and measures; ``spectral`` uses the
            autocorrelation and is only available for p = 2

    Returns:
        The ModulusProfile.
    """
    p = check_p(p)
    if method == "direct":
        errors = _translation_errors(f, p)
    elif method == "spectral":
        if p != 2.0:
            raise ValueError("the spectral modulus path needs p = 2")
        errors = _translation_errors_l2(f)
    else:
        raise ValueError(f"unknown modulus method {method!r}")
    spec = f.spec
    omegas = tuple(
        float(np.max(errors[:: spec.powers[s]])) for s in range(spec.level + 1)
    )
    return ModulusProfile(spec, p, omegas)


def modulus(f: GridFunction, p: float, s: int) -> float:
    """omega_p(1/M_s, f): max over t in I_s of ||f(. - t) - f||_p."""
    if not 0 <= s <= f.spec.level:
        raise IndexRangeError(f"scale {s} outside [0, {f.spec.level}]")
    p = check_p(p)
    return max(
        lp_norm(translate(f, int(t)) - f, p)
        for t in range(0, f.spec.size, f.spec.powers[s])
    )


def lip_function(alpha: float, spec: GroupSpec) -> GridFunction:
    """sum_{k<L} M_k^(-alpha) r_k, a member of Lip(alpha, 2)."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    values = np.zeros(spec.size, dtype=np.complex128)
    for k in range(spec.level):
        values += spec.powers[k] ** (-alpha) * psi_vector(spec, spec.powers[k])
    return GridFunction(spec, values)


def lip_profile_formula(alpha: float, spec: GroupSpec) -> ModulusProfile:
    """Closed omega_2 profile of lip_function.

    Digits of t are independent, so the max picks, per level k, the digit that
    maximizes |exp(2 pi i t_k / m_k) - 1|^2 = 4 sin^2(pi floor(m_k/2) / m_k).
    """
    terms = [
        spec.powers[k] ** (-2 * alpha) * 4 * math.sin(math.pi * (m // 2) / m) ** 2
        for k, m in enumerate(spec.radices)
    ]
    omegas = tuple(math.sqrt(math.fsum(terms[s:])) for s in range(spec.level + 1))
    return ModulusProfile(spec, 2.0, omegas)


# --- right sides -----------------------------------------------------------


def _profile(
    f: GridFunction, p: float, profile: Optional[ModulusProfile]
) -> ModulusProfile:
    if profile is None:
        return modulus_profile(f, p)
    if profile.spec != f.spec:
        raise SpecMismatchError(f"{profile.spec.label()} vs {f.spec.label()}")
    if profile.p != float(p):
        raise ValueError(f"profile was measured at p={profile.p}, not p={p}")
    return profile


def _need_weights(q: WeightSeq, upto: int) -> None:
    if len(q) < upto:
        raise WeightError(f"weights of length {len(q)} do not reach index {upto - 1}")


def thm1_rhs(
    f: GridFunction,
    p: float,
    q: WeightSeq,
    n: int,
    profile: Optional[ModulusProfile] = None,
) -> float:
    """Bound on ||T_n f - f||_p for non-increasing weights.

    (6R^6/Q_n) sum_{j<N} M_j q_{M_j} omega_j + 4R^6 omega_N, M_N <= n < M_{N+1}.
    """
    if not q.is_non_increasing:
        raise WeightClassError(f"{q.label} is not non-increasing")
    N = level_of(n, f.spec)
    _need_weights(q, n)
    prof = _profile(f, p, profile)
    spec = f.spec
    r6 = spec.bound**6
    head = math.fsum(
        spec.powers[j] * q.values[spec.powers[j]] * prof[j] for j in range(N)
    )
    return 6 * r6 / q.partial(n) * head + 4 * r6 * prof[N]


def thm2_rhs(
    f: GridFunction,
    p: float,
    q: WeightSeq,
    n: int,
    profile: Optional[ModulusProfile] = None,
) -> Tuple[float, float]:
    """Bound on ||T_n f - f||_p for non-decreasing weights, and the Cond0 sum.

    Returns:
        (rhs, cond0) where rhs is
        (6R^6 q_{n-1}/Q_n) sum_{j<N} M_j omega_j + (4R^6 q_{n-1} M_N/Q_n) omega_N
        and cond0 is sum_{j<=N} (M_j/M_N) omega_j without its constant.
    """
    if not q.is_non_decreasing:
        raise WeightClassError(f"{q.label} is not non-decreasing")
    N = level_of(n, f.spec)
    _need_weights(q, n)
    prof = _profile(f, p, profile)
    spec = f.spec
    r6 = spec.bound**6
    scale = q.values[n - 1] / q.partial(n)
    head = math.fsum(spec.powers[j] * prof[j] for j in range(N))
    rhs = 6 * r6 * scale * head + 4 * r6 * scale * spec.powers[N] * prof[N]
    return rhs, cond0_sum(prof, N)


def thm3_rhs(
    f: GridFunction,
    p: float,
    q: WeightSeq,
    n: int,
    profile: Optional[ModulusProfile] = None,
) -> float:
    """Bound on ||T_{M_n} f - f||_p for non-decreasing weights, 1 <= n <= L.

    R^2 sum_{j<n} (M_j/M_n) omega_j
    + (2R^4/q_0) sum_{j<n} (n-j) q_{M_n - M_j} (M_j/M_n) omega_j
    + (R^2 + 2) omega_n.
    """
    spec = f.spec
    if not 1 <= n <= spec.level:
        raise IndexRangeError(f"level {n} outside [1, {spec.level}]")
    if not q.is_non_decreasing:
        raise WeightClassError(f"{q.label} is not non-decreasing")
    mn = spec.powers[n]
    _need_weights(q, mn)
    prof = _profile(f, p, profile)
    r2 = spec.bound**2
    first = math.fsum(spec.powers[j] / mn * prof[j] for j in range(n))
    second = math.fsum(
        (n - j) * q.values[mn - spec.powers[j]] * spec.powers[j] / mn * prof[j]
        for j in range(n)
    )
    return r2 * first + 2 * r2**2 / q.values[0] * second + (r2 + 2) * prof[n]


def fejer_rhs(
    f: GridFunction, p: float, n: int, profile: Optional[ModulusProfile] = None
) -> float:
    """2R^5 sum_{s<=N} (M_s/M_N) omega_s, M_N <= n < M_{N+1}."""
    N = level_of(n, f.spec)
    prof = _profile(f, p, profile)
    return 2 * f.spec.bound**5 * cond0_sum(prof, N)


def cond0_sum(profile: ModulusProfile, N: int, reading: str = "vilenkin") -> float:
    """sum_{j<=N} (M_j/M_N) omega_p(1/M_j, f).

    ``reading="dyadic"`` uses 2^j in place of M_j and is defined on Walsh
    groups only, where both readings coincide.
    """
    spec = profile.spec
    if not 0 <= N <= spec.level:
        raise IndexRangeError(f"level {N} outside [0, {spec.level}]")
    if reading == "vilenkin":
        powers: Sequence[int] = spec.powers
    elif reading == "dyadic":
        if not spec.is_walsh:
            raise ValueError("the dyadic reading is defined on Walsh groups only")
        powers = [2**j for j in range(spec.level + 1)]
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return math.fsum(powers[j] / powers[N] * profile[j] for j in range(N + 1))


# --- verification rows -----------------------------------------------------


def check_row(lhs: float, rhs: float) -> Tuple[float, bool]:
    """(ratio, passed) with pass iff ratio <= 1 + 1e-9.

    A vanishing right side passes only with a vanishing left side.
    """
    if rhs > 0:
        ratio = lhs / rhs
    elif lhs <= ZERO_LHS:
        ratio = 0.0
    else:
        ratio = math.inf
    return ratio, ratio <= 1.0 + PASS_SLACK


@dataclass(frozen=True)
class ReportRow:
    theorem: str
    spec: str
    weights: str
    p: float
    f: str
    n: int
    lhs: float
    rhs: float
    ratio: float
    passed: bool


def make_row(
    theorem: str,
    spec: GroupSpec,
    weights: str,
    p: float,
    f_label: str,
    n: int,
    lhs: float,
    rhs: float,
) -> ReportRow:
    ratio, passed = check_row(lhs, rhs)
    return ReportRow(
        theorem, spec.label(), weights, p, f_label, n, lhs, rhs, ratio, passed
    )


@dataclass
class VerificationReport:
    """Rows of one verification run and their summary.

    ``checks`` holds named boolean side conditions that also decide the
    outcome (for instance Cond0 boundedness); ``extra`` holds reported
    numbers that are never asserted.
    Reports with ``asserted`` unset are comparisons and never fail a run.
    """

    theorem: str
    spec: str
    weights: str
    p_values: Tuple[float, ...]
    rows: List[ReportRow] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    extra: Dict[str, float] = field(default_factory=dict)
    asserted: bool = True

    def extend(self, rows: Iterable[ReportRow]) -> None:
        self.rows.extend(rows)

    def sort(self) -> None:
        self.rows.sort(key=lambda r: (r.f, r.weights, r.p, r.n))

    @property
    def max_ratio(self) -> float:
        return max((r.ratio for r in self.rows), default=0.0)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows) and all(self.checks.values())


# --- rates -----------------------------------------------------------------


def rate_fit(series: Sequence[Tuple[int, float]]) -> Tuple[float, float]:
    """Least-squares slope of log(err) against log(n), with its r^2."""
    if len(series) < 3:
        raise RateFitError(f"need at least 3 points, got {len(series)}")
    n = np.array([s[0] for s in series], dtype=np.float64)
    err = np.array([s[1] for s in series], dtype=np.float64)
    if np.any(n <= 0) or np.any(err <= 0):
        raise RateFitError("log-log fit needs positive n and err")
    x, y = np.log(n), np.log(err)
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def predicted_slope(alpha: float, q: WeightSeq) -> float:
    """Exponent of n in ||T_n f - f||_p for f in Lip(alpha, p), log factors dropped."""
    if q.kind == "pow" and q.param is not None and q.param < 0:
        beta = -q.param
        if beta >= 1:
            return 0.0
        return -min(alpha, 1.0 - beta)
    return -min(alpha, 1.0)


def negative_probe(spec: GroupSpec, p: float) -> List[Tuple[int, float]]:
    """(n, M_n ||sigma_{M_n} psi_1 - psi_1||_p) for n = 0..L."""
    f = character(spec, 1)
    out = []
    for n, mn in enumerate(spec.powers):
        out.append((n, mn * lp_norm(fejer_mean(f, mn) - f, p)))
    logger.debug("negative probe on %s: %s", spec.label(), out)
    return out

