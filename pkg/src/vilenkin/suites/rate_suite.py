"""Convergence-rate experiments: error series of T_{M_N} on a Lipschitz function."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from langchain_core.runnables import RunnableLambda

from vilenkin.analysis.approx import lip_function, predicted_slope, rate_fit
from vilenkin.analysis.means import WeightSeq, t_mean, weights_from_string
from vilenkin.analysis.spectral import lp_norm
from vilenkin.analysis.vgroup import GroupSpec
from vilenkin.tools.config import get_settings
from vilenkin.tools.report import render_table, status

logger = logging.getLogger(__name__)

SERIES_HEADER = ("p", "n", "err")


@dataclass(frozen=True)
class RateFit:
    p: float
    slope: float
    r2: float
    target: float
    tol: float

    @property
    def passed(self) -> bool:
        return abs(self.slope - self.target) <= self.tol

    def summary(self) -> str:
        verdict = "pass" if self.passed else "fail"
        return (
            f"p={self.p:g} slope={self.slope:.6f} r2={self.r2:.6f} "
            f"target={self.target:.6f} tol={self.tol:g} {verdict}"
        )


class RateSuite:
    """Fit log ||T_{M_N} f - f||_p against log M_N for f = lip_function(alpha)."""

    def __init__(
        self,
        spec: GroupSpec,
        alpha: float,
        weights: str = "const",
        p_values: Sequence[float] = (1.0,),
        tol: float = 0.15,
        expect: Optional[float] = None,
        workers: Optional[int] = None,
    ):
        """Initialize the suite.

        Args:
            spec: the group, usually Walsh
            alpha: Lipschitz exponent of the test function
            weights: weight kind string, generated up to M_L
            p_values: exponents of the L^p norms
            tol: accepted distance between fitted and target slope
            expect: target slope; predicted from alpha and the weights if None
            workers: max concurrency of the job fan-out (VILENKIN_WORKERS if None)
        """
        self.spec = spec
        self.alpha = alpha
        self.q: WeightSeq = weights_from_string(weights, spec.size)
        self.p_values = tuple(float(p) for p in p_values)
        self.tol = tol
        self.target = predicted_slope(alpha, self.q) if expect is None else expect
        self.workers = workers or get_settings().workers
        self.series: Dict[float, List[Tuple[int, float]]] = {}

    def measure(self, p: float) -> List[Tuple[int, float]]:
        """(M_N, ||T_{M_N} f - f||_p) for N = 1..L-1."""
        f = lip_function(self.alpha, self.spec)
        out = []
        for level in range(1, self.spec.level):
            mn = self.spec.powers[level]
            out.append((mn, lp_norm(t_mean(f, self.q, mn) - f, p)))
        logger.debug("series at p=%g: %s", p, out)
        return out

    def measure_all(self) -> Dict[float, List[Tuple[int, float]]]:
        status(
            f"📊 Rates on {self.spec.label()} with {self.q.label}, "
            f"alpha={self.alpha:g}"
        )
        results = RunnableLambda(self.measure).batch(
            list(self.p_values), config={"max_concurrency": self.workers}
        )
        self.series = dict(zip(self.p_values, results))
        return self.series

    def fit(self) -> List[RateFit]:
        fits = []
        for p in self.p_values:
            slope, r2 = rate_fit(self.series[p])
            fits.append(RateFit(p, slope, r2, self.target, self.tol))
        return fits

    def run(self) -> List[RateFit]:
        self.measure_all()
        return self.fit()

    def render_series(self) -> str:
        rows = [(p, n, err) for p in self.p_values for n, err in self.series.get(p, [])]
        return render_table(SERIES_HEADER, rows)
