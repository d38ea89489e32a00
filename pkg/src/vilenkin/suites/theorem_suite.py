"""Ratio checks of the approximation inequalities for T, Fejer and Norlund means."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from langchain_core.runnables import RunnableLambda

from vilenkin.analysis.approx import (
    ModulusProfile,
    ReportRow,
    VerificationReport,
    cond0_sum,
    fejer_rhs,
    make_row,
    modulus_profile,
    negative_probe,
    thm1_rhs,
    thm2_rhs,
    thm3_rhs,
)
from vilenkin.analysis.means import (
    WeightSeq,
    fejer_mean,
    norlund_mean,
    t_mean,
    weights_from_string,
)
from vilenkin.analysis.spectral import GridFunction, lp_norm
from vilenkin.analysis.vgroup import GroupSpec, level_of
from vilenkin.errors import WeightClassError
from vilenkin.suites.functions import make_function
from vilenkin.tools.config import get_settings
from vilenkin.tools.report import status

logger = logging.getLogger(__name__)

PROBE_TOL = 1e-10
COND0_SPREAD = 10.0


@dataclass
class JobResult:
    """Rows and side conditions of one (function, p) job."""

    rows: List[ReportRow] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    extra: Dict[str, float] = field(default_factory=dict)


class TheoremSuite:
    """Evaluate one inequality over every n for a grid of functions and exponents."""

    def __init__(
        self,
        spec: GroupSpec,
        theorem: str,
        weights: str = "const",
        p_values: Sequence[float] = (1.0,),
        functions: Sequence[str] = ("random:1",),
        workers: Optional[int] = None,
    ):
        """Initialize the suite.

        Args:
            spec: the group
            theorem: 1, 2, 3, fejer, or the unasserted norlund comparison
            weights: weight kind string, generated up to M_L
            p_values: exponents of the L^p norms
            functions: test function selectors
            workers: max concurrency of the job fan-out (VILENKIN_WORKERS if None)

        Raises:
            WeightClassError: weights of the wrong monotonicity for the theorem
        """
        self.spec = spec
        self.theorem = theorem
        self.weights_text = weights
        self.q: WeightSeq = weights_from_string(weights, spec.size)
        self.p_values = tuple(float(p) for p in p_values)
        self.functions = tuple(functions)
        self.workers = workers or get_settings().workers
        self._check_class()

    def _check_class(self) -> None:
        if self.theorem == "1" and not self.q.is_non_increasing:
            raise WeightClassError(
                f"theorem 1 needs non-increasing weights, {self.q.label} is not"
            )
        if self.theorem in ("2", "3") and not self.q.is_non_decreasing:
            raise WeightClassError(
                f"theorem {self.theorem} needs non-decreasing weights, "
                f"{self.q.label} is not"
            )

    # --- per-theorem row builders -----------------------------------------

    def _row(
        self, f_label: str, p: float, n: int, lhs: float, rhs: float
    ) -> ReportRow:
        return make_row(self.theorem, self.spec, self.q.label, p, f_label, n, lhs, rhs)

    def theorem1_rows(
        self, f: GridFunction, label: str, p: float, prof: ModulusProfile
    ) -> JobResult:
        out = JobResult()
        for n in range(1, self.spec.size):
            lhs = lp_norm(t_mean(f, self.q, n) - f, p)
            rhs = thm1_rhs(f, p, self.q, n, prof)
            out.rows.append(self._row(label, p, n, lhs, rhs))
        return out

    def theorem2_rows(
        self, f: GridFunction, label: str, p: float, prof: ModulusProfile
    ) -> JobResult:
        """Rows of the explicit bound, plus the running sup of the Cond0 ratio."""
        out = JobResult()
        half = (self.spec.size - 1) // 2
        sup = sup_half = 0.0
        for n in range(1, self.spec.size):
            lhs = lp_norm(t_mean(f, self.q, n) - f, p)
            rhs, cond0 = thm2_rhs(f, p, self.q, n, prof)
            out.rows.append(self._row(label, p, n, lhs, rhs))
            if cond0 > 0:
                sup = max(sup, lhs / cond0)
            if n == half:
                sup_half = sup
        key = f"{label}@p={p:g}"
        out.extra[f"cond0_sup[{key}]"] = sup
        out.extra[f"cond2[{key}]"] = self.q.cond2
        if self.spec.is_walsh:
            # both readings coincide on Walsh groups
            top = level_of(self.spec.size - 1, self.spec)
            out.extra[f"cond0_dyadic_last[{key}]"] = cond0_sum(prof, top, "dyadic")
        bounded = sup_half == 0.0 or sup / sup_half < COND0_SPREAD
        out.checks[f"cond0_bounded[{key}]"] = bounded
        return out

    def theorem3_rows(
        self, f: GridFunction, label: str, p: float, prof: ModulusProfile
    ) -> JobResult:
        out = JobResult()
        for n in range(1, self.spec.level + 1):
            lhs = lp_norm(t_mean(f, self.q, self.spec.powers[n]) - f, p)
            rhs = thm3_rhs(f, p, self.q, n, prof)
            out.rows.append(self._row(label, p, n, lhs, rhs))
        return out

    def fejer_rows(
        self, f: GridFunction, label: str, p: float, prof: ModulusProfile
    ) -> JobResult:
        out = JobResult()
        for n in range(1, self.spec.size):
            lhs = lp_norm(fejer_mean(f, n) - f, p)
            out.rows.append(self._row(label, p, n, lhs, fejer_rhs(f, p, n, prof)))
        return out

    def norlund_rows(
        self, f: GridFunction, label: str, p: float, prof: ModulusProfile
    ) -> JobResult:
        """Norlund errors against the Fejer right side, reported for comparison."""
        out = JobResult()
        for n in range(1, self.spec.size):
            lhs = lp_norm(norlund_mean(f, self.q, n) - f, p)
            out.rows.append(self._row(label, p, n, lhs, fejer_rhs(f, p, n, prof)))
        return out

    # --- driver -----------------------------------------------------------

    def _job(self, job: Tuple[str, float]) -> JobResult:
        label, p = job
        f = make_function(self.spec, label)
        prof = modulus_profile(f, p)
        builder = {
            "1": self.theorem1_rows,
            "2": self.theorem2_rows,
            "3": self.theorem3_rows,
            "fejer": self.fejer_rows,
            "norlund": self.norlund_rows,
        }[self.theorem]
        logger.debug("theorem %s on %s at p=%g", self.theorem, label, p)
        return builder(f, label, p, prof)

    def run(self) -> VerificationReport:
        """Evaluate every (function, p) pair and assemble the sorted report."""
        jobs = [(label, p) for label in self.functions for p in self.p_values]
        status(
            f"🔧 Theorem {self.theorem} on {self.spec.label()} with {self.q.label}: "
            f"{len(jobs)} jobs"
        )
        results = RunnableLambda(self._job).batch(
            jobs, config={"max_concurrency": self.workers}
        )
        report = VerificationReport(
            self.theorem, self.spec.label(), self.q.label, self.p_values
        )
        for result in results:
            report.extend(result.rows)
            report.checks.update(result.checks)
            report.extra.update(result.extra)
        report.sort()
        if self.theorem == "norlund":
            report.asserted = False
        return report


def probe_report(spec: GroupSpec, p_values: Sequence[float]) -> VerificationReport:
    """Rows (n, M_n ||sigma_{M_n} psi_1 - psi_1||_p) that must all equal 1."""
    report = VerificationReport("probe", spec.label(), "-", tuple(p_values))
    label = spec.label()
    for p in p_values:
        for n, value in negative_probe(spec, p):
            passed = abs(value - 1.0) <= PROBE_TOL
            row = ReportRow(
                "probe", label, "-", p, "char:1", n, value, 1.0, value, passed
            )
            report.rows.append(row)
    report.sort()
    return report
