"""Exhaustive checks of the kernel identities and bounds on one group."""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from langchain_core.runnables import RunnableLambda

from vilenkin.analysis.kernels import (
    dirichlet_closed,
    dirichlet_complement,
    dirichlet_kernel,
    fejer_kernel,
    fejer_MN_closed,
    fn5_majorants,
    fn5_slack,
    iter_fejer_scaled,
)
from vilenkin.analysis.spectral import max_abs_diff
from vilenkin.analysis.vgroup import GroupSpec, level_of
from vilenkin.tools.config import get_settings
from vilenkin.tools.report import render_document, render_table, status

logger = logging.getLogger(__name__)

IDENTITY_HEADER = ("identity", "n", "max_residual", "bound", "pass")

CLOSED_FORM_TOL = 1e-12
COMPLEMENT_MAX = 64
SWEEP_MAX = 2**14


@dataclass(frozen=True)
class IdentityRow:
    identity: str
    n: int
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound

    def cells(self) -> List[Any]:
        return [self.identity, self.n, self.residual, self.bound, self.passed]


@dataclass
class IdentityReport:
    spec: str
    rows: List[IdentityRow] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def render(self, fmt: str) -> str:
        cells = [r.cells() for r in self.rows]
        if fmt == "csv":
            return render_table(IDENTITY_HEADER, cells)
        if fmt == "json":
            summary = {"all_pass": self.all_pass, "config": {"spec": self.spec}}
            return render_document(summary, IDENTITY_HEADER, cells)
        raise ValueError(f"unknown report format {fmt!r}")


class KernelSuite:
    """Kernel identities and bounds, swept exhaustively over the grid."""

    def __init__(self, spec: GroupSpec, workers: Optional[int] = None):
        """Initialize the suite.

        Args:
            spec: the group to sweep
            workers: max concurrency of the job fan-out (VILENKIN_WORKERS if None)
        """
        self.spec = spec
        self.workers = workers or get_settings().workers

    def dirichlet_closed_rows(self) -> List[IdentityRow]:
        rows = []
        for s in range(self.spec.level + 1):
            expected = dirichlet_closed(self.spec, s)
            kernel = dirichlet_kernel(self.spec, self.spec.powers[s])
            residual = max_abs_diff(kernel, expected)
            rows.append(
                IdentityRow(
                    "dirichlet_closed",
                    self.spec.powers[s],
                    residual,
                    CLOSED_FORM_TOL,
                )
            )
        return rows

    def fejer_closed_rows(self) -> List[IdentityRow]:
        rows = []
        for n in range(self.spec.level + 1):
            expected = fejer_MN_closed(self.spec, n)
            kernel = fejer_kernel(self.spec, self.spec.powers[n])
            residual = max_abs_diff(kernel, expected)
            rows.append(
                IdentityRow(
                    "fejer_closed",
                    self.spec.powers[n],
                    residual,
                    CLOSED_FORM_TOL,
                )
            )
        return rows

    def complement_rows(self) -> List[IdentityRow]:
        """Worst residual over j < M_n of both forms, for every M_n <= 64."""
        rows = []
        for n in range(self.spec.level + 1):
            mn = self.spec.powers[n]
            if mn > COMPLEMENT_MAX:
                break
            for form, name in (
                ("conjugate", "dirichlet_complement"),
                ("reflected", "dirichlet_complement_reflected"),
            ):
                worst = max(
                    dirichlet_complement(self.spec, n, j, form) for j in range(mn)
                )
                rows.append(IdentityRow(name, mn, worst, CLOSED_FORM_TOL))
        return rows

    def sweep_rows(self) -> List[IdentityRow]:
        """Integral, L1 and pointwise bounds of K_n for every 1 <= n <= M_L.

        One row per dyadic block M_N <= n < M_{N+1}; the n column names the
        worst n of the block. The pointwise bound is checked for n < M_L.
        """
        spec = self.spec
        if spec.size > SWEEP_MAX:
            status(f"⚠️  Skipping the Fejer sweep above {SWEEP_MAX} points")
            return []
        majorants = fn5_majorants(spec)
        worst: Dict[str, Dict[int, tuple]] = {"integral": {}, "l1": {}, "pointwise": {}}

        def keep(name: str, block: int, n: int, value: float) -> None:
            best = worst[name].get(block)
            if best is None or value > best[1]:
                worst[name][block] = (n, value)

        for n, _, scaled in iter_fejer_scaled(spec):
            block = level_of(n, spec) if n < spec.size else spec.level
            keep("integral", block, n, abs(float(np.mean(scaled).real) / n - 1.0))
            keep("l1", block, n, float(np.mean(np.abs(scaled))) / n)
            if n < spec.size:
                slack = fn5_slack(n, scaled, majorants, spec)
                scale = max(1.0, float(np.max(majorants[block])))
                keep("pointwise", block, n, slack / scale)

        bounds = {
            "integral": ("fejer_integral", CLOSED_FORM_TOL),
            "l1": ("fejer_l1", float(spec.bound**5)),
            "pointwise": ("fejer_pointwise", CLOSED_FORM_TOL),
        }
        rows = []
        for key, (name, bound) in bounds.items():
            for block in sorted(worst[key]):
                n, value = worst[key][block]
                rows.append(IdentityRow(name, n, value, bound))
        return rows

    def run(self) -> IdentityReport:
        """Run every check, fanned out over the configured workers."""
        jobs: List[Callable[[], List[IdentityRow]]] = [
            self.dirichlet_closed_rows,
            self.fejer_closed_rows,
            self.complement_rows,
            self.sweep_rows,
        ]
        status(f"🔧 Checking kernel identities on {self.spec.label()}")
        batches = RunnableLambda(lambda job: job()).batch(
            jobs, config={"max_concurrency": self.workers}
        )
        report = IdentityReport(self.spec.label())
        for rows in batches:
            report.rows.extend(rows)
        failed = sum(not r.passed for r in report.rows)
        if failed:
            status(f"❌ {failed} kernel checks failed")
        else:
            status(f"✅ All {len(report.rows)} kernel checks passed")
        return report
