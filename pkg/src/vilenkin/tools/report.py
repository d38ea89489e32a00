"""Report rendering and atomic file output."""

import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Any, Dict, Iterable, List, Sequence

from vilenkin.analysis.approx import ReportRow, VerificationReport

REPORT_HEADER = (
    "theorem", "spec", "weights", "p", "f", "n", "lhs", "rhs", "ratio", "pass"
)


def status(message: str) -> None:
    """Progress line on the diagnostic stream."""
    print(message, file=sys.stderr)


def fmt_float(x: float) -> str:
    """17 significant digits, so values round-trip exactly."""
    return format(float(x), ".17g")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def render_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV with a header line, fixed float formatting and ``\\n`` endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _row_cells(row: ReportRow) -> List[Any]:
    return [
        row.theorem,
        row.spec,
        row.weights,
        float(row.p),
        row.f,
        row.n,
        float(row.lhs),
        float(row.rhs),
        float(row.ratio),
        row.passed,
    ]


def render_csv(report: VerificationReport) -> str:
    return render_table(REPORT_HEADER, (_row_cells(r) for r in report.rows))


def _json_number(x: float) -> Any:
    # JSON has no infinities
    return float(x) if math.isfinite(x) else fmt_float(x)


def _json_cell(value: Any) -> Any:
    return _json_number(value) if isinstance(value, float) else value


def _row_document(row: ReportRow) -> Dict[str, Any]:
    return dict(zip(REPORT_HEADER, [_json_cell(c) for c in _row_cells(row)]))


def report_document(report: VerificationReport) -> Dict[str, Any]:
    return {
        "max_ratio": _json_number(report.max_ratio),
        "all_pass": report.all_pass,
        "config": {
            "theorem": report.theorem,
            "spec": report.spec,
            "weights": report.weights,
            "p": [float(p) for p in report.p_values],
        },
        "asserted": report.asserted,
        "checks": dict(sorted(report.checks.items())),
        "extra": {k: _json_number(v) for k, v in sorted(report.extra.items())},
        "rows": [_row_document(r) for r in report.rows],
    }


def render_json(report: VerificationReport) -> str:
    return json.dumps(report_document(report), indent=2) + "\n"


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(report)
    if fmt == "json":
        return render_json(report)
    raise ValueError(f"unknown report format {fmt!r}")


def write_atomic(path: str, content: str) -> None:
    """Write through a temporary file in the target directory, then rename.

    Raises:
        OSError: the target is never left partially written.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".vilenkin-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    status(f"📝 Wrote {path}")


def write_report(report: VerificationReport, path: str, fmt: str = "csv") -> None:
    """Render and write atomically; identical reports give identical bytes."""
    write_atomic(path, render(report, fmt))


def render_document(
    summary: Dict[str, Any], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> str:
    """JSON object holding ``summary`` plus the rows keyed by column name."""
    doc = dict(summary)
    doc["rows"] = [
        dict(zip(header, [_json_cell(c) for c in row])) for row in rows
    ]
    return json.dumps(doc, indent=2) + "\n"
