"""
Output formatting module for demo results and check reports.
"""

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .exceptions import FileOperationError, OutputFormatError
from .lp_exact import LpOutcome, outcome_to_json
from .seq_core import SparseSeq, format_rational
from .types import (
    AxiomReport,
    CertificateReport,
    CheckRow,
    DemoResult,
    EquivalenceSweep,
    MajorizationReport,
    OutputFormat,
    Report,
    ValueTable,
)

SCHEMA = "seminorm-lab/1"
RENDER_WIDTH = 120
ROW_COLUMNS = ["claim", "m", "n", "label", "lhs", "relation", "rhs", "lhs_decimal", "rhs_decimal", "verdict"]


def display_value(value: Any) -> str:
    """Rationals as ``p/q (≈ decimal)``; integers and everything else as text."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{format_rational(value)} (≈ {float(value):.6g})"
    if isinstance(value, SparseSeq):
        return repr(value)
    return str(value)


def exact_value(value: Any) -> Any:
    """JSON-safe exact form: rationals as ``"p/q"`` strings, recursively."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, SparseSeq):
        return value.to_json()
    if isinstance(value, dict):
        return {str(exact_value(k)): exact_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [exact_value(v) for v in value]
    return value


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def _decimal(value: Fraction) -> str:
    return f"{float(value):.6g}"


def _row_fields(row: CheckRow) -> Dict[str, Any]:
    """One certificate term with exact "p/q" sides, decimal approximations and its verdict."""
    return {
        "m": row.m,
        "n": row.n,
        "label": row.label,
        "lhs": exact_value(row.lhs),
        "relation": row.relation.value,
        "rhs": exact_value(row.rhs),
        "lhs_decimal": _decimal(row.lhs),
        "rhs_decimal": _decimal(row.rhs),
        "verdict": _verdict(row.passed),
    }


def _row_text(row: CheckRow) -> str:
    where = f"n={row.n}" if row.m is None else f"m={row.m}, n={row.n}"
    return f"{where}: {row.label}: {display_value(row.lhs)} {row.relation.value} {display_value(row.rhs)}"


def _report_kind(report: Report) -> str:
    if isinstance(report, CertificateReport):
        return "certificate"
    if isinstance(report, AxiomReport):
        return "axioms"
    if isinstance(report, MajorizationReport):
        return "majorization"
    if isinstance(report, EquivalenceSweep):
        return "sweep"
    raise OutputFormatError(f"Unknown report type {type(report).__name__}")


def _report_detail(report: Report) -> str:
    """One-line human summary of what a report found."""
    if isinstance(report, CertificateReport):
        failures = report.failures
        return f"first failure {_row_text(failures[0])}" if failures else ""
    if isinstance(report, AxiomReport):
        counts = {
            "nonnegativity": len(report.nonnegativity_violations),
            "homogeneity": len(report.homogeneity_violations),
            "subadditivity": len(report.subadditivity_violations),
            "reverse triangle": len(report.reverse_triangle_violations),
        }
        return ", ".join(f"{name}: {count}" for name, count in counts.items() if count)
    if isinstance(report, MajorizationReport):
        if not report.violations:
            return ""
        x, low, high = report.violations[0]
        return f"{len(report.violations)} violations, e.g. x={x!r}: {display_value(low)} > {display_value(high)}"
    if isinstance(report, EquivalenceSweep):
        parts = [f"beta={format_rational(b)}: n={n}" for b, n in report.lower_witnesses.items()]
        parts += [f"gamma={format_rational(g)}: n={n}" for g, n in report.upper_witnesses.items()]
        return ", ".join(parts)
    raise OutputFormatError(f"Unknown report type {type(report).__name__}")


def _report_json(report: Report) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "claim": report.claim,
        "kind": _report_kind(report),
        "checked": report.checked,
        "passed": report.passed,
    }
    if isinstance(report, CertificateReport):
        data["first_failure"] = report.first_failure
        data["rows"] = [_row_fields(row) for row in report.rows]
        data["metadata"] = exact_value(report.metadata)
    elif isinstance(report, AxiomReport):
        data["violations"] = {
            "nonnegativity": exact_value(report.nonnegativity_violations),
            "homogeneity": exact_value(report.homogeneity_violations),
            "subadditivity": exact_value(report.subadditivity_violations),
            "reverse_triangle": exact_value(report.reverse_triangle_violations),
        }
    elif isinstance(report, MajorizationReport):
        data["violations"] = [
            {"x": x.to_json(), "lower": exact_value(low), "upper": exact_value(high)}
            for x, low, high in report.violations
        ]
    elif isinstance(report, EquivalenceSweep):
        data["n_max"] = report.n_max
        data["lower_witnesses"] = exact_value(report.lower_witnesses)
        data["upper_witnesses"] = exact_value(report.upper_witnesses)
    return data


def _terms_table(report: CertificateReport) -> Table:
    terms = Table(title=Text(report.claim), show_header=True, header_style="bold")
    for column in ("m", "n", "label", "lhs", "", "rhs", "verdict"):
        terms.add_column(column)
    for row in report.rows:
        terms.add_row(
            "" if row.m is None else str(row.m),
            str(row.n),
            Text(row.label),
            display_value(row.lhs),
            row.relation.value,
            display_value(row.rhs),
            _verdict(row.passed),
        )
    return terms


class ReportFormatter:
    """Formats demo results and check reports into different output formats."""

    def __init__(self, output_format: OutputFormat = OutputFormat.TABLE, show_rows: bool = False):
        self.output_format = output_format
        # Table output lists every certificate term only on request; CSV and JSON always do.
        self.show_rows = show_rows

    def format_demo(self, result: DemoResult) -> str:
        """Format a demo result according to the specified output format."""
        return self.format_reports(
            result.title,
            result.reports,
            table=result.table,
            notes=result.notes,
            header={"demo": result.demo_id.value, "n_max": result.n_max},
        )

    def format_reports(
        self,
        title: str,
        reports: Sequence[Report],
        table: Optional[ValueTable] = None,
        notes: Sequence[str] = (),
        header: Optional[Dict[str, Any]] = None,
    ) -> str:
        passed = all(report.passed for report in reports)
        if self.output_format == OutputFormat.JSON:
            return self._format_json(title, reports, table, notes, header or {}, passed)
        elif self.output_format == OutputFormat.CSV:
            return self._format_csv(reports, table, passed)
        else:
            return self._format_table(title, reports, table, notes, passed)

    def format_lp_outcome(self, outcome: LpOutcome, certified: Optional[bool]) -> str:
        if self.output_format == OutputFormat.JSON:
            data = {"schema": SCHEMA, **outcome_to_json(outcome), "certified": certified}
            return json.dumps(data, indent=2)
        rows: List[List[Any]] = [["status", outcome.status.value], ["pivots", outcome.pivots]]
        if outcome.is_optimal:
            rows.append(["value", outcome.value])
            rows += [[f"x{j + 1}", v] for j, v in enumerate(outcome.primal)]
            rows += [[f"y{i + 1}", v] for i, v in enumerate(outcome.dual)]
            rows.append(["certified", "yes" if certified else "no"])
        value_table = ValueTable(["quantity", "value"], rows)
        if self.output_format == OutputFormat.CSV:
            return self._format_csv([], value_table, None)
        return self._format_table("Exact LP", [], value_table, [], None)

    def _format_table(
        self,
        title: str,
        reports: Sequence[Report],
        table: Optional[ValueTable],
        notes: Sequence[str],
        passed: Optional[bool],
    ) -> str:
        """Render with rich into plain text; cell text is never read as markup."""
        console = Console(record=True, width=RENDER_WIDTH, file=io.StringIO(), color_system=None)
        console.print(Panel(Text(title)))

        if table is not None:
            values = Table(show_header=True, header_style="bold")
            for column in table.columns:
                values.add_column(Text(column))
            for row in table.rows:
                values.add_row(*(Text(display_value(v)) for v in row))
            console.print(values)

        if reports:
            summary = Table(title="Checks", show_header=True, header_style="bold")
            summary.add_column("claim")
            summary.add_column("checked", justify="right")
            summary.add_column("verdict")
            summary.add_column("detail")
            for report in reports:
                summary.add_row(
                    Text(report.claim), str(report.checked), _verdict(report.passed), Text(_report_detail(report))
                )
            console.print(summary)

        if self.show_rows:
            for report in reports:
                if isinstance(report, CertificateReport) and report.rows:
                    console.print(_terms_table(report))

        for note in notes:
            console.print(Text(f"note: {note}"))
        if passed is not None:
            console.print(_verdict(passed))
        return console.export_text()

    def _format_csv(self, reports: Sequence[Report], table: Optional[ValueTable], passed: Optional[bool]) -> str:
        """Value table with exact "p/q" entries, then the report summary."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if table is not None:
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([exact_value(v) if not isinstance(v, SparseSeq) else repr(v) for v in row])
        if reports:
            if table is not None:
                writer.writerow([])
            writer.writerow(["claim", "checked", "verdict", "detail"])
            for report in reports:
                writer.writerow([report.claim, report.checked, _verdict(report.passed), _report_detail(report)])
            certificates = [r for r in reports if isinstance(r, CertificateReport) and r.rows]
            if certificates:
                writer.writerow([])
                writer.writerow(ROW_COLUMNS)
                for report in certificates:
                    for row in report.rows:
                        writer.writerow([report.claim] + ["" if v is None else v for v in _row_fields(row).values()])
        if passed is not None:
            writer.writerow(["overall", _verdict(passed)])
        return buffer.getvalue()

    def _format_json(
        self,
        title: str,
        reports: Sequence[Report],
        table: Optional[ValueTable],
        notes: Sequence[str],
        header: Dict[str, Any],
        passed: bool,
    ) -> str:
        output_data: Dict[str, Any] = {"schema": SCHEMA, "title": title, **header}
        if table is not None:
            output_data["columns"] = table.columns
            output_data["rows"] = [exact_value(row) for row in table.rows]
        output_data["reports"] = [_report_json(report) for report in reports]
        output_data["notes"] = list(notes)
        output_data["passed"] = passed
        return json.dumps(output_data, indent=2, ensure_ascii=False)

    def output_path(self, target: Path, stem: str) -> Path:
        """Where ``-o target`` writes: ``target/stem.ext`` for a directory, the format's extension for a bare name."""
        extension = self.output_format.get_file_extension()
        if target.is_dir():
            return target / f"{stem}{extension}"
        if not target.suffix:
            return target.with_suffix(extension)
        return target

    def save(self, content: str, target: Path, stem: str) -> Path:
        path = self.output_path(target, stem)
        self.save_to_file(content, path)
        return path

    def save_to_file(self, content: str, file_path: Path) -> None:
        """Save formatted content to a file."""
        try:
            with open(file_path, "w", encoding="utf-8") as f:
                f.write(content)
        except Exception as e:
            raise FileOperationError(f"Failed to save output to file {file_path}: {e}")
