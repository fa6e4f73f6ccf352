"""Text renderers for command output.

Exact values print as a reduced fraction with their nearest double; reals
print as the shortest decimal that round-trips.
"""

import csv
import io
import json
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from models.certificate import CertificateReport
from models.figure import OutputFormat
from services.verify_harness import serialize_reports
from utils.rationals import format_exact, format_rational, format_real

Value = Union[Fraction, float, int, bool, str]
Entry = Tuple[str, Value]


def _exact_text(value: Value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _decimal_text(value: Value) -> str:
    if isinstance(value, (Fraction, float)):
        return format_real(float(value))
    return ""


def _plain_text(value: Value) -> str:
    if isinstance(value, Fraction):
        return format_exact(value)
    return _exact_text(value)


def _csv_text(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_values(entries: List[Entry], fmt: OutputFormat) -> str:
    """A single value prints bare in PLAIN; several print as ``name: value``."""
    if fmt is OutputFormat.JSON:
        payload = [
            {"quantity": name, "value": _exact_text(value), "decimal": _decimal_text(value)}
            for name, value in entries
        ]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    if fmt is OutputFormat.CSV:
        rows = [(name, _exact_text(value), _decimal_text(value)) for name, value in entries]
        return _csv_text(["quantity", "value", "decimal"], rows)
    if len(entries) == 1:
        return _plain_text(entries[0][1]) + "\n"
    return "".join(f"{name}: {_plain_text(value)}\n" for name, value in entries)


def _witness_text(witness: dict) -> str:
    return " ".join(f"{key}={value}" for key, value in witness.items()) or "-"


def render_reports(reports: List[CertificateReport], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return serialize_reports(reports)
    if fmt is OutputFormat.CSV:
        rows = [
            (
                r.claim.value,
                "true" if r.passed else "false",
                "true" if r.strict else "false",
                r.worst_margin,
                _witness_text(r.worst_witness),
                str(r.checked_count),
            )
            for r in reports
        ]
        return _csv_text(["claim", "pass", "strict", "worst_margin", "worst_witness", "checked_count"], rows)
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"{status} {r.claim.value} worst_margin={r.worst_margin} "
            f"witness[{_witness_text(r.worst_witness)}] checked={r.checked_count}"
        )
        lines.extend(f"  note: {text}" for text in r.notes)
    return "\n".join(lines) + "\n"


def render_failures(reports: List[CertificateReport]) -> str:
    lines = []
    for r in reports:
        for witness in r.failures:
            lines.append(f"{r.claim.value} failed at {_witness_text(witness)}")
    return "\n".join(lines) + ("\n" if lines else "")
