"""Aggregated certification of a candidate ROCN matrix."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from rocnbell import __version__
from rocnbell.errors import SizeLimitError
from rocnbell.rocn import (
    CLASSICAL_MAX_M,
    DEFAULT_TOLERANCE,
    RocnMatrix,
    classical_bound,
    quantum_bound,
    validate_rocn,
)
from rocnbell.selftest import ORIENTATION_NOTE, kernel_witness_check, rank_criterion, spanning_criterion
from rocnbell.strategy import DEFAULT_MAX_M, verification_residuals

TEXT_DIGITS = 12


@dataclass
class CertificationReport:
    matrix_label: str
    m: int
    n: int
    rocn: dict
    classical_bound: float | None = None
    quantum_bound: float | None = None
    violation_ratio: float | None = None
    rank_verdict: dict | None = None
    spanning: bool | None = None
    canonical_bell_value: float | None = None
    residuals: dict = field(default_factory=dict)
    moment_matrix_orientation: str = ORIENTATION_NOTE
    tool_version: str = __version__

    @property
    def rocn_valid(self) -> bool:
        return bool(self.rocn["valid"])

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, allow_nan=False) + "\n"

    def to_text(self) -> str:
        def fmt(x):
            if x is None:
                return "n/a"
            if isinstance(x, bool):
                return "yes" if x else "no"
            if isinstance(x, float):
                return format(x, f".{TEXT_DIGITS}g")
            return str(x)

        lines = [
            f"matrix: {self.matrix_label or '(unlabelled)'}",
            f"shape: {self.m} x {self.n}",
            f"rocn valid: {fmt(self.rocn_valid)}",
            f"  worst row-pair residual: {fmt(self.rocn['worst_row_pair_residual'])}",
            f"  worst column residual: {fmt(self.rocn['worst_column_residual'])}",
            f"  zero rows: {self.rocn['zero_rows']}",
            f"classical bound: {fmt(self.classical_bound)}",
            f"quantum bound: {fmt(self.quantum_bound)}",
            f"violation ratio: {fmt(self.violation_ratio)}",
        ]
        if self.rank_verdict is not None:
            v = self.rank_verdict
            lines += [
                f"rank(M): {v['rank_M']} (required {v['rank_required']})",
                f"rank criterion passes: {fmt(v['rank_passes'])}",
                f"counting bound n > m(m-1)/2: {fmt(v['counting_ok'])}",
                f"smallest retained singular value: {fmt(v['smallest_retained_singular_value'])}",
            ]
            if v["witness"] is not None:
                lines.append(f"kernel witness O: {v['witness']}")
        else:
            lines.append("rank criterion: n/a")
        lines += [
            f"symmetric spanning: {fmt(self.spanning)}",
            f"canonical bell value: {fmt(self.canonical_bell_value)}",
        ]
        for name, value in self.residuals.items():
            lines.append(f"residual {name}: {fmt(value)}")
        lines += [f"note: {self.moment_matrix_orientation}", f"tool version: {self.tool_version}"]
        return "\n".join(lines) + "\n"


def certify(
    entries,
    label: str = "",
    tolerance: float = DEFAULT_TOLERANCE,
    max_m: int = DEFAULT_MAX_M,
) -> CertificationReport:
    """Run every check on ``entries``; later checks are skipped when the matrix is not ROCN.

    The rank verdict is only computed for even ``m``, and the canonical Bell
    value only up to ``max_m``.
    """
    entries = np.asarray(entries, dtype=float)
    m, n = entries.shape
    outcome = validate_rocn(entries, tolerance)
    report = CertificationReport(label, m, n, outcome.as_dict())
    report.residuals["rocn_row_pair"] = outcome.worst_row_pair_residual
    report.residuals["rocn_column"] = outcome.worst_column_residual
    if not outcome.valid:
        return report

    h = RocnMatrix(entries, label=label, tolerance=tolerance)
    report.quantum_bound = quantum_bound(h)
    if m <= CLASSICAL_MAX_M:
        report.classical_bound = classical_bound(h)
        report.violation_ratio = report.quantum_bound / report.classical_bound
    if m % 2 == 0:
        verdict = rank_criterion(h)
        report.rank_verdict = verdict.as_dict()
        if verdict.witness is not None:
            report.residuals["witness_check"] = kernel_witness_check(h, verdict.witness, tolerance=1e-12)
    report.spanning = spanning_criterion(h)
    try:
        res = verification_residuals(h, max_m=max_m)
    except SizeLimitError:
        return report
    report.canonical_bell_value = res.pop("bell_value")
    report.residuals.update(res)
    return report
