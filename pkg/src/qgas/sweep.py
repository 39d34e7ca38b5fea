"""Momentum sweeps over the regime classifiers and tabular serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DomainError
from .gas import occupation_bose, occupation_fermi
from .polylog import DEFAULT_SERIES_PARAMS, SeriesParams
from .regime import FLAG_ORDER, RegimeReport, classify_both, classify_paper, classify_selfconsistent

SWEEP_MODES = ("paper", "self", "both")
_CSV_HEADER = "p0,K,paper_label,selfconsistent_label,branch,z,z_prime,b,flags"
_COLUMNS = (
    "p0",
    "K",
    "paper_label",
    "selfconsistent_label",
    "branch",
    "z",
    "z_prime",
    "b",
    "flags",
)


@dataclass(frozen=True)
class SweepSpec:
    """Parameters of a linear momentum sweep."""

    p_min: float
    p_max: float
    steps: int
    mode: str = "both"
    series: str = "truncated"
    window: float = 0.01
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if not self.p_min > 0.0:
            raise DomainError(f"p_min must be positive, got {self.p_min!r}")
        if not self.p_max > self.p_min:
            raise DomainError(
                f"p_max must exceed p_min, got p_min={self.p_min!r} p_max={self.p_max!r}"
            )
        if self.steps < 2:
            raise DomainError(f"steps must be at least 2, got {self.steps!r}")
        if self.mode not in SWEEP_MODES:
            raise DomainError(f"mode must be one of {SWEEP_MODES}, got {self.mode!r}")
        if self.series not in ("full", "truncated"):
            raise DomainError(f"series must be 'full' or 'truncated', got {self.series!r}")
        if not self.window > 0.0:
            raise DomainError(f"window must be positive, got {self.window!r}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")


@dataclass(frozen=True)
class SweepRow:
    """One classified grid point, flattened for serialization."""

    p0: float
    K: float
    paper_label: str | None
    selfconsistent_label: str | None
    branch: str | None
    z: float | None
    z_prime: float | None
    b: float | None
    flags: tuple[str, ...]


def row_from_report(report: RegimeReport) -> SweepRow:
    """Flatten a RegimeReport into the serializable row shape."""
    pair = report.fugacity
    return SweepRow(
        p0=report.momentum,
        K=report.coupling,
        paper_label=report.paper_label.value if report.paper_label else None,
        selfconsistent_label=(
            report.selfconsistent_label.value if report.selfconsistent_label else None
        ),
        branch=report.branch if report.branch != "none" else None,
        z=pair.z if pair else None,
        z_prime=pair.z_prime if pair else None,
        b=pair.b if pair else None,
        flags=tuple(f for f in FLAG_ORDER if f in report.flags),
    )


def run_sweep(
    spec: SweepSpec, params: SeriesParams = DEFAULT_SERIES_PARAMS
) -> list[SweepRow]:
    """Classify every point of the linear grid described by ``spec``."""
    rows: list[SweepRow] = []
    span = spec.p_max - spec.p_min
    for i in range(spec.steps):
        if i == spec.steps - 1:
            p0 = spec.p_max  # land exactly on the endpoint
        else:
            p0 = spec.p_min + span * i / (spec.steps - 1)
        if spec.mode == "paper":
            report = classify_paper(p0, spec.window)
        elif spec.mode == "self":
            report = classify_selfconsistent(p0, spec.series, spec.tol, params)
        else:
            report = classify_both(p0, spec.window, spec.series, spec.tol, params)
        rows.append(row_from_report(report))
    return rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(rows: list[SweepRow]) -> str:
    """Render rows as deterministic CSV (LF line ends, trailing newline)."""
    lines = [_CSV_HEADER]
    for row in rows:
        cells = [
            _csv_cell(row.p0),
            _csv_cell(row.K),
            _csv_cell(row.paper_label),
            _csv_cell(row.selfconsistent_label),
            _csv_cell(row.branch),
            _csv_cell(row.z),
            _csv_cell(row.z_prime),
            _csv_cell(row.b),
            "|".join(row.flags),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_json(rows: list[SweepRow]) -> str:
    """Render rows as a JSON array of objects in column order."""
    payload = []
    for row in rows:
        record = {name: getattr(row, name) for name in _COLUMNS if name != "flags"}
        record["flags"] = list(row.flags)
        payload.append(record)
    return json.dumps(payload, indent=2) + "\n"


def occupation_curve(
    z: float,
    beta_eps_min: float,
    beta_eps_max: float,
    steps: int,
    branch: str = "bose",
) -> list[tuple[float, float]]:
    """Tabulate the occupation over an inclusive beta*eps grid.

    ``steps`` counts grid points (at least 2); the first point sits on
    ``beta_eps_min`` and the last exactly on ``beta_eps_max``.  For the
    Bose branch a singular grid point (z = 1, beta_eps = 0) raises
    SingularityError just as the point evaluation does.
    """
    if steps < 2:
        raise DomainError(f"steps must be at least 2, got {steps!r}")
    if not beta_eps_max > beta_eps_min:
        raise DomainError(
            f"beta_eps_max must exceed beta_eps_min, got "
            f"{beta_eps_min!r} and {beta_eps_max!r}"
        )
    if branch == "bose":
        occupation = occupation_bose
    elif branch == "fermi":
        occupation = occupation_fermi
    else:
        raise DomainError(f"branch must be 'bose' or 'fermi', got {branch!r}")
    span = beta_eps_max - beta_eps_min
    curve: list[tuple[float, float]] = []
    for i in range(steps):
        x = beta_eps_max if i == steps - 1 else beta_eps_min + span * i / (steps - 1)
        curve.append((x, occupation(z, x)))
    return curve
