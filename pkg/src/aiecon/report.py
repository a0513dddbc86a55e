"""Golden-table reproduction and table/CSV/JSON rendering."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from . import golden
from .composite import REJECT, ZeroPolicy, technology_level
from .errors import DataError, IntegrityError
from .panel import AI_FACTOR_KEYS, TECH_FACTOR_KEYS, TECH_LEVEL_KEY, aggregate, read_panel
from .regstats import AuditReport, audit_reported
from .vector import build_vector, magnitude

DEFAULT_YEARS = (2011, 2022)

# column formats for the human-readable table
FIXED2 = "fixed2"
SIG6 = "sig6"
TEXT = "text"


@dataclass(frozen=True)
class ReproductionEntry:
    table: str
    country: str
    quantity: str
    paper_value: float
    computed_value: float | None
    abs_diff: float | None
    rel_diff: float | None
    tolerance: float
    tolerance_kind: str
    verdict: str
    reason: str = ""

    def __post_init__(self):
        if self.verdict == "EXCLUDED" and not self.reason:
            raise ValueError("EXCLUDED entries need a reason")


def compare(table, country, quantity, published, computed, tol, kind) -> ReproductionEntry:
    abs_diff = abs(computed - published)
    rel_diff = abs_diff / abs(published) if published else math.inf
    diff = abs_diff if kind == "absolute" else rel_diff
    verdict = "PASS" if diff <= tol else "FAIL"
    return ReproductionEntry(
        table, country, quantity, published, computed, abs_diff, rel_diff, tol, kind, verdict
    )


@dataclass(frozen=True)
class ReproductionReport:
    entries: tuple[ReproductionEntry, ...]
    audit: AuditReport
    notes: tuple[str, ...] = field(default=())

    @property
    def failures(self) -> list[ReproductionEntry]:
        return [e for e in self.entries if e.verdict == "FAIL"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for e in self.entries:
            counts = out.setdefault(e.table, {"PASS": 0, "FAIL": 0, "EXCLUDED": 0})
            counts[e.verdict] += 1
        return out


def _load_fixture(path, required: Sequence[str]):
    try:
        panel = read_panel(path)
    except (DataError, OSError) as exc:
        raise IntegrityError(f"fixture {path} is unreadable: {exc}") from exc
    for country in golden.COUNTRIES:
        missing = [k for k in required if k not in panel.indicators(country)]
        if missing:
            raise IntegrityError(f"fixture {path}: {country} lacks {', '.join(missing)}")
    return panel


def reproduce(
    table1_path=None,
    table2_path=None,
    golden_values: dict[tuple[str, str], float] | None = None,
    policy: ZeroPolicy = REJECT,
) -> ReproductionReport:
    """Recompute technology levels and vector magnitudes and compare to the published tables."""
    table1_path = table1_path or golden.fixture_path(golden.TABLE1_FIXTURE)
    table2_path = table2_path or golden.fixture_path(golden.TABLE2_FIXTURE)
    expected = golden.golden_values()
    if golden_values:
        expected.update(golden_values)

    panel1 = _load_fixture(table1_path, TECH_FACTOR_KEYS)
    panel2 = _load_fixture(table2_path, (TECH_LEVEL_KEY,) + AI_FACTOR_KEYS)

    entries = []
    for country in sorted(golden.COUNTRIES):
        published = expected[("table1", country)]
        reason = golden.EXCLUDED.get(("table1", country))
        if reason:
            entries.append(ReproductionEntry(
                "table1", country, "technology_level", published, None, None, None,
                golden.TABLE1_REL_TOL, "relative", "EXCLUDED", reason,
            ))
            continue
        profile = aggregate(panel1, country, DEFAULT_YEARS, indicators=TECH_FACTOR_KEYS)
        level = technology_level(profile, policy)
        entries.append(compare(
            "table1", country, "technology_level", published, level.value,
            golden.TABLE1_REL_TOL, "relative",
        ))

    for country in sorted(golden.COUNTRIES):
        profile = aggregate(panel2, country, DEFAULT_YEARS)
        vec = build_vector(country, profile.factors[TECH_LEVEL_KEY], profile)
        entries.append(compare(
            "table2", country, "vector_magnitude", expected[("table2", country)],
            magnitude(vec).value, golden.TABLE2_ABS_TOL, "absolute",
        ))

    audit = audit_reported(golden.REPORTED_N, golden.REPORTED_R_SQUARED, golden.REPORTED_P)
    return ReproductionReport(tuple(entries), audit, (audit.note,))


# ---------------------------------------------------------------- rendering


def _fmt_table(value: Any, kind: str) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool) or kind == TEXT or isinstance(value, (str, int)):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.2f}" if kind == FIXED2 else f"{value:.6g}"


def _fmt_csv(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def render_table(rows: Sequence[dict], columns: Sequence[tuple[str, str]]) -> str:
    header = [name for name, _ in columns]
    body = [[_fmt_table(row[name], kind) for name, kind in columns] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(
            cell.rjust(w) if kind != TEXT else cell.ljust(w)
            for cell, w, (_, kind) in zip(r, widths, columns)
        ))
    return "\n".join(lines) + "\n"


def render_csv(rows: Sequence[dict], columns: Sequence[tuple[str, str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([name for name, _ in columns])
    for row in rows:
        writer.writerow([_fmt_csv(row[name]) for name, _ in columns])
    return out.getvalue()


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def render_json(payload) -> str:
    return json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n"


ENTRY_COLUMNS = [
    ("table", TEXT),
    ("country", TEXT),
    ("quantity", TEXT),
    ("paper_value", FIXED2),
    ("computed_value", FIXED2),
    ("abs_diff", SIG6),
    ("rel_diff", SIG6),
    ("tolerance", SIG6),
    ("tolerance_kind", TEXT),
    ("verdict", TEXT),
    ("reason", TEXT),
]

AUDIT_COLUMNS = [
    ("n", TEXT),
    ("df", TEXT),
    ("r_squared_reported", SIG6),
    ("p_reported", SIG6),
    ("implied_t", SIG6),
    ("implied_p", SIG6),
    ("ratio", SIG6),
    ("rel_diff", SIG6),
    ("rel_tol", SIG6),
    ("verdict", TEXT),
    ("perfect_fit", TEXT),
    ("consistent_r_squared", SIG6),
]


def audit_row(audit: AuditReport) -> dict:
    return {name: getattr(audit, name) for name, _ in AUDIT_COLUMNS}


def render_audit(audit: AuditReport, fmt: str) -> str:
    row = audit_row(audit)
    if fmt == "json":
        return render_json({**row, "note": audit.note})
    if fmt == "csv":
        return render_csv([row], AUDIT_COLUMNS)
    lines = [f"{name:<22} {_fmt_table(row[name], kind)}" for name, kind in AUDIT_COLUMNS]
    return "\n".join(lines) + "\n\n" + audit.note + "\n"


def render_reproduction(report: ReproductionReport, fmt: str) -> str:
    rows = [asdict(e) for e in report.entries]
    if fmt == "json":
        return render_json({
            "entries": rows,
            "summary": report.summary(),
            "audit": audit_row(report.audit),
            "notes": list(report.notes),
        })
    if fmt == "csv":
        return render_csv(rows, ENTRY_COLUMNS)
    parts = [render_table(rows, ENTRY_COLUMNS)]
    for table, counts in report.summary().items():
        parts.append(f"{table}: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    parts.append("")
    parts.append("Reported regression audit (n=12, R²=0.773, p=0.0435):")
    parts.append(render_audit(report.audit, "table"))
    return "\n".join(parts)
