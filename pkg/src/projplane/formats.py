"""Serialization of invariant reports.

JSON keeps a fixed key order and writes every rational as ``{"num", "den"}``.
CSV and markdown use the same columns, with rationals written as ``p/q``.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Sequence

from .classify import InvariantReport
from .series import format_rational

FORMATS = ("json", "csv", "md", "text")

COLUMNS = (
    "m",
    "kind",
    "r",
    "s",
    "p_m",
    "p_2m",
    "pm_squared",
    "a_hat",
    "q8_kappa",
    "homotopy_class",
    "pl_admits",
    "pl_count",
    "diff_admits",
    "diff_max_count",
    "psc",
    "bordism",
    "name",
)


def rational_json(q: Fraction | None) -> dict | None:
    if q is None:
        return None
    return {"num": q.numerator, "den": q.denominator}


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rational_json(value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


def report_dict(rep: InvariantReport) -> dict:
    d = rep.model
    return {
        "m": d.m,
        "kind": d.kind.value,
        "r": d.r,
        "s": d.s,
        "p_m": rational_json(rep.p_m),
        "p_2m": rational_json(rep.p_2m),
        "pm_squared": rational_json(rep.pm_squared),
        "a_hat": rational_json(rep.a_hat),
        "q8_kappa": rep.q8_kappa,
        "homotopy_class": rep.homotopy_class,
        "pl": {"admits": rep.pl.admits, "count": rep.pl.count},
        "diff": {"admits": rep.diff.admits, "max_count": rep.diff.count},
        "psc": rep.psc,
        "bordism": _jsonable(rep.bordism),
        "name": rep.name,
        "caveats": list(rep.caveats),
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(_cell(v) for v in value) + ")"
    return str(value)


def report_row(rep: InvariantReport) -> list[str]:
    d = rep.model
    values = (
        d.m,
        d.kind.value,
        d.r,
        d.s,
        rep.p_m,
        rep.p_2m,
        rep.pm_squared,
        rep.a_hat,
        rep.q8_kappa,
        rep.homotopy_class,
        rep.pl.admits,
        rep.pl.count,
        rep.diff.admits,
        rep.diff.count,
        rep.psc,
        rep.bordism,
        rep.name,
    )
    return [_cell(v) for v in values]


def to_json(reports: InvariantReport | Sequence[InvariantReport]) -> str:
    if isinstance(reports, InvariantReport):
        return json.dumps(report_dict(reports), indent=2)
    return json.dumps([report_dict(r) for r in reports], indent=2)


def to_csv(reports: Sequence[InvariantReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    writer.writerows(report_row(r) for r in reports)
    return buf.getvalue().rstrip("\n")


def to_markdown(reports: Sequence[InvariantReport]) -> str:
    lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
    lines += ["| " + " | ".join(report_row(r)) + " |" for r in reports]
    return "\n".join(lines)


def to_text(reports: Sequence[InvariantReport]) -> str:
    blocks = []
    for rep in reports:
        lines = [f"{col}: {val}" for col, val in zip(COLUMNS, report_row(rep))]
        lines += [f"caveat: {c}" for c in rep.caveats]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def render(reports: InvariantReport | Sequence[InvariantReport], fmt: str) -> str:
    single = isinstance(reports, InvariantReport)
    rows = [reports] if single else list(reports)
    if fmt == "json":
        return to_json(reports)
    if fmt == "csv":
        return to_csv(rows)
    if fmt == "md":
        return to_markdown(rows)
    if fmt == "text":
        return to_text(rows)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
