from __future__ import annotations

from typing import Any, Iterable

from .models import CheckReport, CheckResult


def format_report(results: Iterable[CheckResult]) -> list[dict[str, Any]]:
    """Returns digest-ready check rows.

    Each row carries passed/failed/skipped flags and a reason, so the text and JSON
    reports are rendered from the same data without re-running any check.
    """

    rows: list[dict[str, Any]] = []
    for result in results:
        reason = result.witness if result.witness else result.status
        rows.append(
            {
                "name": result.name,
                "status": result.status,
                "passed": result.status == "pass",
                "failed": result.status == "fail",
                "skipped": result.status == "skipped",
                "reason": reason,
                "elapsed": round(result.elapsed, 6),
            }
        )

    rows.sort(key=lambda r: (not r["failed"], r["name"]))
    return rows


def summarize(report: CheckReport) -> dict[str, Any]:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for result in report.results:
        counts[result.status] = counts.get(result.status, 0) + 1
    return {
        "command": report.command,
        "exit_status": report.exit_status,
        "counts": counts,
        "checks": format_report(report.results),
    }


def render_text(report: CheckReport) -> str:
    lines = [f"# {report.command}"]
    for row in format_report(report.results):
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}.get(row["status"], row["status"].upper())
        detail = "" if row["passed"] else f": {row['reason']}"
        lines.append(f"{tag:4}  {row['name']}{detail}")
    summary = summarize(report)["counts"]
    lines.append(f"{summary['pass']} passed, {summary['fail']} failed, {summary['skipped']} skipped")
    return "\n".join(lines) + "\n"
