"""Render reports as plain-text tables, canonical JSON, or HTML.

Rendering never mutates stored values; the JSON form is the canonical
serialization (sorted keys, no volatile fields), and heatmap colors use
a per-explanation max-|score| normalization for display only.
"""

from __future__ import annotations

import html as html_lib
import json
from typing import Union

from ..evaluation import HIGHER_BETTER, METRIC_DIRECTIONS
from .runner import DatasetReport, InstanceReport

Report = Union[InstanceReport, DatasetReport]

TABLE = "table"
JSON = "json"
HTML = "html"
FORMATS = (TABLE, JSON, HTML)


def render_report(report: Report, fmt: str = TABLE) -> str:
    if fmt == JSON:
        return json.dumps(report.to_json(), indent=2, sort_keys=True, allow_nan=False) + "\n"
    if fmt == TABLE:
        if isinstance(report, DatasetReport):
            return _dataset_table(report)
        return _instance_table(report)
    if fmt == HTML:
        if isinstance(report, DatasetReport):
            return _dataset_html(report)
        return _instance_html(report)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


# -- plain text ----------------------------------------------------------


def _format_value(value) -> str:
    return "--" if value is None else f"{value:.4f}"


def _grid(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for r, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if r == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(row))))
    return "\n".join(lines)


def _instance_table(report: InstanceReport) -> str:
    parts = [
        f"instance: {report.instance_id}",
        f"text: {report.text}",
        f"target: {report.target} ({report.target_label})",
        "",
    ]
    if report.explanations:
        rows = [["method"] + list(report.tokens)]
        for method, expl in report.explanations.items():
            rows.append([method] + [f"{s:+.4f}" for s in expl.scores])
        parts += ["attributions:", _grid(rows), ""]
    metrics = sorted({m for per in report.scores.values() for m in per})
    if metrics:
        rows = [["method"] + metrics]
        for method, per in report.scores.items():
            rows.append(
                [method] + [_format_value(per[m].value if m in per else None) for m in metrics]
            )
        parts += ["evaluation:", _grid(rows), ""]
    if report.errors:
        parts.append("errors:")
        parts += [f"  {key}: {msg}" for key, msg in sorted(report.errors.items())]
        parts.append("")
    parts.append(
        f"model evaluations: {report.model_evaluations}  "
        f"time: {report.timing_s:.2f}s"
    )
    return "\n".join(parts) + "\n"


def _dataset_table(report: DatasetReport) -> str:
    config = report.config
    parts = [
        f"corpus: {report.corpus_name}  instances: {len(report.selected_ids)}  "
        f"seed: {config.seed}  K: {report.k_discretization}",
        "",
    ]
    rows = [["method"] + list(config.metrics)]
    for method in config.methods:
        row = [method]
        for metric in config.metrics:
            cell = report.aggregates[method][metric]
            if cell["mean"] is None:
                row.append("-- (0)")
            else:
                row.append(f"{cell['mean']:.4f} ({cell['count']})")
        rows.append(row)
    parts += [_grid(rows), ""]
    return "\n".join(parts)


# -- HTML ----------------------------------------------------------------

_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>{title}</title>
<style>
body {{ font-family: sans-serif; margin: 1.5em; }}
table {{ border-collapse: collapse; margin: 0.8em 0; }}
td, th {{ border: 1px solid #ccc; padding: 4px 8px; text-align: left; }}
.tok {{ display: inline-block; padding: 2px 4px; margin: 1px; border-radius: 3px; }}
</style></head><body>
{body}
</body></html>
"""


def _token_span(token: str, score: float, max_abs: float) -> str:
    # red for positive contribution, blue for negative, white at zero
    alpha = 0.0 if max_abs == 0 else min(1.0, abs(score) / max_abs)
    color = (178, 24, 43) if score > 0 else (33, 102, 172)
    background = f"rgba({color[0]},{color[1]},{color[2]},{alpha:.3f})"
    return (
        f'<span class="tok" style="background:{background}" '
        f'title="{score:+.4f}">{html_lib.escape(token)}</span>'
    )


def _heatmap_rows(report: InstanceReport) -> str:
    rows = []
    for method, expl in report.explanations.items():
        max_abs = max((abs(s) for s in expl.scores), default=0.0)
        spans = "".join(
            _token_span(t, s, max_abs) for t, s in zip(expl.token_strings, expl.scores)
        )
        rows.append(f"<tr><th>{html_lib.escape(method)}</th><td>{spans}</td></tr>")
    return "<table>" + "".join(rows) + "</table>"


def _shade(value, column: list[float], direction: str) -> str:
    if value is None:
        return ""
    goodness = value if direction == HIGHER_BETTER else -value
    scaled = [v if direction == HIGHER_BETTER else -v for v in column]
    lo, hi = min(scaled), max(scaled)
    norm = 0.5 if hi == lo else (goodness - lo) / (hi - lo)
    return f'style="background:rgba(27,120,55,{0.08 + 0.55 * norm:.3f})"'


def _metric_table(methods, metrics, cell_of, count_of=None) -> str:
    header = "".join(f"<th>{html_lib.escape(m)}</th>" for m in metrics)
    body_rows = []
    columns = {
        metric: [
            cell_of(method, metric)
            for method in methods
            if cell_of(method, metric) is not None
        ]
        for metric in metrics
    }
    for method in methods:
        cells = []
        for metric in metrics:
            value = cell_of(method, metric)
            shade = _shade(value, columns[metric] or [0.0], METRIC_DIRECTIONS[metric])
            text = _format_value(value)
            if count_of is not None:
                text += f" ({count_of(method, metric)})"
            cells.append(f"<td {shade}>{text}</td>")
        body_rows.append(
            f"<tr><th>{html_lib.escape(method)}</th>" + "".join(cells) + "</tr>"
        )
    return (
        "<table><tr><th>method</th>" + header + "</tr>" + "".join(body_rows) + "</table>"
    )


def _instance_html(report: InstanceReport) -> str:
    body = [
        f"<h2>{html_lib.escape(report.instance_id)}</h2>",
        f"<p>{html_lib.escape(report.text)}</p>",
        f"<p>target: {report.target} ({html_lib.escape(report.target_label)})</p>",
        _heatmap_rows(report),
    ]
    metrics = sorted({m for per in report.scores.values() for m in per})
    if metrics:
        methods = list(report.scores)

        def cell_of(method, metric):
            score = report.scores[method].get(metric)
            return None if score is None else score.value

        body.append(_metric_table(methods, metrics, cell_of))
    if report.errors:
        items = "".join(
            f"<li>{html_lib.escape(k)}: {html_lib.escape(v)}</li>"
            for k, v in sorted(report.errors.items())
        )
        body.append(f"<ul>{items}</ul>")
    return _PAGE.format(title=html_lib.escape(report.instance_id), body="\n".join(body))


def _dataset_html(report: DatasetReport) -> str:
    config = report.config

    def cell_of(method, metric):
        return report.aggregates[method][metric]["mean"]

    def count_of(method, metric):
        return report.aggregates[method][metric]["count"]

    body = [
        f"<h2>{html_lib.escape(report.corpus_name)}</h2>",
        f"<p>instances: {len(report.selected_ids)}, seed: {config.seed}, "
        f"K: {report.k_discretization}</p>",
        _metric_table(list(config.methods), list(config.metrics), cell_of, count_of),
    ]
    return _PAGE.format(title=html_lib.escape(report.corpus_name), body="\n".join(body))
