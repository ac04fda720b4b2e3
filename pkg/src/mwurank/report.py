"""Evaluation report rendering: text table, TSV, JSON, and figures.

Figures are rendered with the non-interactive matplotlib backend so the
report path works headless; one top-candidates chart per ranking plus a
verdict summary chart, written next to the delimited output.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .ranking import EvaluationReport, RankedList

_COLUMNS = ("measure", "n", "verdict", "anchor_hits",
            "reduplication_share", "filtered_count", "depth")


def report_rows(report: EvaluationReport) -> list[dict]:
    rows = []
    for res in report.results:
        row = asdict(res)
        row["evidence"] = "; ".join(res.evidence)
        rows.append(row)
    return rows


def report_text(report: EvaluationReport) -> str:
    lines = ["ranking evaluation", "=" * 18, ""]
    header = f"{'measure':<10} {'n':>2} {'verdict':<8} " \
             f"{'redup':>6} {'filtered':>8}  evidence"
    lines.append(header)
    lines.append("-" * len(header))
    for res in report.results:
        lines.append(
            f"{res.measure:<10} {res.n:>2} {res.verdict:<8} "
            f"{res.reduplication_share:>6.2f} {res.filtered_count:>8}  "
            + "; ".join(res.evidence))
    lines.append("")
    cfg = report.config
    lines.append(f"anchor: {' '.join(cfg.positive_anchor)} | "
                 f"depth: {cfg.inspection_depth} | "
                 f"stop words: {', '.join(sorted(cfg.stop_set))}")
    return "\n".join(lines) + "\n"


def write_report_tsv(report: EvaluationReport, path,
                     encoding: str = "utf-8") -> None:
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        fh.write("\t".join(_COLUMNS + ("evidence",)) + "\n")
        for row in report_rows(report):
            fh.write("\t".join(str(row[c]) for c in _COLUMNS)
                     + "\t" + row["evidence"] + "\n")


def write_report_json(report: EvaluationReport, path,
                      encoding: str = "utf-8") -> None:
    payload = {
        "config": {
            "positive_anchor": list(report.config.positive_anchor),
            "negative_prefix": list(report.config.negative_prefix),
            "inspection_depth": report.config.inspection_depth,
            "stop_set": sorted(report.config.stop_set),
            "stop_whitelist": sorted(
                " ".join(g) for g in report.config.stop_whitelist),
        },
        "results": [
            {**{c: row[c] for c in _COLUMNS}, "evidence": row["evidence"]}
            for row in report_rows(report)
        ],
    }
    with open(path, "w", encoding=encoding, newline="\n") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")


def render_top_candidates_figure(rl: RankedList, path,
                                 depth: int = 20) -> None:
    """Horizontal bar chart of the top-depth scores for one ranking."""
    top = rl.top(depth)
    labels = [" ".join(e.ngram) for e in top]
    values = [e.value for e in top]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.3 * len(top) + 1)))
    ax.barh(range(len(top)), values, color="#4878d0")
    ax.set_yticks(range(len(top)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel(f"{rl.measure} score")
    ax.set_title(f"top {len(top)} candidates, {rl.measure} / {rl.n}-grams")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_verdict_figure(report: EvaluationReport, path) -> None:
    """One bar per (measure, n) with verdict color coding."""
    labels = [f"{r.measure}/{r.n}" for r in report.results]
    shares = [r.reduplication_share for r in report.results]
    colors = ["#2ca02c" if r.verdict == "valid" else "#d62728"
              for r in report.results]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels) + 2), 4))
    ax.bar(range(len(labels)), [1.0] * len(labels), color=colors, alpha=0.25)
    ax.bar(range(len(labels)), shares, color=colors)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("reduplication share in top window")
    ax.set_title("verdicts (green = valid, red = invalid)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: EvaluationReport, outdir,
                 rankings: Iterable[RankedList] = (),
                 encoding: str = "utf-8") -> list[Path]:
    """Write text/TSV/JSON reports plus figures into outdir.

    Returns the list of paths written.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    text_path = outdir / "report.txt"
    text_path.write_text(report_text(report), encoding=encoding)
    written.append(text_path)
    tsv_path = outdir / "report.tsv"
    write_report_tsv(report, tsv_path, encoding=encoding)
    written.append(tsv_path)
    json_path = outdir / "report.json"
    write_report_json(report, json_path, encoding=encoding)
    written.append(json_path)
    for rl in rankings:
        fig_path = outdir / f"top_{rl.measure}_{rl.n}gram.png"
        render_top_candidates_figure(rl, fig_path,
                                     depth=report.config.inspection_depth)
        written.append(fig_path)
    if report.results:
        verdict_path = outdir / "verdicts.png"
        render_verdict_figure(report, verdict_path)
        written.append(verdict_path)
    return written
