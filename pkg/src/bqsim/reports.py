"""Report emission: delimited data, a human summary, and a rendered figure.

emit_report writes three artifacts next to each other for a batch of game
reports: <base>.tsv with one row per arm, <base>.txt with the human
summary, and <base>.png with a bar chart of empirical rates against the
evaluated bounds.  The TSV is the machine-readable record; the figure is
a convenience rendering of the same numbers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .adversary import GameReport

_TSV_HEADER = (
    "game\tarm\tsuccesses\ttrials\trate\tradius_3sigma\tbound_label\tbound_value\tpassed\tparams"
)


def report_rows(report: GameReport) -> list[str]:
    rows = []
    params = ",".join(f"{k}={v}" for k, v in sorted(report.params.items()))
    for arm in report.arms:
        rows.append(
            f"{report.game}\t{arm.name}\t{arm.successes}\t{arm.trials}\t"
            f"{arm.rate:.6f}\t{arm.radius:.6f}\t{report.bound_label}\t"
            f"{report.bound_value:.6g}\t{report.passed}\t{params}"
        )
    return rows


def human_summary(reports: list[GameReport]) -> str:
    lines = []
    for r in reports:
        verdict = "PASS" if r.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        lines.append(f"[{verdict}] {r.game} ({params})")
        lines.append(f"    bound {r.bound_label} = {r.bound_value:.6g}")
        for arm in r.arms:
            lines.append(
                f"    {arm.name}: {arm.successes}/{arm.trials} = {arm.rate:.4f}"
                f" (+/- {arm.radius:.4f})"
            )
        for note in r.notes:
            lines.append(f"    note: {note}")
    return "\n".join(lines)


def render_figure(reports: list[GameReport], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, len(reports), figsize=(4 * max(len(reports), 1), 3.2), squeeze=False)
    for ax, r in zip(axes[0], reports):
        names = [a.name for a in r.arms]
        rates = [a.rate for a in r.arms]
        errs = [a.radius for a in r.arms]
        xs = range(len(names))
        ax.bar(xs, rates, yerr=errs, capsize=3, color="#4878a8")
        if r.bound_value <= 2.0:
            ax.axhline(r.bound_value, color="#a84848", linestyle="--", label="bound")
            ax.legend(fontsize=7)
        ax.set_xticks(list(xs))
        ax.set_xticklabels(names, rotation=30, ha="right", fontsize=7)
        ax.set_title(f"{r.game} ({'pass' if r.passed else 'FAIL'})", fontsize=9)
        ax.set_ylabel("empirical rate", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def emit_report(reports: list[GameReport], out_base: str, figure: bool = True) -> str:
    """Write <base>.tsv, <base>.txt, and <base>.png; return the human summary."""
    os.makedirs(os.path.dirname(out_base) or ".", exist_ok=True)
    with open(out_base + ".tsv", "w") as fh:
        fh.write(_TSV_HEADER + "\n")
        for r in reports:
            for row in report_rows(r):
                fh.write(row + "\n")
    summary = human_summary(reports)
    with open(out_base + ".txt", "w") as fh:
        fh.write(summary + "\n")
    if figure:
        render_figure(reports, out_base + ".png")
    return summary


def merge_reports(parts: list[GameReport]) -> GameReport:
    """Combine same-game reports from split trial runs.

    Arm counts add associatively; the pass verdict is the conjunction of
    the parts' verdicts (each judged at its own radius), noted as such.
    """
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    if any(p.game != first.game for p in parts):
        raise ValueError("cannot merge different games")
    merged_arms = {}
    for p in parts:
        for arm in p.arms:
            if arm.name not in merged_arms:
                merged_arms[arm.name] = [0, 0]
            merged_arms[arm.name][0] += arm.successes
            merged_arms[arm.name][1] += arm.trials
    from .adversary import GameArm

    arms = [GameArm(name, s, t) for name, (s, t) in merged_arms.items()]
    notes = list(dict.fromkeys(n for p in parts for n in p.notes))
    notes.append(f"pass decision aggregated across {len(parts)} workers")
    return GameReport(
        game=first.game,
        params=first.params,
        arms=arms,
        bound_label=first.bound_label,
        bound_value=first.bound_value,
        passed=all(p.passed for p in parts),
        notes=notes,
    )
