"""Cross-method enumeration report: a CSV table plus matplotlib figures.

For each class the report tabulates brute-force counts (up to ``n_brute``),
grammar coefficients and closed-form coefficients (up to ``order``), and
draws the counting sequences and their successive ratios.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .gf import closed_form, expand  # noqa: E402
from .grammar import CLASS_GRAMMARS, builtin_grammar, start_series  # noqa: E402
from .juxtaposition import NAMED, counts_by_bruteforce  # noqa: E402

CLASSES = ("A", "B", "C")
CSV_FIELDS = ("class", "spec", "n", "brute", "grammar", "closed", "closed_source")


@dataclass
class ReportFiles:
    csv: Path
    counts_png: Path
    ratios_png: Path

    def as_dict(self) -> dict[str, str]:
        return {"csv": str(self.csv), "counts_png": str(self.counts_png),
                "ratios_png": str(self.ratios_png)}


def report_rows(order: int, n_brute: int, classes: Sequence[str] = CLASSES) -> list[dict]:
    rows = []
    for label in classes:
        grammar = list(start_series(builtin_grammar(CLASS_GRAMMARS[label]), order))
        derived = label not in ("A", "B")
        closed = list(expand(closed_form(label, derived=derived), order, counting=True))
        brute = counts_by_bruteforce(NAMED[label], n_brute) if n_brute >= 0 else []
        for n in range(order + 1):
            rows.append({
                "class": label,
                "spec": str(NAMED[label]),
                "n": n,
                "brute": brute[n] if n < len(brute) else "",
                "grammar": grammar[n],
                "closed": closed[n],
                "closed_source": "derived" if derived else "published",
            })
    return rows


def write_csv(rows: list[dict], path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: str(v) for k, v in row.items()})
    return path


def _series_by_class(rows: list[dict]) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for row in rows:
        out.setdefault(row["class"], []).append(int(row["grammar"]))
    return out


def plot_counts(rows: list[dict], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, seq in _series_by_class(rows).items():
        ax.semilogy(range(len(seq)), seq, "-o", markersize=3, label=f"{label} = {NAMED[label]}")
    brute = [r for r in rows if r["brute"] != ""]
    if brute:
        ax.semilogy([r["n"] for r in brute], [int(r["brute"]) for r in brute], "kx",
                    markersize=6, label="brute force")
    ax.set_xlabel("length n")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_ylabel("number of permutations")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_ratios(rows: list[dict], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, seq in _series_by_class(rows).items():
        ratios = [seq[n + 1] / seq[n] for n in range(1, len(seq) - 1)]
        ax.plot(range(2, len(seq)), ratios, "-", label=label)
    ax.axhline(5, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xlabel("length n")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_ylabel("a(n) / a(n-1)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(out_dir: str | Path, order: int = 30, n_brute: int = 7,
                 classes: Sequence[str] = CLASSES) -> ReportFiles:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = report_rows(order, n_brute, classes)
    return ReportFiles(
        write_csv(rows, out / "counts.csv"),
        plot_counts(rows, out / "counts.png"),
        plot_ratios(rows, out / "ratios.png"),
    )


def disagreements(rows: list[dict]) -> list[dict]:
    """Rows where two computed routes differ."""
    bad = []
    for row in rows:
        values = {int(row[k]) for k in ("brute", "grammar", "closed") if row[k] != ""}
        if len(values) > 1:
            bad.append(row)
    return bad


__all__ = ["write_report", "report_rows", "disagreements", "ReportFiles"]
