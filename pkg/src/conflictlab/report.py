"""Report assembly: JSON documents, CSV projections, and figures.

All rationals are emitted as "num/den" strings, never floats.  JSON
output is canonical (records sorted by spec, keys sorted), so identical
inputs produce byte-identical reports.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction

from . import __version__

SCHEMA_VERSION = "1"

CSV_COLUMNS = ["spec", "n", "bs", "C", "D", "s", "chi_lb"]


def rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def blocks_as_lists(blocks):
    return [sorted(b) for b in blocks]


def build_report(command, records, extra=None):
    doc = {
        "schema": SCHEMA_VERSION,
        "tool": "conflictlab",
        "version": __version__,
        "command": list(command),
        "records": sorted(records, key=lambda r: r.get("spec", "")),
    }
    if extra:
        doc.update(extra)
    return doc


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_csv(doc, path):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in doc["records"]:
            writer.writerow([record.get(col, "") for col in CSV_COLUMNS])


def render_survey_figure(doc, path):
    """Grouped bars of bs / C / D per function with the conflict lower bound
    overlaid as points."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    records = doc["records"]
    labels = [r["spec"] for r in records]
    positions = range(len(records))
    width = 0.25
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(records)), 4.5))
    for offset, key in zip((-width, 0, width), ("bs", "C", "D")):
        ax.bar([p + offset for p in positions], [r[key] for r in records],
               width=width, label=key)
    chi = [float(parse_rational(r["chi_lb"])) for r in records]
    ax.plot(list(positions), chi, "ko", label="chi lower bound")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("measure value")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_theorem_figure(doc, path):
    """Scatter of the certified bound against (bs+1)/2 with the y=x line."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    records = doc["records"]
    xs = [(r["bs"] + 1) / 2 for r in records]
    ys = [float(parse_rational(r["chi_lb"])) for r in records]
    fig, ax = plt.subplots(figsize=(5.5, 5))
    ax.scatter(xs, ys, s=14, alpha=0.6)
    lim = max(xs + ys + [1]) + 0.5
    ax.plot([0, lim], [0, lim], "k--", linewidth=1, label="bound = (bs+1)/2")
    ax.set_xlabel("(bs + 1) / 2")
    ax.set_ylabel("certified conflict lower bound")
    ax.set_xlim(0.5, lim)
    ax.set_ylim(0.5, lim)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
