"""Render experiment-harness CSVs as figure files.

The only contract with the compute side is the results CSV schema below;
nothing here re-runs experiments.  Each chart kind aggregates sigma (or
the explored-subgraph size) over trials, drawing one series per method
with a +/-1 standard-error band, one image per (dataset, model) cell.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CSV_COLUMNS = [
    "method", "dataset", "model", "T", "k", "alpha", "epsilon", "drop",
    "trial", "seed", "sigma", "vt", "et", "wall_ms",
]

# kind -> (x column, y column)
KINDS = {
    "growth": ("T", "vt"),
    "spread": ("T", "sigma"),
    "robustness": ("drop", "sigma"),
    "sensitivity": ("alpha", "sigma"),
}

_NUMERIC = {"T", "k", "alpha", "epsilon", "drop", "trial", "seed", "sigma",
            "vt", "et", "wall_ms"}


class SchemaError(ValueError):
    pass


@dataclass
class PlotSpec:
    kind: str
    out_dir: str
    fmt: str = "png"
    group_cols: tuple = ("dataset", "model")

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def load_table(path):
    """Typed rows from a results CSV; error rows (NaN sigma) are dropped."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in names]
        if missing:
            raise SchemaError(f"missing columns: {', '.join(missing)}")
        rows = []
        for raw in reader:
            row = {
                k: (float(raw[k]) if k in _NUMERIC else raw[k]) for k in names
            }
            if math.isnan(row["sigma"]):
                continue
            rows.append(row)
    return rows


def group_series(rows, x_col, y_col):
    """method -> sorted [(x, mean, stderr, n)] aggregated over trials."""
    buckets = {}
    for row in rows:
        buckets.setdefault((row["method"], row[x_col]), []).append(row[y_col])
    series = {}
    for (method, x), vals in sorted(buckets.items()):
        n = len(vals)
        mean = sum(vals) / n
        if n > 1:
            var = sum((v - mean) ** 2 for v in vals) / (n - 1)
            se = math.sqrt(var / n)
        else:
            se = 0.0
        series.setdefault(method, []).append((x, mean, se, n))
    return series


def _cells(rows, group_cols):
    keys = sorted({tuple(r[c] for c in group_cols) for r in rows})
    for key in keys:
        yield key, [r for r in rows if tuple(r[c] for c in group_cols) == key]


_Y_LABEL = {"sigma": "expected spread", "vt": "explored nodes |V_T|"}


def _draw(ax, kind, series, x_col, y_col):
    if kind == "robustness":
        methods = sorted(series)
        width = 0.8 / max(1, len(methods))
        xs_all = sorted({x for pts in series.values() for x, *_ in pts})
        for i, m in enumerate(methods):
            pts = {x: (mean, se) for x, mean, se, _ in series[m]}
            xs = [x for x in xs_all if x in pts]
            offs = [xs_all.index(x) + i * width for x in xs]
            ax.bar(offs, [pts[x][0] for x in xs], width=width,
                   yerr=[pts[x][1] for x in xs], label=m)
        ax.set_xticks([j + 0.4 - width / 2 for j in range(len(xs_all))])
        ax.set_xticklabels([f"{x:g}" for x in xs_all])
    else:
        for m in sorted(series):
            pts = series[m]
            xs = [p[0] for p in pts]
            means = [p[1] for p in pts]
            ses = [p[2] for p in pts]
            ax.plot(xs, means, marker="o", label=m)
            ax.fill_between(
                xs,
                [a - b for a, b in zip(means, ses)],
                [a + b for a, b in zip(means, ses)],
                alpha=0.2,
            )
    ax.set_xlabel(x_col)
    ax.set_ylabel(_Y_LABEL.get(y_col, y_col))
    ax.legend()


def render(csv_path, spec):
    """Render one image per (dataset, model) cell.

    Returns (output paths, {cell: series}) so callers can audit the
    aggregated values without reparsing the images.
    """
    rows = load_table(csv_path)
    if not rows:
        raise SchemaError("no data rows in CSV")
    x_col, y_col = KINDS[spec.kind]
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    all_series = {}
    for key, cell_rows in _cells(rows, spec.group_cols):
        series = group_series(cell_rows, x_col, y_col)
        all_series[key] = series
        fig, ax = plt.subplots(figsize=(6, 4))
        _draw(ax, spec.kind, series, x_col, y_col)
        ax.set_title(f"{spec.kind}: " + ", ".join(str(k) for k in key))
        fig.tight_layout()
        stem = "_".join(str(k) for k in key).replace("/", "-")
        path = out_dir / f"{spec.kind}_{stem}.{spec.fmt}"
        fig.savefig(path)
        plt.close(fig)
        paths.append(path)
    return paths, all_series
