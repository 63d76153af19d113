"""Distribution figures from eval CSVs: stretch and routing-table sizes.

Reads the per-scheme histogram CSVs the evaluation CLI emits
(bin_lo,bin_hi,count for stretch; entries_lo,entries_hi,count for table
sizes) and renders one PNG per input file.  This tool consumes only the
CSV files; it never imports the routing library, so it can run against
archived results.

Usage:
    render results/hybrid_stretch_hist.csv results/ni_rt_hist.csv --out figs/
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STRETCH_COLUMNS = ("bin_lo", "bin_hi", "count")
RT_COLUMNS = ("entries_lo", "entries_hi", "count")

# fixed style so re-rendering the same CSV overwrites the file identically
matplotlib.rcParams.update({
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 10,
})


class SchemaError(ValueError):
    """Input CSV does not carry the expected histogram columns."""


@dataclass
class DistributionSeries:
    """One histogram: a scheme's stretch or table-size distribution."""

    name: str
    kind: str              # "stretch" | "rt"
    lows: list[float]
    highs: list[float]
    counts: list[int]
    normalized: bool = False

    def total(self) -> int:
        return sum(self.counts)

    def normalize(self) -> "DistributionSeries":
        total = self.total()
        if total <= 0 or self.normalized:
            return self
        fractions = [c / total for c in self.counts]
        return DistributionSeries(self.name, self.kind, self.lows,
                                  self.highs, fractions, True)


def load_series(path: Path) -> DistributionSeries:
    """Parse one histogram CSV ('#' metadata lines are skipped)."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = [r for r in csv.reader(line for line in f
                                      if not line.startswith("#")) if r]
    if not rows:
        raise SchemaError(f"{path}: no header row found")
    header = [h.strip() for h in rows[0]]
    if header == list(STRETCH_COLUMNS):
        kind = "stretch"
    elif header == list(RT_COLUMNS):
        kind = "rt"
    else:
        expected = set(STRETCH_COLUMNS) | set(RT_COLUMNS)
        missing = sorted(expected - set(header))
        raise SchemaError(f"{path}: unrecognized columns {header}; "
                          f"missing {missing}")
    data = rows[1:]
    if not data:
        raise SchemaError(f"{path}: histogram has no data rows")
    lows = [float(r[0]) for r in data]
    highs = [float(r[1]) for r in data]
    counts = [int(r[2]) for r in data]
    if sum(counts) <= 0:
        raise SchemaError(f"{path}: histogram counts are all zero")
    name = path.stem
    for suffix in ("_stretch_hist", "_rt_hist"):
        name = name.removesuffix(suffix)
    return DistributionSeries(name, kind, lows, highs, counts)


def render_series(series: DistributionSeries, out_path: Path,
                  normalize: bool = True) -> None:
    plotted = series.normalize() if normalize else series
    fig, ax = plt.subplots()
    if series.kind == "stretch":
        widths = [hi - lo for lo, hi in zip(plotted.lows, plotted.highs)]
        ax.bar(plotted.lows, plotted.counts, width=widths, align="edge",
               color="#33679c", edgecolor="white", linewidth=0.4)
        ax.set_xlabel("stretch")
        ax.set_xlim(left=1.0)
    else:
        centers = [max(lo, 0.7) if hi <= lo else (lo + hi) / 2.0
                   for lo, hi in zip(plotted.lows, plotted.highs)]
        widths = [max(hi - lo, 0.6) for lo, hi in zip(plotted.lows, plotted.highs)]
        ax.bar(centers, plotted.counts, width=widths,
               color="#b3572c", edgecolor="white", linewidth=0.4)
        ax.set_xscale("log")
        ax.set_xlabel("routing table entries (log scale)")
    ax.set_ylabel("fraction" if plotted.normalized else "count")
    metric = "stretch" if series.kind == "stretch" else "routing table size"
    ax.set_title(f"{series.name}: {metric} distribution")
    fig.tight_layout()
    fig.savefig(out_path, metadata={"Software": "routelab-plots"})
    plt.close(fig)


def render(csv_paths, out_dir, normalize: bool = True) -> list[Path]:
    """Render every input CSV to <out_dir>/<input stem>.png."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for raw in csv_paths:
        path = Path(raw)
        series = load_series(path)  # raises before any file is written
        target = out_dir / (path.stem + ".png")
        render_series(series, target, normalize=normalize)
        written.append(target)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render stretch / table-size distribution figures "
                    "from eval histogram CSVs.")
    parser.add_argument("csvs", nargs="+", help="histogram CSV files")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--raw-counts", action="store_true",
                        help="plot raw counts instead of fractions")
    args = parser.parse_args(argv)
    try:
        written = render(args.csvs, args.out, normalize=not args.raw_counts)
    except (SchemaError, OSError) as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
