"""Benchmark runs over a directory of group files: CSV table plus figures.

One row per file; a file that fails to parse or compute carries its error
in-row and the run continues.  Rows are sorted by file name so repeated
runs diff cleanly, and orders are written as decimal strings.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from .errors import PermnormError
from .groupfile import load_group_file
from .large import normaliser_in_sym_run

CSV_COLUMNS = (
    "file",
    "name",
    "degree",
    "group_order",
    "branch",
    "normaliser_order",
    "backtrack_nodes",
    "cosets",
    "wall_time_s",
    "error",
)


@dataclass
class BenchRow:
    file: str
    name: str = ""
    degree: int | None = None
    group_order: int | None = None
    branch: str = ""
    normaliser_order: int | None = None
    backtrack_nodes: int | None = None
    cosets: int | None = None
    wall_time_s: float | None = None
    error: str = ""

    def as_csv(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.3f}"
            return str(v)

        return [cell(getattr(self, c)) for c in CSV_COLUMNS]


def bench_one(path: str | Path, budget: int | None = None) -> BenchRow:
    path = Path(path)
    row = BenchRow(file=path.name)
    try:
        gf = load_group_file(path)
        row.name = gf.name or path.stem
        row.degree = gf.degree
        start = time.perf_counter()
        group = gf.group()
        row.group_order = group.order()
        run = normaliser_in_sym_run(group, budget)
        row.wall_time_s = time.perf_counter() - start
        row.branch = run.branch
        row.normaliser_order = run.group.order()
        row.backtrack_nodes = run.nodes
        row.cosets = run.cosets
    except (PermnormError, OSError) as exc:
        row.error = str(exc)
    return row


def run_bench(corpus_dir: str | Path, budget: int | None = None,
              threads: int = 1) -> list[BenchRow]:
    paths = sorted(Path(corpus_dir).glob("*.grp"), key=lambda p: p.name)
    if threads > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(partial(bench_one, budget=budget),
                                 [str(p) for p in paths]))
    else:
        rows = [bench_one(p, budget) for p in paths]
    return rows


def write_bench_csv(rows: list[BenchRow], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())
    return path


_BRANCH_STYLE = {
    "small": ("tab:blue", "o"),
    "mathieu": ("tab:red", "D"),
    "large-AS": ("tab:green", "^"),
    "large-PA": ("tab:purple", "s"),
}


def write_bench_figures(rows: list[BenchRow], out_dir: str | Path) -> list[Path]:
    """Render timing and search-effort plots next to the CSV.

    Returns the written paths; nothing is written when no row succeeded.
    """
    done = [r for r in rows if not r.error]
    if not done:
        return []
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for branch, (color, marker) in _BRANCH_STYLE.items():
        pts = [(r.degree, r.wall_time_s) for r in done if r.branch == branch]
        if pts:
            ax.scatter(*zip(*pts), c=color, marker=marker, label=branch,
                       alpha=0.8, edgecolors="none")
    ax.set_yscale("log")
    ax.set_xlabel("degree")
    ax.set_ylabel("wall time (s)")
    ax.set_title("normaliser wall time by degree and branch")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    times_path = out_dir / "bench_times.png"
    fig.savefig(times_path, dpi=150)
    plt.close(fig)
    written.append(times_path)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    nodes = [(r.group_order, r.backtrack_nodes) for r in done
             if r.backtrack_nodes]
    cosets = [(r.group_order, r.cosets) for r in done if r.cosets]
    if nodes:
        ax.scatter(*zip(*nodes), c="tab:orange", marker="o",
                   label="backtrack nodes", alpha=0.8, edgecolors="none")
    if cosets:
        ax.scatter(*zip(*cosets), c="tab:cyan", marker="s",
                   label="cosets filtered", alpha=0.8, edgecolors="none")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("group order")
    ax.set_ylabel("count")
    ax.set_title("search effort by group order")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    effort_path = out_dir / "bench_effort.png"
    fig.savefig(effort_path, dpi=150)
    plt.close(fig)
    written.append(effort_path)
    return written
