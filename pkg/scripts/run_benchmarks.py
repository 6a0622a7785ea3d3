#!/usr/bin/env python3
"""Measure how the exact-arithmetic core scales with state dimension.

Writes timing CSVs and a log-log figure into docs/benchmarks/ and prints
the fitted slopes.  Requires matplotlib (the ``bench`` extra).

Usage: python3 scripts/run_benchmarks.py [--out-dir DIR] [--repeats N]
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import statistics
import time
from pathlib import Path

from realizer import (
    Matrix,
    Polynomial,
    RationalFunction,
    StateSpace,
    TransferMatrix,
    kalman_decompose,
    realize_mimo,
    transfer_matrix,
)

S = Polynomial.s()


def time_call(fn, repeats: int) -> float:
    """Median wall time over repeats, in seconds."""
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def companion_system(n: int) -> StateSpace:
    """Single n-state companion block for 1/(s^n + s + 1)."""
    den = S**n + S + 1
    g = TransferMatrix([[RationalFunction(1, den)]])
    return realize_mimo(g)


def lag_row(k: int) -> TransferMatrix:
    """1 x k row of first-order lags, k total states."""
    return TransferMatrix([[RationalFunction(1, S + i + 1) for i in range(k)]])


def random_system(rng: random.Random, n: int) -> StateSpace:
    a = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    b = Matrix([[rng.randint(-2, 2)] for _ in range(n)], cols=1)
    c = Matrix([[rng.randint(-2, 2) for _ in range(n)]])
    return StateSpace(a, b, c)


def bench_transfer(sizes, repeats):
    rows = []
    for n in sizes:
        ss = companion_system(n)
        rows.append((n, time_call(lambda: transfer_matrix(ss), repeats)))
    return rows


def bench_decompose(sizes, repeats, seed=7):
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        ss = random_system(rng, n)
        rows.append((n, time_call(lambda: kalman_decompose(ss), repeats)))
    return rows


def bench_realize(sizes, repeats):
    rows = []
    for n in sizes:
        g = lag_row(n)
        rows.append((n, time_call(lambda: realize_mimo(g), repeats)))
    return rows


def fitted_slope(rows) -> float:
    """Least-squares slope of log(time) against log(n)."""
    xs = [math.log(n) for n, _ in rows]
    ys = [math.log(t) for _, t in rows if t > 0]
    xs = xs[: len(ys)]
    mean_x, mean_y = statistics.mean(xs), statistics.mean(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den


def write_csv(path: Path, rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "seconds"])
        for n, t in rows:
            writer.writerow([n, f"{t:.6g}"])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out-dir", default="docs/benchmarks", help="where CSVs and the figure go"
    )
    parser.add_argument(
        "--repeats", type=int, default=3, help="timing repeats per size (median kept)"
    )
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    suites = [
        ("transfer_recovery", "transfer_matrix on an n-state companion system",
         bench_transfer([4, 8, 16, 24, 32, 48], args.repeats)),
        ("kalman_decompose", "kalman_decompose on a random n-state system",
         bench_decompose([4, 8, 12, 16, 24, 32], args.repeats)),
        ("realize", "realize_mimo on a 1 x n row of first-order lags",
         bench_realize([4, 8, 16, 32, 64, 96], args.repeats)),
    ]

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required: pip install -e '.[bench]'")
        return 1

    fig, ax = plt.subplots(figsize=(7, 5))
    print(f"{'suite':<20} {'slope':>6}  points")
    for name, label, rows in suites:
        write_csv(out / f"{name}.csv", rows)
        slope = fitted_slope(rows)
        print(f"{name:<20} {slope:>6.2f}  {rows}")
        ax.loglog(
            [n for n, _ in rows],
            [t for _, t in rows],
            marker="o",
            label=f"{label} (slope {slope:.2f})",
        )
    ax.set_xlabel("state dimension n")
    ax.set_ylabel("median seconds")
    ax.set_title("Observed scaling of the exact-arithmetic core")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "scaling.png", dpi=150)
    print(f"wrote {out}/scaling.png and one CSV per suite")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
