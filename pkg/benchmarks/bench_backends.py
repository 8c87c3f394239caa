#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Times summarization and pairwise merging of generated view pairs at a few
sizes, once per available backend, and prints a table with the speedup of
the compiled path. Optionally writes the rows as CSV.

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --sizes 2000,8000,32000 --repeats 7 --csv out.csv
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

from mvsum import _dispatch
from mvsum.analytics import GenParams, generate_views
from mvsum.merge import merge
from mvsum.summary import Model, summarize


def build_pair(edges: int, seed: int):
    params = GenParams(
        views=2,
        vertices_per_view=max(16, edges // 3),
        edges_per_view=edges,
        predicate_alphabet=max(4, edges // 200),
        class_alphabet=6,
        overlap=0.5,
        type_prob=0.4,
        seed=seed,
    )
    (_, g1), (_, g2) = generate_views(params)
    return g1, g2


def timed(fn, repeats: int) -> float:
    runs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        runs.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(runs)


def bench(edges: int, model: Model, repeats: int, backend: str) -> dict:
    previous = _dispatch.use_backend(backend)
    try:
        g1, g2 = build_pair(edges, seed=edges)
        summarize_ms = timed(lambda: summarize(g1, model), repeats)
        s1, s2 = summarize(g1, model), summarize(g2, model)
        merge_ms = timed(lambda: merge(s1, s2), repeats)
        return {
            "backend": backend,
            "edges_per_view": edges,
            "summary_edges": s1.edge_count() + s2.edge_count(),
            "summarize_ms": summarize_ms,
            "merge_ms": merge_ms,
        }
    finally:
        _dispatch.kernels = previous


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1000,4000,16000,64000",
                        help="comma-separated edges per view")
    parser.add_argument("--model", choices=[m.value for m in Model], default=Model.ACC.value)
    parser.add_argument("--repeats", type=int, default=5, help="runs per cell; medians reported")
    parser.add_argument("--csv", help="also write rows to this CSV file")
    args = parser.parse_args(argv)

    backends = _dispatch.available_backends()
    if "cython" not in backends:
        print("note: compiled kernels not built; timing the pure-Python backend only", file=sys.stderr)
    model = Model(args.model)
    sizes = [int(s) for s in args.sizes.split(",")]

    rows = [bench(edges, model, args.repeats, backend) for edges in sizes for backend in backends]

    header = f"{'edges/view':>10} {'backend':>8} {'summ edges':>11} {'summarize ms':>13} {'merge ms':>9}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(f"{row['edges_per_view']:>10} {row['backend']:>8} {row['summary_edges']:>11} "
              f"{row['summarize_ms']:>13.2f} {row['merge_ms']:>9.2f}")
    if "cython" in backends:
        print()
        for edges in sizes:
            py = next(r for r in rows if r["edges_per_view"] == edges and r["backend"] == "python")
            cy = next(r for r in rows if r["edges_per_view"] == edges and r["backend"] == "cython")
            print(f"{edges:>10}  speedup: summarize x{py['summarize_ms'] / cy['summarize_ms']:.2f}, "
                  f"merge x{py['merge_ms'] / cy['merge_ms']:.2f}")

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
