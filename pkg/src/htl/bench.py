"""Timing comparison of the two search-kernel paths.

The exhaustive search kernel compiles under numba by default and falls
back to pure Python when ``HTL_NO_JIT=1``.  This module runs the same
instances through both paths in separate processes and prints a table::

    python -m htl.bench
    python -m htl.bench --large      # include the 24-corner instance
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

DEFAULT_INSTANCES = [(12, 1), (18, 1), (9, 2)]
LARGE_INSTANCES = [(8, 3)]


def _run_worker(k: int, n: int, jit: bool) -> dict:
    env = dict(os.environ)
    if jit:
        env.pop("HTL_NO_JIT", None)
    else:
        env["HTL_NO_JIT"] = "1"
    out = subprocess.run(
        [sys.executable, "-m", "htl.bench", "--worker", str(k), str(n)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def _worker(k: int, n: int) -> None:
    from .search import describe_backend, search_labelings

    search_labelings(12, 1)  # warm-up: triggers compilation on the jit path
    start = time.perf_counter()
    result = search_labelings(k, n)
    elapsed = time.perf_counter() - start
    print(json.dumps({
        "backend": describe_backend(),
        "k": k,
        "n": n,
        "classes": len(result.labelings),
        "nodes": result.nodes,
        "seconds": elapsed,
    }))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="htl.bench")
    parser.add_argument("--large", action="store_true",
                        help="include the largest oracle instance (slow without numba)")
    parser.add_argument("--worker", nargs=2, type=int, metavar=("K", "N"),
                        help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.worker:
        _worker(*args.worker)
        return 0

    instances = DEFAULT_INSTANCES + (LARGE_INSTANCES if args.large else [])
    print(f"{'instance':>10} {'backend':>12} {'classes':>8} {'nodes':>12} {'seconds':>9}")
    for k, n in instances:
        rows = []
        for jit in (True, False):
            info = _run_worker(k, n, jit)
            rows.append(info)
            print(f"{f'({k},{n})':>10} {info['backend']:>12} {info['classes']:>8} "
                  f"{info['nodes']:>12} {info['seconds']:>9.3f}")
        if rows[1]["seconds"] > 0 and rows[0]["seconds"] > 0:
            speedup = rows[1]["seconds"] / rows[0]["seconds"]
            print(f"{'':>10} {'speedup':>12} {speedup:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
