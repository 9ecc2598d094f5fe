"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from rivervote import kernels


def _inputs(m: int, groups: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    positions = np.array([rng.permutation(m) for _ in range(groups)], dtype=np.int64)
    counts = rng.integers(1, 20, size=groups).astype(np.int64)
    margins = kernels.BACKENDS["python"].margin_matrix(positions, counts)
    i, j = np.nonzero((margins >= 0) & ~np.eye(m, dtype=bool))
    order = np.lexsort((j, i, -margins[i, j]))
    return positions, counts, margins, i[order].astype(np.int64), j[order].astype(np.int64)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if "cython" not in kernels.BACKENDS:
        print("compiled kernels are not built; timing the Python backend only")
    print(f"{'kernel':<16}{'m':>4}  " + "".join(f"{b:>12}" for b in kernels.BACKENDS) + "     speedup")
    for m, groups in ((5, 200), (14, 500), (40, 1000)):
        positions, counts, margins, src, dst = _inputs(m, groups)
        calls = {
            "margin_matrix": lambda k: k.margin_matrix(positions, counts),
            "widest_paths": lambda k: k.widest_paths(margins),
            "greedy_diagram": lambda k: k.greedy_diagram(m, src, dst, True),
        }
        for name, call in calls.items():
            times = {}
            for backend, mod in kernels.BACKENDS.items():
                number = 20 if backend == "python" else 200
                times[backend] = min(timeit.repeat(lambda: call(mod), number=number, repeat=args.repeat)) / number
            cells = "".join(f"{t * 1e6:>10.1f}us" for t in times.values())
            ratio = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{name:<16}{m:>4}  {cells}  {ratio:>9.1f}x")


if __name__ == "__main__":
    main()
