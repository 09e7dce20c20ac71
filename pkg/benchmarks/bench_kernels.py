"""Compare the numba and pure-numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--quick]

Times three hot paths on both backends and checks that the results
agree bit for bit. The first numba call per kernel is run once before
timing so JIT compilation is not charged to the measurement.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nlposets import config, kernels  # noqa: E402


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _run(name, fn, repeats):
    saved = config.active_backend()
    results = {}
    try:
        for backend in ("numba", "numpy"):
            config.set_backend(backend)
            if backend == "numba":
                fn()  # warm the JIT cache
            secs, out = _time(fn, repeats)
            results[backend] = (secs, out)
            print(f"{name:34s} {backend:6s} {secs * 1e3:10.1f} ms")
    finally:
        config.set_backend(saved)
    if results["numba"][1] != results["numpy"][1]:
        raise SystemExit(f"{name}: backends disagree")
    ratio = results["numpy"][0] / results["numba"][0]
    print(f"{name:34s} speedup {ratio:8.1f}x\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true",
                    help="smaller sizes, single repetition")
    args = ap.parse_args(argv)

    if args.quick:
        dp_n, scan_n, sweep_n, reps = 120, 8, 6, 1
    else:
        dp_n, scan_n, sweep_n, reps = 200, 9, 7, 3

    if not config.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    _run(f"prefix-sum DP, {dp_n} terms",
         lambda: tuple(kernels.dp_terms(dp_n)), reps)
    _run(f"avoider scan, n={scan_n}, 4 patterns",
         lambda: tuple(kernels.count_avoiders(p, scan_n) for p in range(4)),
         reps)
    _run(f"characterization sweep, n={sweep_n}",
         lambda: tuple(sorted(
             kernels.characterization_sweep(sweep_n, limit=sweep_n).items())),
         reps)


if __name__ == "__main__":
    main()
