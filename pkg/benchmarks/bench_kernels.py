"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--no-end-to-end]

Kernel rows time one call on random point sets of growing size. The
end-to-end rows solve the seeded synthetic benchmark once per backend in
a fresh interpreter, since the backend is fixed at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from geomint import _pykernels

try:
    from geomint import _kernels
except ImportError:
    _kernels = None

SIZES = (50, 500, 5_000, 50_000)

END_TO_END = """
import time
from geomint import kernels
from geomint.evalkit import evaluate
from geomint.trials import synthetic_benchmark
trials = synthetic_benchmark(seed=0)
t0 = time.perf_counter()
r = evaluate(trials)
print(kernels.BACKEND, len(trials), r.overall, time.perf_counter() - t0)
"""


def best_of(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def kernel_rows(repeat):
    rng = np.random.default_rng(0)
    for n in SIZES:
        along = rng.normal(0, np.sqrt(n), n)
        cross = rng.normal(0, np.sqrt(n), n)
        lo, counts, *_ = _pykernels.slice_profiles(along, cross, 1e-9)
        q = rng.normal(size=counts.size)
        cases = {
            "slice_profiles": lambda m: m.slice_profiles(along, cross, 1e-9),
            "l1_aligned": lambda m: m.l1_aligned(counts, lo, q, lo + 1),
        }
        for name, call in cases.items():
            py = best_of(lambda: call(_pykernels), repeat)
            cy = best_of(lambda: call(_kernels), repeat) if _kernels else float("nan")
            yield name, n, py, cy


def end_to_end():
    out = {}
    for label, env in (("cython", {}), ("python", {"GEOMINT_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", END_TO_END], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        backend, n, acc, secs = res.stdout.split()
        out[label] = (backend, int(n), float(acc), float(secs))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    if _kernels is None:
        print("compiled extension not built; only the numpy column is meaningful")
    print(f"{'kernel':<16}{'points':>8}{'numpy us':>12}{'cython us':>12}{'speedup':>9}")
    for name, n, py, cy in kernel_rows(args.repeat):
        print(f"{name:<16}{n:>8}{py * 1e6:>12.1f}{cy * 1e6:>12.1f}{py / cy:>8.1f}x")

    if not args.no_end_to_end:
        print()
        res = end_to_end()
        for label, (backend, n, acc, secs) in res.items():
            print(f"solve {n} trials, backend={backend:<7} {secs:6.2f} s  accuracy {acc:.3f}")
        if res["cython"][2] != res["python"][2]:
            print("WARNING: backends disagree on accuracy")
        print(f"end-to-end speedup {res['python'][3] / res['cython'][3]:.2f}x")


if __name__ == "__main__":
    main()
