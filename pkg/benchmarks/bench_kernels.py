"""Time each hot kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Prints one line per kernel with the best wall time of each backend and the
speedup. The first numba call per kernel is a warm-up so compilation is not
counted. Both backends must return identical results; a mismatch aborts.
"""

import argparse
import time
from itertools import combinations

import numpy as np

from tnet import _accel, kernels


def cases(rng):
    inc = (rng.random((400, 40)) < 0.4).astype(np.uint8)
    pairs = np.array(list(combinations(range(40), 2)), dtype=np.int64)
    triples = np.array(list(combinations(range(24), 3)), dtype=np.int64)
    local = rng.integers(0, 1 << 16, size=600, dtype=np.int64)
    order = rng.permutation(40).astype(np.int64)
    big = (rng.random((5000, 60)) < 0.5).astype(np.uint8)
    members = np.array(list(combinations(range(60), 2))[:300], dtype=np.int64)
    rows = np.arange(big.shape[0], dtype=np.int64)
    big_order = rng.permutation(60).astype(np.int64)
    return {
        "trace_counts": lambda: kernels.trace_counts(inc, triples),
        "t_shattered": lambda: kernels.t_shattered(inc, pairs, 2),
        "stab_counts": lambda: kernels.stab_counts(local, 16, 4, 2),
        "cycle_crossings": lambda: kernels.cycle_crossings(big, big_order),
        "first_uncovered": lambda: kernels.first_uncovered(big, rows, members),
        "cycle_crossings_small": lambda: kernels.cycle_crossings(inc, order),
    }


def same(a, b):
    if isinstance(a, (tuple, list)):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    previous = _accel.backend()
    print(f"{'kernel':24} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    try:
        for name, fn in cases(np.random.default_rng(args.seed)).items():
            results = {}
            for which in ("numba", "numpy"):
                _accel.set_backend(which)
                if which == "numba":
                    fn()  # compile
                results[which] = best_time(fn, args.repeat)
            (tn, on), (tp, op) = results["numba"], results["numpy"]
            if not same(on, op):
                raise SystemExit(f"{name}: backends disagree")
            print(f"{name:24} {tn * 1e3:10.3f} {tp * 1e3:10.3f} {tp / tn:8.1f}x")
    finally:
        _accel.set_backend(previous)


if __name__ == "__main__":
    main()
