"""Compare the compiled and numpy block kernels.

    python3 benchmarks/bench_kernels.py [--sizes 3 6 20 60] [--repeat 200]

Small states dominate the reducer's workload, so per-call overhead matters
as much as throughput.
"""

import argparse
import timeit

import numpy as np

from gaussgraph import _kernels_py
from gaussgraph.sampling import random_glus, random_state

try:
    from gaussgraph import _kernels as _compiled
except ImportError:
    _compiled = None


def bench(module, name, args, repeat):
    fn = getattr(module, name)
    return min(timeit.repeat(lambda: fn(*args), number=repeat, repeat=5)) / repeat


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 6, 20, 60])
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled kernels unavailable; only the numpy backend can be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20}{'n':>5}{'numpy [us]':>14}{'cython [us]':>14}{'speedup':>10}")
    for n in args.sizes:
        sigma = random_state(n, rng, depth=4 * n).sigma
        blocks = random_glus(n, rng).array()
        cases = {
            "block_determinants": (sigma,),
            "block_norms": (sigma,),
            "apply_local": (sigma, blocks),
            "qq_correlations": (sigma, blocks),
        }
        for name, call_args in cases.items():
            py = bench(_kernels_py, name, call_args, args.repeat) * 1e6
            if _compiled is None:
                print(f"{name:<20}{n:>5}{py:>14.2f}{'-':>14}{'-':>10}")
                continue
            cy = bench(_compiled, name, call_args, args.repeat) * 1e6
            print(f"{name:<20}{n:>5}{py:>14.2f}{cy:>14.2f}{py / cy:>10.1f}")


if __name__ == "__main__":
    main()
