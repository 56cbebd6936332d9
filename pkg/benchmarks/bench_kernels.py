"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 8] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from divax import _pykernels
from divax.simplex import SamplerConfig, sample_closed_pair, sample_pair

try:
    from divax import _kernels
except ImportError:  # extension not built
    _kernels = None


def workloads(n, count=200, seed=0):
    rng = np.random.default_rng(seed)
    open_pairs = [sample_pair(SamplerConfig(seed=0, n=n), rng) for _ in range(count)]
    closed_pairs = [sample_closed_pair(SamplerConfig(seed=0, n=n), rng) for _ in range(count)]
    f = lambda x, y: x * y - 0.5 * x
    return {
        "neumaier_sum": lambda k: [k.neumaier_sum(pr.p.entries) for pr in open_pairs],
        "divergence_open": lambda k: [k.divergence_open(pr.p.entries, pr.q.entries, 2.0) for pr in open_pairs],
        "divergence_closed": lambda k: [k.divergence_closed(pr.p.entries, pr.q.entries, 0.5) for pr in closed_pairs],
        "lemma_sum": lambda k: [k.lemma_sum(f, pr.p.entries, pr.q.entries, 1.5) for pr in open_pairs],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8, help="distribution length")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args(argv)

    backends = {"python": _pykernels}
    if _kernels is not None:
        backends["compiled"] = _kernels
    else:
        print("compiled extension not available; timing the Python kernels only")

    print(f"{'kernel':<20}" + "".join(f"{b:>14}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, work in workloads(args.n).items():
        times = {}
        for b, mod in backends.items():
            t = timeit.repeat(lambda: work(mod), number=args.number, repeat=args.repeat)
            times[b] = min(t) / args.number
        row = f"{name:<20}" + "".join(f"{times[b] * 1e3:>11.3f} ms" for b in backends)
        if len(backends) > 1:
            row += f"   {times['python'] / times['compiled']:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
