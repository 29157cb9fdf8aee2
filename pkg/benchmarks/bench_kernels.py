"""Time the numba kernels against their numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]

Both implementations are imported directly, so the environment flag does
not matter here. Every numba kernel is called once before timing so that
compilation is excluded; results are checked for agreement as well.
"""

import argparse
import math
import time

import numpy as np

from gausstrans.kernels import _numba, _numpy


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    lam = math.tanh(0.8) ** 2
    etas = np.array([math.tanh(1.2) ** 2, math.tanh(0.7) ** 2, math.tanh(0.3) ** 2])
    log_src = np.log1p(-np.cumsum(_numpy.pair_spectrum(lam, 200_000)).clip(max=1 - 1e-300))
    log_tgt = log_src - 1e-3
    slack = np.full(log_src.size, 1e-12)
    log_eta = math.log(math.tanh(2.0) ** 2)
    return {
        "pair_spectrum (1e6 terms)": lambda k: k.pair_spectrum(lam, 1_000_000),
        "product_spectrum (3 modes, 2e4 terms)": lambda k: k.product_spectrum(etas, 20_000),
        "dilution_search (s=10, r=0.1)": lambda k: k.dilution_search(
            math.log(math.tanh(10.0) ** 2), math.tanh(0.1) ** 2, 10**6, 1e-12
        ),
        "dilution_search (s=2, r=2)": lambda k: k.dilution_search(log_eta, lam, 10**6, 1e-12),
        "scan_gaps (2e5 sums)": lambda k: k.scan_gaps(log_src, log_tgt, slack),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.allclose(a, b, rtol=1e-12, atol=0.0)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    print(f"{'kernel':42s} {'numpy [ms]':>11s} {'numba [ms]':>11s} {'speedup':>8s}  agree")
    for name, call in cases().items():
        call(_numba)  # compile
        agree = same(call(_numpy), call(_numba))
        t_np = best_of(lambda: call(_numpy), args.repeat)
        t_nb = best_of(lambda: call(_numba), args.repeat)
        print(f"{name:42s} {1e3 * t_np:11.2f} {1e3 * t_nb:11.2f} {t_np / t_nb:8.1f}x  {agree}")


if __name__ == "__main__":
    main()
