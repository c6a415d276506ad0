"""Compare the numba and numpy kernels on circle means and batched form evaluation.

Run: python benchmarks/bench_kernels.py --repeats 20
"""
import argparse
import time

import numpy as np

from defectlab import _kernels
from defectlab.polyring import random_form


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times) * 1000.0


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--nodes", type=int, default=8192)
    p.add_argument("--samples", type=int, default=20000)
    args = p.parse_args(argv)

    rng = np.random.default_rng(0)
    C = rng.standard_normal((6, 13)) + 1j * rng.standard_normal((6, 13))
    w = rng.random(6) + 0.5
    forms = [random_form(rng, 3, 4, 4) for _ in range(6)]
    exps, coefs, owner = _kernels.flatten_forms(forms)
    pts = rng.standard_normal((args.samples, 4)) + 1j * rng.standard_normal((args.samples, 4))

    cases = {
        "log_norm_mean": lambda b: _kernels.log_norm_mean(C, 3.7, args.nodes, w, backend=b),
        "eval_forms": lambda b: _kernels.eval_forms(exps, coefs, owner, len(forms), pts, backend=b),
    }
    print(f"{'kernel':<16}{'backend':<10}{'ms':>10}")
    for name, call in cases.items():
        ref = None
        for b in _kernels.available_backends():
            call(b)  # warm up (JIT compile for numba)
            ms = best_of(lambda: call(b), args.repeats)
            out = np.asarray(call(b))
            if ref is None:
                ref = out
            else:
                assert np.allclose(out, ref, rtol=1e-10, atol=1e-10), name
            print(f"{name:<16}{b:<10}{ms:>10.3f}")


if __name__ == "__main__":
    main()
