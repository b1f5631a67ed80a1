#!/usr/bin/env python3
"""Benchmark: compiled Cython kernels vs the pure-Python twin.

Runs the hot paths (scaled evaluation, Newton steps, contour segment sums,
and the three rejection samplers) on both backends and prints a timing
table.  The two backends produce bit-identical results, so only speed
differs.

Usage:  python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import array
import math
import time

from quasizeros import _kernels_py as pure

try:
    from quasizeros import _kernels as compiled
except ImportError:
    compiled = None

NODES = array.array("d", [
    -0.9815606342467192, -0.9041172563704748, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704748, 0.9815606342467192,
])
WEIGHTS = array.array("d", [
    0.04717533638651202, 0.10693932599531888, 0.1600783285433461,
    0.20316742672306565, 0.23349253653835464, 0.2491470458134027,
    0.2491470458134027, 0.23349253653835464, 0.20316742672306565,
    0.1600783285433461, 0.10693932599531888, 0.04717533638651202,
])


def point_cloud(n):
    pts = []
    s = 7
    for _ in range(n):
        s, z = pure.sm64(s)
        u1 = (z >> 11) * 2.0 ** -53
        s, z = pure.sm64(s)
        u2 = (z >> 11) * 2.0 ** -53
        pts.append((200 * u1 - 100, 200 * u2 - 100))
    return pts


def bench(fn, reps=1):
    best = math.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_cases(n_scalar, n_samples):
    pts = point_cloud(n_scalar)
    zre = array.array("d", [math.log(2 * math.pi * n) for n in range(1, 64)])
    zim = array.array("d", [2 * math.pi * n + 4.7 for n in range(1, 64)])

    def scalar_eval(kern):
        for x, y in pts:
            kern.eval_scaled(2, 2.0, 1.0, x, y)

    def scalar_newton(kern):
        for x, y in pts:
            kern.newton_step(2, 2.0, 1.0, x, y)

    def segments(kern):
        for (x, y), (x2, y2) in zip(pts[:2000], pts[1:2001]):
            kern.line_segment_logderiv(1, 1.0, 0.0, x, y, x2, y2, NODES, WEIGHTS)

    def sampler_t1(kern):
        kern.sample_exterior_margin(1, 1.0, 0.0, 1, -1, 1.2, 10.0, 1000.0, 1,
                                    n_samples, 1)

    def sampler_strip(kern):
        kern.sample_strip_ratio(1, 1.0, 0.0, 2.0, 10.0, 377.0, 0.5, zre, zim,
                                n_samples, 1)

    return [
        (f"eval_scaled x {n_scalar}", scalar_eval),
        (f"newton_step x {n_scalar}", scalar_newton),
        ("segment sums x 2000 (12-pt)", segments),
        (f"exterior sampler, n={n_samples}", sampler_t1),
        (f"punctured-strip sampler, n={n_samples}", sampler_strip),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()
    n_scalar = 20000 if args.quick else 100000
    n_samples = 20000 if args.quick else 200000

    cases = make_cases(n_scalar, n_samples)
    print(f"{'case':38s} {'pure (s)':>10s} {'compiled (s)':>13s} {'speedup':>8s}")
    for name, fn in cases:
        t_pure = bench(lambda: fn(pure))
        if compiled is not None:
            t_comp = bench(lambda: fn(compiled))
            print(f"{name:38s} {t_pure:10.4f} {t_comp:13.4f} "
                  f"{t_pure / t_comp:7.1f}x")
        else:
            print(f"{name:38s} {t_pure:10.4f} {'absent':>13s} {'':>8s}")
    if compiled is None:
        print("\ncompiled kernels not built; install with a C toolchain to "
              "compare")


if __name__ == "__main__":
    main()
