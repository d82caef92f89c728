"""Time the compiled elimination kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Workloads: random sparse rational and mod-p matrices fed straight to the
kernels, and two end-to-end computations (filtration dims of the
counterexample, and the bar complex H^b_0 of U(heis3)) run with
nqd.kernels.echelon switched between backends.
"""

import argparse
import random
import time

from gmpy2 import mpq

from nqd import corpus, kernels
from nqd.bar import h0_filtered_dims
from nqd.cdg import dualize
from nqd.nonhom import filtration_dims


def random_rows(rng, nrows, ncols, density, p):
    rows = []
    for _ in range(nrows):
        r = {}
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(-5, 5)
                if p:
                    v %= p
                if v:
                    r[c] = v if p else mpq(v)
        rows.append(r)
    return rows


def best_of(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def end_to_end(backend, repeat):
    saved = kernels.echelon
    kernels.echelon = backend
    try:
        # fresh presentations each time so saturation caches do not hide the work
        t1 = best_of(lambda: filtration_dims(corpus.counterexample(), 3, slack=2), repeat)
        psi = dualize(corpus.presentation("u_heis3"))
        t2 = best_of(lambda: h0_filtered_dims(psi, 3), repeat)
    finally:
        kernels.echelon = saved
    return t1, t2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    backs = kernels.backends()
    print("backends available:", ", ".join(backs), "(default: %s)" % kernels.BACKEND)
    rng = random.Random(args.seed)
    # rational fill-in grows quickly, so the QQ cases stay small
    cases = [("QQ 100x100 d=0.05", random_rows(rng, 100, 100, 0.05, 0), 100, 0),
             ("QQ 60x120 d=0.1", random_rows(rng, 60, 120, 0.1, 0), 120, 0),
             ("F_101 300x300 d=0.05", random_rows(rng, 300, 300, 0.05, 101), 300, 101)]
    print("%-24s" % "workload" + "".join("%12s" % b for b in backs))
    for label, rows, ncols, p in cases:
        times = []
        for name, fn in backs.items():
            times.append(best_of(lambda: fn([dict(r) for r in rows], ncols, p, True), args.repeat))
        print("%-24s" % label + "".join("%11.3fs" % t for t in times))
    e2e = {name: end_to_end(fn, args.repeat) for name, fn in backs.items()}
    for k, label in enumerate(["filtration (counterex.)", "H^b_0 U(heis3), N=3"]):
        print("%-24s" % label[:24] + "".join("%11.3fs" % e2e[b][k] for b in backs))


if __name__ == "__main__":
    main()
