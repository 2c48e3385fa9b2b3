"""Benchmark the pure-Python kernels against the compiled extension.

Times the three hot functions on synthetic workloads and the public star
product end to end. Run from a source checkout:

    python3 benchmarks/bench_kernels.py [--repeat N]

The compiled backend must have been built (pip install -e .) for the
comparison column; otherwise only the pure timings print.
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from starweyl import GaussianRational
from starweyl.kernels import pure

try:
    from starweyl.kernels import _ckern
except ImportError:
    _ckern = None


def rand_terms(rng, nterms, nvars=2, max_exp=8):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randrange(0, max_exp + 1) for _ in range(nvars))
        out[e] = GaussianRational(
            Fraction(rng.randrange(-99, 100), rng.randrange(1, 13)),
            Fraction(rng.randrange(-99, 100), rng.randrange(1, 13)),
        )
    return {k: v for k, v in out.items() if v}


def timed(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def bench_case(label, make_args, funcs, repeat):
    args = make_args()
    row = [label]
    base = None
    for name, mod in funcs:
        if mod is None:
            row.append("-")
            continue
        fn = getattr(mod, name.split(":")[1])
        t = timed(lambda: fn(*args), repeat)
        row.append(f"{t * 1e3:8.3f} ms")
        if base is None:
            base = t
        else:
            row.append(f"x{base / t:5.2f}")
    print("  ".join(str(c) for c in row))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"backends: pure{' + compiled' if _ckern else ' only'}")
    print()
    print("case                         pure         compiled   speedup")

    for n in (50, 200, 800):
        a = rand_terms(rng, n)
        b = rand_terms(rng, n)
        bench_case(
            f"mul_terms     {n:4d}x{n:<4d}",
            lambda a=a, b=b: (a, b),
            [("pure:mul_terms", pure), ("ckern:mul_terms", _ckern)],
            args.repeat,
        )

    entries = [(0, 1, Fraction(1)), (1, 0, Fraction(-1, 2))]
    for n in (100, 400, 1600):
        t = {}
        while len(t) < n:
            ea = tuple(rng.randrange(0, 9) for _ in range(2))
            eb = tuple(rng.randrange(0, 9) for _ in range(2))
            t[(ea, eb)] = GaussianRational(Fraction(rng.randrange(-9, 10), 3))
        t = {k: v for k, v in t.items() if v}
        bench_case(
            f"p_lambda      {n:4d} pairs",
            lambda t=t: (entries, t),
            [("pure:p_lambda_terms", pure), ("ckern:p_lambda_terms", _ckern)],
            args.repeat,
        )

    i = GaussianRational(0, 1)
    zfacts = [GaussianRational(1)]
    for r in range(1, 20):
        zfacts.append(zfacts[-1] * i)
    for n in (30, 120):
        a = rand_terms(rng, n)
        b = rand_terms(rng, n)
        bench_case(
            f"star_terms    {n:4d}x{n:<4d}",
            lambda a=a, b=b: (entries, zfacts, a, b, 16),
            [("pure:star_terms", pure), ("ckern:star_terms", _ckern)],
            args.repeat,
        )

    # end to end through the public product (selected backend only)
    import starweyl

    ses = starweyl.Session.default()
    f = ses.parse_poly("(q + 2*p)^8")
    g = ses.parse_poly("(q - p)^8")
    t = timed(lambda: starweyl.star(ses.form, ses.z, f, g), args.repeat)
    print()
    from starweyl.kernels import BACKEND

    print(f"star (q+2p)^8 * (q-p)^8 end to end [{BACKEND}]: {t * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
