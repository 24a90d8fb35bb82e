"""Time the compiled kernels against the numpy fallback.

Run ``python3 benchmarks/bench_kernels.py [GROUP ...]``.  Each kernel is run
on the Cayley table of the group through both backends; outputs are compared
for equality before timing.
"""
import argparse
import sys
import timeit

import numpy as np

from rankone import _kernels_py
from rankone.permgroup.builtins import builtin

try:
    from rankone import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases(G):
    table = np.ascontiguousarray(G.table, dtype=np.int32)
    inv = np.ascontiguousarray(G.inv, dtype=np.int32)
    gens = [int(g) for g in G.gen_indices]
    # a cyclic subgroup extended by a second generator
    start = np.asarray(G.subgroup([gens[0]]).members, dtype=np.int32)
    mask = np.zeros(G.order, dtype=bool)
    mask[start] = True
    return {
        "conjugation_labels": lambda k: k.conjugation_labels(table, inv, gens),
        "dimino_extend": lambda k: k.dimino_extend(table, start, [], gens[-1]),
        "normalizing_mask": lambda k: k.normalizing_mask(table, inv, mask, gens),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("groups", nargs="*", default=["S5", "A6", "A7"])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels_c is None:
        print("compiled kernels not built; only the numpy backend is timed", file=sys.stderr)
    print(f"{'group':>6} {'kernel':>20} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name in args.groups:
        G = builtin(name)
        for kname, run in cases(G).items():
            t_py = min(timeit.repeat(lambda: run(_kernels_py), number=1, repeat=args.repeat))
            if _kernels_c is None:
                print(f"{name:>6} {kname:>20} {t_py * 1e3:10.2f} {'-':>10} {'-':>8}")
                continue
            a, b = run(_kernels_py), run(_kernels_c)
            if not np.array_equal(np.asarray(a), np.asarray(b)):
                raise SystemExit(f"backends disagree on {kname} for {name}")
            t_c = min(timeit.repeat(lambda: run(_kernels_c), number=1, repeat=args.repeat))
            print(f"{name:>6} {kname:>20} {t_py * 1e3:10.2f} {t_c * 1e3:10.2f} {t_py / t_c:8.1f}")


if __name__ == "__main__":
    main()
