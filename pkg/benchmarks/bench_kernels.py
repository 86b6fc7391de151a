"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--groups D8 Q12 D16 S4]
"""

import argparse
import time

import numpy as np

from wedgedeg import _fallback
from wedgedeg.catalog import parse_group_spec
from wedgedeg.presentation import to_columns
from wedgedeg.wedge import EXTERIOR, build_pair_presentation, exterior_square

try:
    from wedgedeg import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_enumeration(spec, repeat):
    G = parse_group_spec(spec)
    P = build_pair_presentation(G, EXTERIOR)
    rels = [to_columns(w) for w in P.relators if w]
    ncols = 2 * P.generator_count
    rows = []
    for name, mod in (("compiled", _core), ("python", _fallback)):
        if mod is None:
            continue
        dt, act = best_of(lambda: mod.enumerate_cosets(ncols, rels, [], 1 << 20, True), repeat)
        rows.append((f"cosets tau({spec})", name, act.shape[0], dt))
    return rows


def bench_tuples(spec, k, repeat):
    G = parse_group_spec(spec)
    S = exterior_square(G)
    rel = np.ascontiguousarray(S.symbol == 0, dtype=np.uint8)
    rows = []
    for name, mod in (("compiled", _core), ("python", _fallback)):
        if mod is None:
            continue
        dt, c = best_of(lambda: mod.count_pairwise_tuples(rel, k), repeat)
        rows.append((f"{k}-tuples {spec}", name, c, dt))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--groups", nargs="+", default=["D8", "Q12", "D16"])
    ap.add_argument("--tuple-groups", nargs="+", default=["D8", "A4", "S4"])
    ap.add_argument("--k", type=int, default=4)
    args = ap.parse_args()
    if _core is None:
        print("compiled core not built; showing the fallback only")
    rows = []
    for spec in args.groups:
        rows += bench_enumeration(spec, args.repeat)
    for spec in args.tuple_groups:
        rows += bench_tuples(spec, args.k, args.repeat)
    print(f"{'kernel':<22}{'backend':<10}{'result':>10}{'seconds':>12}")
    base = {}
    for label, name, res, dt in rows:
        speed = ""
        if name == "compiled":
            base[label] = dt
        elif label in base:
            speed = f"  x{dt / base[label]:.1f}"
        print(f"{label:<22}{name:<10}{res:>10}{dt:>12.4f}{speed}")


if __name__ == "__main__":
    main()
