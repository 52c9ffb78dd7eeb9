"""Time the LMMSE 2x upscaler: compiled kernel vs numpy fallback.

    python3 benchmarks/bench_lmmse.py [--sizes 128,512,1024] [--repeat 5] [--naive]

``--naive`` also times the per-pixel reference from tests/oracles.py on a
small grid, as a sense of scale.
"""

import argparse
import sys
import timeit
from pathlib import Path

import numpy as np

from pansharp.interpolation import available_backends, upscale2x_lmmse_array


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="128,512,1024")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--naive", action="store_true")
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("note: compiled backend not built; timing the numpy fallback only", file=sys.stderr)
    rng = np.random.default_rng(0)
    print(f"{'size':>10}  " + "  ".join(f"{b:>12}" for b in backends) + ("  speedup" if len(backends) > 1 else ""))
    for n in (int(s) for s in args.sizes.split(",")):
        g = rng.random((n, n))
        times = {b: best_of(lambda b=b: upscale2x_lmmse_array(g, backend=b), args.repeat) for b in backends}
        row = f"{n:>4}x{n:<5}  " + "  ".join(f"{times[b] * 1e3:>9.2f} ms" for b in backends)
        if len(backends) > 1:
            row += f"  {times['python'] / times['cython']:6.1f}x"
        print(row)

    if args.naive:
        sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
        from oracles import naive_lmmse_2x

        g = rng.random((64, 64)).tolist()
        t = best_of(lambda: naive_lmmse_2x(g), 1)
        print(f"naive per-pixel reference, 64x64: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
