"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel call pattern on both backends and reports the
speedup of the compiled one.
"""
import argparse
import random
import time

from nmusort import analyzer, kernels
from nmusort.poset import build_grid


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(backend):
    p33 = build_grid(3, 3)
    p55 = build_grid(5, 5)
    corners33 = analyzer.corner_table(p33)
    plan33 = backend.Plan(len(p33), p33.rows, p33.columns, corners33)
    plan55 = backend.Plan(len(p55), p55.rows, p55.columns, analyzer.corner_table(p55))
    rng = random.Random(0)
    labs = []
    for _ in range(2000):
        lab = list(range(1, 26))
        rng.shuffle(lab)
        labs.append(lab)

    def rc_cr_5x5():
        for lab in labs:
            plan55.rc(lab)
            plan55.cr(lab)

    def first_bad_5x5():
        for lab in labs:
            plan55.first_bad(lab)

    return {
        "rc+cr, 2000 labelings of 5x5": rc_cr_5x5,
        "corner scan, 2000 labelings of 5x5": first_bad_5x5,
        "nmu sweep, 8! labelings of 3x3 (first=1)": lambda: plan33.sweep_nmu(1),
        "invariance sweep, 8! labelings of 3x3 (first=1)": lambda: plan33.sweep_invariance(1),
        "tally, 8! labelings of 3x3 (first=1)": lambda: plan33.tally(1),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    names = kernels.available_backends()
    if "cython" not in names:
        print("compiled kernels are not built; only the python backend is available")
    results = {}
    for name in names:
        for label, fn in workloads(kernels.load_backend(name)).items():
            results.setdefault(label, {})[name] = best_of(fn, args.repeat)
    width = max(map(len, results))
    print(f"{'workload':<{width}}  " + "  ".join(f"{n:>10}" for n in names) + "  speedup")
    for label, row in results.items():
        cells = "  ".join(f"{row[n] * 1e3:>8.1f}ms" for n in names)
        speed = f"{row['python'] / row['cython']:>6.1f}x" if "cython" in row else ""
        print(f"{label:<{width}}  {cells}  {speed}")


if __name__ == "__main__":
    main()
