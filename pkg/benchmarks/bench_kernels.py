"""Compare the numba kernels against the numpy and pure-python fallbacks.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Every workload is run on each backend and the results are checked to be
identical before any timing is reported.  The first numba call pays the JIT
compile cost, so each backend gets one untimed warm-up run; workloads whose
warm-up takes over two seconds are then timed once instead of ``--repeat``
times.  The numpy backend only changes multiplication; tableau sums there
use the same python enumeration as the python backend.
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

from flagged_groth import _kernels
from flagged_groth.jacobitrudi import determinant, jt_matrix
from flagged_groth.onerow import one_row
from flagged_groth.polyring import mul
from flagged_groth.shapes import FlaggedShape, SkewFlaggedShape, beta_degree_bound
from flagged_groth.tableaux import tableau_sum


def _mul_workload(size: str):
    m, p, cap = {"small": (5, 3, 4), "medium": (8, 4, 7), "large": (9, 5, 8)}[size]
    a, b = one_row(m, p, 1, cap), one_row(m - 1, p, 1, cap)
    return f"mul G_{m}^[{p}] * G_{m - 1}^[{p}] cap={cap} ({len(a)}x{len(b)} terms)", lambda: mul(a, b, cap)


def _det_workload(lam, f, mu=None, g=None):
    shape = SkewFlaggedShape(lam, mu or (), f, g or ()).check()
    budget = beta_degree_bound(shape) + 2
    matrix = jt_matrix(shape, budget)
    label = f"det lambda={lam}" + (f" mu={mu}" if mu else "") + f" f={f} budget={budget}"
    return label, lambda: determinant(matrix, budget)


def _tab_workload(lam, f):
    shape = FlaggedShape(lam, f)
    return f"tableau sum lambda={lam} f={f}", lambda: tableau_sum(shape)


WORKLOADS = [
    lambda: _mul_workload("small"),
    lambda: _mul_workload("medium"),
    lambda: _mul_workload("large"),
    lambda: _det_workload((4, 4, 3), (3, 4, 4), mu=(2, 1, 0), g=(1, 2, 2)),
    lambda: _det_workload((4, 4, 4), (4, 4, 4)),
    lambda: _det_workload((4, 4, 4, 4), (4, 4, 4, 4)),
    lambda: _tab_workload((4, 4, 4), (5, 5, 5)),
    lambda: _tab_workload((5, 4, 3), (4, 5, 6)),
]


def _time(fn, repeat: int, first: float) -> float:
    # ``first`` is the untimed warm-up; slow paths only get one more run
    if first > 2.0:
        repeat = 1
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - start)
    return statistics.median(runs)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--backends", default=",".join(_kernels.BACKENDS))
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)
    backends = [b for b in args.backends.split(",") if b]
    if not _kernels.NUMBA_AVAILABLE and "numba" in backends:
        backends.remove("numba")

    rows = []
    prev = _kernels.get_backend()
    try:
        for make in WORKLOADS:
            label, fn = make()
            results, times = {}, {}
            for name in backends:
                _kernels.set_backend(name)
                start = time.perf_counter()
                results[name] = fn()
                times[name] = _time(fn, args.repeat, time.perf_counter() - start)
            values = list(results.values())
            if any(v != values[0] for v in values[1:]):
                raise SystemExit(f"backends disagree on {label}")
            rows.append({"workload": label, "terms": len(values[0]), "seconds": times})
    finally:
        _kernels.set_backend(prev)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':{width}s}  {'terms':>6s}  " + "  ".join(f"{b:>10s}" for b in backends))
    for r in rows:
        cells = "  ".join(f"{r['seconds'][b] * 1e3:8.2f}ms" for b in backends)
        print(f"{r['workload']:{width}s}  {r['terms']:6d}  {cells}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
