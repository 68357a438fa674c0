"""Compare the compiled quadrature kernel against the pure-Python fallback.

Times three workloads on each available backend:

* raw panel throughput -- repeated 15-node panels of one tape;
* a full adaptive 1-D integral of exp(-x^2);
* a full adaptive 2-D integral of exp(-x^2 - y^2).

Run from the repository root::

    python3 benchmarks/bench_backends.py [--panels 20000] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time
from array import array

from hyperdelta import backend
from hyperdelta._tape import compile_expr
from hyperdelta.expr import Add, Call, Neg, Pow, Var
from hyperdelta.quadrature import integrate_real_1d, integrate_real_nd

GAUSS_1D = Call("exp", Neg(Pow(Var(0), 2)))
GAUSS_2D = Call("exp", Neg(Add(Pow(Var(0), 2), Pow(Var(1), 2))))


def time_best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_panels(n: int, repeat: int) -> dict:
    tape = compile_expr(GAUSS_1D, 1)
    base = array("d", [0.0])
    out = {}
    for name in backend.available_backends():
        with backend.force_backend(name):
            def run():
                for i in range(n):
                    backend.tape_panel(tape, base, 0, -0.9, 0.9)
            out[name] = time_best(run, repeat) / n
    return out


def bench_integral(expr, dims: int, repeat: int) -> dict:
    out = {}
    for name in backend.available_backends():
        with backend.force_backend(name):
            if dims == 1:
                out[name] = time_best(lambda: integrate_real_1d(expr), repeat)
            else:
                out[name] = time_best(lambda: integrate_real_nd(expr, dims), repeat)
    return out


def report(label: str, seconds: dict, unit: str):
    print(f"{label}:")
    for name, t in sorted(seconds.items()):
        print(f"  {name:<10} {t * 1e6:12.2f} us/{unit}")
    if len(seconds) == 2:
        ratio = seconds["python"] / seconds["compiled"]
        print(f"  {'speedup':<10} {ratio:12.1f} x")
    print()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--panels", type=int, default=20000, help="panel count for the throughput test")
    ap.add_argument("--repeat", type=int, default=5, help="repetitions; best time wins")
    ns = ap.parse_args()

    names = sorted(backend.available_backends())
    print(f"backends available: {', '.join(names)}")
    print(f"active by default:  {backend.active_backend_name()}")
    print()
    report(f"single panel, exp(-x^2), best of {ns.repeat}x{ns.panels}",
           bench_panels(ns.panels, ns.repeat), "panel")
    report("adaptive 1-D integral of exp(-x^2)",
           bench_integral(GAUSS_1D, 1, ns.repeat), "integral")
    report("adaptive 2-D integral of exp(-x^2-y^2)",
           bench_integral(GAUSS_2D, 2, ns.repeat), "integral")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
