"""Compare the compiled kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernel.py [--repeat 3] [--trunc 3]

Each case is timed under every available backend; results must agree.
"""

import argparse
import time

from jacobi_tower import forms as F
from jacobi_tower import kernel
from jacobi_tower.blocks import eisenstein_E4, phi_0_1
from jacobi_tower.laurent import lp_exact_div, lp_mul
from jacobi_tower.operators import modular_diff_H
from jacobi_tower.qexpansion import qs_div, qs_mul


def cases(trunc):
    m4 = F.phi_m4_1_D8(trunc)
    e4 = eisenstein_E4(trunc)
    th = F.theta_D8_product(trunc)
    w = F.omega_Dn(8, trunc)
    c = m4.coefficient(1)
    d = F.omega_Dn(8, 2).coefficient(0)
    prod = lp_mul(c, d)
    p = phi_0_1(40)
    return [
        ("Laurent product, 8 variables", lambda: lp_mul(c, c)),
        ("Laurent exact division, 8 variables", lambda: lp_exact_div(prod, d)),
        ("series product E4 * phi_-4,1^D8", lambda: qs_mul(e4, m4)),
        ("series product (phi_-4,1^D8)^2", lambda: qs_mul(m4, m4)),
        ("series division Theta_D8 / omega_D8", lambda: qs_div(th, w)),
        ("H on phi_0,1 through q^39", lambda: modular_diff_H(p)),
    ]


def best_of(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--trunc", type=int, default=3, help="exclusive q-truncation of the D8 inputs")
    args = ap.parse_args(argv)
    backends = kernel.available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':40}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else "")
    print(header)
    for label, fn in cases(args.trunc):
        times, values = [], []
        for b in backends:
            with kernel.use_backend(b):
                t, v = best_of(fn, args.repeat)
            times.append(t)
            values.append(v)
        if any(v != values[0] for v in values):
            raise SystemExit(f"backends disagree on {label!r}")
        row = f"{label:40}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
