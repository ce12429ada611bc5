"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [repeats]

Covers the four hot paths: two-generator chain builds with solubility
(the inner loop of every exhaustive pair scan), full chain construction,
closure saturation over a multiplication table, and lexicographic element
streaming.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from permsol import _kernels_py

try:
    from permsol import _kernels
except ImportError:
    _kernels = None


def _cyc(degree, *cycles):
    img = list(range(degree))
    for c in cycles:
        for a, b in zip(c, c[1:]):
            img[a] = b
        img[c[-1]] = c[0]
    return bytes(img)


A10 = [_cyc(10, (0, 1, 2)), _cyc(10, (1, 2, 3, 4, 5, 6, 7, 8, 9))]
S6 = [_cyc(6, (0, 1)), _cyc(6, (0, 1, 2, 3, 4, 5))]
PSL27 = None  # filled lazily (needs the package proper)


def bench_two_gen(K, repeats):
    chain = K.build_chain(A10, 10)
    elems = []
    it = K.elements_lex(chain, 10)
    for _ in range(repeats):
        elems.append(next(it))
    start = time.perf_counter()
    for e in elems:
        K.two_gen_order_soluble(A10[0], e, 10)
    return time.perf_counter() - start, repeats


def bench_chain(K, repeats):
    start = time.perf_counter()
    for _ in range(repeats):
        K.build_chain(S6, 6)
    return time.perf_counter() - start, repeats


def bench_closure(K, repeats):
    chain = K.build_chain(S6, 6)
    elements = list(K.elements_lex(chain, 6))
    table = K.mult_table(elements)
    n = len(elements)
    ident = elements.index(K.identity_perm(6))
    start = time.perf_counter()
    for _ in range(repeats):
        for seed in range(1, n, 7):
            K.closure_table_packed(table, n, [seed], ident)
    return time.perf_counter() - start, repeats * len(range(1, n, 7))


def bench_stream(K, repeats):
    chain = K.build_chain(S6, 6)
    start = time.perf_counter()
    total = 0
    for _ in range(repeats):
        for _ in K.elements_lex(chain, 6):
            total += 1
    return time.perf_counter() - start, total


BENCHES = [
    ("two-gen chain + solubility (deg 10)", bench_two_gen, 2000),
    ("S6 chain build", bench_chain, 2000),
    ("cyclic closures over mult table", bench_closure, 50),
    ("lex element streaming (S6)", bench_stream, 200),
]


def main():
    repeats_scale = float(sys.argv[1]) if len(sys.argv) > 1 else 1.0
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("cython", _kernels))
    print(f"{'benchmark':<40} " + " ".join(f"{name:>12}" for name, _ in backends) + f" {'speedup':>9}")
    for label, fn, base_repeats in BENCHES:
        repeats = max(1, int(base_repeats * repeats_scale))
        per_op = []
        for _, K in backends:
            elapsed, ops = fn(K, repeats)
            per_op.append(elapsed / ops)
        row = f"{label:<40} " + " ".join(f"{t * 1e6:>10.2f}us" for t in per_op)
        if len(per_op) == 2 and per_op[1] > 0:
            row += f" {per_op[0] / per_op[1]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
