"""Compiled kernels vs the pure-Python twins on the workloads that use them.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from arithdyn import _kernels_py

try:
    from arithdyn import _kernels
except ImportError:
    _kernels = None


def workloads():
    rng = random.Random(0)
    # degree-20 modulus over F_3: the ambient field of the surjectivity witnesses over F_81
    from arithdyn.gfpoly import first_irreducible

    m20 = first_irreducible(3, 20)
    a20 = [rng.randrange(3) for _ in range(20)]
    m16 = first_irreducible(5, 16)
    a16 = [rng.randrange(5) for _ in range(16)]
    return {
        "powmod F_3^20": lambda k: k.poly_powmod(a20, 3**20 - 2, m20, 3),
        "powmod F_5^16": lambda k: k.poly_powmod(a16, 5**16 - 2, m16, 5),
        "isotropy_scan q=3 M=8000 B=30": lambda k: k.isotropy_scan(3, 8000, 30),
        "cyclic_subgroup 2 mod 99991": lambda k: k.cyclic_subgroup(2, 99991),
        "prime_sieve 1e6": lambda k: k.prime_sieve(10**6),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    print(f"{'workload':34s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in workloads().items():
        assert fn(_kernels_py) == fn(_kernels), name
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:34s} {tp * 1e3:10.2f} {tc * 1e3:10.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
