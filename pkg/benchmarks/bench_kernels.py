"""Benchmark the compiled kernel against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [max_p]

The kernel computes Bernoulli residues mod p for all even indices up to
p - 3; the irregular-index scan over all primes below 1000 is the hottest
loop in the acceptance suite.
"""

import sys
import time

from eisdenom import _kernels
from eisdenom._kernels import _reference
from eisdenom.bernoulli import primes_up_to


def timed(fn, primes):
    t0 = time.perf_counter()
    out = [fn(p) for p in primes]
    return time.perf_counter() - t0, out


def main():
    max_p = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    primes = [p for p in primes_up_to(max_p) if p >= 5]
    print(f"bernoulli_even_mod_p over {len(primes)} primes up to {max_p}")

    t_ref, out_ref = timed(_reference.bernoulli_even_mod_p, primes)
    print(f"  pure python : {t_ref:8.3f} s")

    if _kernels.BACKEND == "cython":
        from eisdenom._kernels import _fast

        t_fast, out_fast = timed(_fast.bernoulli_even_mod_p, primes)
        assert out_fast == out_ref, "kernel disagreement"
        print(f"  cython      : {t_fast:8.3f} s   (x{t_ref / t_fast:.1f} speedup)")
    else:
        print("  cython      : not built; fallback is active")

    print(f"active backend: {_kernels.BACKEND}")


if __name__ == "__main__":
    main()
