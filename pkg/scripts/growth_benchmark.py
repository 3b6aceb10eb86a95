#!/usr/bin/env python3
"""Timing and term-count growth of the two expensive identity suites.

The nested-product comparison is permutation-quadratic (both sides expand
m! permutations, the products recursively), the Goncharov comparison adds
a 2^(m-1) dyadic expansion per permutation.  This prints a small table so
the depth defaults of `regver all` can be sanity-checked on new hardware.

Usage: python scripts/growth_benchmark.py [MAX_M]
"""

import sys
from time import perf_counter

sys.path.insert(0, "src")

from regver.deligne import verify_product_expansion
from regver.logforms import verify_goncharov_equals_wang


def main():
    max_m = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    print(f"{'m':>3} {'T=C time':>10} {'terms':>7}   "
          f"{'gonch time':>10} {'terms':>7}")
    for m in range(1, max_m + 1):
        t0 = perf_counter()
        rep_c = verify_product_expansion(m)
        tc = perf_counter() - t0
        t0 = perf_counter()
        rep_g = verify_goncharov_equals_wang(m)
        tg = perf_counter() - t0
        assert rep_c.passed and rep_g.passed
        print(f"{m:>3} {tc:>9.3f}s {rep_c.stats['monomials_t']:>7}   "
              f"{tg:>9.3f}s {rep_g.stats['monomials']:>7}")


if __name__ == "__main__":
    main()
