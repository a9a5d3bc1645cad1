"""L1 norms of the dyadic logarithmic and Riesz kernels for n = 1..NMAX.

Usage: python scripts/kernel_norm_trend.py [NMAX]   (default 20)
Each kernel is built at resolution N = n, which suffices since P_{2^n} and
Y_{2^n} only involve Walsh functions below 2^n.
"""

import sys

from dyadic_summability.kernels import l1_norm, log_kernel, riesz_kernel


def main(nmax: int):
    print("n,log_kernel_l1,riesz_kernel_l1")
    for n in range(1, nmax + 1):
        m = 1 << n
        print(f"{n},{l1_norm(log_kernel(m, n))!r},{l1_norm(riesz_kernel(m, n))!r}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 20)
