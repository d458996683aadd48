"""Seven routes to the Stirling coefficients, cross-checked exactly.

Run: python demos/coefficient_table.py [n_max]
"""

import sys
import time

from gammastar.coefficients import METHODS, coefficient_table


def main(n_max=10):
    # Time each method separately; the partition sums grow fastest.
    for name, fn in METHODS.items():
        start = time.perf_counter()
        for n in range(n_max + 1):
            fn(n)
        print(f"{name:>14}: {time.perf_counter() - start:7.3f} s for n <= {n_max}")

    # coefficient_table raises if any two methods ever differ.
    table = coefficient_table(n_max)
    print()
    for rec in table:
        if rec.method == "recurrence":
            print(f"gamma_{rec.n:<2} = {rec.value}  ~ {float(rec.value):.6e}")

    # The terms alternate in sign in pairs and eventually grow factorially.
    ratios = [abs(table[7 * (n + 1)].value / table[7 * n].value) for n in range(2, n_max)]
    print("\n|gamma_(n+1) / gamma_n|:", ", ".join(f"{float(r):.3g}" for r in ratios))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 10)
