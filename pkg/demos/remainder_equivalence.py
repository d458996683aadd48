"""Two double-integral forms of R_m(x) against the difference Gamma* - partial sum.

Run: python demos/remainder_equivalence.py
"""

import warnings

from gammastar.asymptotics import equivalence_report, gamma_star_reference, partial_sum


def main():
    x = 8.0
    print(f"Gamma*({x}) = {gamma_star_reference(x):.16f}")
    for m in range(1, 6):
        print(f"  m={m}: partial sum {partial_sum(m, x):.16f}")

    pairs = [(m, x) for m in (1, 2, 3) for x in (5.0, 8.0, 20.0)] + [(2, 0.5)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rows = equivalence_report(pairs)
    print(f"\n{'m':>2} {'x':>5} {'difference':>22} {'new integral':>22} {'boyd integral':>22} "
          f"{'rel delta':>9}")
    for r in rows:
        print(f"{r.m:2d} {r.x:5.1f} {r.r_diff:22.15e} {r.r_new.real:22.15e} "
              f"{r.r_boyd.real:22.15e} {r.max_pairwise_delta:9.1e}")


if __name__ == "__main__":
    main()
