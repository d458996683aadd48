"""gamma_2 assembled by hand from the partitions of 4.

Each partition of 2n contributes one term; the M3 multinomial counts the set
partitions with that block structure (blocks of size k+2).

Run: python demos/partition_walkthrough.py
"""

from fractions import Fraction
from math import factorial

from gammastar.coefficients import gamma_via_partition_alt, partition_alt_terms


def main(n=2):
    total = Fraction(0)
    print(f"{'multiplicities':>16}  {'parts':>6}  {'C_m':>4}  term")
    for p, c, term in partition_alt_terms(n):
        total += term
        print(f"{str(p.multiplicities):>16}  {p.size:>6}  {c:>4}  {term}")
    gamma = Fraction((-2) ** n, factorial(2 * n)) * total
    print(f"\nsum of terms = {total}")
    print(f"gamma_{n} = (-2)^{n} / {2 * n}! * sum = {gamma}")
    assert gamma == gamma_via_partition_alt(n)


if __name__ == "__main__":
    main()
