"""Inverting e^t - 1 - t = u^2/2 exactly: series, correction, contour remainder.

The truncated series alone is only asymptotic; adding the correction term and
the contour integral Q_m(u) recovers the Newton root to rounding level, even
outside the disc of convergence |u| < 2 sqrt(pi) ~ 3.545.

Run: python demos/lagrange_reconstruction.py
"""

from gammastar.lagrange import reconstruct


def main():
    print(f"{'u':>5} {'m':>2} {'series':>12} {'correction':>12} {'Q_m':>12} "
          f"{'newton':>12} {'defect':>9}")
    for u in (0.25, 1.0, 2.0, -1.5, 5.0):
        for m in (2, 4, 6):
            r = reconstruct(u, m)
            print(f"{u:5.2f} {m:2d} {r.truncated_value:12.8f} {r.correction_term:12.8f} "
                  f"{r.remainder.real:12.8f} {r.newton:12.8f} {r.defect:9.1e}")


if __name__ == "__main__":
    main()
