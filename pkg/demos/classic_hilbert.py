#!/usr/bin/env python3
"""Classic Hilbert operator walkthrough.

For the unit-interval Lebesgue measure and alpha = 0 the operator sends the
constant function 1 to the series with coefficients 1/(n+1), whose closed
form is -log(1-z)/z.  This script builds that image three independent ways
(coefficient transport, direct quadrature, Hankel matrix action) and prints
the agreement at a few points of the disk.
"""

import cmath

import numpy as np

from hilbloch.hilbert_op import OperatorConfig, apply_coefficient, apply_quadrature, hankel_apply
from hilbloch.measures import lebesgue
from hilbloch.series import TaylorSeries


def closed_form(z: complex) -> complex:
    return -cmath.log(1.0 - z) / z


def main() -> None:
    cfg = OperatorConfig(alpha=0.0, measure=lebesgue(), truncation=2**12)
    image = apply_coefficient(TaylorSeries([1.0]), cfg)

    n = np.arange(image.truncation + 1, dtype=float)
    coef_gap = float(np.max(np.abs(image.coefficients - 1.0 / (n + 1.0))))
    print(f"coefficient transport vs 1/(n+1), n <= {image.truncation}:")
    print(f"  max abs gap = {coef_gap:.3e}")

    print("\npointwise values vs -log(1-z)/z:")
    for z in (0.5, -0.9, 0.9, 0.9j, 0.6 + 0.6j):
        series_val = image(z)
        quad_val = apply_quadrature(TaylorSeries([1.0]), cfg, z)
        exact = closed_form(z)
        print(
            f"  z = {z!s:>12}  series = {series_val:.12f}  "
            f"|series-exact| = {abs(series_val - exact):.2e}  "
            f"|quad-exact| = {abs(quad_val - exact):.2e}"
        )

    hankel = hankel_apply(np.array([1.0]), lebesgue(), 0.0, 64)
    small = apply_coefficient(TaylorSeries([1.0]), OperatorConfig(alpha=0.0, measure=lebesgue(), truncation=64))
    print("\nHankel action vs coefficient transport (first 65 coefficients):")
    print(f"  max abs gap = {float(np.max(np.abs(hankel.coefficients - small.coefficients))):.3e}")


if __name__ == "__main__":
    main()
