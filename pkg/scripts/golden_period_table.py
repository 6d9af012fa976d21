#!/usr/bin/env python3
"""Print the desk-scale golden comparison: the period function of the
weight-12 discriminant form against -22 times its period polynomial,
together with the fitted polynomial coefficients."""

import numpy as np

from maassperiods import PeriodFunction, delta_form, eichler_polynomial
from maassperiods.forms import delta_coefficients


def main() -> None:
    delta = delta_form(50)
    period = PeriodFunction(delta)
    coeffs = (0,) + delta_coefficients(50)

    print(f"{'zeta':>10s} {'P(zeta)':>28s} {'-22 p(zeta)':>28s} {'rel diff':>10s}")
    for zeta in (0.5, 1.0, 2.0, 1 + 0.5j, 1 - 0.5j, 3.0, 0.25):
        p_val = eichler_polynomial(coeffs, 12, zeta)
        p_per = period(zeta)
        diff = abs(p_per + 22 * p_val) / (1 + abs(p_val))
        print(f"{zeta!s:>10s} {p_per:>28.12g} {-22 * p_val:>28.12g} {diff:>10.2e}")

    nodes = np.linspace(0.5, 2.5, 11)
    vals = [eichler_polynomial(coeffs, 12, complex(x)) for x in nodes]
    fit = np.polyfit(nodes, vals, 10)[::-1]
    print("\nfitted polynomial coefficients (degree ascending):")
    for degree, c in enumerate(fit):
        print(f"  {degree:2d}: {complex(c):+.12e}")


if __name__ == "__main__":
    main()
