#!/usr/bin/env python3
"""Scan |P| of a half-integral-weight surrogate over dyadic rays and print
the growth report used by the acceptance gate."""

import argparse
import json

from maassperiods import PeriodFunction, growth_check, surrogate_form
from maassperiods.cli import _parse_nu


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--weight", default="1/2")
    parser.add_argument("--nu", default="0.35i")
    args = parser.parse_args()

    form = surrogate_form(args.weight, _parse_nu(args.nu))
    report = growth_check(PeriodFunction(form))
    print(json.dumps(
        {
            "slope_at_zero": report.slope_at_zero,
            "slope_at_infinity": report.slope_at_infinity,
            "bound_at_zero": report.bound_at_zero,
            "bound_at_infinity": report.bound_at_infinity,
            "pass": report.passes,
            "samples": report.samples,
        },
        indent=2,
    ))


if __name__ == "__main__":
    main()
