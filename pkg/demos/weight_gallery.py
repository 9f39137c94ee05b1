#!/usr/bin/env python3
"""Tour of the built-in normal weights.

For every catalog weight this prints the normality-envelope constants and,
where the weight is strictly decreasing, the gauge-extremal series whose
profile nu(r) * g(r) stays inside a fixed two-sided band along its own
radius ladder.  Non-monotone normal weights are reported as such: the
extremal construction needs nu to decrease strictly.
"""

from hilbloch.catalog import builtin_weights
from hilbloch.errors import ConstructionError
from hilbloch.weights import build_extremal, growth_gauge, normality_check


def main() -> None:
    for name, weight in builtin_weights().items():
        check = normality_check(weight)
        print(f"{name}: a={weight.a} b={weight.b}  normal={check.passed}  "
              f"c_dec={check.c_decreasing:.3g}  c_inc={check.c_increasing:.3g}")

        try:
            series = build_extremal(weight, levels=10)
        except ConstructionError as exc:
            print(f"  no extremal series: {exc}\n")
            continue

        deepest = series.radii[-1]
        band = series.upper_bound / series.lower_bound
        print(f"  gauge({deepest:.10f}) = {growth_gauge(weight, deepest):.6g}   "
              f"profile band = {band:.3f}")
        pairs = series.coefficient_pairs()[:5]
        print(f"  extremal head: {', '.join(f'z^{k}*{c:g}' for k, c in pairs)}, ...\n")


if __name__ == "__main__":
    main()
