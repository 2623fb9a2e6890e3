"""Error scaling for the swept map lambda = 3 + eps^2 n.

Point a uses n = floor(1/eps); points b and c sit at fixed s = 1 and s = 15
after the transition and take the worse of the two nearby branches.
"""

import argparse

from asymlog import analysis
from asymlog.dynamic import Variant


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.EPS_CUBED.value)
    args = p.parse_args()
    variant = Variant(args.variant)

    for rule, kw in (("a", {"branch_select": False}), ("b", {}), ("c", {})):
        rep = analysis.dynamic_error_scan(rule, variant=variant, **kw)
        print(f"point {rule}")
        for e, n, err in zip(rep.epsilons, rep.n_values, rep.errors):
            print(f"  eps {e:7.4f}  n {n:6d}  error {err:.4e}")
        print(f"  slope {rep.fitted_slope:.4f}  R^2 {rep.fit_r2:.5f}")


if __name__ == "__main__":
    main()
