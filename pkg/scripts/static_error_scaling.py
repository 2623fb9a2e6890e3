"""Error scaling of the static composite and of the truncated early series.

Prints the sup-norm composite error on [0, 3 n*] with its log-log slope, then
the early-series residual slopes for orders 0 to 5.
"""

import argparse

from asymlog import analysis


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=5)
    args = p.parse_args()

    rep = analysis.static_error_scan()
    print("composite sup-norm error on [0, 3 n*]")
    print(f"{'eps':>8} {'n at max':>9} {'error':>12}")
    for e, n, err in zip(rep.epsilons, rep.n_values, rep.errors):
        print(f"{e:8.4f} {n:9d} {err:12.4e}")
    print(f"slope {rep.fitted_slope:.4f}  R^2 {rep.fit_r2:.6f}\n")

    print("early-series residual at t = 1")
    for order in range(args.max_order + 1):
        r = analysis.residual_order_check(order)
        print(f"order {order}: slope {r.fitted_slope:.3f} (expected {order + 1})")


if __name__ == "__main__":
    main()
