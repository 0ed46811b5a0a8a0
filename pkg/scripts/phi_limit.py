"""Approach of the log-model converging factor phi_m(1) to its limit 1/2.

The gap closes like 1/(4(m+2)), so it is still about 1.2e-3 at m = 200 and
only drops below 1e-4 near m = 2500.

    python3 scripts/phi_limit.py --m 10 50 200 1000 2500
"""

import argparse

from stieltjes_cf.catalog import log_model
from stieltjes_cf.numkernel import PrecisionContext
from stieltjes_cf.stieltjes import phi_oracle


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, nargs="+", default=[10, 50, 200, 1000, 2500])
    p.add_argument("--z", default="1")
    p.add_argument("--digits", type=int, default=30)
    a = p.parse_args(argv)
    ctx = PrecisionContext(a.digits)
    model = log_model().model
    print(f"{'m':>6} {'phi_m':>14} {'phi_m - 1/2':>12} {'1/(4(m+2))':>12}")
    for m in a.m:
        phi = phi_oracle(model, m, int(a.z), ctx)
        gap = phi - ctx.mp.mpf(1) / 2
        print(f"{m:6d} {float(phi):14.10f} {float(gap):12.4e} {1 / (4 * (m + 2)):12.4e}")


if __name__ == "__main__":
    main()
