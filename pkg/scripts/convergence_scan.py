"""Error of delta_m^(n) and of the epsilon table on the same inputs, per m.

    python3 scripts/convergence_scan.py --model euler --z 1 3 --m-max 25
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field
from typing import List

from stieltjes_cf.catalog import parse_model
from stieltjes_cf.numkernel import BreakdownError, PrecisionContext, as_real, to_exact
from stieltjes_cf.stieltjes import partial_sums
from stieltjes_cf.transforms import TransformTable, weniger_delta, wynn_epsilon


@dataclass
class ScanConfig:
    model: str = "euler"
    zs: List[str] = field(default_factory=lambda: ["1", "3"])
    n: int = 0
    m_max: int = 25
    digits: int = 64


def scan(cfg: ScanConfig):
    ctx = PrecisionContext(cfg.digits)
    model = parse_model(cfg.model).model
    for z_text in cfg.zs:
        z = to_exact(z_text)
        ref = model.reference_F(z, ctx)
        s = [as_real(v, ctx) for v in partial_sums(model, cfg.n + cfg.m_max + 2, z, ctx)]
        table = TransformTable.from_partial_sums(s)
        for m in range(1, cfg.m_max + 1):
            try:
                d_err = abs(weniger_delta(table, cfg.n, m, ctx).value - ref)
            except BreakdownError:
                d_err = None
            best = wynn_epsilon(s[cfg.n:cfg.n + m + 3], ctx).at_depth(m + 3)
            e_err = abs(best[2] - ref) if best else None
            yield z_text, m, d_err, e_err


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--model", default="euler")
    p.add_argument("--z", nargs="+", default=["1", "3"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m-max", type=int, default=25)
    p.add_argument("--digits", type=int, default=64)
    a = p.parse_args(argv)
    cfg = ScanConfig(a.model, a.z, a.n, a.m_max, a.digits)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["z", "m", "err_delta", "err_epsilon"])
    for z, m, de, ee in scan(cfg):
        w.writerow([z, m, "" if de is None else f"{float(de):.3e}", "" if ee is None else f"{float(ee):.3e}"])


if __name__ == "__main__":
    main()
