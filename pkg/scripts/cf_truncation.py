"""How the truncated factorial series for phi_m approaches the oracle as K grows.

Prints |phi_series(K) - phi_oracle| next to the first omitted term, which is
the quantity the truncation bound is measured against.

    python3 scripts/cf_truncation.py --model erfc --z 4 --m 10 --k-max 40
"""

import argparse
from dataclasses import dataclass

from stieltjes_cf.catalog import parse_model
from stieltjes_cf.facseries import eval_truncated, tail_magnitude
from stieltjes_cf.numkernel import PrecisionContext, to_exact
from stieltjes_cf.stieltjes import build_cf_series, phi_oracle


@dataclass
class TruncationConfig:
    model: str = "euler"
    z: str = "1"
    beta: str = "1"
    m: int = 10
    k_max: int = 40
    digits: int = 50


def run(cfg: TruncationConfig):
    ctx = PrecisionContext(cfg.digits)
    model = parse_model(cfg.model).model
    z, beta = to_exact(cfg.z), to_exact(cfg.beta)
    oracle = phi_oracle(model, cfg.m, z, ctx)
    full = build_cf_series(model, beta, ctx.real(z), cfg.k_max + 1, ctx=ctx).series
    rows = []
    for K in range(0, cfg.k_max + 1, 2):
        approx = eval_truncated(full.truncate(K), cfg.m, ctx)
        rows.append((K, abs(approx - oracle), tail_magnitude(full, cfg.m, K, ctx)))
    return oracle, rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(TruncationConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = TruncationConfig(**vars(p.parse_args(argv)))
    oracle, rows = run(cfg)
    print(f"# {cfg.model} z={cfg.z} beta={cfg.beta} m={cfg.m}: phi_oracle = {float(oracle):.16f}")
    print(f"{'K':>3} {'|error|':>11} {'next term':>11} {'ratio':>7}")
    for K, err, tail in rows:
        print(f"{K:3d} {float(err):11.3e} {float(tail):11.3e} {float(err / tail):7.3f}")


if __name__ == "__main__":
    main()
