"""Command-line tables: coefficients, resummation, converging-factor oracles, delta vs epsilon.

    stieltjes-cf coeffs  --model euler --z 1 --beta 0 --K 3 --mode exact
    stieltjes-cf sum     --model log --z 1 --m-max 20 --digits 50
    stieltjes-cf oracle  --model euler --z 1 --m-max 4
    stieltjes-cf compare --model euler --z-list 1,3 --m-max 20 --format json

Every scalar input is parsed as an exact rational ("0.1" is 1/10), so the
same configuration always produces the same bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath

from . import __version__
from .catalog import CatalogEntry, closed_form_ck, parse_model
from .facseries import eval_truncated, tail_magnitude
from .numkernel import BreakdownError, DomainError, PrecisionContext, is_exact, to_exact
from .stieltjes import build_cf_series, partial_sums, phi_oracle, reconstruct_F
from .transforms import TransformTable, weniger_delta, wynn_epsilon

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_BREAKDOWN = 3

COMMANDS = ("coeffs", "sum", "oracle", "compare")


@dataclass
class RunConfig:
    command: str = "coeffs"
    model: str = "euler"
    z: Optional[str] = None
    z_list: Optional[List[str]] = None
    beta: str = "1"
    K: int = 10
    n: int = 0
    m_max: int = 10
    digits: int = 32
    mode: str = "float"
    format: str = "csv"
    out: Optional[str] = None

    def z_values(self) -> List[Fraction]:
        raw = self.z_list if self.z_list else ([self.z] if self.z is not None else [])
        if not raw:
            raise DomainError("give --z or --z-list")
        return [_rational("z", v) for v in raw]

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.mode not in ("exact", "float"):
            raise DomainError(f"mode must be exact or float, got {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        if self.mode == "exact" and self.command != "coeffs":
            raise DomainError("exact mode is only available for coeffs")
        if not isinstance(self.digits, int) or self.digits < 16:
            raise DomainError(f"digits must be an integer >= 16, got {self.digits!r}")
        for name in ("K", "n", "m_max"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {v!r}")
        for z in self.z_values():
            if z <= 0:
                raise DomainError(f"z must be positive, got {z}")
        if _rational("beta", self.beta) < 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")
        parse_model(self.model)


def _rational(name: str, value) -> Fraction:
    try:
        return to_exact(str(value) if isinstance(value, float) else value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{name} must be a rational number, got {value!r}") from exc


# ---------------------------------------------------------------------------
# cell formatting


class Formatter:
    def __init__(self, cfg: RunConfig, ctx: PrecisionContext):
        self.exact = cfg.mode == "exact"
        self.digits = cfg.digits
        self.ctx = ctx

    def __call__(self, x) -> str:
        if x is None:
            return ""
        if isinstance(x, (bool, str, int)):
            return str(x)
        if self.exact:
            if not is_exact(x):
                raise DomainError(f"value {x} is not exact")
            return str(Fraction(x))
        r = self.ctx.real(x)
        return self.ctx.mp.nstr(r, self.digits, strip_zeros=False)


# ---------------------------------------------------------------------------
# commands; each returns (header, rows, flags) for a single z


def _coeffs(cfg: RunConfig, entry: CatalogEntry, z: Fraction, ctx: PrecisionContext):
    beta = _rational("beta", cfg.beta)
    zz = z if cfg.mode == "exact" else ctx.real(z)
    cf = build_cf_series(entry.model, beta, zz, cfg.K, ctx=ctx)
    rows = []
    for k in range(cfg.K):
        c = cf.coeffs[k]
        closed = diff = None
        if entry.closed_form is not None:
            closed = closed_form_ck(entry, k, beta, zz)
            diff = abs(c - closed)
        rows.append([k, cf.b[k], c, closed, diff])
    return ["k", "b_k", "c_k", "closed_c_k", "abs_diff"], rows, 0


def _sum(cfg: RunConfig, entry: CatalogEntry, z: Fraction, ctx: PrecisionContext):
    model = entry.model
    beta = _rational("beta", cfg.beta)
    header = ["m", "s_m", "delta", "reconstructed", "reference",
              "err_s", "err_delta", "err_reconstructed", "delta_flag"]
    if cfg.m_max == 0:
        return header, [], 0
    s = [ctx.real(v) if is_exact(v) else v
         for v in partial_sums(model, max(cfg.m_max, cfg.n + cfg.m_max + 2), z, ctx)]
    table = TransformTable.from_partial_sums(s)
    ref = model.reference_F(z, ctx) if model.has_reference(z) else None
    rows, broken = [], 0
    for m in range(1, cfg.m_max + 1):
        try:
            entry_d = weniger_delta(table, cfg.n, m, ctx)
            delta = entry_d.value
            flag = "" if entry_d.reliable else "unreliable"
        except BreakdownError:
            delta, flag = None, "breakdown"
            broken += 1
        # factorial-series order m at the fixed truncation index n
        recon = reconstruct_F(model, cfg.n, z, beta, m, ctx)
        err = (lambda v: None if ref is None or v is None else abs(v - ref))
        rows.append([m, s[m], delta, recon, ref, err(s[m]), err(delta), err(recon), flag])
    return header, rows, int(broken == len(rows))


def _oracle(cfg: RunConfig, entry: CatalogEntry, z: Fraction, ctx: PrecisionContext):
    model = entry.model
    if not model.has_reference(z):
        raise DomainError(f"model {model.name!r} has no reference function at z = {z}")
    beta = _rational("beta", cfg.beta)
    # one extra coefficient so the first omitted term is available
    cf = build_cf_series(model, beta, ctx.real(z), cfg.K + 1, ctx=ctx)
    series = cf.series.truncate(cfg.K)
    rows = []
    for m in range(cfg.m_max + 1):
        phi = phi_oracle(model, m, z, ctx)
        approx = eval_truncated(series, m, ctx)
        tail = tail_magnitude(cf.series, m, cfg.K, ctx)
        rows.append([m, phi, approx, abs(approx - phi), tail])
    return ["m", "phi_oracle", "phi_series", "abs_diff", "tail"], rows, 0


def _compare(cfg: RunConfig, entry: CatalogEntry, z: Fraction, ctx: PrecisionContext):
    model = entry.model
    n = cfg.n
    count = n + cfg.m_max + 3
    s = [ctx.real(v) if is_exact(v) else v for v in partial_sums(model, count - 1, z, ctx)]
    table = TransformTable.from_partial_sums(s)
    ref = model.reference_F(z, ctx) if model.has_reference(z) else None
    rows, broken = [], 0
    for m in range(cfg.m_max + 1):
        # delta_m^(n) reads s_n .. s_{n+m+2}; epsilon gets the same inputs
        try:
            d = weniger_delta(table, n, m, ctx)
            delta, dflag = d.value, ("" if d.reliable else "unreliable")
        except BreakdownError:
            delta, dflag = None, "breakdown"
        eps_table = wynn_epsilon(s[n:n + m + 3], ctx)
        best = eps_table.at_depth(m + 3)
        eps = col = None
        eflag = "breakdown" if eps_table.breakdowns else ""
        if best is not None:
            col, _, eps = best
        if delta is None and eps is None:
            broken += 1
        err = (lambda v: None if ref is None or v is None else abs(v - ref))
        rows.append([m, delta, err(delta), col, eps, err(eps), dflag, eflag])
    header = ["m", "delta", "err_delta", "eps_column", "epsilon", "err_epsilon",
              "delta_flag", "epsilon_flag"]
    return header, rows, int(bool(rows) and broken == len(rows))


_COMMANDS = {"coeffs": _coeffs, "sum": _sum, "oracle": _oracle, "compare": _compare}


def _run_one(cfg: RunConfig, z: Fraction):
    ctx = PrecisionContext(cfg.digits)
    entry = parse_model(cfg.model)
    header, rows, all_broken = _COMMANDS[cfg.command](cfg, entry, z, ctx)
    fmt = Formatter(cfg, ctx)
    z_cell = str(z) if cfg.mode == "exact" else fmt(z)
    return ["z"] + header, [[z_cell] + [fmt(v) for v in row] for row in rows], all_broken


def run(cfg: RunConfig):
    """Execute ``cfg``; returns (header, rows, exit_code)."""
    cfg.validate()
    zs = cfg.z_values()
    if len(zs) == 1:
        results = [_run_one(cfg, zs[0])]
    else:
        with ThreadPoolExecutor(max_workers=min(8, len(zs))) as pool:
            results = list(pool.map(lambda z: _run_one(cfg, z), zs))
    header = results[0][0]
    rows = [row for _, r, _ in results for row in r]
    code = EXIT_BREAKDOWN if all(b for _, _, b in results) else EXIT_OK
    return header, rows, code


def render(cfg: RunConfig, header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    doc = {
        "config": asdict(cfg),
        "versions": {"stieltjes_cf": __version__, "mpmath": mpmath.__version__,
                     "python": platform.python_version()},
        "columns": list(header),
        "rows": [list(r) for r in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stieltjes-cf", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with keys mirroring the flags")
    p.add_argument("--model")
    p.add_argument("--z")
    p.add_argument("--z-list", help="comma-separated z values, run concurrently")
    p.add_argument("--beta")
    p.add_argument("--K", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--digits", type=int)
    p.add_argument("--mode", choices=("exact", "float"))
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    return p


_FIELDS = {f for f in RunConfig.__dataclass_fields__}


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - _FIELDS
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if isinstance(data.get("z_list"), str):
        data["z_list"] = data["z_list"].split(",")
    for key in ("z", "beta"):
        if key in data and data[key] is not None:
            data[key] = str(data[key])
    if data.get("z_list") is not None:
        data["z_list"] = [str(v) for v in data["z_list"]]
    return data


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    if args.config:
        cfg = replace(cfg, **load_config(args.config))
    overrides = {
        "model": args.model, "z": args.z, "beta": args.beta, "K": args.K, "n": args.n,
        "m_max": args.m_max, "digits": args.digits, "mode": args.mode,
        "format": args.format, "out": args.out,
        "z_list": args.z_list.split(",") if args.z_list else None,
    }
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if args.z is not None and args.z_list is None:
        cfg.z_list = None
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        header, rows, code = run(cfg)
        text = render(cfg, header, rows)
    except (DomainError, ZeroDivisionError) as exc:
        print(f"stieltjes-cf: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_BREAKDOWN:
        print("stieltjes-cf: every requested entry broke down", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
