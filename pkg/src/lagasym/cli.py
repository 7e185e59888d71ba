"""Command-line front end.

Exit codes: 0 success, 2 invalid config or flags, 3 numerical failure, 4 I/O failure.
Every command that writes files also writes ``<first output>.manifest.json``.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import platform
import sys
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import mpmath
import numpy as np
import scipy

from . import __version__
from .asymptotics import gamma_asym, pn_asym, recurrence_asym
from .equilibrium import build_equilibrium, density
from .errors import DomainError, InvalidSpecError, LagasymError, MrsUndefinedError, NumericalError
from .fredholm import fredholm_det_bessel, painleve_F
from .kernels import compare_limit, fit_order
from .mrs import mrs_beta
from .oracle import EVAL_DPS, OracleTable, build_table, eval_pn_mp
from .weight import WeightSpec

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

KERNEL_MODES = {"kernel-bulk": "bulk", "kernel-soft": "soft", "kernel-hard": "hard"}
COMPARE_MODES = tuple(KERNEL_MODES) + ("w-hard", "recurrence", "gamma")


class UsageError(Exception):
    """Invalid flags or config detected by the CLI layer."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x) -> str:
    """Fixed 17-significant-digit formatting for reproducible CSV output."""
    if isinstance(x, mpmath.mpf):
        if x == 0 or 1e-300 < abs(x) < 1e300:
            return "%.17g" % float(x)
        return mpmath.nstr(x, 17, min_fixed=1, max_fixed=0)
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def thread_count() -> int:
    raw = os.environ.get("LAGASYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"LAGASYM_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("LAGASYM_THREADS must be a positive integer")
    return n


def pmap(fn, items):
    items = list(items)
    n = min(thread_count(), max(1, len(items)))
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# inputs


def load_config(path: str) -> tuple[WeightSpec, dict]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IOError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    spec = WeightSpec.from_config(cfg)
    return spec, spec.to_config()


def config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load_table(path: str) -> OracleTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IOError(f"cannot read table {path}: {exc}") from exc
    try:
        return OracleTable.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise IOError(f"table {path} is malformed: {exc}") from exc


def parse_points(arg: str) -> list[complex]:
    """Inline comma-separated complex numbers, or a CSV file with z_re[,z_im] columns."""
    p = Path(arg)
    if p.suffix == ".csv" or p.is_file():
        try:
            rows = list(csv.reader(p.read_text().splitlines()))
        except OSError as exc:
            raise IOError(f"cannot read points {arg}: {exc}") from exc
        out = []
        for row in rows:
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                re_ = float(row[0])
            except ValueError:
                continue  # header
            im = float(row[1]) if len(row) > 1 and row[1].strip() else 0.0
            out.append(complex(re_, im))
        return out
    try:
        return [complex(tok.replace(" ", "")) for tok in arg.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"cannot parse points {arg!r}") from None


def parse_int_list(arg: str) -> list[int]:
    try:
        vals = [int(t) for t in arg.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse integer list {arg!r}") from None
    if not vals:
        raise UsageError("empty integer list")
    return vals


def parse_grid(arg: str) -> list[float]:
    try:
        a, b, step = (float(t) for t in arg.split(":"))
    except ValueError:
        raise UsageError(f"grid must be a:b:step, got {arg!r}") from None
    if step <= 0 or b < a:
        raise UsageError("grid needs step > 0 and b >= a")
    k = int(math.floor((b - a) / step + 1e-9))
    return [a + i * step for i in range(k + 1)]


# ---------------------------------------------------------------------------
# outputs


class Output:
    def __init__(self, command: str, argv: list[str], cfg: dict | None):
        self.command = command
        self.argv = argv
        self.cfg = cfg
        self.paths: list[str] = []
        self.t0 = time.perf_counter()

    def write_text(self, path: str | None, text: str):
        if path is None:
            sys.stdout.write(text)
            return
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise IOError(f"cannot write {path}: {exc}") from exc
        self.paths.append(str(path))

    def write_json(self, path: str | None, obj):
        self.write_text(path, json.dumps(obj, indent=1, sort_keys=True) + "\n")

    def write_csv(self, path: str | None, header: list[str], rows):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) for x in r])
        self.write_text(path, buf.getvalue())

    def finish(self):
        if not self.paths:
            return
        manifest = {
            "command": self.command,
            "argv": self.argv,
            "config_hash": None if self.cfg is None else config_hash(self.cfg),
            "config": self.cfg,
            "versions": {
                "lagasym": __version__,
                "python": platform.python_version(),
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "mpmath": mpmath.__version__,
            },
            "wall_time_s": time.perf_counter() - self.t0,
            "outputs": list(self.paths),
        }
        mpath = self.paths[0] + ".manifest.json"
        try:
            Path(mpath).write_text(json.dumps(manifest, indent=1) + "\n")
        except OSError as exc:
            raise IOError(f"cannot write {mpath}: {exc}") from exc


def _stem_path(path: str, suffix: str) -> str:
    p = Path(path)
    return str(p.with_name(p.stem + suffix + p.suffix))


# ---------------------------------------------------------------------------
# commands


def cmd_mrs(args, out: Output):
    spec, _ = load_config(args.config)
    r = mrs_beta(spec, args.n)
    out.write_json(args.out, {"beta_n": r.beta_n, "residual": r.residual, "iterations": r.iterations})


def cmd_equilibrium(args, out: Output):
    spec, _ = load_config(args.config)
    eq = build_equilibrium(spec, args.n)
    out.write_json(args.out, {
        "beta_n": eq.beta_n,
        "h": list(eq.h.coeffs),
        "H": list(eq.H.coeffs),
        "ell_n": eq.ell_n,
    })
    if args.samples:
        if args.samples < 2:
            raise UsageError("--samples needs at least 2 points")
        if args.csv is None:
            raise UsageError("--samples requires --csv")
        xs = [(i + 0.5) / args.samples for i in range(args.samples)]
        out.write_csv(args.csv, ["x", "density"], [(x, density(eq, x)) for x in xs])


def cmd_eval(args, out: Output):
    spec, _ = load_config(args.config)
    eq = build_equilibrium(spec, args.n)
    header = ["z_re", "z_im", "value_re", "value_im", "log_scale", "neglected_scale"]
    rows = []
    if args.what in ("an", "bn"):
        a, b = recurrence_asym(eq)
        v = a if args.what == "an" else b
        rows.append(("", "", v.value.real, v.value.imag, v.log_scale, v.neglected_scale))
    elif args.what == "gamman":
        v = gamma_asym(spec, eq)
        rows.append(("", "", v.value.real, v.value.imag, v.log_scale, v.neglected_scale))
    else:
        if args.points is None:
            raise UsageError("--what pn requires --points")
        region = None if args.region == "auto" else args.region
        for z in parse_points(args.points):
            v = pn_asym(spec, eq, args.n, z, region=region, delta=args.delta)
            rows.append((z.real, z.imag, v.value.real, v.value.imag, v.log_scale, v.neglected_scale))
    out.write_csv(args.out, header, rows)


def cmd_oracle_build(args, out: Output):
    spec, _ = load_config(args.config)
    t = build_table(spec, args.nmax, args.digits)
    out.write_text(args.out, t.to_json() + "\n")


def cmd_oracle_eval(args, out: Output):
    t = load_table(args.table)
    out.cfg = t.spec.to_config()
    rows = []
    with mpmath.workdps(EVAL_DPS):
        for z in parse_points(args.points):
            arg = mpmath.mpf(z.real) if z.imag == 0 else mpmath.mpc(z.real, z.imag)
            v = eval_pn_mp(t, args.n, arg)
            v = mpmath.mpc(v)
            rows.append((z.real, z.imag, v.real, v.imag))
    out.write_csv(args.out, ["x_re", "x_im", "pn_re", "pn_im"], rows)


def _table_for(args, spec: WeightSpec, nmax: int) -> OracleTable:
    if args.table is None:
        return build_table(spec, nmax)
    t = load_table(args.table)
    if t.spec != spec:
        raise UsageError("table was built for a different weight spec")
    if t.N_max < nmax:
        raise UsageError(f"table covers n <= {t.N_max}, need {nmax}")
    return t


def cmd_compare(args, out: Output):
    spec, _ = load_config(args.config)
    ns = parse_int_list(args.n_list)
    if min(ns) < 2:
        raise UsageError("--n-list entries must be at least 2")
    table = _table_for(args, spec, max(ns))
    header = ["regime", "n", "sup_error", "fitted_order", "residual"]
    if args.mode in KERNEL_MODES or args.mode == "w-hard":
        regimes = [KERNEL_MODES[args.mode]] if args.mode in KERNEL_MODES else ["w_I", "w_II", "w_III"]
        results = pmap(lambda r: compare_limit(table, r, ns, x0=args.x0), regimes)
        rows, grid_rows = [], []
        for res in results:
            for n, e in zip(res.n_list, res.sup_error):
                rows.append((res.regime, n, e, res.fitted_order, res.residual))
            for n, (K, L) in sorted(res.grids.items()):
                for i in range(K.shape[0]):
                    for j in range(K.shape[1]):
                        grid_rows.append((res.regime, n, i, j, K[i, j], L[i, j]))
        out.write_csv(args.out, header, rows)
        if grid_rows and args.out is not None:
            out.write_csv(_stem_path(args.out, "_grid"),
                          ["regime", "n", "i", "j", "finite_n", "limit"], grid_rows)
        return
    if args.mode == "recurrence":
        recs = []
        for n in ns:
            eq = build_equilibrium(spec, n)
            a, b = recurrence_asym(eq)
            ea = abs(a.value.real - table.a_float(n)) / eq.beta_n
            eb = abs(b.value.real - table.b_float(n - 1)) / eq.beta_n
            recs.append((n, a.value.real, table.a_float(n), ea, b.value.real, table.b_float(n - 1), eb))
        oa = fit_order(ns, [r[3] for r in recs]) if len(ns) > 1 else (math.nan, math.nan)
        ob = fit_order(ns, [r[6] for r in recs]) if len(ns) > 1 else (math.nan, math.nan)
        out.write_csv(args.out,
                      ["n", "a_asym", "a_oracle", "residual_a", "b_asym", "b_oracle", "residual_b",
                       "fitted_order_a", "fitted_order_b"],
                      [r + (oa[0], ob[0]) for r in recs])
        return
    # gamma
    recs = []
    for n in ns:
        eq = build_equilibrium(spec, n)
        g = gamma_asym(spec, eq)
        with mpmath.workdps(EVAL_DPS):
            ratio = mpmath.exp(mpmath.log(g.value.real) + g.log_scale - table.log_gamma(n))
        recs.append((n, float(abs(ratio - 1))))
    order = fit_order(ns, [r[1] for r in recs]) if len(ns) > 1 else (math.nan, math.nan)
    out.write_csv(args.out, ["n", "rel_error", "fitted_order", "residual"], [r + order for r in recs])


def cmd_fredholm(args, out: Output):
    if (args.alpha is None) == (args.gamma is None):
        raise UsageError("give exactly one of --alpha or --gamma")
    alpha = args.alpha if args.alpha is not None else 0.5 * (args.gamma - 1)
    out.cfg = {"alpha": alpha}
    grid = parse_grid(args.s_grid)

    def one(s):
        r = fredholm_det_bessel(alpha, s, args.quad_order, rule=args.rule)
        row = [s, r.det, r.est_error]
        if args.check_painleve:
            f = painleve_F(alpha, s)
            row += [f, abs(r.det - f)]
        return row

    header = ["s", "det", "est_error"] + (["painleve_F", "discrepancy"] if args.check_painleve else [])
    out.write_csv(args.out, header, pmap(one, grid))


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lagasym", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mrs", help="MRS number beta_n")
    s.add_argument("--config", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_mrs)

    s = sub.add_parser("equilibrium", help="equilibrium data h_n, H_n, ell_n")
    s.add_argument("--config", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=0)
    s.add_argument("--csv", help="density samples on (0,1)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_equilibrium)

    s = sub.add_parser("eval", help="asymptotic a_n, b_n, gamma_n or p_n(beta_n z)")
    s.add_argument("--what", choices=("an", "bn", "gamman", "pn"), required=True)
    s.add_argument("--config", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--points", help="inline list like 0.5,2+0.1j or a CSV file (z_re,z_im)")
    s.add_argument("--region", choices=("auto", "A", "B", "C", "D"), default="auto")
    s.add_argument("--delta", type=float, default=0.1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("oracle", help="extended-precision reference tables")
    osub = s.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    b = osub.add_parser("build")
    b.add_argument("--config", required=True)
    b.add_argument("--nmax", type=int, required=True)
    b.add_argument("--digits", type=int)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_oracle_build)
    e = osub.add_parser("eval")
    e.add_argument("--table", required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--points", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_oracle_eval)

    s = sub.add_parser("compare", help="finite-n versus asymptotic comparison campaigns")
    s.add_argument("--mode", choices=COMPARE_MODES, required=True)
    s.add_argument("--config", required=True)
    s.add_argument("--table", help="oracle table JSON; built on the fly when omitted")
    s.add_argument("--n-list", default="10,20,40,80")
    s.add_argument("--x0", type=float, default=0.5, help="bulk reference point")
    s.add_argument("--out")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("fredholm", help="hard-edge Fredholm determinant")
    s.add_argument("--alpha", type=float)
    s.add_argument("--gamma", type=float, help="alternative parameter, alpha = (gamma - 1)/2")
    s.add_argument("--s-grid", required=True, help="a:b:step")
    s.add_argument("--quad-order", type=int, default=40)
    s.add_argument("--rule", choices=("jacobi", "legendre"), default="jacobi")
    s.add_argument("--check-painleve", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_fredholm)
    return p


def _where(exc: BaseException) -> str:
    if isinstance(exc, NumericalError) and exc.where:
        return exc.where
    pkg = os.path.dirname(__file__)
    frames = [f for f in traceback.extract_tb(exc.__traceback__) if f.filename.startswith(pkg)]
    if not frames:
        return "cli"
    f = frames[-1]
    return f"{Path(f.filename).stem}.{f.name}"


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"lagasym: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = Output(args.command, argv, None)
    try:
        if getattr(args, "config", None):
            _, out.cfg = load_config(args.config)
        args.func(args, out)
        out.finish()
    except (UsageError, InvalidSpecError, DomainError) as exc:
        print(f"lagasym: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, MrsUndefinedError, OverflowError, ZeroDivisionError, LagasymError) as exc:
        print(f"lagasym: numerical failure in {_where(exc)}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"lagasym: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> int:
    return run()
