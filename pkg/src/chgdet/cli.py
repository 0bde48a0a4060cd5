"""Command-line entry point.

Subcommands: det, eigs, hk, asy, compare, rhcheck. Parameters may also come
from a key=value file (--config); flags given on the command line win.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 failed
rhcheck under --strict.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import asymptotics as asy
from . import rhverify
from .fredholm import discretize, log_det, spectrum
from .instance import Deformation, GapInstance
from .kernels import KernelKind, KernelParams
from .orthopoly import hankel_dets
from .quadrature import QuadMode

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_RHCHECK = 0, 1, 2, 3

COMPARE_FIELDS = ("s", "nu", "gamma", "n_nodes", "logdet_num", "logdet_asy", "diff", "p", "runtime_ms")
FORMULAS = ("theorem", "gamma1", "exp-region", "sine", "bessel")
DEFORMATION_KEYS = ("gamma", "nu", "nu_rule")
DEFAULT_NODES = 400


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """17 significant digits, so floats round-trip exactly."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _json_float(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return None if math.isnan(x) else ("inf" if x > 0 else "-inf")


# ---------------------------------------------------------------- parsing


def parse_sweep(text: str) -> list[float]:
    """A single value or start:stop:step (stop included when hit)."""
    parts = str(text).split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad --s value {text!r}") from exc
    if len(vals) == 1:
        return vals
    if len(vals) != 3:
        raise UsageError("sweeps are start:stop:step")
    start, stop, step = vals
    if not step > 0:
        raise UsageError("sweep step must be positive")
    if stop < start:
        raise UsageError("sweep stop is below start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def parse_nu_rule(text: str) -> float:
    kind, _, chi = str(text).partition(":")
    if kind != "boundary" or not chi:
        raise UsageError("--nu-rule takes the form boundary:<chi>")
    try:
        return float(chi)
    except ValueError as exc:
        raise UsageError(f"bad chi in --nu-rule {text!r}") from exc


def read_config(path: str) -> dict[str, str]:
    """key=value lines; '#' starts a comment; keys use - or _."""
    out: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, val = (p.strip() for p in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], help="kernel family")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta-im", type=float, help="beta = i * beta_im")
    p.add_argument("--s", help="half-width, or a sweep start:stop:step")
    p.add_argument("--gamma", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--nu-rule", help="boundary:<chi> puts nu on 2s - (chi + alpha) ln(4s)")
    p.add_argument("--nodes", type=int)
    p.add_argument("--mode", choices=[m.value for m in QuadMode])
    p.add_argument("--formula", choices=FORMULAS)
    p.add_argument("--chi", type=float)
    p.add_argument("--k", type=int, help="number of eigenvalues")
    p.add_argument("--k-max", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--strict", action="store_true", default=None)
    p.add_argument("--config", help="key=value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chgdet", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, help_ in (
        ("det", "log det(I - gamma K_s) with a node-doubling estimate"),
        ("eigs", "smallest 1 - lambda_k against the large-gap prediction"),
        ("hk", "Hankel constants h_k of the weight"),
        ("asy", "term-by-term asymptotic prediction"),
        ("compare", "numerical vs asymptotic log-determinant over a sweep"),
        ("rhcheck", "numerical checks of the Riemann-Hilbert parametrices"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        if name == "rhcheck":
            p.add_argument("--which", choices=rhverify.CHECK_GROUPS + ("all",))
            p.add_argument("--points", type=int, help="samples per contour")
    return parser


DEFAULTS = {
    "kernel": "sine", "alpha": 0.0, "beta_im": 0.0, "s": "4", "nodes": DEFAULT_NODES,
    "mode": "legendre", "formula": None, "chi": None, "k": 3, "k_max": 4, "format": "csv",
    "out": None, "strict": False, "which": "all", "points": 20,
}
_TYPES = {"alpha": float, "beta_im": float, "gamma": float, "nu": float, "nodes": int, "chi": float,
          "k": int, "k_max": int, "points": int}


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Merge defaults < config file < flags; enforce one deformation."""
    given = {k: v for k, v in vars(args).items() if v is not None}
    merged: dict = dict(DEFAULTS)
    if "config" in given:
        for key, raw in read_config(given["config"]).items():
            if key in ("command", "config"):
                continue
            if key not in DEFAULTS and key not in DEFORMATION_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            if key == "strict":
                merged[key] = raw.lower() in ("1", "true", "yes")
                continue
            try:
                merged[key] = _TYPES.get(key, str)(raw)
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {raw!r}") from exc
    flag_deform = [k for k in DEFORMATION_KEYS if k in given]
    if flag_deform:
        for k in DEFORMATION_KEYS:
            merged.pop(k, None)
    merged.update(given)
    deform = [k for k in DEFORMATION_KEYS if merged.get(k) is not None]
    if len(deform) > 1:
        raise UsageError("give exactly one of --gamma, --nu, --nu-rule")
    for k in DEFORMATION_KEYS:
        merged.setdefault(k, None)
    if not deform:
        merged["gamma"] = 1.0
    if merged["nodes"] < 2:
        raise UsageError("--nodes must be at least 2")
    return argparse.Namespace(**merged)


# ------------------------------------------------------------- instances


def _params(cfg) -> KernelParams:
    try:
        return KernelParams(cfg.alpha, cfg.beta_im)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _chi(cfg) -> float | None:
    if cfg.nu_rule is not None:
        return parse_nu_rule(cfg.nu_rule)
    return cfg.chi


def _instance(cfg, s: float) -> GapInstance:
    kind = KernelKind(cfg.kernel)
    p = kind.params(_params(cfg))
    try:
        if cfg.nu_rule is not None:
            nu = asy.boundary_nu(s, parse_nu_rule(cfg.nu_rule), p.alpha)
            if nu < 0:
                raise UsageError(f"boundary rule gives nu={nu} < 0 at s={s}")
            d = Deformation.from_nu(nu)
        elif cfg.nu is not None:
            d = Deformation.from_nu(cfg.nu)
        else:
            d = Deformation.from_gamma(cfg.gamma)
        return GapInstance(kind, p, s, d)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _s_values(cfg) -> list[float]:
    vals = parse_sweep(cfg.s)
    if any(not v > 0 for v in vals):
        raise UsageError("s must be positive")
    return vals


# ----------------------------------------------------------------- output


def emit(cfg, rows: list[dict], fields, meta: dict | None = None) -> None:
    if cfg.format == "json":
        doc = {"command": cfg.command, "fields": list(fields),
               "rows": [{k: _jsonable(r[k]) for k in r} for r in rows]}
        if meta:
            doc["meta"] = meta
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([fmt(r[f]) if isinstance(r[f], (float, int, np.floating, np.integer))
                        and not isinstance(r[f], bool) else r[f] for f in fields])
        text = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return _json_float(v)
    return v


# ------------------------------------------------------------ subcommands


def cmd_det(cfg) -> int:
    rows = []
    for s in _s_values(cfg):
        inst = _instance(cfg, s)
        n = cfg.nodes
        v1 = log_det(discretize(inst, n, cfg.mode))
        v2 = log_det(discretize(inst, 2 * n, cfg.mode))
        rows.append({"s": s, "nu": inst.nu, "gamma": inst.gamma, "n_nodes": n,
                     "logdet": v1, "logdet_2n": v2, "doubling_change": abs(v2 - v1)})
    emit(cfg, rows, ("s", "nu", "gamma", "n_nodes", "logdet", "logdet_2n", "doubling_change"))
    return EXIT_OK


def cmd_eigs(cfg) -> int:
    rows = []
    for s in _s_values(cfg):
        inst = _instance(cfg, s)
        spec = spectrum(discretize(inst, cfg.nodes, cfg.mode), min(cfg.k, cfg.nodes))
        ortho = None if inst.kind is KernelKind.SINE else hankel_dets(inst.params, max(cfg.k - 1, 0))
        for k in range(cfg.k):
            pred = asy.eig_asy(k, inst, ortho)
            om = float(spec.one_minus_lam[k])
            rows.append({"s": s, "k": k, "lambda": float(spec.lam[k]), "one_minus_lambda": om,
                         "prediction": pred, "ratio": om / pred})
    emit(cfg, rows, ("s", "k", "lambda", "one_minus_lambda", "prediction", "ratio"))
    return EXIT_OK


def cmd_hk(cfg) -> int:
    p = _params(cfg)
    od = hankel_dets(p, cfg.k_max)
    rows = [{"k": k, "re_h": od.h[k].real, "im_h": od.h[k].imag,
             "h_rot": (od.h[k] * np.exp(-np.pi * p.beta_im)).real} for k in range(cfg.k_max + 1)]
    meta = {"ill_conditioned": od.ill_conditioned} if od.ill_conditioned else None
    if od.ill_conditioned:
        print("warning: Hankel matrices are ill-conditioned at this k_max", file=sys.stderr)
    emit(cfg, rows, ("k", "re_h", "im_h", "h_rot"), meta)
    return EXIT_OK


def _default_formula(inst: GapInstance) -> str:
    if inst.gamma == 1.0:
        return "sine" if inst.kind is KernelKind.SINE else "gamma1"
    return "theorem"


def predict(formula: str, inst: GapInstance, chi: float | None) -> tuple[asy.AsyBreakdown | None, int, bool]:
    """(breakdown, p, in_region); breakdown None when the formula cannot be
    evaluated at this instance."""
    if formula == "theorem":
        c = 0.0 if chi is None else chi
        b = asy.asy_theorem(inst, c, check=False)
        return b, asy.p_of_chi(c), b.in_region
    if formula == "gamma1":
        b = asy.asy_gamma1(inst)
        return b, 0, b.in_region
    if formula == "bessel":
        b = asy.asy_gamma1(GapInstance(KernelKind.BESSEL1, inst.params, inst.s, inst.deformation))
        ok = b.in_region and inst.params.beta_im == 0.0
        return b, 0, ok
    if formula == "sine":
        total = asy.asy_sine_gamma1(inst.s)
        const = total + 0.5 * inst.s**2 + 0.25 * math.log(inst.s)
        b = asy.AsyBreakdown(-0.5 * inst.s**2, 0.0, -0.25 * math.log(inst.s), const,
                             total_log=total, region=asy.Region.GAMMA1, in_region=inst.gamma == 1.0)
        ok = inst.gamma == 1.0 and inst.params == KernelParams(0.0, 0.0)
        return b, 0, ok
    if formula == "exp-region":
        if math.isinf(inst.nu):
            return None, 0, False
        return asy.asy_exp_region(inst), 0, True
    raise UsageError(f"unknown formula {formula!r}")


def cmd_asy(cfg) -> int:
    rows = []
    chi = _chi(cfg)
    for s in _s_values(cfg):
        inst = _instance(cfg, s)
        formula = cfg.formula or _default_formula(inst)
        b, p, ok = predict(formula, inst, chi)
        if b is None:
            raise asy.RegionError(f"formula {formula} cannot be evaluated at nu={inst.nu}")
        prod = sum(complex(c) for c in b.product_terms).real if b.product_terms else 0.0
        rows.append({"s": s, "nu": inst.nu, "formula": formula, "quadratic": b.quadratic,
                     "linear": b.linear, "log_term": b.log_term, "constant": b.constant,
                     "product": prod, "total": b.total_log, "p": p, "in_region": str(bool(ok)).lower()})
    emit(cfg, rows, ("s", "nu", "formula", "quadratic", "linear", "log_term", "constant", "product",
                     "total", "p", "in_region"))
    return EXIT_OK


@dataclass
class CompareRow:
    s: float
    nu: float
    gamma: float
    n_nodes: int
    logdet_num: float
    logdet_asy: float
    diff: float
    p: int
    runtime_ms: float


def compare_row(cfg, s: float, formula: str, chi: float | None) -> tuple[CompareRow, bool]:
    t0 = time.perf_counter()
    inst = _instance(cfg, s)
    num = log_det(discretize(inst, cfg.nodes, cfg.mode))
    if inst.gamma == 0.0:
        # the prediction is 0 only where the formula applies
        b, p, ok = predict(formula, inst, chi) if formula == "exp-region" else (None, 0, False)
    else:
        b, p, ok = predict(formula, inst, chi)
    val = b.total_log if b is not None else math.nan
    ms = (time.perf_counter() - t0) * 1e3
    return CompareRow(s, inst.nu, inst.gamma, cfg.nodes, num, val, num - val, p, ms), ok


def cmd_compare(cfg) -> int:
    chi = _chi(cfg)
    rows, flagged = [], []
    for s in _s_values(cfg):
        inst = _instance(cfg, s)
        formula = cfg.formula or _default_formula(inst)
        row, ok = compare_row(cfg, s, formula, chi)
        rows.append(asdict(row))
        rows[-1]["in_region"] = bool(ok)
        if not ok:
            flagged.append(s)
    for s in flagged:
        print(f"warning: s={fmt(s)} lies outside the region of formula "
              f"{cfg.formula or 'default'}", file=sys.stderr)
    if cfg.format == "csv":
        for r in rows:
            del r["in_region"]
    emit(cfg, rows, COMPARE_FIELDS + (("in_region",) if cfg.format == "json" else ()))
    return EXIT_OK


def cmd_rhcheck(cfg) -> int:
    p = _params(cfg)
    s = _s_values(cfg)[0]
    chi = _chi(cfg) or 0.0
    if cfg.nu_rule is not None:
        nu = asy.boundary_nu(s, chi, p.alpha)
    elif cfg.nu is not None:
        nu = cfg.nu
    else:
        nu = Deformation.from_gamma(cfg.gamma).nu
    try:
        rc = rhverify.RHConfig(p, s, chi, nu=nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    results = rhverify.run_checks(rc, cfg.which, cfg.points)
    rows = []
    for r in results:
        sm = r.summary()
        name = sm.get("check") or sm.get("contour")
        value = sm.get("value", sm.get("max_residual"))
        bound = sm.get("band") or sm.get("tol")
        rows.append({"check": name, "value": value,
                     "bound": json.dumps(bound) if cfg.format == "csv" else bound,
                     "passed": str(bool(sm["passed"])).lower() if cfg.format == "csv" else bool(sm["passed"])})
    emit(cfg, rows, ("check", "value", "bound", "passed"))
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} rhcheck item(s) failed", file=sys.stderr)
        if cfg.strict:
            return EXIT_RHCHECK
    return EXIT_OK


COMMANDS = {"det": cmd_det, "eigs": cmd_eigs, "hk": cmd_hk, "asy": cmd_asy,
            "compare": cmd_compare, "rhcheck": cmd_rhcheck}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = resolve(args)
        cfg.command = args.command
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"chgdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, asy.RegionError, np.linalg.LinAlgError) as exc:
        print(f"chgdet: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"chgdet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
