"""Command-line front end: solve, revolve, check, relax.

Configuration comes from defaults, overridden by an INI-style config
file (one section per command), overridden by command-line flags.
Data files are plain text with '.' decimals and 17 significant digits;
identical configurations produce byte-identical files when the banner
comment line (version + timestamp) is suppressed with --no-banner.

Exit codes: 0 success, 1 configuration validation, 2 domain or
feasibility error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, fields
from datetime import datetime, timezone

import numpy as np

from . import __version__, catenary, charts, checks, relaxer, revolution
from .catenary import CatenaryType
from .errors import DomainError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the validation exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


@dataclass
class SolveConfig:
    type: str = "elliptic"
    r: float = 1.0
    lam: float = 0.0
    u0: float = 1.0
    v0: float = 0.0
    theta0: float = math.pi / 6
    smax: float = 4.0
    step: float = 1e-3
    out: str = "curve.csv"
    no_banner: bool = False


@dataclass
class RevolveConfig:
    type: str = "elliptic"
    r: float = 1.0
    lam: float = 0.0
    u0: float = 1.0
    v0: float = 0.0
    theta0: float = math.pi / 6
    smax: float = 4.0
    step: float = 1e-3
    curve: str = ""  # optional input curve CSV; inline solve otherwise
    ntheta: int = 40
    theta_min: float = math.nan  # per-type default when nan
    theta_max: float = math.nan
    projection: str = "ambient"
    out: str = "mesh.obj"
    no_banner: bool = False


@dataclass
class CheckConfig:
    seed: int = 0
    n_random: int = 100
    only: str = ""


@dataclass
class RelaxConfig:
    type: str = "elliptic"
    r: float = 1.0
    ua: float = 1.0
    va: float = -0.5
    ub: float = 1.0
    vb: float = 0.5
    slack: float = 0.1
    target_length: float = math.nan  # overrides slack when set
    n: int = 64
    max_iter: int = 200_000
    step_size: float = math.nan  # default 1e-2 * r when nan
    grad_tol: float = 1e-8
    out: str = "chain.csv"
    no_banner: bool = False


_CONFIG_TYPES = {
    "solve": SolveConfig,
    "revolve": RevolveConfig,
    "check": CheckConfig,
    "relax": RelaxConfig,
}

# config-file/flag key for the multiplier; "lambda" is reserved in Python
_KEY_ALIASES = {"lambda": "lam"}


def load_config(command, config_path, overrides):
    """Defaults < config-file section < explicit flags."""
    cfg = _CONFIG_TYPES[command]()
    known = {f.name: f.type for f in fields(cfg)}
    if config_path:
        parser = configparser.ConfigParser()
        try:
            with open(config_path) as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"config: cannot read {config_path}: {exc}")
        if parser.has_section(command):
            for key, raw in parser.items(command):
                key = _KEY_ALIASES.get(key, key)
                if key not in known:
                    raise ConfigError(f"config: unknown key '{key}' in [{command}]")
                setattr(cfg, key, _coerce(key, raw, getattr(cfg, key)))
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def _coerce(key, raw, current):
    if isinstance(current, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    return raw


def _parse_type(name):
    try:
        return CatenaryType(name)
    except ValueError:
        raise ConfigError(f"type: must be one of elliptic|hyperbolic|parabolic, got '{name}'")


def _validate_positive(cfg, *names):
    for name in names:
        value = getattr(cfg, name)
        if not (value > 0):
            raise ConfigError(f"{name}: must be positive, got {value}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fmt(x):
    return format(float(x), ".17g")


def _banner_lines(no_banner):
    if no_banner:
        return []
    stamp = datetime.now(timezone.utc).isoformat()
    return [f"# hypcat {__version__} {stamp}"]


def write_curve_csv(path, curve, no_banner):
    res = catenary.killing_residuals(curve)
    kappa = catenary.catenary_kappa(
        curve.ctype, curve.u, curve.v, curve.du, curve.dv, curve.r, curve.lam
    )
    cl = catenary.clairaut_of_state(curve.u, curve.dv, curve.r)
    lines = _banner_lines(no_banner)
    lines.append("s,u,v,du,dv,x,y,z,kappa,clairaut,killing_residual")
    for i in range(len(curve)):
        row = [
            curve.s[i], curve.u[i], curve.v[i], curve.du[i], curve.dv[i],
            curve.embedded[i, 0], curve.embedded[i, 1], curve.embedded[i, 2],
            kappa[i], cl[i], res[i],
        ]
        lines.append(",".join(_fmt(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _project_vertex(p4, mode, r):
    if mode == "poincare":
        return r * p4[1:] / (r + p4[0])
    return p4[1:]


def write_mesh_obj(path, mesh, mode, r, no_banner):
    lines = _banner_lines(no_banner)
    for i in range(mesh.rows):
        for j in range(mesh.cols):
            x = _project_vertex(mesh.vertices[i, j], mode, r)
            lines.append("v " + " ".join(_fmt(c) for c in x))

    def vid(i, j):
        return i * mesh.cols + j + 1

    for i in range(mesh.rows - 1):
        for j in range(mesh.cols - 1):
            a, b = vid(i, j), vid(i, j + 1)
            c, d = vid(i + 1, j + 1), vid(i + 1, j)
            lines.append(f"f {a} {b} {c}")
            lines.append(f"f {a} {c} {d}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_h_sidecar(path, mesh, no_banner):
    lines = _banner_lines(no_banner)
    # ambient 4-coordinates ride along: the OBJ keeps only 3 components
    lines.append("row,col,H,x0,x1,x2,x3")
    for i in range(mesh.rows):
        for j in range(mesh.cols):
            p = mesh.vertices[i, j]
            lines.append(
                f"{i},{j}," + ",".join(_fmt(x) for x in (mesh.H[i, j], *p))
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_curve_csv(path, ctype, r, lam):
    """Load a solve CSV back into a Curve (jets rebuilt from the law)."""
    try:
        with open(path) as fh:
            rows = [
                line for line in fh
                if line.strip() and not line.startswith("#")
                and not line.startswith("s,")
            ]
    except OSError as exc:
        raise ConfigError(f"curve: cannot read {path}: {exc}")
    data = np.array([[float(x) for x in line.split(",")] for line in rows])
    s, u, v, du, dv = data[:, 0], data[:, 1], data[:, 2], data[:, 3], data[:, 4]
    ddu = np.empty_like(u)
    ddv = np.empty_like(u)
    for i in range(len(u)):
        ddu[i], ddv[i], _ = catenary._rhs(ctype, u[i], v[i], du[i], dv[i], r, lam)
    return catenary.Curve(
        ctype=ctype, chart=charts.ChartId.SEMI_GEODESIC, r=r, lam=lam,
        s=s, u=u, v=v, du=du, dv=dv, ddu=ddu, ddv=ddv,
        embedded=charts.psi(u, v, r), status="ok",
    )


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_solve(cfg):
    ctype = _parse_type(cfg.type)
    _validate_positive(cfg, "r", "smax", "step")
    curve = catenary.integrate(
        ctype, (cfg.u0, cfg.v0, cfg.theta0), r=cfg.r, lam=cfg.lam,
        s_max=cfg.smax, step=cfg.step,
    )
    write_curve_csv(cfg.out, curve, cfg.no_banner)
    if curve.status != "ok":
        print(f"warning: integration stopped early ({curve.status})", file=sys.stderr)
    print(f"wrote {cfg.out} ({len(curve)} samples, status {curve.status})")
    return EXIT_OK


def _default_theta_range(ctype):
    if ctype is CatenaryType.ELLIPTIC:
        return 0.0, 2.0 * math.pi
    return -1.0, 1.0


def cmd_revolve(cfg):
    ctype = _parse_type(cfg.type)
    _validate_positive(cfg, "r")
    if cfg.ntheta < 2:
        raise ConfigError(f"ntheta: must be at least 2, got {cfg.ntheta}")
    if cfg.projection not in ("ambient", "poincare"):
        raise ConfigError(f"projection: must be ambient|poincare, got '{cfg.projection}'")
    if cfg.curve:
        curve = read_curve_csv(cfg.curve, ctype, cfg.r, cfg.lam)
    else:
        _validate_positive(cfg, "smax", "step")
        curve = catenary.integrate(
            ctype, (cfg.u0, cfg.v0, cfg.theta0), r=cfg.r, lam=cfg.lam,
            s_max=cfg.smax, step=cfg.step,
        )
    tmin = cfg.theta_min
    tmax = cfg.theta_max
    if math.isnan(tmin) or math.isnan(tmax):
        tmin, tmax = _default_theta_range(ctype)
    mesh = revolution.build_mesh(ctype, curve, tmin, tmax, cfg.ntheta)
    write_mesh_obj(cfg.out, mesh, cfg.projection, cfg.r, cfg.no_banner)
    sidecar = cfg.out.rsplit(".", 1)[0] + "_H.csv"
    write_h_sidecar(sidecar, mesh, cfg.no_banner)
    habs = np.abs(mesh.H)
    print(f"wrote {cfg.out} and {sidecar} ({mesh.rows}x{mesh.cols} vertices)")
    print(f"max|H| = {habs.max():.6e}  mean|H| = {habs.mean():.6e}")
    return EXIT_OK


def cmd_check(cfg):
    if cfg.n_random < 1:
        raise ConfigError(f"n_random: must be at least 1, got {cfg.n_random}")
    results = checks.run_checks(seed=cfg.seed, n_random=cfg.n_random,
                                only=cfg.only or None)
    if not results:
        raise ConfigError(f"only: no check matches '{cfg.only}'")
    width = max(len(r.name) for r in results)
    print(f"seed={cfg.seed} random-samples={cfg.n_random}")
    print(f"{'check':<{width}}  {'samples':>7}  {'max residual':>13}  "
          f"{'tolerance':>9}  result")
    failed = 0
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        print(f"{r.name:<{width}}  {r.samples:>7}  {r.max_residual:>13.3e}  "
              f"{r.tolerance:>9.0e}  {flag}")
        if r.note:
            print(f"{'':<{width}}  note: {r.note}")
    return EXIT_OK if failed == 0 else EXIT_DOMAIN


def cmd_relax(cfg):
    ctype = _parse_type(cfg.type)
    _validate_positive(cfg, "r", "grad_tol")
    if cfg.slack < 0:
        raise ConfigError(f"slack: must be nonnegative, got {cfg.slack}")
    if cfg.n < 2:
        raise ConfigError(f"n: must be at least 2, got {cfg.n}")
    if cfg.max_iter < 1:
        raise ConfigError(f"max_iter: must be positive, got {cfg.max_iter}")
    chain0 = relaxer.initial_chain(
        ctype, (cfg.ua, cfg.va), (cfg.ub, cfg.vb), cfg.slack, cfg.n, cfg.r,
        target_length=None if math.isnan(cfg.target_length) else cfg.target_length,
    )
    opts = relaxer.RelaxOptions(
        max_iter=cfg.max_iter,
        step_size=None if math.isnan(cfg.step_size) else cfg.step_size,
        grad_tol=cfg.grad_tol,
    )
    chain, report = relaxer.relax(chain0, opts)
    if report.status == "Infeasible":
        print("error: target length shorter than the endpoint distance",
              file=sys.stderr)
        return EXIT_DOMAIN
    lines = _banner_lines(cfg.no_banner)
    lines.append("i,u,v,kappa_residual")
    for i in range(len(chain.nodes)):
        res = (relaxer.discrete_kappa_residual(chain, i)
               if 0 < i < len(chain.nodes) - 1 else 0.0)
        lines.append(f"{i},{_fmt(chain.nodes[i, 0])},{_fmt(chain.nodes[i, 1])},"
                     f"{_fmt(res)}")
    with open(cfg.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    report_path = cfg.out.rsplit(".", 1)[0] + "_report.json"
    payload = {
        "iterations": report.iterations,
        "final_energy": report.final_energy,
        "grad_norm": report.grad_norm,
        "max_kappa_residual": report.max_kappa_residual,
        "status": report.status,
    }
    with open(report_path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {cfg.out} and {report_path} "
          f"(status {report.status}, {report.iterations} iterations)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--config", default=None, help="INI config file")
    sub.add_argument("--out", default=None, help="output path")
    sub.add_argument("--no-banner", action="store_true", default=None,
                     dest="no_banner",
                     help="suppress the version/timestamp comment line")


def _add_solve_args(sub):
    sub.add_argument("--type", default=None,
                     help="elliptic|hyperbolic|parabolic")
    sub.add_argument("--r", type=float, default=None, help="curvature radius")
    sub.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="length-constraint multiplier (weight offset)")
    sub.add_argument("--u0", type=float, default=None)
    sub.add_argument("--v0", type=float, default=None)
    sub.add_argument("--theta0", type=float, default=None,
                     help="initial heading from the u-direction, radians")
    sub.add_argument("--smax", type=float, default=None, help="arc length")
    sub.add_argument("--step", type=float, default=None, help="RK4 step")


def build_parser():
    parser = _Parser(prog="hypcat",
                     description="Catenaries and minimal surfaces of "
                                 "revolution on the hyperboloid")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="integrate a catenary, write a CSV")
    _add_solve_args(p)
    _add_common(p)

    p = subs.add_parser("revolve", help="sweep a curve into a mesh, write OBJ")
    _add_solve_args(p)
    p.add_argument("--curve", default=None, help="input curve CSV (else solve inline)")
    p.add_argument("--ntheta", type=int, default=None, help="rotation samples")
    p.add_argument("--projection", default=None, help="ambient|poincare")
    _add_common(p)

    p = subs.add_parser("check", help="run the verification suites")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-random", dest="n_random", type=int, default=None)
    p.add_argument("--only", default=None, help="filter checks by substring")
    p.add_argument("--config", default=None)

    p = subs.add_parser("relax", help="relax a fixed-length chain, write CSV+JSON")
    p.add_argument("--type", default=None)
    p.add_argument("--r", type=float, default=None)
    _add_common(p)

    return parser


_COMMANDS = {
    "solve": cmd_solve,
    "revolve": cmd_revolve,
    "check": cmd_check,
    "relax": cmd_relax,
}


def main(argv=None):
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config", None)
    try:
        cfg = load_config(command, config_path, args)
        return _COMMANDS[command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
