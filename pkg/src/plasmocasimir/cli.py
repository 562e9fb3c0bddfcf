"""Command-line front end: ``plasmocasimir <command> [flags]``.

Every command writes a table as CSV (``#`` metadata header, 17 significant
digits, LF line endings) or JSON. Exit codes: 0 success, 1 failed selftest,
2 invalid input, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .analysis import FIGURES, PressureModel, Table, inversion_distance, pressure
from .errors import ConvergenceError, DomainError
from .lifshitz import gamma_perfect_mirror, phi_lifshitz, sigma_lifshitz_lowT
from .nonequilibrium import phi_noneq_full, phi_noneq_propagating
from .plasmon_energy import beta, beta_asymptotic_high, beta_asymptotic_low, eta, phi, theta
from .plasmon_entropy import sigma_integral
from .quadrature import QuadratureConfig
from .scales import MaterialParams, casimir_entropy, material as lookup_material
from .specfun import ZETA3, L_combination
from .dispersion import z_plus

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3


class _UsageError(DomainError):
    """Bad flag combination; reported like any other invalid input."""


# ---------------------------------------------------------------- output


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def render(table: Table, metadata: dict[str, str], fmt: str) -> str:
    if fmt == "json":
        payload = {
            "metadata": metadata,
            "title": table.title,
            "columns": table.columns,
            "rows": [[_json_value(v) for v in row] for row in table.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    buffer = io.StringIO()
    for key, value in metadata.items():
        buffer.write(f"# {key}: {value}\n")
    buffer.write(f"# title: {table.title}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


# ---------------------------------------------------------------- point evaluation


@dataclass(frozen=True)
class _Context:
    cfg: QuadratureConfig
    material: MaterialParams


def _map_points(fn: Callable, points: Sequence, workers: int) -> list:
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def _guarded(fn: Callable, width: int, sweeping: bool, point):
    """Run ``fn(point)``; in a sweep a failure becomes a row of NaN with a status."""
    try:
        return (*fn(point), "ok")
    except (DomainError, ConvergenceError) as exc:
        if not sweeping:
            raise
        return (*([math.nan] * width), f"{type(exc).__name__}: {exc}")


def _row_eta(ctx: _Context, point):
    lam, _ = point
    return (lam, eta(lam, ctx.cfg))


def _row_theta(ctx: _Context, point):
    lam, tau = point
    return (lam, tau, theta(lam, tau, ctx.cfg))


def _row_phi(ctx: _Context, point):
    lam, tau = point
    result = phi(lam, tau, ctx.cfg, ctx.material)
    return (lam, tau, result.eta, result.theta, result.phi, result.absolute)


def _row_entropy(ctx: _Context, point, full: bool):
    lam, tau = point
    sigma = sigma_lifshitz_lowT(lam, tau, ctx.cfg) if full else sigma_integral(lam, tau, ctx.cfg).sigma
    return (lam, tau, sigma, casimir_entropy(lam * ctx.material.plasma_wavelength) * sigma)


def _row_lifshitz(ctx: _Context, point):
    lam, tau = point
    return (lam, tau, phi_lifshitz(lam, tau, ctx.cfg))


def _row_pressure(ctx: _Context, point, model: str, tau_hot):
    lam, tau = point
    result = pressure(model, lam, tau, tau_hot, ctx.cfg, ctx.material)
    return (lam, tau, result.phi, result.scaled, result.normalized_fig9, result.absolute)


def _row_inversion(ctx: _Context, point, model: str, tau_hot, bracket):
    _, tau = point
    result = inversion_distance(model, tau, tau_hot, ctx.cfg, bracket)
    lam_inv = result.lam if result.found else math.nan
    return (tau, lam_inv, lam_inv * ctx.material.plasma_wavelength, result.found)


_SCENARIOS = {
    "a": ("equilibrium", PressureModel.LIFSHITZ),
    "b": ("plasmons of one plate hot", PressureModel.NONEQ_B),
    "c": ("propagating plasmon branch hot", PressureModel.NONEQ_C),
}


def _row_noneq(ctx: _Context, point, scenario: str, tau_hot: float):
    lam, tau = point
    if scenario == "a":
        value = phi_lifshitz(lam, tau, ctx.cfg)
    elif scenario == "b":
        value = phi_noneq_full(lam, tau, tau_hot, ctx.cfg)
    else:
        value = phi_noneq_propagating(lam, tau, tau_hot, ctx.cfg)
    model = _SCENARIOS[scenario][1]
    result = pressure(model, lam, tau, None if scenario == "a" else tau_hot, ctx.cfg, ctx.material)
    return (lam, tau, tau_hot, value, result.scaled, result.normalized_fig9, result.absolute)


# ---------------------------------------------------------------- argument handling


def _positive(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if not (value >= 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text!r}")
    return value


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    geometry = common.add_argument_group("geometry")
    geometry.add_argument("--lambda", dest="lam", type=_positive, help="scaled distance L / lambda_p")
    geometry.add_argument("--tau", type=_non_negative, help="scaled temperature 2 pi k_B T / (hbar omega_p)")
    geometry.add_argument("--lambda-min", type=_positive)
    geometry.add_argument("--lambda-max", type=_positive)
    geometry.add_argument("--points", type=int, default=11)
    geometry.add_argument("--log", action="store_true", help="logarithmic lambda grid")
    mat = common.add_argument_group("material")
    mat.add_argument("--material", default="gold", choices=["gold", "custom"])
    mat.add_argument("--plasma-wavelength-nm", type=_positive)
    num = common.add_argument_group("numerics and output")
    num.add_argument("--rel-tol", type=_positive, default=QuadratureConfig.rel_tol)
    num.add_argument("--abs-tol", type=_non_negative, default=QuadratureConfig.abs_tol)
    num.add_argument("--workers", type=int, default=1, help="processes for sweeps")
    num.add_argument("--format", choices=["csv", "json"], default="csv")
    num.add_argument("--output", help="write to this file instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="plasmocasimir", description="Plasmonic and full Casimir free energy, entropy and pressure.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eta", parents=[common], help="zero-temperature plasmonic factor")
    sub.add_parser("theta", parents=[common], help="thermal plasmonic factor")
    sub.add_parser("phi", parents=[common], help="total plasmonic factor and free energy")
    entropy = sub.add_parser("entropy", parents=[common], help="entropy factor")
    entropy.add_argument("--full", action="store_true", help="all modes instead of plasmons only")
    sub.add_parser("lifshitz", parents=[common], help="full free energy factor")
    press = sub.add_parser("pressure", parents=[common], help="pressure -dF/dL")
    press.add_argument("--model", choices=[m.value for m in PressureModel], default="plasmonic")
    press.add_argument("--tau-hot", type=_non_negative, help="second temperature of the non-equilibrium models")
    inversion = sub.add_parser("inversion", parents=[common], help="distance where the pressure turns repulsive")
    inversion.add_argument("--model", choices=[m.value for m in PressureModel], default="plasmonic")
    inversion.add_argument("--taus", type=_non_negative, nargs="+", help="several temperatures at once")
    inversion.add_argument("--tau-hot", type=_non_negative)
    noneq = sub.add_parser("noneq", parents=[common], help="non-equilibrium scenarios")
    noneq.add_argument("--scenario", choices=sorted(_SCENARIOS), required=True)
    noneq.add_argument("--tau1", type=_non_negative, help="scenario b: temperature of everything else")
    noneq.add_argument("--tau2", type=_non_negative, help="scenario b: temperature of the hot plasmons")
    noneq.add_argument("--tau-pr", type=_non_negative, help="scenario c: temperature of the propagating plasmon")
    fig = sub.add_parser("figure", parents=[common], help="tabulate a figure preset")
    fig.add_argument("number", type=int, choices=sorted(FIGURES))
    sub.add_parser("selftest", parents=[common], help="quick consistency checks")
    return parser


def _context(args) -> _Context:
    if args.material == "custom" and args.plasma_wavelength_nm is None:
        raise _UsageError("--material custom needs --plasma-wavelength-nm")
    mat = lookup_material(args.material, args.plasma_wavelength_nm if args.material == "custom" else None)
    cfg = QuadratureConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    return _Context(cfg, mat)


def _lambda_grid(args, default: float | None = None) -> tuple[list[float], bool]:
    """Lambda values and whether they form a sweep."""
    if args.lambda_min is not None or args.lambda_max is not None:
        if args.lambda_min is None or args.lambda_max is None:
            raise _UsageError("a sweep needs both --lambda-min and --lambda-max")
        if not args.lambda_min < args.lambda_max:
            raise _UsageError("--lambda-min must be below --lambda-max")
        if args.points < 2:
            raise _UsageError("--points must be at least 2")
        grid = np.geomspace if args.log else np.linspace
        return [float(v) for v in grid(args.lambda_min, args.lambda_max, args.points)], True
    lam = args.lam if args.lam is not None else default
    if lam is None:
        raise _UsageError("give --lambda or a --lambda-min/--lambda-max sweep")
    return [lam], False


def _run_points(args, ctx, fn, columns, default_tau=0.0, default_lambda=None) -> Table:
    lams, sweeping = _lambda_grid(args, default_lambda)
    tau = args.tau if args.tau is not None else default_tau
    worker = partial(_guarded, partial(fn, ctx), len(columns), sweeping)
    rows = _map_points(worker, [(lam, tau) for lam in lams], args.workers)
    return Table(args.command, [*columns, "status"], rows)


def _command_table(args, ctx: _Context) -> Table:
    cmd = args.command
    if cmd == "eta":
        return _run_points(args, ctx, _row_eta, ["lambda", "eta"])
    if cmd == "theta":
        return _run_points(args, ctx, _row_theta, ["lambda", "tau", "theta"])
    if cmd == "phi":
        return _run_points(args, ctx, _row_phi, ["lambda", "tau", "eta", "theta", "phi", "free_energy_J_m2"])
    if cmd == "entropy":
        if not (args.tau or 0) > 0:
            raise _UsageError("entropy needs --tau > 0")
        column = "sigma_full" if args.full else "sigma"
        return _run_points(
            args, ctx, partial(_row_entropy, full=args.full), ["lambda", "tau", column, "entropy_J_K_m2"]
        )
    if cmd == "lifshitz":
        return _run_points(args, ctx, _row_lifshitz, ["lambda", "tau", "phi_lif"])
    if cmd == "pressure":
        row = partial(_row_pressure, model=args.model, tau_hot=args.tau_hot)
        columns = ["lambda", "tau", "phi", "pressure_scaled", "pressure_normalized", "pressure_Pa"]
        return _run_points(args, ctx, row, columns)
    if cmd == "inversion":
        taus = args.taus if args.taus else [args.tau if args.tau is not None else 0.0]
        lo = args.lambda_min if args.lambda_min is not None else 0.01
        hi = args.lambda_max if args.lambda_max is not None else (80.0 if args.model != "plasmonic" else 10.0)
        if not lo < hi:
            raise _UsageError("--lambda-min must be below --lambda-max")
        row = partial(_row_inversion, ctx, model=args.model, tau_hot=args.tau_hot, bracket=(lo, hi))
        columns = ["tau", "lambda_inv", "distance_m", "found"]
        worker = partial(_guarded, row, len(columns), False)
        rows = [worker((None, tau)) for tau in taus]
        return Table("inversion", [*columns, "status"], rows)
    if cmd == "noneq":
        if args.scenario == "b":
            base = args.tau1 if args.tau1 is not None else (args.tau if args.tau is not None else 0.018)
            hot = args.tau2 if args.tau2 is not None else 0.04
        else:
            base = args.tau if args.tau is not None else (args.tau1 if args.tau1 is not None else 0.018)
            hot = args.tau_pr if args.tau_pr is not None else (base if args.scenario == "a" else 0.04)
        args.tau = base
        row = partial(_row_noneq, scenario=args.scenario, tau_hot=hot)
        columns = ["lambda", "tau", "tau_hot", "phi", "pressure_scaled", "pressure_normalized", "pressure_Pa"]
        table = _run_points(args, ctx, row, columns)
        table.title = f"scenario {args.scenario}: {_SCENARIOS[args.scenario][0]}"
        return table
    if cmd == "figure":
        table = FIGURES[args.number](ctx.cfg, ctx.material)
        return Table(f"figure {args.number}: {table.title}", table.columns, table.rows)
    if cmd == "selftest":
        return selftest(ctx.cfg)
    raise _UsageError(f"unknown command {cmd!r}")


def selftest(cfg: QuadratureConfig) -> Table:
    """A handful of fast limits that any working installation reproduces."""
    checks = [
        ("eta short-distance slope", eta(1e-3, cfg) / 1e-3, 1.790, 5e-3),
        ("eta at lambda = 100", eta(100.0, cfg), -74.57 * 10 + 60, 1e-2),
        ("beta low temperature", beta(0.01, cfg) / beta_asymptotic_low(0.01), 1.0, 1e-2),
        ("beta high temperature", beta(1e3, cfg) / beta_asymptotic_high(1e3), 1.0, 1e-2),
        ("thermal combination at 50", L_combination(50.0), ZETA3, 1e-14),
        ("z_plus small lambda", z_plus(1e-3) / (2 * math.pi * 1e-3) ** 2, 1.0, 1e-3),
        ("z_plus large lambda", z_plus(1e3) / math.pi**2, 1.0, 1e-3),
        ("perfect mirror kernel", gamma_perfect_mirror(0.0, cfg), -ZETA3 / 4, 1e-12),
        ("high-temperature entropy", sigma_integral(0.01, 10.0, cfg).sigma, 0.5, 2e-2),
    ]
    table = Table("selftest", ["check", "value", "expected", "tolerance", "passed"])
    for name, value, expected, tol in checks:
        table.rows.append((name, value, expected, tol, abs(value - expected) <= tol * abs(expected)))
    return table


def _metadata(argv: Sequence[str], ctx: _Context) -> dict[str, str]:
    return {
        "command": shlex.join(["plasmocasimir", *argv]),
        "version": __version__,
        "material": f"{ctx.material.name} (lambda_p = {ctx.material.plasma_wavelength * 1e9:.6g} nm)",
        "rel_tol": "%.17g" % ctx.cfg.rel_tol,
        "abs_tol": "%.17g" % ctx.cfg.abs_tol,
    }


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        ctx = _context(args)
        table = _command_table(args, ctx)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    text = render(table, _metadata(argv, ctx), args.format)
    if args.output:
        with open(args.output, "w", newline="\n", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "selftest" and not all(row[-1] for row in table.rows):
        return EXIT_SELFTEST_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
