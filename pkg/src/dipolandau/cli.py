"""Command-line workbench for the dipole Landau-level analogs.

Subcommands:

    spectrum      closed-form levels over a quantum-number window
    wavefunction  sampled radial eigenfunction
    degeneracy    states sharing one level inside an angular window
    crosscheck    finite-difference eigenvalues against the closed form
    validate      field-configuration checks for Landau-analog quantization
    converge      eigenvalue error under grid refinement

All commands emit deterministic CSV (default) or JSON tables to stdout or
--output, and can render a PNG figure with --plot. The physical setup
comes from flags and/or a JSON --config file; flags override file values.
Exit codes: 0 success, 1 verification failure, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import plots
from .fields import DipoleFieldConfig, Model, validate_landau_conditions
from .numeric import (
    analytic_eigenvalue,
    convergence_study,
    grid_for_channel,
    numeric_spectrum,
    relative_eigenvalue_error,
)
from .spectra import (
    QuantumNumbers,
    cyclotron_frequency,
    dual_config,
    energy_for_model,
    enumerate_degenerate_states,
)
from .wavefn import length_scale_from_config, radial_eigenfunction, sample_radial

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

CROSSCHECK_TOL = 1e-4
CROSSCHECK_TOL_L0 = 1e-3

_DEFAULTS = {
    "model": Model.HMW,
    "mass": 1.0,
    "dipole_moment": 1.0,
    "source_density": 1.0,
    "sigma": 1,
}


class UsageError(Exception):
    """Bad arguments or unparseable configuration input."""


def _sigma(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError(f"sigma must be +1 or -1, got {text!r}")


def _model(text: str) -> Model:
    try:
        return Model(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"model must be 'lac' or 'hmw', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dipolandau",
        description="Landau-level analogs for neutral particles with permanent dipole moments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    out = common.add_argument_group("output")
    out.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="table format (default: csv)")
    out.add_argument("--output", default="-", metavar="PATH",
                     help="output path, '-' for stdout (default)")
    out.add_argument("--plot", default=None, metavar="PATH",
                     help="also render a PNG figure to PATH")
    phys = common.add_argument_group("physical setup")
    phys.add_argument("--config", default=None, metavar="PATH",
                      help="JSON configuration file; flags override its values")
    phys.add_argument("--model", type=_model, default=None, help="lac or hmw")
    phys.add_argument("--mass", type=float, default=None, help="particle mass M")
    phys.add_argument("--dipole-moment", type=float, default=None,
                      help="dipole strength (mu for lac, d for hmw)")
    phys.add_argument("--source-density", type=float, default=None,
                      help="source charge density (rho)")
    phys.add_argument("--sigma", type=_sigma, default=None, help="revolution sign, +1 or -1")

    p = sub.add_parser("spectrum", parents=[common],
                       help="closed-form levels over (nu, l) windows")
    p.add_argument("--l-min", type=int, default=-3)
    p.add_argument("--l-max", type=int, default=3)
    p.add_argument("--nu-max", type=int, default=3)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", parents=[common],
                       help="sample one radial eigenfunction")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--l", type=int, required=True, dest="ell")
    p.add_argument("--a", type=float, default=None,
                   help="length scale (default: from the configuration)")
    p.add_argument("--r-max", type=float, default=None,
                   help="sampling range (default: 10 length scales)")
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("degeneracy", parents=[common],
                       help="enumerate degenerate states at one level")
    p.add_argument("--level", type=int, required=True,
                   help="level in units of the cyclotron frequency")
    p.add_argument("--l-window", type=int, nargs=2, required=True,
                   metavar=("L_MIN", "L_MAX"))
    p.add_argument("--show-dual", action="store_true",
                   help="append the dual model and revolution sign per row")
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="finite-difference eigenvalues vs the closed form")
    p.add_argument("--l", type=int, default=1, dest="ell")
    p.add_argument("--k", type=int, default=5, help="number of levels")
    p.add_argument("--grid-n", type=int, default=4000, help="interior grid points")
    p.add_argument("--r-max", type=float, default=None,
                   help="grid extent (default: 20 length scales)")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("validate", parents=[common],
                       help="check the Landau-analog field conditions")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("converge", parents=[common],
                       help="eigenvalue error under grid refinement")
    p.add_argument("--l", type=int, default=2, dest="ell")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--grid-n", type=int, nargs="+", default=[500, 1001, 2003],
                   help="interior point counts, coarse to fine (need >= 3)")
    p.add_argument("--r-max", type=float, default=None)
    p.set_defaults(func=cmd_converge)

    return parser


def resolve_config(args) -> DipoleFieldConfig:
    """Merge hard defaults, an optional JSON file, and explicit flags."""
    values = dict(_DEFAULTS)
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read configuration file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"configuration file is not valid JSON: {exc}") from exc
        file_config = DipoleFieldConfig.from_dict(data)
        values.update(file_config.to_dict())
        values["model"] = file_config.model
    for key in ("model", "mass", "dipole_moment", "source_density", "sigma"):
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    return DipoleFieldConfig(**values)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def render_table(rows, columns, fmt: str) -> str:
    """Deterministic CSV or JSON rendering of a list of row dicts."""
    if fmt == "json":
        return json.dumps([{c: row[c] for c in columns} for row in rows], indent=2) + "\n"
    lines = [",".join(columns)]
    lines.extend(",".join(_format_cell(row[c]) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"


def _write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_spectrum(args) -> int:
    if args.l_min > args.l_max:
        raise UsageError(f"empty angular window: --l-min {args.l_min} > --l-max {args.l_max}")
    if args.nu_max < 0:
        raise UsageError(f"--nu-max must be nonnegative, got {args.nu_max}")
    config = resolve_config(args)
    omega = cyclotron_frequency(config)

    keyed = []
    for ell in range(args.l_min, args.l_max + 1):
        for nu in range(args.nu_max + 1):
            q = QuantumNumbers(nu=nu, ell=ell, sigma=config.sigma)
            level = energy_for_model(config.model, q, omega)
            keyed.append(((level.half_units, ell, nu), {
                "nu": nu,
                "ell": ell,
                "sigma": config.sigma,
                "energy_over_omega": level.half_units / 2.0,
                "energy": level.value,
            }))
    rows = [row for _, row in sorted(keyed, key=lambda item: item[0])]

    columns = ("nu", "ell", "sigma", "energy_over_omega", "energy")
    _write_output(render_table(rows, columns, args.format), args.output)
    if args.plot:
        plots.spectrum_figure(rows, config.model.value, args.plot)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    config = resolve_config(args)
    scale = args.a if args.a is not None else length_scale_from_config(config)
    if not scale > 0:
        raise UsageError(f"length scale must be positive, got {scale}")
    if args.nu < 0:
        raise UsageError(f"--nu must be nonnegative, got {args.nu}")
    r_max = args.r_max if args.r_max is not None else 10.0 * scale
    if not r_max > 0:
        raise UsageError(f"--r-max must be positive, got {r_max}")
    if args.samples < 2:
        raise UsageError(f"--samples must be at least 2, got {args.samples}")

    q = QuantumNumbers(nu=args.nu, ell=args.ell, sigma=config.sigma)
    f = radial_eigenfunction(q, scale)
    samples = sample_radial(f, r_max, args.samples)

    rows = [{"r": r, "R": value} for r, value in samples]
    _write_output(render_table(rows, ("r", "R"), args.format), args.output)
    if args.plot:
        plots.wavefunction_figure(
            samples, f"radial state nu={args.nu}, l={args.ell}, a={scale:g}", args.plot
        )
    return EXIT_OK


def cmd_degeneracy(args) -> int:
    low, high = args.l_window
    if low > high:
        raise UsageError(f"empty angular window: {low} > {high}")
    if args.level < 0:
        raise UsageError(f"--level must be nonnegative, got {args.level}")
    config = resolve_config(args)
    states = enumerate_degenerate_states(config.model, config.sigma, args.level, low, high)

    dual = dual_config(config)
    rows = []
    for q in states:
        row = {"nu": q.nu, "ell": q.ell, "sigma": q.sigma}
        if args.show_dual:
            row["dual_model"] = dual.model.value
            row["dual_sigma"] = dual.sigma
        rows.append(row)
    columns = ("nu", "ell", "sigma")
    if args.show_dual:
        columns += ("dual_model", "dual_sigma")
    _write_output(render_table(rows, columns, args.format), args.output)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    if args.k < 1:
        raise UsageError(f"--k must be positive, got {args.k}")
    config = resolve_config(args)
    try:
        grid = grid_for_channel(config, args.ell, nu_max=args.k - 1,
                                r_max=args.r_max, n_points=args.grid_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    solution = numeric_spectrum(config, args.ell, grid, args.k)

    omega = solution.omega
    rows = []
    for index, lam in enumerate(solution.eigenvalues):
        exact = analytic_eigenvalue(config, index, args.ell)
        rows.append({
            "k": index,
            "numeric": lam,
            "analytic": exact,
            "relative_error": relative_eigenvalue_error(lam, exact, omega),
        })
    tolerance = CROSSCHECK_TOL_L0 if args.ell == 0 else CROSSCHECK_TOL
    worst = max(row["relative_error"] for row in rows)
    passed = worst < tolerance

    columns = ("k", "numeric", "analytic", "relative_error")
    _write_output(render_table(rows, columns, args.format), args.output)
    print(
        f"max relative error = {worst:.3e} (tolerance {tolerance:.1e}): "
        f"{'PASS' if passed else 'FAIL'}",
        file=sys.stderr,
    )
    if args.plot:
        plots.crosscheck_figure(rows, tolerance, args.plot)
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


def cmd_validate(args) -> int:
    config = resolve_config(args)
    report = validate_landau_conditions(config)
    rows = [
        {"check": c.name, "status": "PASS" if c.passed else "FAIL", "residual": c.residual}
        for c in report
    ]
    _write_output(render_table(rows, ("check", "status", "residual"), args.format), args.output)
    return EXIT_OK if report.all_passed else EXIT_VERIFICATION_FAILED


def cmd_converge(args) -> int:
    if args.k < 1:
        raise UsageError(f"--k must be positive, got {args.k}")
    if len(args.grid_n) < 3:
        raise UsageError(f"need at least 3 grid sizes, got {len(args.grid_n)}")
    config = resolve_config(args)
    r_max = args.r_max if args.r_max is not None else 20.0 * length_scale_from_config(config)
    try:
        grids = [grid_for_channel(config, args.ell, nu_max=args.k - 1,
                                  r_max=r_max, n_points=n) for n in args.grid_n]
        study = convergence_study(config, args.ell, args.k, grids)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc

    rows = []
    for index, row in enumerate(study.rows):
        rows.append({
            "step": row.step,
            "n_points": row.n_points,
            "max_rel_error": row.max_rel_error,
            "order": study.orders[index - 1] if index > 0 else None,
        })
    columns = ("step", "n_points", "max_rel_error", "order")
    _write_output(render_table(rows, columns, args.format), args.output)
    if args.plot:
        plots.convergence_figure(rows, args.plot)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
