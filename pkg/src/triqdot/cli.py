"""Command-line interface: parameter sweeps, figure presets and point probes."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .discord import gqd_closed_form, gqd_minimize
from .concurrence import tau3
from .linalg import von_neumann_entropy
from .model import ModelParams, build_hamiltonian
from .sweep import (
    DEFAULT_HBAR_JZ_MEV,
    DEFAULT_HBAR_OMEGA_MEV,
    emit_csv,
    emit_plot_script,
    figure_preset,
    parse_config,
    run_sweep,
    _parse_float_list,
)
from .thermal import closed_form_elements, gibbs_state, partition_function, validate_blocks


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triqdot",
        description="Thermal quantum correlations of three coupled exciton qubits")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run the sweep described by a config file")
    sweep.add_argument("--config", required=True, help="flat key = value config file")
    sweep.add_argument("--out", help="override the configured output CSV path")
    sweep.add_argument("--temps", help="override temperatures (list or min:max:steps)")
    sweep.add_argument("--lambdas", help="override the transfer couplings (meV)")
    sweep.add_argument("--omegas", help="override the field couplings (meV)")
    sweep.add_argument("--seed", type=int, help="override the minimizer seed")
    sweep.add_argument("--threads", type=int, default=1, help="parallel worker cap")

    figure = sub.add_parser("figure", help="run a built-in figure preset")
    figure.add_argument("--preset", type=int, choices=(1, 2, 3), required=True)
    figure.add_argument("--out", default=".", help="output directory")
    figure.add_argument("--threads", type=int, default=1, help="parallel worker cap")

    point = sub.add_parser("point", help="inspect a single parameter point")
    point.add_argument("--T", type=float, required=True, help="temperature in K")
    point.add_argument("--lambda", dest="hbar_lambda", type=float, required=True,
                       help="transfer coupling in meV")
    point.add_argument("--omega-meV", dest="hbar_Omega", type=float, default=0.0,
                       help="field coupling in meV")
    point.add_argument("--jz-meV", dest="hbar_Jz", type=float,
                       default=DEFAULT_HBAR_JZ_MEV, help="dipolar coupling in meV")
    point.add_argument("--exciton-meV", dest="hbar_omega", type=float,
                       default=DEFAULT_HBAR_OMEGA_MEV,
                       help="exciton transition energy in meV")
    point.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_sweep(args: argparse.Namespace) -> None:
    cfg = parse_config(args.config)
    overrides = {}
    if args.out:
        overrides["output_path"] = args.out
    if args.temps:
        overrides["temps"] = _parse_float_list(args.temps)
    if args.lambdas:
        overrides["hbar_lambda_list"] = _parse_float_list(args.lambdas)
    if args.omegas:
        overrides["hbar_Omega_list"] = _parse_float_list(args.omegas)
        overrides["efield_list"] = ()
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        cfg = replace(cfg, **overrides)
    records = run_sweep(cfg, threads=args.threads)
    out = emit_csv(records, cfg.output_path)
    emit_plot_script(records, out.with_name(out.stem + "_plot.py"), csv_filename=out.name)
    print(f"wrote {len(records)} records to {out}")


def _cmd_figure(args: argparse.Namespace) -> None:
    cfg = figure_preset(args.preset)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = replace(cfg, output_path=str(out_dir / cfg.output_path))
    records = run_sweep(cfg, threads=args.threads)
    out = emit_csv(records, cfg.output_path)
    emit_plot_script(records, out.with_name(out.stem + "_plot.py"), csv_filename=out.name)
    print(f"wrote {len(records)} records to {out}")


def _cmd_point(args: argparse.Namespace) -> None:
    params = ModelParams(hbar_omega=args.hbar_omega, hbar_Omega=args.hbar_Omega,
                         hbar_Jz=args.hbar_Jz, hbar_lambda=args.hbar_lambda)
    h = build_hamiltonian(params)
    rho = gibbs_state(h, args.T)
    report = validate_blocks(rho)
    closed = closed_form_elements(params, args.T)
    result = gqd_minimize(rho, seed=args.seed)

    print(f"T_K = {args.T:g}")
    print(f"hbar_lambda_meV = {params.hbar_lambda:g}")
    print(f"hbar_Omega_meV = {params.hbar_Omega:g}")
    print(f"hbar_Jz_meV = {params.hbar_Jz:g}")
    print(f"hbar_omega_meV = {params.hbar_omega:g}")
    print(f"partition_function = {partition_function(h, args.T):.12g}")
    for name in ("rho11", "rho22", "rho23", "rho44", "rho46", "rho88"):
        print(f"{name} = {getattr(report.elements, name):.12g}   "
              f"closed_form = {getattr(closed, name):.12g}")
    print(f"blocks_ok = {report.ok}")
    for violation in report.violations:
        print(f"block_violation = {violation}")
    print(f"entropy_bits = {von_neumann_entropy(rho):.12g}")
    print(f"tau3 = {tau3(rho):.12g}")
    print(f"discord_bits = {result.value:.12g}")
    print(f"discord_closed_form_bits = {gqd_closed_form(report.elements):.12g}")
    thetas = ",".join(f"{a:.6g}" for a in result.minimizer[:3])
    phis = ",".join(f"{a:.6g}" for a in result.minimizer[3:])
    print(f"minimizer_theta = {thetas}")
    print(f"minimizer_phi = {phis}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "figure":
            _cmd_figure(args)
        elif args.command == "point":
            _cmd_point(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
