"""Parameter sweeps over temperature, transfer coupling and field.

A sweep walks a (T, lambda, Omega) grid, builds the thermal state at every
point, evaluates the requested correlation measures and writes the records to
CSV with a fixed header and 12-significant-digit floats, so identical
configurations always produce byte-identical files.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .concurrence import tau3
from .discord import gqd_minimize
from .linalg import von_neumann_entropy
from .model import GeometryParams, ModelParams, build_hamiltonian, jz_from_geometry, omega_from_field
from .thermal import gibbs_state, validate_blocks

#: Exciton transition energy used when a config does not override it, meV.
#: It weights the excitation-number sectors against each other, so it must be
#: comparable to the other couplings for the 0.1-100 K window to show any
#: thermal mixing; the conventional eV-scale exciton energy freezes the array
#: into its ground state and every correlation measure is identically zero.
DEFAULT_HBAR_OMEGA_MEV = 1.0

#: Default dot geometry: 6 debye dipoles, 5 nm spacing, side-by-side dipoles.
DEFAULT_GEOMETRY = GeometryParams()

#: Dipolar coupling of the default geometry, meV.
DEFAULT_HBAR_JZ_MEV = jz_from_geometry(DEFAULT_GEOMETRY)

#: Lowest temperature the sweep accepts, kelvin.
MIN_TEMPERATURE_K = 0.1

ALL_MEASURES = ("discord", "concurrence_lb", "entropy")

CSV_HEADER = ("T_K,hbar_lambda_meV,hbar_Omega_meV,hbar_Jz_meV,discord_bits,"
              "discord_closed_form_bits,tau3,entropy_bits,flags")

#: Threshold in bits for flagging minimizer angles that beat the z basis.
SIGMA_Z_GAP_BITS = 1e-4


@dataclass(frozen=True)
class SweepConfig:
    """Grid and output settings of one sweep."""

    temps: tuple[float, ...]
    hbar_lambda_list: tuple[float, ...]
    hbar_Omega_list: tuple[float, ...] = ()
    efield_list: tuple[float, ...] = ()
    hbar_omega: float = DEFAULT_HBAR_OMEGA_MEV
    hbar_Jz: float = DEFAULT_HBAR_JZ_MEV
    geometry: GeometryParams = field(default_factory=GeometryParams)
    output_path: str = "sweep.csv"
    measures: tuple[str, ...] = ALL_MEASURES
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.temps:
            raise ValueError("temps must be non-empty")
        if min(self.temps) < MIN_TEMPERATURE_K:
            raise ValueError(f"temperatures below {MIN_TEMPERATURE_K} K are not supported")
        if not self.hbar_lambda_list:
            raise ValueError("hbar_lambda_list must be non-empty")
        if bool(self.hbar_Omega_list) == bool(self.efield_list):
            raise ValueError("exactly one of hbar_Omega_list / efield_list must be given")
        if not self.measures:
            raise ValueError("measures must be a non-empty subset of "
                             f"{ALL_MEASURES}")
        for m in self.measures:
            if m not in ALL_MEASURES:
                raise ValueError(f"unknown measure {m!r}")

    def omega_values(self) -> tuple[float, ...]:
        """Field couplings in meV, converting field strengths when needed."""
        if self.hbar_Omega_list:
            return self.hbar_Omega_list
        return tuple(omega_from_field(replace(self.geometry, efield_v_per_m=e))
                     for e in self.efield_list)


@dataclass(frozen=True)
class CorrelationRecord:
    """Correlation measures of a single sweep point."""

    T: float
    hbar_lambda: float
    hbar_Omega: float
    hbar_Jz: float
    discord: float
    discord_closed_form: float
    tau3: float
    entropy: float
    minimizer_angles: tuple[float, ...]
    flags: str = ""


def _evaluate_point(T: float, lam: float, omega_field: float,
                    cfg: SweepConfig) -> CorrelationRecord:
    nan = float("nan")
    discord = closed = entropy = tau = nan
    angles: tuple[float, ...] = (0.0,) * 6
    flags: list[str] = []
    try:
        params = ModelParams(hbar_omega=cfg.hbar_omega, hbar_Omega=omega_field,
                             hbar_Jz=cfg.hbar_Jz, hbar_lambda=lam)
        rho = gibbs_state(build_hamiltonian(params), T)
        report = validate_blocks(rho)
        if not report.ok:
            flags.append("blocks_invalid")
        if "entropy" in cfg.measures:
            entropy = von_neumann_entropy(rho)
        if "concurrence_lb" in cfg.measures:
            tau = tau3(rho)
        if "discord" in cfg.measures:
            result = gqd_minimize(rho, seed=cfg.seed)
            discord = result.value
            closed = result.closed_form_value
            angles = tuple(float(a) for a in result.minimizer)
            if result.value < result.closed_form_value - SIGMA_Z_GAP_BITS:
                flags.append("sigma_z_beaten")
            if not result.converged:
                flags.append("refine_not_converged")
    except Exception as exc:  # per-point failures must not kill the sweep
        flags.append(f"error:{type(exc).__name__}")
    return CorrelationRecord(T=T, hbar_lambda=lam, hbar_Omega=omega_field,
                             hbar_Jz=cfg.hbar_Jz, discord=discord,
                             discord_closed_form=closed, tau3=tau,
                             entropy=entropy, minimizer_angles=angles,
                             flags=";".join(flags))


def run_sweep(cfg: SweepConfig, threads: int = 1) -> list[CorrelationRecord]:
    """Evaluate every grid point, lambda-major, then Omega, then T ascending.

    Points are independent pure computations; ``threads`` caps how many run
    concurrently.  The returned order is deterministic regardless of
    threading.
    """
    temps = sorted(cfg.temps)
    points = [(T, lam, om)
              for lam in cfg.hbar_lambda_list
              for om in cfg.omega_values()
              for T in temps]
    if threads <= 1:
        return [_evaluate_point(T, lam, om, cfg) for T, lam, om in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_evaluate_point, T, lam, om, cfg)
                   for T, lam, om in points]
        return [f.result() for f in futures]


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def emit_csv(records: list[CorrelationRecord], path: str | Path) -> Path:
    """Write records as UTF-8 CSV with the fixed header; deterministic bytes."""
    if not records:
        raise ValueError("emit_csv needs at least one record")
    path = Path(path)
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.T), _fmt(r.hbar_lambda), _fmt(r.hbar_Omega), _fmt(r.hbar_Jz),
            _fmt(r.discord), _fmt(r.discord_closed_form), _fmt(r.tau3),
            _fmt(r.entropy), r.flags,
        ]))
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"could not write CSV to {path}: {exc}") from exc
    return path


def read_csv(path: str | Path) -> list[CorrelationRecord]:
    """Read back a CSV produced by ``emit_csv``."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} does not carry the expected sweep header")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        values = [float(x) for x in parts[:8]]
        records.append(CorrelationRecord(
            T=values[0], hbar_lambda=values[1], hbar_Omega=values[2],
            hbar_Jz=values[3], discord=values[4], discord_closed_form=values[5],
            tau3=values[6], entropy=values[7], minimizer_angles=(0.0,) * 6,
            flags=parts[8] if len(parts) > 8 else ""))
    return records


def figure_preset(n: int) -> SweepConfig:
    """Built-in two-panel figure configurations.

    Presets 1, 2 and 3 fix the field coupling at 0, 2.5 and 5 meV (the latter
    two corresponding to fields of about 20e6 and 40e6 V/m for the default
    6 debye dipole), sweep the transfer coupling over 1, 5, 10 and 15 meV and
    temperature from 0.1 to 100 K in 101 points.
    """
    if n not in (1, 2, 3):
        raise ValueError(f"preset must be 1, 2 or 3, got {n}")
    omega_field = {1: 0.0, 2: 2.5, 3: 5.0}[n]
    temps = (MIN_TEMPERATURE_K,) + tuple(float(t) for t in range(1, 101))
    return SweepConfig(
        temps=temps,
        hbar_lambda_list=(1.0, 5.0, 10.0, 15.0),
        hbar_Omega_list=(omega_field,),
        hbar_omega=DEFAULT_HBAR_OMEGA_MEV,
        hbar_Jz=DEFAULT_HBAR_JZ_MEV,
        output_path=f"preset{n}.csv",
        measures=ALL_MEASURES,
    )


_PLOT_TEMPLATE = '''\
#!/usr/bin/env python3
"""Two-panel correlation plot (discord top, concurrence bound bottom).

Reads {csv_name} from its own directory and saves {png_name} next to it.
"""
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
curves = defaultdict(list)
with open(here / "{csv_name}", encoding="utf-8") as fh:
    for row in csv.DictReader(fh):
        curves[float(row["hbar_lambda_meV"])].append(
            (float(row["T_K"]), float(row["discord_bits"]), float(row["tau3"])))

fig, (ax_top, ax_bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 7))
for lam in sorted(curves):
    pts = sorted(curves[lam])
    ts = [p[0] for p in pts]
    ax_top.plot(ts, [p[1] for p in pts], label=f"transfer = {{lam:g}} meV")
    ax_bottom.plot(ts, [p[2] for p in pts])
ax_top.set_ylabel("global discord (bits)")
ax_bottom.set_ylabel("concurrence lower bound")
ax_bottom.set_xlabel("temperature (K)")
ax_top.legend()
fig.tight_layout()
fig.savefig(here / "{png_name}", dpi=160)
print("wrote", here / "{png_name}")
'''


def emit_plot_script(records: list[CorrelationRecord], path: str | Path,
                     csv_filename: str = "sweep.csv") -> Path:
    """Write a self-contained plot script next to an emitted CSV.

    The script references the CSV only by relative path and renders one curve
    per transfer-coupling value in each panel.
    """
    if not records:
        raise ValueError("emit_plot_script needs at least one record")
    path = Path(path)
    png_name = path.with_suffix(".png").name
    script = _PLOT_TEMPLATE.format(csv_name=csv_filename, png_name=png_name)
    path.write_text(script, encoding="utf-8", newline="\n")
    return path


def _parse_float_list(text: str) -> tuple[float, ...]:
    if ":" in text:
        lo, hi, steps = text.split(":")
        return tuple(float(x) for x in np.linspace(float(lo), float(hi), int(steps)))
    return tuple(float(x) for x in text.split(","))


def parse_config(path: str | Path) -> SweepConfig:
    """Parse a flat ``key = value`` config file into a SweepConfig.

    Lists are comma separated; ``temps`` additionally accepts a
    ``min:max:steps`` range.  Unknown keys are rejected so typos fail loudly.
    """
    geometry_keys = {"dipole_debye", "efield_v_per_m", "separation_nm",
                     "theta_rad", "cos_de"}
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key in raw:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value

    known = {"temps", "hbar_lambda_list", "hbar_Omega_list", "efield_list",
             "hbar_omega", "hbar_Jz", "output_path", "measures", "seed"} | geometry_keys
    for key in raw:
        if key not in known:
            raise ValueError(f"unknown config key {key!r}")

    geometry = GeometryParams(**{k: float(raw[k]) for k in geometry_keys if k in raw})
    kwargs: dict = {"geometry": geometry}
    if "temps" in raw:
        kwargs["temps"] = _parse_float_list(raw["temps"])
    if "hbar_lambda_list" in raw:
        kwargs["hbar_lambda_list"] = _parse_float_list(raw["hbar_lambda_list"])
    if "hbar_Omega_list" in raw:
        kwargs["hbar_Omega_list"] = _parse_float_list(raw["hbar_Omega_list"])
    if "efield_list" in raw:
        kwargs["efield_list"] = _parse_float_list(raw["efield_list"])
    kwargs["hbar_omega"] = float(raw.get("hbar_omega", DEFAULT_HBAR_OMEGA_MEV))
    if "hbar_Jz" in raw:
        kwargs["hbar_Jz"] = float(raw["hbar_Jz"])
    elif geometry_keys & raw.keys():
        kwargs["hbar_Jz"] = jz_from_geometry(geometry)
    if "output_path" in raw:
        kwargs["output_path"] = raw["output_path"]
    if "measures" in raw:
        kwargs["measures"] = tuple(m.strip() for m in raw["measures"].split(","))
    kwargs["seed"] = int(raw.get("seed", 0))
    if "temps" not in kwargs or "hbar_lambda_list" not in kwargs:
        raise ValueError("config must define temps and hbar_lambda_list")
    return SweepConfig(**kwargs)
