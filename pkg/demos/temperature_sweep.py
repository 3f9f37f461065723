#!/usr/bin/env python3
"""Small end-to-end sweep: records, CSV, and the two-panel figure.

Runs a reduced version of the zero-field preset (fewer temperatures so it
finishes in about a minute), writes the CSV next to this script and renders
discord and the concurrence bound against temperature, one curve per transfer
coupling.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from triqdot import SweepConfig, emit_csv, run_sweep

here = Path(__file__).resolve().parent
config = SweepConfig(
    temps=tuple(float(t) for t in (0.1, 1, 2, 3, 5, 7, 10, 14, 20, 28, 40, 55, 75, 100)),
    hbar_lambda_list=(1.0, 5.0, 10.0, 15.0),
    hbar_Omega_list=(0.0,),
    output_path=str(here / "temperature_sweep.csv"),
)

records = run_sweep(config)
csv_path = emit_csv(records, config.output_path)
print(f"wrote {csv_path}")

fig, (ax_top, ax_bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 7))
for lam in config.hbar_lambda_list:
    rows = sorted((r for r in records if r.hbar_lambda == lam), key=lambda r: r.T)
    temps = [r.T for r in rows]
    ax_top.plot(temps, [r.discord for r in rows], label=f"transfer = {lam:g} meV")
    ax_bottom.plot(temps, [r.tau3 for r in rows])
ax_top.set_ylabel("global discord (bits)")
ax_bottom.set_ylabel("concurrence lower bound")
ax_bottom.set_xlabel("temperature (K)")
ax_top.legend()
fig.tight_layout()
out = here / "temperature_sweep.png"
fig.savefig(out, dpi=160)
print(f"wrote {out}")
