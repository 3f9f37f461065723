"""Thermal quantum correlations of three dipole-coupled exciton qubits.

The package builds the three-qubit exciton Hamiltonian with field, dipolar
and resonant-transfer couplings, constructs its Gibbs states, and evaluates
two correlation measures on them: a lower bound on the three-qubit
concurrence and the global quantum discord minimized over local measurement
bases.  A sweep layer reproduces temperature / coupling / field scans and a
small CLI exposes it (``triqdot sweep | figure | point``).
"""

from .concurrence import BIPARTITIONS, Bipartition, bipartite_concurrence, rotation_ops, so4_generators, tau3
from .discord import (
    DiscordResult,
    bipartite_discord,
    dephasing_channel,
    gqd_closed_form,
    gqd_minimize,
    local_projectors,
)
from .linalg import (
    Spectrum,
    embed,
    hermitian_eig,
    is_hermitian,
    is_psd,
    is_unitary,
    kron,
    partial_trace,
    pauli_operators,
    reduced_pair,
    relative_entropy,
    von_neumann_entropy,
)
from .model import (
    GeometryParams,
    K_B_MEV_PER_K,
    ModelParams,
    build_hamiltonian,
    jz_from_geometry,
    omega_from_field,
)
from .sweep import (
    CorrelationRecord,
    SweepConfig,
    emit_csv,
    emit_plot_script,
    figure_preset,
    parse_config,
    run_sweep,
)
from .thermal import (
    BlockReport,
    ClosedFormElements,
    closed_form_elements,
    entropy_from_elements,
    gibbs_state,
    partition_function,
    thermal_state,
    validate_blocks,
)

__version__ = "0.1.0"
