"""Physical parameters, unit conversions and the three-dot Hamiltonian.

Energies are in meV throughout and temperatures in kelvin.  The three dots are
identical and equidistant, so a single value of each coupling applies to every
site and every pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from .linalg import embed, pauli_operators

#: Boltzmann constant, meV per kelvin (fixed project-wide).
K_B_MEV_PER_K = 0.08617333

# CODATA-derived conversion constants, from the SI definitions of the debye
# (1e-21 / c coulomb metre) and the elementary charge.
_DEBYE_CM = 1e-21 / 299792458.0            # C m
_E_CHARGE = 1.602176634e-19                # C
_COULOMB = 8.9875517873681764e9            # 1 / (4 pi eps0), N m^2 / C^2

#: 1 debye times 1 V/m, expressed in meV.
DEBYE_TIMES_V_PER_M_IN_MEV = _DEBYE_CM / _E_CHARGE * 1e3

#: d^2 / (4 pi eps0 r^3) for d = 1 debye, r = 1 nm, in meV.
DIPOLAR_PREFACTOR_MEV = _DEBYE_CM ** 2 * _COULOMB / 1e-27 / _E_CHARGE * 1e3


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the three-exciton Hamiltonian, all in meV.

    hbar_omega is the on-site exciton energy, hbar_Omega the dipole-field
    coupling, hbar_Jz the static dipolar shift between occupied dots and
    hbar_lambda the resonant (Forster) transfer amplitude.
    """

    hbar_omega: float
    hbar_Omega: float
    hbar_Jz: float
    hbar_lambda: float

    n_dots: ClassVar[int] = 3

    def __post_init__(self) -> None:
        for name in ("hbar_omega", "hbar_Omega", "hbar_Jz", "hbar_lambda"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.hbar_lambda < 0:
            raise ValueError(f"hbar_lambda must be >= 0, got {self.hbar_lambda}")


@dataclass(frozen=True)
class GeometryParams:
    """Geometric inputs behind the field and dipolar couplings.

    dipole_debye is the exciton dipole moment, efield_v_per_m the external
    field magnitude, separation_nm the dot spacing, theta_rad the angle
    entering the dipolar coupling and cos_de the alignment factor between the
    dipole and the field.
    """

    dipole_debye: float = 6.0
    efield_v_per_m: float = 0.0
    separation_nm: float = 5.0
    theta_rad: float = math.pi / 2
    cos_de: float = 1.0

    def __post_init__(self) -> None:
        if self.dipole_debye <= 0:
            raise ValueError(f"dipole must be positive, got {self.dipole_debye}")
        if self.separation_nm <= 0:
            raise ValueError(f"separation must be positive, got {self.separation_nm}")
        if not 0.0 <= self.theta_rad <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta_rad}")
        if not -1.0 <= self.cos_de <= 1.0:
            raise ValueError(f"cos_de must lie in [-1, 1], got {self.cos_de}")
        if self.efield_v_per_m < 0:
            raise ValueError(f"efield magnitude must be >= 0, got {self.efield_v_per_m}")


def omega_from_field(g: GeometryParams) -> float:
    """Field coupling |d . E| in meV for a dipole in debye and field in V/m."""
    return g.dipole_debye * g.efield_v_per_m * abs(g.cos_de) * DEBYE_TIMES_V_PER_M_IN_MEV


def jz_from_geometry(g: GeometryParams) -> float:
    """Dipolar shift d^2 (1 - 3 cos^2 theta) / (4 pi eps0 r^3) in meV.

    Vanishes at the magic angle arccos(1/sqrt(3)) and is negative for
    dipoles aligned head-to-tail (theta = 0).
    """
    angular = 1.0 - 3.0 * math.cos(g.theta_rad) ** 2
    return DIPOLAR_PREFACTOR_MEV * g.dipole_debye ** 2 * angular / g.separation_nm ** 3


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """8x8 Hamiltonian of three identical, pairwise-coupled exciton qubits.

    H = sum_i hbar_omega (S_z^i + 1/2) + sum_i hbar_Omega S_z^i
        + hbar_Jz sum_{i<j} S_z^i S_z^j
        + (hbar_lambda / 2) sum_{i != j} S_+^i S_-^j

    The result is Hermitian, symmetric under any relabelling of the dots and
    commutes with the total excitation number.
    """
    s_plus, s_minus, s_z = pauli_operators()
    eye8 = np.eye(8, dtype=complex)
    h = np.zeros((8, 8), dtype=complex)
    sz_site = [embed(s_z, site) for site in (1, 2, 3)]
    for site in (1, 2, 3):
        h += p.hbar_omega * (sz_site[site - 1] + 0.5 * eye8)
        h += p.hbar_Omega * sz_site[site - 1]
    for i, j in ((1, 2), (1, 3), (2, 3)):
        h += p.hbar_Jz * sz_site[i - 1] @ sz_site[j - 1]
        hop = embed(s_plus, i) @ embed(s_minus, j)
        h += 0.5 * p.hbar_lambda * (hop + hop.conj().T)
    return h


def excitation_number_operator() -> np.ndarray:
    """Total excitation number sum_i (1/2 - S_z^i); counts qubits in |1>."""
    _, _, s_z = pauli_operators()
    eye8 = np.eye(8, dtype=complex)
    n = np.zeros((8, 8), dtype=complex)
    for site in (1, 2, 3):
        n += 0.5 * eye8 - embed(s_z, site)
    return n
