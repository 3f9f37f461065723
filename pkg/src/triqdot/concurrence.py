"""Lower bound on the three-qubit concurrence via plane-rotation operators.

For each of the three pair|single bipartitions, six spin-flip style matrices
are built from the generators of plane rotations on the pair combined with
the single plane rotation on the remaining qubit.  Each gives a Wootters-like
quantity ``C_j = max(0, l1 - l2 - l3 - l4)`` from the square roots of the
eigenvalues of ``rho @ S rho* S``; the bound combines all eighteen values.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import kron

#: Relative threshold below which eigenvalues of rho @ rho_tilde count as the
#: structural zeros guaranteed by the rank-4 flip operators.
_RANK_FLOOR = 1e-11

#: Absolute clamp for small negative eigenvalues; anything more negative
#: signals an invalid density matrix.
_NEGATIVE_CLAMP = 1e-11

#: Tolerance on spurious imaginary parts of the eigenvalues.
_IMAG_TOL = 1e-10


class Bipartition(NamedTuple):
    """A pair|single split of the three qubits, with 1-based site labels."""

    pair: tuple[int, int]
    single: int


#: The three bipartitions 12|3, 13|2 and 23|1.
BIPARTITIONS = (
    Bipartition(pair=(1, 2), single=3),
    Bipartition(pair=(1, 3), single=2),
    Bipartition(pair=(2, 3), single=1),
)


def so4_generators() -> list[np.ndarray]:
    """The six independent antisymmetric 4x4 plane-rotation generators.

    Generator (a, b) has +1 at row a-1, column b-1 and -1 transposed, for
    1 <= a < b <= 4, in lexicographic order.
    """
    gens = []
    for a in range(4):
        for b in range(a + 1, 4):
            g = np.zeros((4, 4))
            g[a, b] = 1.0
            g[b, a] = -1.0
            gens.append(g)
    return gens


def so2_generator() -> np.ndarray:
    """The single antisymmetric 2x2 plane-rotation generator."""
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def _site_reorder(bipartition: Bipartition) -> np.ndarray:
    """Index map from the canonical basis to (pair[0], pair[1], single) order."""
    a, b = bipartition.pair
    c = bipartition.single
    perm = np.empty(8, dtype=int)
    for i in range(8):
        bits = ((i >> 2) & 1, (i >> 1) & 1, i & 1)
        perm[i] = (bits[a - 1] << 2) | (bits[b - 1] << 1) | bits[c - 1]
    return perm


def rotation_ops(bipartition: Bipartition) -> list[np.ndarray]:
    """The six 8x8 flip operators of a bipartition, in canonical qubit order.

    Each operator is the tensor product of a pair generator with the single
    generator, built in (pair, single) ordering and then permuted back to the
    1 (x) 2 (x) 3 layout.  Each has exactly four identically zero rows and
    columns, which caps the rank of ``rho @ rho_tilde`` at four.
    """
    if tuple(sorted((*bipartition.pair, bipartition.single))) != (1, 2, 3):
        raise ValueError(f"invalid bipartition {bipartition}")
    perm = _site_reorder(bipartition)
    l0 = so2_generator()
    ops = []
    for gen in so4_generators():
        s = np.real(kron(gen, l0))
        ops.append(np.ascontiguousarray(s[np.ix_(perm, perm)]))
    return ops


def _flip_spectrum(rho: np.ndarray, flip: np.ndarray) -> np.ndarray:
    """Square roots of the nonzero eigenvalues of rho @ (S rho* S), descending."""
    rho_tilde = flip @ rho.conj() @ flip
    evals = np.linalg.eigvals(rho @ rho_tilde)
    if np.max(np.abs(evals.imag)) > _IMAG_TOL:
        raise ValueError(
            f"flip spectrum has imaginary eigenvalue {np.max(np.abs(evals.imag)):.3e}; "
            "input is not a valid density matrix")
    real = evals.real
    scale = float(np.max(np.abs(real))) if real.size else 0.0
    if np.min(real) < -max(_NEGATIVE_CLAMP, _RANK_FLOOR * scale):
        raise ValueError(
            f"flip spectrum has negative eigenvalue {np.min(real):.3e}; "
            "input is not a valid density matrix")
    # values below the relative floor are the structural zeros of the rank-4
    # product; zeroing them keeps roundoff out of the square roots
    real[real < _RANK_FLOOR * scale] = 0.0
    roots = np.sqrt(np.clip(real, 0.0, None))
    roots[::-1].sort()
    return roots


def bipartite_concurrence(rho: np.ndarray, bipartition: Bipartition) -> np.ndarray:
    """The six Wootters-like values of one bipartition, each >= 0."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"expected an 8x8 density matrix, got {rho.shape}")
    values = np.empty(6)
    for j, flip in enumerate(rotation_ops(bipartition)):
        roots = _flip_spectrum(rho, flip)
        values[j] = max(0.0, roots[0] - roots[1] - roots[2] - roots[3])
    return values


def tau3(rho: np.ndarray) -> float:
    """Lower bound on the three-qubit concurrence of an 8x8 density matrix.

    Combines the eighteen bipartite values as sqrt(sum of squares) / sqrt(3).
    Zero for fully separable states; positive values certify genuine
    multipartite entanglement.
    """
    total = 0.0
    for bipartition in BIPARTITIONS:
        values = bipartite_concurrence(rho, bipartition)
        total += float(np.sum(values ** 2))
    return float(np.sqrt(total / 3.0))
