"""Dense complex linear algebra and quantum-information primitives.

Operators and states are plain complex ``numpy`` arrays.  Everything in this
module is a pure function on immutable inputs, so values can be shared freely
across threads.  All entropies are in bits (base-2 logarithms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Eigenvalues below this are treated as exact zeros before logarithms.
EIGENVALUE_CLAMP = 1e-14

#: Default tolerance for hermiticity / positivity / unitarity predicates.
MATRIX_TOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with entry (i*dimB+k, j*dimB+l) = a[i,j] * b[k,l]."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def pauli_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Raising, lowering and z operators of a single qubit.

    Basis order is (|0>, |1>), so ``s_plus = |0><1|``, ``s_minus = |1><0|``
    and ``s_z = diag(1/2, -1/2)``.
    """
    s_plus = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    s_minus = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    s_z = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
    return s_plus, s_minus, s_z


def embed(op: np.ndarray, site: int) -> np.ndarray:
    """Lift a single-qubit operator to the three-qubit space.

    ``site`` is 1-based and qubit 1 is the leftmost tensor factor, so
    ``|000>`` is basis index 0.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"embed expects a 2x2 operator, got shape {op.shape}")
    if site not in (1, 2, 3):
        raise ValueError(f"site must be 1, 2 or 3, got {site}")
    eye = np.eye(2, dtype=complex)
    factors = [eye, eye, eye]
    factors[site - 1] = op
    return np.kron(np.kron(factors[0], factors[1]), factors[2])


def is_hermitian(m: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def is_unitary(m: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    m = np.asarray(m)
    eye = np.eye(m.shape[0])
    return bool(np.max(np.abs(m.conj().T @ m - eye)) <= tol)


def is_psd(m: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        return False
    return bool(np.min(np.linalg.eigvalsh(m)) >= -tol)


def assert_density_matrix(rho: np.ndarray, tol: float = MATRIX_TOL) -> None:
    """Raise ``ValueError`` unless ``rho`` is a valid density matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not is_hermitian(rho, tol):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho).real} != 1")
    if np.min(np.linalg.eigvalsh(rho)) < -tol:
        raise ValueError("density matrix has a negative eigenvalue")


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are sorted ascending; the columns of ``eigenvectors`` are
    the corresponding orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(m: np.ndarray, tol: float = MATRIX_TOL) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix (ascending order)."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, tol):
        raise ValueError("hermitian_eig requires a Hermitian matrix")
    vals, vecs = np.linalg.eigh(m)
    return Spectrum(eigenvalues=vals, eigenvectors=vecs)


def shannon_entropy(probabilities: np.ndarray) -> float:
    """Shannon entropy in bits; weights below EIGENVALUE_CLAMP contribute 0."""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > EIGENVALUE_CLAMP]
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho: np.ndarray, validate: bool = True) -> float:
    """Von Neumann entropy of a density matrix, in bits."""
    rho = np.asarray(rho, dtype=complex)
    if validate:
        assert_density_matrix(rho)
    return shannon_entropy(np.linalg.eigvalsh(rho))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray,
                     support_tol: float = MATRIX_TOL) -> float:
    """Quantum relative entropy S(rho || sigma) in bits.

    Returns ``math.inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``.  For a projective dephasing channel ``Phi`` the
    identity ``S(rho || Phi(rho)) = S(Phi(rho)) - S(rho)`` holds; callers that
    know sigma arose from dephasing should use that difference directly (the
    discord routines do), this general form is for arbitrary pairs.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    assert_density_matrix(rho)
    assert_density_matrix(sigma)

    svals, svecs = np.linalg.eigh(sigma)
    # weight of rho on the numerical null space of sigma
    null = svals <= EIGENVALUE_CLAMP
    if np.any(null):
        vn = svecs[:, null]
        leak = float(np.real(np.einsum("ik,ij,jk->", vn.conj(), rho, vn)))
        if leak > support_tol:
            return math.inf
    keep = ~null
    weights = np.real(np.einsum("ik,ij,jk->k", svecs[:, keep].conj(), rho,
                                svecs[:, keep]))
    cross = float(np.sum(weights * np.log2(svals[keep])))
    return -von_neumann_entropy(rho, validate=False) - cross


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduce an 8x8 three-qubit state to the single qubit ``keep`` (1-based)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"partial_trace expects an 8x8 matrix, got {rho.shape}")
    if keep not in (1, 2, 3):
        raise ValueError(f"keep must be 1, 2 or 3, got {keep}")
    r = rho.reshape(2, 2, 2, 2, 2, 2)
    spec = {1: "aijbij->ab", 2: "iajibj->ab", 3: "ijaijb->ab"}[keep]
    return np.einsum(spec, r)


def reduced_pair(rho: np.ndarray, keep: tuple[int, int]) -> np.ndarray:
    """Reduce an 8x8 three-qubit state to the ordered qubit pair ``keep``.

    The first site in ``keep`` becomes the leading tensor factor of the
    returned 4x4 matrix.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"reduced_pair expects an 8x8 matrix, got {rho.shape}")
    pair = tuple(keep)
    spec = {
        (1, 2): "abicdi->abcd",
        (1, 3): "axbcxd->abcd",
        (2, 3): "xabxcd->abcd",
        (2, 1): "baidci->abcd",
        (3, 1): "bxadxc->abcd",
        (3, 2): "xbaxdc->abcd",
    }.get(pair)
    if spec is None:
        raise ValueError(f"keep must be an ordered pair of distinct sites, got {keep}")
    r = rho.reshape(2, 2, 2, 2, 2, 2)
    return np.einsum(spec, r).reshape(4, 4)


def site_permutation_matrix(order: tuple[int, int, int]) -> np.ndarray:
    """Permutation operator sending qubit ``order[k]`` to slot ``k+1``.

    ``P @ psi`` has amplitude of the new basis state (b1', b2', b3') equal to
    the old amplitude with bk' = b_order[k].
    """
    if sorted(order) != [1, 2, 3]:
        raise ValueError(f"order must be a permutation of (1, 2, 3), got {order}")
    p = np.zeros((8, 8), dtype=complex)
    for i in range(8):
        bits = ((i >> 2) & 1, (i >> 1) & 1, i & 1)
        j = (bits[order[0] - 1] << 2) | (bits[order[1] - 1] << 1) | bits[order[2] - 1]
        p[j, i] = 1.0
    return p
