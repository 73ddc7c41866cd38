"""Two-qubit entanglement and channel diagnostics.

Pauli conventions are the standard ones::

    sx = [[0, 1], [1, 0]]   sy = [[0, -1j], [1j, 0]]   sz = [[1, 0], [0, -1]]
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SubsystemLayout, eig_general, eigvals_hermitian, partial_transpose, sqrt_psd
from .states import DensityMatrix

ENTANGLED_TOL = 1e-9
XI_IMAG_TOL = 1e-8
XI_NEG_TOL = 1e-10
# xi carries absolute rounding error ~eps; below this floor it is zero
XI_FLOOR = 1e-14
T_SLACK = 1e-9

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)
SPIN_FLIP = np.kron(SY, SY)
_CORR_OPS = np.array([[np.kron(si, sj) for sj in PAULIS] for si in PAULIS])
_LOCAL_A = np.array([np.kron(s, I2) for s in PAULIS])
_LOCAL_B = np.array([np.kron(I2, s) for s in PAULIS])


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class PptResult:
    eigenvalues: np.ndarray  # ascending
    entangled: bool
    boundary: bool = False

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def separable(self) -> bool:
        return not self.entangled


@dataclass(frozen=True)
class EntanglementReport:
    concurrence: float
    eof: float
    xi: np.ndarray  # descending


@dataclass(frozen=True)
class TMatrix:
    entries: np.ndarray  # 3x3 real, basis (x, y, z)
    bloch_a: np.ndarray
    bloch_b: np.ndarray

    def __post_init__(self):
        if np.max(np.abs(self.entries)) > 1 + T_SLACK:
            raise MeasureError("correlation matrix entries outside [-1, 1]")


def _two_qubit(rho) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise MeasureError(f"expected a two-qubit density matrix, got shape {m.shape}")
    return m


def ppt_check(rho, tol: float = ENTANGLED_TOL) -> PptResult:
    m = _two_qubit(rho)
    pt = partial_transpose(m, SubsystemLayout.qubits("A", "B"), "B")
    w = eigvals_hermitian(pt)
    lo = w[0]
    return PptResult(w, entangled=bool(lo < -tol), boundary=bool(abs(lo) <= tol and lo < 0))


def spin_flip(rho) -> np.ndarray:
    m = _two_qubit(rho)
    return SPIN_FLIP @ m.conj() @ SPIN_FLIP


def binary_entropy(p: float) -> float:
    h = -sum(q * np.log2(q) for q in (p, 1 - p) if q > 0)
    return float(max(0.0, h))


def eof_from_concurrence(c: float) -> float:
    """Entanglement of formation as a function of the concurrence."""
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy(0.5 + 0.5 * np.sqrt(1 - c * c))


def concurrence(rho) -> EntanglementReport:
    m = _two_qubit(rho)
    xi = eig_general(m @ spin_flip(m))
    if np.max(np.abs(xi.imag)) > XI_IMAG_TOL:
        raise MeasureError(f"spin-flip product has complex eigenvalues {xi}")
    xi = xi.real
    if xi.min() < -XI_NEG_TOL:
        raise MeasureError(f"spin-flip product has negative eigenvalue {xi.min():.3e}")
    xi = np.where(xi < XI_FLOOR, 0.0, xi)
    xi = np.sort(xi)[::-1]
    r = np.sqrt(xi)
    c = max(0.0, float(r[0] - r[1] - r[2] - r[3]))
    return EntanglementReport(c, eof_from_concurrence(c), xi)


def t_matrix(rho) -> TMatrix:
    m = _two_qubit(rho)
    # Tr[m op] = sum_kl m_kl op_lk
    t = np.einsum("kl,ijlk->ij", m, _CORR_OPS).real
    sa = np.einsum("kl,ilk->i", m, _LOCAL_A).real
    sb = np.einsum("kl,ilk->i", m, _LOCAL_B).real
    return TMatrix(t, sa, sb)


def from_t_matrix(t: TMatrix) -> np.ndarray:
    """Rebuild the density matrix from its Pauli expansion."""
    rho = (
        np.eye(4, dtype=complex)
        + np.einsum("i,ikl->kl", t.bloch_a, _LOCAL_A)
        + np.einsum("i,ikl->kl", t.bloch_b, _LOCAL_B)
        + np.einsum("ij,ijkl->kl", t.entries, _CORR_OPS)
    )
    return rho / 4


def _entries(t) -> np.ndarray:
    return t.entries if isinstance(t, TMatrix) else np.asarray(t, dtype=float)


def teleport_fidelity(t) -> float:
    """Maximal standard-teleportation fidelity; beats classical when > 2/3."""
    e = _entries(t)
    return float(0.5 * (1 + np.trace(sqrt_psd(e.T @ e)).real / 3))


def teleport_useful(f_max: float) -> bool:
    return f_max > 2 / 3


def chsh_statistic(t) -> float:
    """Sum of the two largest eigenvalues of T^T T; above 1 means CHSH violation."""
    e = _entries(t)
    w = eigvals_hermitian(e.T @ e)
    return float(w[-1] + w[-2])
