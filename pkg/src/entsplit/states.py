"""State constructors: basis kets, Bell states, Schmidt-form pure states, Werner states."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import SubsystemLayout, as_matrix, eigvals_hermitian, hermitian_deviation

NORM_TOL = 1e-12
TRACE_TOL = 1e-10
HERMITIAN_TOL = 1e-10
MIN_EIG_TOL = 1e-9

AB = SubsystemLayout.qubits("A", "B1")


class StateError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != self.layout.dim:
            raise StateError(f"{amps.size} amplitudes for layout of dimension {self.layout.dim}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1) > NORM_TOL:
            raise StateError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.layout.dim, self.layout.dim):
            raise StateError(f"matrix shape {m.shape} does not match layout dimension {self.layout.dim}")
        dev = hermitian_deviation(m)
        if dev > HERMITIAN_TOL:
            raise StateError(f"density matrix is not Hermitian (deviation {dev:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1) > TRACE_TOL:
            raise StateError(f"density matrix has trace {tr!r}")
        lo = eigvals_hermitian(m)[0]
        if lo < -MIN_EIG_TOL:
            raise StateError(f"density matrix has negative eigenvalue {lo:.3e}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.layout.dim


@dataclass(frozen=True)
class SchmidtParams:
    """Amplitudes of ``alpha|01> - beta|10>``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1) > NORM_TOL:
            raise StateError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, phase: float = 0.0) -> "SchmidtParams":
        """Real-amplitude shorthand; ``phase`` rotates alpha only."""
        if not 0.0 <= alpha_sq <= 1.0:
            raise StateError(f"|alpha|^2 must lie in [0, 1], got {alpha_sq}")
        return cls(np.sqrt(alpha_sq) * np.exp(1j * phase), np.sqrt(1.0 - alpha_sq))

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def abs_alpha_beta(self) -> float:
        return abs(self.alpha * self.beta)


class Bell(enum.Enum):
    PsiMinus = "psi-"
    PsiPlus = "psi+"
    PhiMinus = "phi-"
    PhiPlus = "phi+"


_BELL_AMPS = {
    Bell.PsiMinus: (0, 1, -1, 0),
    Bell.PsiPlus: (0, 1, 1, 0),
    Bell.PhiMinus: (1, 0, 0, -1),
    Bell.PhiPlus: (1, 0, 0, 1),
}


def basis_ket(index: int, dim: int = 2) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def bell_vector(which: Bell) -> np.ndarray:
    return np.array(_BELL_AMPS[which], dtype=complex) / np.sqrt(2)


def bell_state(which: Bell) -> PureState:
    return PureState(bell_vector(which), AB)


def schmidt_state(p: SchmidtParams) -> PureState:
    return PureState(np.array([0, p.alpha, -p.beta, 0], dtype=complex), AB)


def projector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def to_density(s: PureState) -> DensityMatrix:
    return DensityMatrix(projector(s.amplitudes), s.layout)


def werner_matrix(fw: float) -> np.ndarray:
    rest = (1.0 - fw) / 3.0
    return (
        fw * projector(bell_vector(Bell.PsiMinus))
        + rest * projector(bell_vector(Bell.PsiPlus))
        + rest * projector(bell_vector(Bell.PhiPlus))
        + rest * projector(bell_vector(Bell.PhiMinus))
    )


def werner_state(fw: float) -> DensityMatrix:
    if not 0.0 <= fw <= 1.0:
        raise StateError(f"Werner fraction must lie in [0, 1], got {fw}")
    return DensityMatrix(werner_matrix(fw), AB)


def bell_diagonal(rho) -> np.ndarray:
    """``rho`` in the ordered Bell basis (Psi-, Psi+, Phi+, Phi-)."""
    basis = np.array([bell_vector(b) for b in (Bell.PsiMinus, Bell.PsiPlus, Bell.PhiPlus, Bell.PhiMinus)])
    return basis.conj() @ np.asarray(rho) @ basis.T


def singlet_fraction(rho) -> float:
    v = bell_vector(Bell.PsiMinus)
    return float(np.vdot(v, np.asarray(rho) @ v).real)
