"""Dense complex linear algebra on small labeled tensor-product spaces.

Matrices are plain ``numpy`` arrays. Subsystem ordering is big-endian: the
first label of a :class:`SubsystemLayout` is the most significant tensor
factor, matching ``np.kron(first, second)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 64
HERMITIAN_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9
PSD_CLAMP_TOL = 1e-10


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class SubsystemLayout:
    labels: tuple[str, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.labels) != len(self.dims):
            raise LinalgError("labels and dims differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise LinalgError(f"duplicate subsystem labels in {self.labels}")
        if any(d < 2 for d in self.dims):
            raise LinalgError(f"subsystem dimensions must be >= 2, got {self.dims}")

    @classmethod
    def qubits(cls, *labels: str) -> "SubsystemLayout":
        return cls(tuple(labels), (2,) * len(labels))

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LinalgError(f"unknown subsystem label {label!r}; have {self.labels}") from None

    def dim_of(self, label: str) -> int:
        return self.dims[self.index(label)]

    def sub(self, keep: Iterable[str]) -> "SubsystemLayout":
        """Layout of the kept labels, in their original relative order."""
        keep = set(keep)
        for label in keep:
            self.index(label)
        pairs = [(l, d) for l, d in zip(self.labels, self.dims) if l in keep]
        return SubsystemLayout(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __add__(self, other: "SubsystemLayout") -> "SubsystemLayout":
        return SubsystemLayout(self.labels + other.labels, self.dims + other.dims)


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or 0 in m.shape:
        raise LinalgError(f"expected a non-empty 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("matrix has non-finite entries")
    return m


def _square(m) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise LinalgError(f"dimension {m.shape[0]} exceeds cap {MAX_DIM}")
    return m


def _check_layout(m: np.ndarray, layout: SubsystemLayout) -> None:
    if m.shape[0] != layout.dim:
        raise LinalgError(
            f"matrix dimension {m.shape[0]} does not match layout {layout.labels} "
            f"with dims {layout.dims}"
        )


def tensor(*factors) -> np.ndarray:
    """Kronecker product; the first factor is the slow (most significant) axis."""
    if not factors:
        raise LinalgError("tensor of nothing")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def hermitian_deviation(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def partial_trace(rho, layout: SubsystemLayout, keep: Iterable[str]) -> np.ndarray:
    rho = _square(rho)
    _check_layout(rho, layout)
    keep_idx = sorted(layout.index(l) for l in set(keep))
    n = len(layout.dims)
    t = rho.reshape(layout.dims + layout.dims)
    # einsum labels: ket axes 0..n-1, bra axes n..2n-1; traced axes share a label
    letters = [chr(ord("a") + i) for i in range(2 * n)]
    bra = [letters[n + i] if i in keep_idx else letters[i] for i in range(n)]
    ket = letters[:n]
    out = [letters[i] for i in keep_idx] + [letters[n + i] for i in keep_idx]
    reduced = np.einsum("".join(ket) + "".join(bra) + "->" + "".join(out), t)
    d = int(np.prod([layout.dims[i] for i in keep_idx])) if keep_idx else 1
    return reduced.reshape(d, d)


def partial_transpose(rho, layout: SubsystemLayout, subsystem: str) -> np.ndarray:
    rho = _square(rho)
    _check_layout(rho, layout)
    k = layout.index(subsystem)
    n = len(layout.dims)
    t = rho.reshape(layout.dims + layout.dims)
    axes = list(range(2 * n))
    axes[k], axes[n + k] = axes[n + k], axes[k]
    return t.transpose(axes).reshape(rho.shape)


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and the unitary of eigenvectors (as columns)."""
    m = _square(m)
    dev = hermitian_deviation(m)
    if dev > HERMITIAN_TOL:
        raise LinalgError(f"matrix is not Hermitian (deviation {dev:.3e})")
    h = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(h)
    err = np.max(np.abs(h - (v * w) @ v.conj().T))
    if err > RECONSTRUCTION_TOL:
        raise LinalgError(f"eigen-reconstruction error {err:.3e}")
    return w, v


def eigvals_hermitian(m) -> np.ndarray:
    return eig_hermitian(m)[0]


def eig_general(m) -> np.ndarray:
    m = _square(m)
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise LinalgError(f"eigenvalue iteration failed: {exc}") from exc


def sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix."""
    w, v = eig_hermitian(m)
    if w.size and w[0] < -PSD_CLAMP_TOL:
        raise LinalgError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (root + root.conj().T) / 2


def gram_schmidt_complete(columns: Sequence[np.ndarray], positions: Sequence[int], dim: int,
                          tol: float = 1e-9) -> np.ndarray:
    """Unitary whose columns at ``positions`` are ``columns``; the rest is filled
    by Gram-Schmidt over the standard basis in index order."""
    fixed = [np.asarray(c, dtype=complex).ravel() for c in columns]
    gram = np.array([[np.vdot(a, b) for b in fixed] for a in fixed])
    if np.max(np.abs(gram - np.eye(len(fixed)))) > tol:
        raise LinalgError("fixed columns are not orthonormal; cannot complete to a unitary")
    q = np.stack(fixed, axis=1)
    extra = []
    for i in range(dim):
        if q.shape[1] == dim:
            break
        e = np.zeros(dim, dtype=complex)
        e[i] = 1.0
        # two passes keep the completion orthonormal to rounding
        for _ in range(2):
            e = e - q @ (q.conj().T @ e)
        norm = np.linalg.norm(e)
        if norm > 1e-8:
            e = e / norm
            q = np.column_stack([q, e])
            extra.append(e)
    u = np.zeros((dim, dim), dtype=complex)
    free = [j for j in range(dim) if j not in set(positions)]
    for pos, col in zip(positions, fixed):
        u[:, pos] = col
    for pos, col in zip(free, extra):
        u[:, pos] = col
    return u


def unitarity_residual(u) -> float:
    u = _square(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
