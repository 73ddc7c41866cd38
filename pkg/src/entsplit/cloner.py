"""Symmetric local 1 -> 2 transformations acting on Bob's qubit.

A :class:`CloneTransform` fixes the images of ``|0>|0>|0..0>`` and
``|1>|0>|0..0>`` on (B1, B2, anc)::

    U|0,0,0> = a |00>|A>  + b (|01>+|10>)|B>  + c |11>|C>
    U|1,0,0> = a~|11>|A~> + b~(|10>+|01>)|B~> + c~|00>|C~>

The remaining columns of ``U`` never act (B2 and the ancilla start in
``|0>``), so they are filled in deterministically by Gram-Schmidt.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .linalg import SubsystemLayout, gram_schmidt_complete, partial_trace, tensor
from .states import DensityMatrix, StateError, basis_ket, projector

IMAGE_TOL = 1e-10
CONSTRAINT_TOL = 1e-9
SCHEMA_VERSION = 1

COEFFICIENTS = ("a", "b", "c", "a_t", "b_t", "c_t")
ANCILLAS = ("A", "B", "C", "A_t", "B_t", "C_t")
CONSTRAINTS = ("i", "ii", "iii", "iv", "v", "vi", "vii")

DATA_DIR = Path(__file__).parent / "data"


class ConstraintError(ValueError):
    pass


class TransformFormatError(ValueError):
    pass


def _ket(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class CloneTransform:
    a: complex
    b: complex
    c: complex
    a_t: complex
    b_t: complex
    c_t: complex
    anc_A: np.ndarray
    anc_B: np.ndarray
    anc_C: np.ndarray
    anc_A_t: np.ndarray
    anc_B_t: np.ndarray
    anc_C_t: np.ndarray
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        for k in COEFFICIENTS:
            object.__setattr__(self, k, complex(getattr(self, k)))
        kets = [_ket(getattr(self, "anc_" + k)) for k in ANCILLAS]
        dims = {k.size for k in kets}
        if len(dims) != 1:
            raise StateError(f"ancilla kets have mixed dimensions {sorted(dims)}")
        for k, v in zip(ANCILLAS, kets):
            if abs(np.linalg.norm(v) - 1) > IMAGE_TOL:
                raise StateError(f"ancilla ket {k} is not normalized")
            object.__setattr__(self, "anc_" + k, v)
        if self.d_anc < 2:
            raise StateError("ancilla dimension must be at least 2")
        v0, v1 = image_vectors(self)
        n0, n1 = np.linalg.norm(v0), np.linalg.norm(v1)
        if abs(n0 - 1) > IMAGE_TOL or abs(n1 - 1) > IMAGE_TOL:
            raise StateError(f"image vectors are not normalized (norms {n0!r}, {n1!r})")
        if abs(np.vdot(v0, v1)) > IMAGE_TOL:
            raise StateError(f"image vectors are not orthogonal (overlap {abs(np.vdot(v0, v1)):.3e})")

    @property
    def d_anc(self) -> int:
        return self.anc_A.size

    @property
    def layout(self) -> SubsystemLayout:
        return SubsystemLayout(("B1", "B2", "anc"), (2, 2, self.d_anc))


@dataclass(frozen=True)
class ConstraintReport:
    residuals: dict[str, float]
    tol: float = CONSTRAINT_TOL
    # (vii) is the one equation that is not shared with the cloning problem
    differs_from_cloning: tuple[str, ...] = ("vii",)

    @property
    def passed(self) -> dict[str, bool]:
        return {k: r <= self.tol for k, r in self.residuals.items()}

    @property
    def all_passed(self) -> bool:
        return all(self.passed.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.passed.items() if not ok]


def image_vectors(t: CloneTransform) -> tuple[np.ndarray, np.ndarray]:
    """The two output vectors on (B1, B2, anc)."""
    k00, k01, k10, k11 = (basis_ket(i, 4) for i in range(4))
    sym = k01 + k10
    v0 = t.a * np.kron(k00, t.anc_A) + t.b * np.kron(sym, t.anc_B) + t.c * np.kron(k11, t.anc_C)
    v1 = t.a_t * np.kron(k11, t.anc_A_t) + t.b_t * np.kron(sym, t.anc_B_t) + t.c_t * np.kron(k00, t.anc_C_t)
    return v0, v1


def check_constraints(t: CloneTransform, tol: float = CONSTRAINT_TOL) -> ConstraintReport:
    a, b, c, at, bt, ct = t.a, t.b, t.c, t.a_t, t.b_t, t.c_t
    A, B, C, At, Bt, Ct = t.anc_A, t.anc_B, t.anc_C, t.anc_A_t, t.anc_B_t, t.anc_C_t
    ip = np.vdot
    cj = np.conj

    weight = abs(a) ** 2 - abs(c) ** 2
    cross = cj(bt) * a * ip(Bt, A) + cj(at) * b * ip(At, B)
    residuals = {
        "i": abs(weight - (abs(at) ** 2 - abs(ct) ** 2)),
        "ii": abs(weight - cross.real),
        "iii": abs(cross.imag),
        "iv": abs(cj(b) * ct * ip(B, Ct) + cj(c) * bt * ip(C, Bt)),
        "v": abs(cj(b) * a * ip(B, A) + cj(c) * b * ip(C, B)),
        "vi": abs(cj(bt) * at * ip(Bt, At) + cj(ct) * bt * ip(Ct, Bt)),
        "vii": abs(
            cj(ct) * a * ip(Ct, A) - at * cj(c) * ip(C, At)
            - (bt * cj(b) * ip(B, Bt) - b * cj(bt) * ip(Bt, B))
        ),
    }
    return ConstraintReport({k: float(v) for k, v in residuals.items()}, tol)


def werner_fraction_formula(t: CloneTransform) -> float:
    """Singlet weight of the (A, B1) output for a singlet input."""
    return 0.25 * (3 * (abs(t.a) ** 2 - abs(t.c) ** 2) + 1)


def as_unitary(t: CloneTransform) -> np.ndarray:
    """Full unitary on B1 (x) B2 (x) anc; columns |0,0,0> and |1,0,0> are the images."""
    v0, v1 = image_vectors(t)
    dim = 4 * t.d_anc
    return gram_schmidt_complete([v0, v1], [0, 2 * t.d_anc], dim)


def apply_split(rho_in: DensityMatrix, t: CloneTransform) -> DensityMatrix:
    """Act with 1_A (x) U on rho_in (x) |0><0|_B2 (x) |0><0|_anc."""
    if rho_in.layout.dims != (2, 2):
        raise StateError(f"expected a two-qubit input on (A, B1), got layout {rho_in.layout}")
    u = tensor(np.eye(2), as_unitary(t))
    blank = tensor(projector(basis_ket(0, 2)), projector(basis_ket(0, t.d_anc)))
    full = u @ tensor(rho_in.matrix, blank) @ u.conj().T
    layout = SubsystemLayout(("A", "B1", "B2", "anc"), (2, 2, 2, t.d_anc))
    return DensityMatrix((full + full.conj().T) / 2, layout)


def split_pure(psi: np.ndarray, t: CloneTransform) -> np.ndarray:
    """State vector on (A, B1, B2, anc) for a pure two-qubit input on (A, B1)."""
    v0, v1 = image_vectors(t)
    iso = np.stack([v0, v1], axis=1)
    return (np.asarray(psi, dtype=complex).reshape(2, 2) @ iso.T).ravel()


AXIS_STATES = tuple(
    np.array(v, dtype=complex) / np.linalg.norm(v)
    for v in ([1, 0], [0, 1], [1, 1], [1, -1], [1, 1j], [1, -1j])
)


def clone_output(t: CloneTransform, psi: np.ndarray, which: str = "B1") -> np.ndarray:
    """Reduced state of one clone for the single-qubit input ``psi``."""
    v0, v1 = image_vectors(t)
    out = psi[0] * v0 + psi[1] * v1
    return partial_trace(projector(out), t.layout, [which])


def cloning_fidelity(t: CloneTransform, which: str = "B1") -> float:
    """Fidelity <psi|rho_clone|psi> averaged over the six Pauli-axis states."""
    fids = [np.vdot(psi, clone_output(t, psi, which) @ psi).real for psi in AXIS_STATES]
    return float(np.mean(fids))


# --- canonical instances -------------------------------------------------

def optimal_cloner() -> CloneTransform:
    e0, e1 = basis_ket(0, 2), basis_ket(1, 2)
    a, b = np.sqrt(2 / 3), np.sqrt(1 / 6)
    return CloneTransform(a, b, 0, a, b, 0, e0, e1, e0, e1, e0, e1, name="optimal")


def bad_cloner() -> CloneTransform:
    """Two-qubit-ancilla isotropic cloner with clone fidelity 3/4 (ancilla order a1, a2)."""
    zero, one = basis_ket(0, 2), basis_ket(1, 2)
    plus = (zero + one) / np.sqrt(2)
    r2, half = 1 / np.sqrt(2), 0.5
    return CloneTransform(
        r2, half, 0, r2, half, 0,
        np.kron(zero, zero), np.kron(one, zero), np.kron(zero, zero),
        np.kron(one, plus), np.kron(zero, plus), np.kron(zero, zero),
        name="bad",
    )


def family_overlap(a: float, c: float) -> float | None:
    """Ancilla overlap x that solves (ii) for real (a, c); None when off the family."""
    rest = 1.0 - a * a - c * c
    if a <= 0 or c < 0 or rest < 0:
        return None
    b = np.sqrt(rest / 2)
    if b == 0:
        return None
    return (a * a - c * c) / (2 * a * b)


def symmetric_family(a: float, c: float) -> CloneTransform:
    """Real-coefficient transform with a = a~, b = b~, c = c~ on a 4-dim ancilla.

    ``b`` follows from normalization and the overlaps <B~|A> = <A~|B> = x from
    constraint (ii). Feasible iff |x| <= 1, which confines the singlet weight
    to [0, 3/4]; x = 1, c = 0 is the optimal cloner.
    """
    x = family_overlap(a, c)
    if x is None or abs(x) > 1 + 1e-12:
        raise ConstraintError(f"(a, c) = ({a}, {c}) is outside the feasible family")
    x = float(np.clip(x, -1.0, 1.0))
    y = np.sqrt(1 - x * x)
    b = np.sqrt((1 - a * a - c * c) / 2)
    e = [basis_ket(i, 4) for i in range(4)]
    return CloneTransform(
        a, b, c, a, b, c,
        e[0], x * e[1] + y * e[2], e[3],
        e[1], x * e[0] + y * e[3], -e[2],
        name=f"family(a={a:.6g},c={c:.6g})",
    )


# --- JSON ----------------------------------------------------------------

def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(v: Any, what: str) -> complex:
    if (not isinstance(v, (list, tuple)) or len(v) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise TransformFormatError(f"{what}: expected [re, im], got {v!r}")
    return complex(v[0], v[1])


def to_json(t: CloneTransform) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "name": t.name,
        "d_anc": t.d_anc,
        "coefficients": {k: _pair(getattr(t, k)) for k in COEFFICIENTS},
        "ancilla": {k: [_pair(z) for z in getattr(t, "anc_" + k)] for k in ANCILLAS},
    }


def from_json(doc: Any) -> CloneTransform:
    if not isinstance(doc, dict):
        raise TransformFormatError("transform document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise TransformFormatError(f"unsupported schema {doc.get('schema')!r}")
    try:
        coeffs, anc = doc["coefficients"], doc["ancilla"]
        values = {k: _unpair(coeffs[k], k) for k in COEFFICIENTS}
        kets = {
            "anc_" + k: np.array([_unpair(z, f"ancilla {k}") for z in anc[k]], dtype=complex)
            for k in ANCILLAS
        }
    except (KeyError, TypeError) as exc:
        raise TransformFormatError(f"missing or malformed field: {exc}") from exc
    d = doc.get("d_anc")
    if d is not None and any(v.size != d for v in kets.values()):
        raise TransformFormatError(f"ancilla kets do not have declared dimension {d}")
    try:
        return CloneTransform(**values, **kets, name=str(doc.get("name", "custom")))
    except StateError as exc:
        raise TransformFormatError(str(exc)) from exc


def dumps(t: CloneTransform) -> str:
    return json.dumps(to_json(t), indent=2) + "\n"


def load_transform(path: str | Path) -> CloneTransform:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TransformFormatError(f"invalid JSON: {exc}") from exc
    return from_json(doc)


def bundled(name: str) -> Path:
    """Path of a shipped transform file: ``optimal`` or ``bad``."""
    return DATA_DIR / f"{name}_cloner.json"
