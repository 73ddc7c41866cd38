"""Entanglement-splitting experiments and their closed forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import cloner as cl
from .linalg import partial_trace
from .measures import (
    EntanglementReport,
    PptResult,
    TMatrix,
    chsh_statistic,
    concurrence,
    ppt_check,
    t_matrix,
    teleport_fidelity,
    teleport_useful,
)
from .states import (
    AB,
    Bell,
    DensityMatrix,
    SchmidtParams,
    bell_diagonal,
    bell_state,
    schmidt_state,
    singlet_fraction,
    to_density,
    werner_state,
)

AGREE_TOL = 1e-9
WERNER_TOL = 1e-9
DEFAULT_POINTS = 101
SINGLET = SchmidtParams(1 / np.sqrt(2), 1 / np.sqrt(2))


class InvariantError(RuntimeError):
    """A simulated result disagrees with the closed form it must reproduce."""


# --- closed forms --------------------------------------------------------

def rho_ab_closed_form(p: SchmidtParams, n: int = 2) -> np.ndarray:
    """Reduced state of Alice and any one of ``n`` branches."""
    if n < 2:
        raise ValueError(f"need at least 2 branches, got {n}")
    al, be = p.alpha, p.beta
    off = -(n + 2) * al * np.conj(be)
    m = np.array([
        [(n - 1) * abs(al) ** 2, 0, 0, 0],
        [0, (2 * n + 1) * abs(al) ** 2, off, 0],
        [0, np.conj(off), (2 * n + 1) * abs(be) ** 2, 0],
        [0, 0, 0, (n - 1) * abs(be) ** 2],
    ], dtype=complex)
    return m / (3 * n)


def ppt_eigenvalues_closed_form(p: SchmidtParams) -> np.ndarray:
    """Partial-transpose spectrum of the two-branch output, ascending."""
    a2, b2 = abs(p.alpha) ** 2, abs(p.beta) ** 2
    root = np.sqrt(1 + 60 * a2 * b2)
    return np.sort([5 / 6 * a2, 5 / 6 * b2, (1 + root) / 12, (1 - root) / 12])


def concurrence_closed_form(p: SchmidtParams, n: int = 2) -> float:
    return 2 / n * p.abs_alpha_beta


def t_matrix_closed_form(p: SchmidtParams, n: int = 2) -> np.ndarray:
    """Correlation matrix of the ``n``-branch output.

    The (x, y) and (y, x) entries carry opposite signs; for real alpha, beta
    they vanish.
    """
    z = p.alpha * np.conj(p.beta)
    eta = (n + 2) / (3 * n)
    return eta * np.array([
        [-2 * z.real, -2 * z.imag, 0],
        [2 * z.imag, -2 * z.real, 0],
        [0, 0, -1],
    ])


def window_half_width(n: int = 2) -> float:
    """Half the width of the teleportation window in |alpha|^2."""
    return float(0.5 * np.sqrt(3 * (2 * n + 1)) / (n + 2))


def teleport_window(n: int = 2) -> tuple[float, float]:
    """Open interval of |alpha|^2 in which the branch teleports better than classically."""
    h = window_half_width(n)
    return 0.5 - h, 0.5 + h


def werner_output_fraction(fw_in: float) -> float:
    """Singlet weight after the optimal cloner acts on a Werner input."""
    return 2 / 3 * fw_in + 1 / 12


# --- reports -------------------------------------------------------------

@dataclass(frozen=True)
class SplitReport:
    alpha: complex
    beta: complex
    n_branches: int
    f_w: float
    ppt: PptResult
    ent: EntanglementReport
    f_max: float
    chsh: float
    teleport_ok: bool
    window: tuple[float, float]
    rho: np.ndarray = field(repr=False)
    t: TMatrix = field(repr=False)

    def to_json(self) -> dict:
        def cpx(z):
            return [float(z.real), float(z.imag)]

        return {
            "schema": 1,
            "alpha": cpx(self.alpha),
            "beta": cpx(self.beta),
            "alpha_sq": abs(self.alpha) ** 2,
            "n_branches": self.n_branches,
            "f_w": self.f_w,
            "ppt_eigenvalues": [float(x) for x in self.ppt.eigenvalues],
            "entangled": self.ppt.entangled,
            "ppt_boundary": self.ppt.boundary,
            "concurrence": self.ent.concurrence,
            "eof": self.ent.eof,
            "xi": [float(x) for x in self.ent.xi],
            "t_matrix": [[float(x) for x in row] for row in self.t.entries],
            "f_max": self.f_max,
            "teleport_ok": self.teleport_ok,
            "chsh": self.chsh,
            "chsh_violated": self.chsh > 1,
            "window": list(self.window),
        }


def diagnose(rho: np.ndarray, p: SchmidtParams, n: int = 2) -> SplitReport:
    t = t_matrix(rho)
    f_max = teleport_fidelity(t)
    return SplitReport(
        alpha=p.alpha,
        beta=p.beta,
        n_branches=n,
        f_w=singlet_fraction(rho),
        ppt=ppt_check(rho),
        ent=concurrence(rho),
        f_max=f_max,
        chsh=chsh_statistic(t),
        teleport_ok=teleport_useful(f_max),
        window=teleport_window(n),
        rho=rho,
        t=t,
    )


def _reduce_ab(full: DensityMatrix, branch: str = "B1") -> np.ndarray:
    return partial_trace(full.matrix, full.layout, ["A", branch])


def werner_deviation(rho: np.ndarray) -> float:
    """Distance from Werner form: Bell-basis off-diagonals and unequal non-singlet weights."""
    bd = bell_diagonal(rho)
    off = np.max(np.abs(bd - np.diag(np.diag(bd))))
    rest = np.diag(bd).real[1:]
    return float(max(off, rest.max() - rest.min()))


# --- experiments ---------------------------------------------------------

def split_singlet(t: cl.CloneTransform) -> SplitReport:
    report = cl.check_constraints(t)
    if not report.all_passed:
        raise cl.ConstraintError(f"transform violates constraints {report.failures()}")
    out = cl.apply_split(to_density(bell_state(Bell.PsiMinus)), t)
    rho = _reduce_ab(out)
    dev = werner_deviation(rho)
    if dev > WERNER_TOL:
        raise InvariantError(f"(A, B1) reduction is not of Werner form (deviation {dev:.3e})")
    diag = diagnose(rho, SINGLET)
    formula = cl.werner_fraction_formula(t)
    if abs(diag.f_w - formula) > AGREE_TOL:
        raise InvariantError(f"simulated F_W {diag.f_w!r} disagrees with coefficient formula {formula!r}")
    return diag


def simulate_schmidt(p: SchmidtParams, t: cl.CloneTransform | None = None) -> DensityMatrix:
    """Full (A, B1, B2, anc) state after splitting ``alpha|01> - beta|10>``."""
    return cl.apply_split(to_density(schmidt_state(p)), t or cl.optimal_cloner())


def split_schmidt(p: SchmidtParams) -> SplitReport:
    rho = _reduce_ab(simulate_schmidt(p))
    err = np.max(np.abs(rho - rho_ab_closed_form(p, 2)))
    if err > AGREE_TOL:
        raise InvariantError(f"simulated reduction deviates from closed form by {err:.3e}")
    report = diagnose(rho, p, 2)
    err = np.max(np.abs(report.ppt.eigenvalues - ppt_eigenvalues_closed_form(p)))
    if err > AGREE_TOL:
        raise InvariantError(f"partial-transpose spectrum deviates from closed form by {err:.3e}")
    return report


def split_n_branch(p: SchmidtParams, n: int) -> SplitReport:
    if n < 2:
        raise ValueError(f"need at least 2 branches, got {n}")
    rho = rho_ab_closed_form(p, n)
    if n == 2:
        err = np.max(np.abs(rho - _reduce_ab(simulate_schmidt(p))))
        if err > AGREE_TOL:
            raise InvariantError(f"closed form deviates from simulation by {err:.3e}")
    return diagnose(rho, p, n)


@dataclass(frozen=True)
class PairStatus:
    min_eigenvalue: float
    entangled: bool


@dataclass(frozen=True)
class PairwiseMap:
    pairs: dict[tuple[str, str], PairStatus]

    def __getitem__(self, pair: tuple[str, str]) -> PairStatus:
        x, y = pair
        return self.pairs[(x, y)] if (x, y) in self.pairs else self.pairs[(y, x)]


def pairwise_entanglement(p: SchmidtParams) -> PairwiseMap:
    """PPT status of every two-party reduction after the optimal two-branch split."""
    full = simulate_schmidt(p)
    pairs = {}
    for x, y in itertools.combinations(full.layout.labels, 2):
        r = ppt_check(partial_trace(full.matrix, full.layout, [x, y]))
        pairs[(x, y)] = PairStatus(r.min_eigenvalue, r.entangled)
    return PairwiseMap(pairs)


@dataclass(frozen=True)
class WernerSplit:
    fw_in: float
    output: DensityMatrix
    ppt: PptResult
    input_entangled: bool

    @property
    def separable(self) -> bool:
        return self.ppt.separable


def split_werner_input(fw_in: float) -> WernerSplit:
    rho_in = werner_state(fw_in)
    out = cl.apply_split(rho_in, cl.optimal_cloner())
    rho = DensityMatrix(_reduce_ab(out), AB)
    return WernerSplit(fw_in, rho, ppt_check(rho), ppt_check(rho_in).entangled)


def werner_scan(points: int = 201) -> list[WernerSplit]:
    if points < 2:
        raise ValueError("need at least 2 scan points")
    return [split_werner_input(float(f)) for f in np.linspace(0.0, 1.0, points)]


def detected_interval(scan: Sequence[WernerSplit]) -> tuple[float, float] | None:
    """Hull of scan points where the input is entangled but the output separable."""
    hits = [s.fw_in for s in scan if s.input_entangled and s.separable]
    return (min(hits), max(hits)) if hits else None


# --- optimality probe ----------------------------------------------------

PROBE_ANCHOR = (np.sqrt(0.5), 0.0)


def _feasible(a: float, c: float) -> bool:
    x = cl.family_overlap(a, c)
    return x is not None and abs(x) <= 1


def project_to_family(a: float, c: float, steps: int = 60) -> tuple[float, float, bool]:
    """Pull (a, c) toward an interior anchor until it satisfies the constraints.

    Returns the projected point and whether it lies on the feasibility boundary.
    """
    if _feasible(a, c):
        return a, c, False
    a0, c0 = PROBE_ANCHOR
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = (lo + hi) / 2
        if _feasible(a0 + mid * (a - a0), c0 + mid * (c - c0)):
            lo = mid
        else:
            hi = mid
    return a0 + lo * (a - a0), c0 + lo * (c - c0), True


@dataclass(frozen=True)
class ProbeSample:
    a: float
    c: float
    on_boundary: bool
    f_w: float  # simulated
    f_w_formula: float

    @property
    def f_c(self) -> float:
        return (2 * self.f_w + 1) / 3


def probe_samples(trials: int, seed: int) -> list[ProbeSample]:
    """Split a singlet with random constraint-satisfying transforms.

    The optimal cloner point is always the first sample.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    points = [(np.sqrt(2 / 3), 0.0, True)]
    for _ in range(trials):
        a, c = rng.uniform(0.0, 1.0, size=2)
        points.append(project_to_family(float(a), float(c)))
    samples = []
    for a, c, edge in points:
        t = cl.symmetric_family(a, c)
        r = split_singlet(t)
        samples.append(ProbeSample(a, c, edge, r.f_w, cl.werner_fraction_formula(t)))
    return samples


def optimality_probe(trials: int, seed: int) -> float:
    """Largest singlet weight found over ``trials`` random transforms."""
    return max(s.f_w for s in probe_samples(trials, seed))


def alpha_sq_grid(points: int = DEFAULT_POINTS, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    if points < 2:
        raise ValueError("need at least 2 grid points")
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError(f"invalid |alpha|^2 range [{lo}, {hi}]")
    return np.linspace(lo, hi, points)
