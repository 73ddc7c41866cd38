"""Entanglement splitting of two-qubit states by local symmetric cloning."""
from .cloner import (
    CloneTransform,
    ConstraintReport,
    apply_split,
    as_unitary,
    bad_cloner,
    check_constraints,
    image_vectors,
    optimal_cloner,
    symmetric_family,
)
from .linalg import SubsystemLayout, partial_trace, partial_transpose, tensor
from .measures import chsh_statistic, concurrence, ppt_check, t_matrix, teleport_fidelity
from .splitting import (
    optimality_probe,
    pairwise_entanglement,
    split_n_branch,
    split_schmidt,
    split_singlet,
    split_werner_input,
)
from .states import Bell, DensityMatrix, PureState, SchmidtParams, bell_state, schmidt_state, werner_state

__version__ = "0.1.0"
