import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entsplit.linalg import (
    LinalgError,
    SubsystemLayout,
    eig_general,
    eig_hermitian,
    gram_schmidt_complete,
    partial_trace,
    partial_transpose,
    sqrt_psd,
    tensor,
    unitarity_residual,
)
from entsplit.splitting import rho_ab_closed_form
from entsplit.states import SchmidtParams

from conftest import random_density, random_hermitian

SX = np.array([[0, 1], [1, 0]])
SY = np.array([[0, -1j], [1j, 0]])
SEEDS = st.integers(min_value=0, max_value=2**32 - 1)


def brute_partial_trace(rho, dims, keep):
    """Sum over traced indices with explicit loops."""
    n = len(dims)
    kept = [i for i in range(n) if i in keep]
    dk = int(np.prod([dims[i] for i in kept]))
    out = np.zeros((dk, dk), dtype=complex)
    all_idx = list(itertools.product(*[range(d) for d in dims]))
    flat = {idx: k for k, idx in enumerate(all_idx)}
    kept_idx = list(itertools.product(*[range(dims[i]) for i in kept]))
    pos = {idx: k for k, idx in enumerate(kept_idx)}
    for i in all_idx:
        for j in all_idx:
            if all(i[m] == j[m] for m in range(n) if m not in keep):
                out[pos[tuple(i[m] for m in kept)], pos[tuple(j[m] for m in kept)]] += rho[flat[i], flat[j]]
    return out


def brute_partial_transpose(rho, dims, k):
    all_idx = list(itertools.product(*[range(d) for d in dims]))
    flat = {idx: n for n, idx in enumerate(all_idx)}
    out = np.zeros_like(rho)
    for i in all_idx:
        for j in all_idx:
            i2, j2 = list(i), list(j)
            i2[k], j2[k] = j[k], i[k]
            out[flat[tuple(i2)], flat[tuple(j2)]] = rho[flat[i], flat[j]]
    return out


def test_tensor_identity_and_basis():
    assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(tensor([1, 0], [0, 1]), np.array([0, 1, 0, 0]))


def test_tensor_spin_flip_matches_hand_written():
    hand = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
    assert np.array_equal(tensor(SY, SY), hand)


def test_tensor_big_endian():
    # |1> (x) |0> is index 2: first factor is most significant
    assert np.argmax(np.abs(tensor([0, 1], [1, 0]))) == 2


def test_tensor_associative(rng):
    # Gaussian-integer entries keep every product exact
    a, b, c = (rng.integers(-9, 9, (2, 3)) + 1j * rng.integers(-9, 9, (2, 3)) for _ in range(3))
    assert np.array_equal(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))


def test_layout_validation():
    with pytest.raises(LinalgError):
        SubsystemLayout(("A", "A"), (2, 2))
    with pytest.raises(LinalgError):
        SubsystemLayout(("A",), (1,))
    with pytest.raises(LinalgError):
        SubsystemLayout(("A", "B"), (2,))


def test_partial_trace_singlet_marginal():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    rho = np.outer(psi, psi.conj())
    lay = SubsystemLayout.qubits("A", "B")
    assert np.allclose(partial_trace(rho, lay, ["A"]), np.eye(2) / 2, atol=1e-15)


@pytest.mark.parametrize("keep", [["A"], ["B"], ["A", "C"], ["B", "D"], ["A", "B", "D"], []])
def test_partial_trace_matches_brute_force(rng, keep):
    lay = SubsystemLayout(("A", "B", "C", "D"), (2, 3, 2, 2))
    rho = random_density(rng, lay.dim)
    idx = [lay.index(k) for k in keep]
    got = partial_trace(rho, lay, keep)
    assert np.allclose(got, brute_partial_trace(rho, lay.dims, idx), atol=1e-13)


def test_partial_trace_keeps_original_order(rng):
    lay = SubsystemLayout.qubits("A", "B")
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    assert np.allclose(partial_trace(np.kron(ra, rb), lay, ["B", "A"]), np.kron(ra, rb))


def test_partial_trace_preserves_trace(rng):
    lay = SubsystemLayout.qubits("A", "B", "C", "D")
    for _ in range(20):
        rho = random_density(rng, 16)
        assert abs(np.trace(partial_trace(rho, lay, ["B", "D"])) - np.trace(rho)) < 1e-12


def test_partial_trace_of_product_is_exact(rng):
    lay = SubsystemLayout.qubits("A", "B")
    for _ in range(20):
        ra, rb = random_density(rng, 2), np.diag([0.25, 0.75])
        assert np.array_equal(partial_trace(np.kron(ra, rb), lay, ["A"]), ra * np.trace(rb))


def test_partial_trace_errors(rng):
    lay = SubsystemLayout.qubits("A", "B")
    with pytest.raises(LinalgError, match="unknown"):
        partial_trace(np.eye(4) / 4, lay, ["Z"])
    with pytest.raises(LinalgError, match="does not match"):
        partial_trace(np.eye(8) / 8, lay, ["A"])


def test_partial_transpose_product_state(rng):
    lay = SubsystemLayout.qubits("A", "B")
    ra, rb = random_density(rng, 2), random_density(rng, 2)
    pt = partial_transpose(np.kron(ra, rb), lay, "B")
    assert np.allclose(pt, np.kron(ra, rb.T))
    assert np.linalg.eigvalsh(pt).min() > -1e-12


def test_partial_transpose_symmetric_output_min_eigenvalue():
    rho = rho_ab_closed_form(SchmidtParams.from_alpha_sq(0.5))
    pt = partial_transpose(rho, SubsystemLayout.qubits("A", "B"), "B")
    assert abs(np.linalg.eigvalsh(pt).min() - (1 - 4) / 12) < 1e-12


@pytest.mark.parametrize("label", ["A", "B", "C"])
def test_partial_transpose_matches_brute_force(rng, label):
    lay = SubsystemLayout(("A", "B", "C"), (2, 3, 2))
    rho = random_density(rng, lay.dim)
    got = partial_transpose(rho, lay, label)
    assert np.array_equal(got, brute_partial_transpose(rho, lay.dims, lay.index(label)))


@settings(max_examples=50, deadline=None)
@given(seed=SEEDS, n=st.integers(2, 5))
def test_partial_transpose_involution_trace_hermiticity(seed, n):
    rng = np.random.default_rng(seed)
    lay = SubsystemLayout.qubits(*[f"q{i}" for i in range(n)])
    rho = random_density(rng, lay.dim)
    label = lay.labels[rng.integers(n)]
    pt = partial_transpose(rho, lay, label)
    assert np.array_equal(partial_transpose(pt, lay, label), rho)
    assert abs(np.trace(pt) - 1) < 1e-12
    assert np.max(np.abs(pt - pt.conj().T)) < 1e-12


def test_eig_hermitian_examples():
    w, _ = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])
    w, _ = eig_hermitian(SX)
    assert np.allclose(w, [-1, 1])


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(LinalgError, match="not Hermitian"):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


@settings(max_examples=50, deadline=None)
@given(seed=SEEDS, d=st.integers(1, 16))
def test_eig_hermitian_trace_and_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    m = random_hermitian(rng, d)
    w, v = eig_hermitian(m)
    assert np.all(np.diff(w) >= 0)
    assert abs(w.sum() - np.trace(m).real) < 1e-10
    assert np.max(np.abs(m - (v * w) @ v.conj().T)) < 1e-9


def test_eig_general_triangular():
    m = np.array([[1, 5, 2], [0, -3, 7], [0, 0, 2j]])
    got = sorted(eig_general(m), key=lambda z: (z.real, z.imag))
    assert np.allclose(got, [-3, 2j, 1])


def test_eig_general_singlet_spin_flip_product():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    rho = np.outer(psi, psi.conj())
    yy = np.kron(SY, SY)
    xi = eig_general(rho @ yy @ rho.conj() @ yy)
    assert np.allclose(np.sort(xi.real)[::-1], [1, 0, 0, 0], atol=1e-12)
    assert np.max(np.abs(xi.imag)) < 1e-12


def test_sqrt_psd_examples():
    assert np.allclose(sqrt_psd(np.eye(3)), np.eye(3))
    assert np.allclose(sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_sqrt_psd_symmetric_point_t_matrix():
    t = -2 / 3 * np.eye(3)
    assert abs(np.trace(sqrt_psd(t.T @ t)).real - 2) < 1e-12


def test_sqrt_psd_clamps_noise_and_rejects_negative():
    assert np.allclose(sqrt_psd(np.diag([1.0, -1e-12])), np.diag([1.0, 0.0]))
    with pytest.raises(LinalgError, match="positive semidefinite"):
        sqrt_psd(np.diag([1.0, -1e-6]))


@settings(max_examples=50, deadline=None)
@given(seed=SEEDS, d=st.integers(1, 16))
def test_sqrt_psd_squares_back(seed, d):
    rng = np.random.default_rng(seed)
    m = random_density(rng, d, rank=int(rng.integers(1, d + 1)))
    r = sqrt_psd(m)
    assert np.max(np.abs(r @ r - m)) < 1e-9


def test_gram_schmidt_completion_is_unitary(rng):
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    v /= np.linalg.norm(v)
    u = gram_schmidt_complete([v], [3], 8)
    assert np.array_equal(u[:, 3], v)
    assert unitarity_residual(u) < 1e-12
    with pytest.raises(LinalgError, match="orthonormal"):
        gram_schmidt_complete([v, v], [0, 1], 8)


def test_dimension_cap():
    with pytest.raises(LinalgError, match="exceeds cap"):
        eig_hermitian(np.eye(128))
