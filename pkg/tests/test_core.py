import numpy as np
import pytest

from geogate.core import (
    SIGMA_X,
    check_channel,
    check_density_matrix,
    choi_matrix,
    conjugation_superop,
    dissipator_matrix,
    hermiticity_defect,
    kron_all,
    ladder_ops,
    phase_aligned_distance,
    propagate_affine,
    superoperator_propagator,
    time_ordered_propagator,
    unitarity_defect,
    unvec,
    vec,
)
from geogate.errors import ContractViolationError, InvalidDimensionError, InvalidNoiseError
from geogate.gates import ideal_propagator, nsgp_named

B_LOW = np.array([[0, 1], [0, 0]], dtype=complex)
B_Z = np.diag([0.0, 1.0]).astype(complex)


# ------------------------------------------------------------------ ladder ops

def test_ladder_ops_two_level():
    b, bz = ladder_ops(2)
    assert np.allclose(b, [[0, 1], [0, 0]])
    assert np.allclose(bz, np.diag([0, 1]))


def test_ladder_ops_three_level():
    b, bz = ladder_ops(3)
    assert b[0, 1] == 1.0
    assert b[1, 2] == pytest.approx(np.sqrt(2))
    assert np.allclose(bz, np.diag([0, 1, 2]))


def test_ladder_ops_tensor_structure():
    b, bz = ladder_ops(3, qubit_index=2, total_qubits=2)
    b1, _ = ladder_ops(3)
    assert b.shape == (9, 9)
    assert np.allclose(b, kron_all(np.eye(3), b1))


def test_ladder_ops_rejects_small_dimension():
    with pytest.raises(InvalidDimensionError):
        ladder_ops(1)


# ------------------------------------------------------------------ propagator

def test_zero_hamiltonian_gives_identity():
    u = time_ordered_propagator(lambda t: np.zeros((2, 2), complex), 1.3, steps=64)
    assert np.allclose(u, np.eye(2), atol=1e-12)


def test_constant_sigma_x_pi_pulse():
    omega = 3.7
    tau = np.pi / omega
    u = time_ordered_propagator(lambda t: 0.5 * omega * SIGMA_X, tau, steps=512)
    assert np.max(np.abs(u - (-1j) * SIGMA_X)) < 1e-10


def test_engineered_drive_matches_analytic_target(env20):
    recipe = nsgp_named("hadamard", env20)
    u = ideal_propagator(recipe, steps=8192)
    assert phase_aligned_distance(u, recipe.target) < 1e-6


def test_propagator_is_unitary_and_converges(env20):
    seg = nsgp_named("hadamard", env20).segments[0]
    u1 = time_ordered_propagator(seg.hamiltonian, seg.tau, steps=1024)
    u2 = time_ordered_propagator(seg.hamiltonian, seg.tau, steps=2048)
    assert unitarity_defect(u1) < 1e-9
    assert np.max(np.abs(u1 - u2)) < 1e-8


def test_propagator_composition(env20):
    seg = nsgp_named("hadamard", env20).segments[0]
    t_split = 0.37 * seg.tau
    u_full = time_ordered_propagator(seg.hamiltonian, seg.tau, steps=2048)
    u_a = time_ordered_propagator(seg.hamiltonian, t_split, steps=758)
    u_b = time_ordered_propagator(seg.hamiltonian, seg.tau - t_split, steps=1290,
                                  t_start=t_split)
    assert np.max(np.abs(u_full - u_b @ u_a)) < 1e-8


def test_non_hermitian_sample_raises():
    bad = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(ContractViolationError):
        time_ordered_propagator(lambda t: bad, 1.0, steps=4)


def test_steps_must_be_positive():
    with pytest.raises(InvalidDimensionError):
        time_ordered_propagator(lambda t: np.zeros((2, 2), complex), 1.0, steps=0)


# ---------------------------------------------------------------- superoperator

def test_closed_system_limit_matches_unitary_conjugation(env20):
    seg = nsgp_named("hadamard", env20).segments[0]
    s = superoperator_propagator(seg.hamiltonian, [], seg.tau, steps=1024)
    u = time_ordered_propagator(seg.hamiltonian, seg.tau, steps=1024)
    assert np.max(np.abs(s - conjugation_superop(u))) < 1e-9


def test_amplitude_damping_decay_law():
    # excited population decays as exp(-2 k t) under k * (2 b rho b+ - {b+b, rho})
    kappa, tau = 0.37, 1.7
    s = superoperator_propagator(lambda t: np.zeros((2, 2), complex),
                                 [(kappa, B_LOW)], tau, steps=512)
    rho = unvec(s @ vec(np.diag([0.0, 1.0])))
    assert rho[1, 1].real == pytest.approx(np.exp(-2 * kappa * tau), abs=1e-9)
    check_density_matrix(rho)


def test_dephasing_decay_law():
    # populations frozen; the 01 coherence of b_z = diag(0, 1) decays as exp(-k t)
    kappa, tau = 0.41, 1.3
    rho0 = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    s = superoperator_propagator(lambda t: np.zeros((2, 2), complex),
                                 [(kappa, B_Z)], tau, steps=512)
    rho = unvec(s @ vec(rho0))
    assert rho[0, 0].real == pytest.approx(0.5, abs=1e-10)
    assert rho[1, 1].real == pytest.approx(0.5, abs=1e-10)
    assert rho[0, 1] == pytest.approx(0.5 * np.exp(-kappa * tau), abs=1e-9)


def test_channel_contracts(env20):
    seg = nsgp_named("hadamard", env20).segments[0]
    kappa = 1e-3 * env20.omega_m
    s = superoperator_propagator(seg.hamiltonian, [(kappa, B_LOW), (kappa, B_Z)],
                                 seg.tau, steps=1024)
    check_channel(s, tp_tol=1e-8, cp_tol=1e-7)
    # CP margin: Choi eigenvalues explicitly above -1e-7
    assert np.linalg.eigvalsh(choi_matrix(s)).min() > -1e-7


def test_negative_rate_rejected():
    with pytest.raises(InvalidNoiseError):
        dissipator_matrix(2, [(-0.1, B_LOW)])


def test_maximally_mixed_state_is_unitary_invariant(env20):
    seg = nsgp_named("pi8", env20).segments[0]
    s = superoperator_propagator(seg.hamiltonian, [], seg.tau, steps=1024)
    rho = unvec(s @ vec(0.5 * np.eye(2, dtype=complex)))
    assert np.max(np.abs(rho - 0.5 * np.eye(2))) < 1e-10


# ------------------------------------------------------------------- contracts

def test_density_matrix_validation():
    with pytest.raises(ContractViolationError):
        check_density_matrix(np.diag([0.6, 0.6]))
    with pytest.raises(ContractViolationError):
        check_density_matrix(np.array([[1.0, 0.5], [0.0, 0.0]]))
    with pytest.raises(ContractViolationError):
        check_density_matrix(np.diag([1.2, -0.2]))
    assert hermiticity_defect(SIGMA_X) == 0.0


def test_phase_aligned_distance_ignores_global_phase():
    u = SIGMA_X.astype(complex)
    assert phase_aligned_distance(u, np.exp(0.77j) * u) < 1e-14
    assert phase_aligned_distance(u, np.eye(2)) > 0.5


# -------------------------------------------------------------- batched engine

def test_propagate_affine_matches_single_runs(env20):
    seg = nsgp_named("hadamard", env20).segments[0]
    kappas = np.array([0.0, 0.05, 0.2])
    d_unit = dissipator_matrix(2, [(1.0, B_LOW), (1.0, B_Z)])

    from geogate.core import liouvillian

    def parts(t):
        return [liouvillian(seg.hamiltonian(t)), d_unit]

    v0 = np.eye(4, dtype=complex)
    out = propagate_affine(parts, np.stack([np.ones(3), kappas], axis=1), v0,
                           seg.tau, 512)
    for i, k in enumerate(kappas):
        ref = superoperator_propagator(seg.hamiltonian,
                                       [(k, B_LOW), (k, B_Z)], seg.tau, steps=512)
        assert np.max(np.abs(out[i] - ref)) < 1e-10
