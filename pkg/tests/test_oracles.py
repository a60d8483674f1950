import numpy as np
import pytest
from daptlab.models import FourLevelModel, QuadraticModel, QuantumState, BasisKind, ConstantPath
from daptlab.models.exceptions import PreconditionException, NumericalException
from daptlab.services.linalg import eigh
from daptlab.services.spectrum import build_flow
from daptlab.services.oracles import (
    four_level_snapshot_basis, four_level_exact, four_level_exact_trajectory, four_level_expansion,
    four_level_expansion_amplitudes, quadratic_snapshot_basis, four_level_exact_amplitudes, four_level_rotating_frame,
    four_level_exact_rotating, four_level_small_theta_amplitude, integrate_se, infidelity, infidelity_curve, epsilon)


@pytest.fixture(scope='module')
def validation_model() -> FourLevelModel:
    # t in [0, 2]
    return FourLevelModel(b=1.0, w=0.5, theta=1.0, v=0.5)


def test_exact_solution_against_integration(validation_model):
    psi0 = validation_model.snapshot_basis_at_time(0.0)[:, 0]
    integrated = integrate_se(validation_model, psi0, 4000)
    exact = four_level_exact_trajectory(validation_model, integrated.grid, BasisKind.LAB)

    assert np.max(infidelity_curve(exact, integrated)) < 1e-8
    assert np.max(np.abs(exact.norms() - 1.0)) < 1e-12


def test_exact_starts_in_ground_state(validation_model):
    state = four_level_exact(validation_model, 0.0)

    assert state.basis == BasisKind.SNAPSHOT
    assert np.allclose(state.amplitudes, [1.0, 0.0, 0.0, 0.0], atol=1e-14)


@pytest.mark.parametrize('theta', [0.0, 0.4, np.pi / 2, 2.2, np.pi])
def test_rotating_frame_route_agrees(theta):
    model = FourLevelModel(b=1.0, w=0.7, theta=theta, v=0.5)

    for t in (0.3, 1.1, 2.0):
        direct = four_level_exact(model, t)
        rotating = four_level_exact_rotating(model, t)

        assert np.max(np.abs(direct.amplitudes - rotating.amplitudes)) < 1e-10


def test_rotating_frame_spectrum(validation_model):
    matrix, energies = four_level_rotating_frame(validation_model)
    values, _ = eigh(matrix)

    assert np.allclose(values, np.sort(energies), atol=1e-10)


def test_equal_rates_are_regular():
    model = FourLevelModel(b=1.0, w=1.0, theta=0.0, v=1.0)
    amplitudes = four_level_exact_amplitudes(model, np.linspace(0.0, 3.0, 7))

    assert np.all(np.isfinite(amplitudes))
    assert np.allclose(np.linalg.norm(amplitudes, axis=1), 1.0, atol=1e-12)


def test_small_theta_false_positive():
    model = FourLevelModel(b=1.0, w=1.5, theta=0.02, v=0.5)
    t = np.array([1.0, 2.0, 3.0])
    amplitudes = four_level_exact_amplitudes(model, t)
    predicted = four_level_small_theta_amplitude(model, t)

    assert np.all(np.abs(amplitudes[:, 3] - predicted) / np.abs(predicted) < 0.05)

    ratio = np.abs(amplitudes[:, 3]) / np.abs(amplitudes[:, 1])
    assert np.all((ratio > 0.1) & (ratio < 10.0))


def test_epsilon_figure_regimes():
    slow = QuadraticModel(E0=1.5, lambda_=0.0, theta0=0.1, w=0.5, v=0.5)
    fast = QuadraticModel(E0=1.5, lambda_=0.0, theta0=0.1, w=1.5, v=1.5)

    assert np.max(epsilon(slow, build_flow(slow, 200))) == pytest.approx(0.4714, abs=1e-4)
    assert np.max(epsilon(fast, build_flow(fast, 200))) == pytest.approx(1.414, abs=1e-3)


def test_epsilon_follows_the_gap(quadratic, quadratic_flow):
    computed = epsilon(quadratic, quadratic_flow)

    assert np.allclose(computed, quadratic.epsilon(quadratic_flow.grid), atol=1e-12)


def test_integration_preconditions(validation_model):
    psi0 = validation_model.snapshot_basis_at_time(0.0)[:, 0]

    with pytest.raises(PreconditionException):
        integrate_se(validation_model, psi0, 101)

    with pytest.raises(PreconditionException):
        integrate_se(validation_model, psi0[:2], 100)


def test_integration_convergence_check(validation_model):
    psi0 = validation_model.snapshot_basis_at_time(0.0)[:, 0]

    with pytest.raises(NumericalException):
        integrate_se(validation_model, psi0, 16, tolerance=1e-14)


def test_infidelity():
    up = QuantumState(BasisKind.LAB, np.array([1.0, 0.0]), 0.5)
    diagonal = QuantumState(BasisKind.LAB, np.array([1.0, 1.0]) / np.sqrt(2.0), 0.5)

    assert infidelity(up, up) == pytest.approx(0.0)
    assert infidelity(up, diagonal) == pytest.approx(0.5)

    with pytest.raises(PreconditionException):
        infidelity(up, QuantumState(BasisKind.SNAPSHOT, up.amplitudes, 0.5))

    with pytest.raises(PreconditionException):
        infidelity(up, QuantumState(BasisKind.LAB, up.amplitudes, 0.6))


def test_four_level_snapshot_basis_residual():
    rng = np.random.default_rng(7)

    for _ in range(100):
        model = FourLevelModel(b=1.0, w=0.5, theta=rng.uniform(0.0, np.pi), v=0.5)
        t = rng.uniform(0.0, 2.0)
        basis = four_level_snapshot_basis(model, t)
        hamiltonian = model.hamiltonian_at_time(t)
        energies = 0.5 * model.b * np.array([-1.0, -1.0, 1.0, 1.0])

        assert np.max(np.abs(hamiltonian @ basis - basis * energies)) < 1e-12
        assert np.allclose(basis.conj().T @ basis, np.eye(4), atol=1e-12)


def test_quadratic_snapshot_basis_residual(quadratic):
    rng = np.random.default_rng(11)

    for s in rng.uniform(0.0, 1.0, 100):
        basis = quadratic_snapshot_basis(quadratic, s)
        energy = quadratic.energy(s)
        energies = np.array([-energy, -energy, energy, energy])

        assert np.max(np.abs(quadratic.evaluate(s) @ basis - basis * energies)) < 1e-12

    assert 2.0 * quadratic.energy(0.5) == pytest.approx(2.0)


def test_expansion_states(four_level):
    for order in (0, 1):
        state = four_level_expansion(four_level, 3.0, order)

        assert state.basis == BasisKind.SNAPSHOT
        assert np.allclose(state.amplitudes, four_level_expansion_amplitudes(four_level, np.array([3.0]), order)[0])

    assert np.allclose(four_level_expansion(four_level, 0.0, 0).amplitudes, [1.0, 0.0, 0.0, 0.0])

    with pytest.raises(PreconditionException):
        four_level_expansion(four_level, 1.0, 2)


def test_exact_solution_satisfies_the_schrodinger_equation(validation_model):
    rng = np.random.default_rng(5)
    delta = 1e-6
    scale = np.linalg.norm(validation_model.hamiltonian_at_time(0.0), ord=2)

    def lab_state(t: float) -> np.ndarray:
        return validation_model.snapshot_basis_at_time(t) @ four_level_exact(validation_model, t).amplitudes

    for t in rng.uniform(0.0, 2.0, 50):
        rate = (lab_state(t + delta) - lab_state(t - delta)) / (2.0 * delta)
        residual = 1j * validation_model.hbar * rate - validation_model.hamiltonian_at_time(t) @ lab_state(t)

        assert np.linalg.norm(residual) < 1e-5 * scale


def test_integration_of_a_constant_diagonal_hamiltonian():
    energies = np.array([0.0, 0.5, 1.0])
    path = ConstantPath(np.diag(energies), v=0.2)
    psi0 = np.ones(3) / np.sqrt(3.0)
    trajectory = integrate_se(path, psi0, 2000)
    expected = psi0 * np.exp(-1j * np.outer(trajectory.grid, energies) / (path.hbar * path.v))

    assert trajectory.basis == BasisKind.LAB
    assert np.allclose(trajectory.amplitudes, expected, atol=1e-9)
