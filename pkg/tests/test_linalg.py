import numpy as np
import pytest
from daptlab.models import FourLevelModel
from daptlab.models.exceptions import PreconditionException
from daptlab.services.linalg import eigh, nearest_unitary, norm_col1, quadrature, ode_rk4, central_derivative


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))

    return 0.5 * (a + a.conj().T)


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))

    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_eigh_diagonal():
    values, vectors = eigh(np.diag([1.0, -1.0]))

    assert np.allclose(values, [-1.0, 1.0])
    assert np.allclose(np.abs(vectors), [[0.0, 1.0], [1.0, 0.0]])


def test_eigh_four_level_degenerate_levels():
    model = FourLevelModel(b=1.0, w=0.1, theta=np.pi / 2, v=0.1)
    values, _ = eigh(model.evaluate(0.0))

    assert np.allclose(values, [-0.5, -0.5, 0.5, 0.5], atol=1e-10)


def test_eigh_reconstructs_random_hermitian():
    rng = np.random.default_rng(7)
    a = _random_hermitian(rng, 6)
    values, vectors = eigh(a)
    scale = np.linalg.norm(a)

    assert np.all(np.diff(values) >= 0)
    assert np.max(np.abs(vectors @ np.diag(values) @ vectors.conj().T - a)) < 1e-10 * scale
    assert np.max(np.abs(vectors.conj().T @ vectors - np.eye(6))) < 1e-12

    for j in range(6):
        residual = np.linalg.norm(a @ vectors[:, j] - values[j] * vectors[:, j])
        assert residual <= 1e-10 * scale


def test_eigh_rejects_invalid_input():
    with pytest.raises(PreconditionException):
        eigh(np.ones((2, 3)))

    with pytest.raises(PreconditionException):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_nearest_unitary_identity_and_scaling():
    angle = 0.3
    rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])

    assert np.allclose(nearest_unitary(np.eye(3)), np.eye(3), atol=1e-12)
    assert np.allclose(nearest_unitary(1.001 * rotation), rotation, atol=1e-12)


def test_nearest_unitary_recovers_polar_factor():
    rng = np.random.default_rng(11)
    unitary = _random_unitary(rng, 4)
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    positive = b @ b.conj().T + np.eye(4)
    result = nearest_unitary(unitary @ positive)

    assert np.max(np.abs(result - unitary)) < 1e-10
    assert np.max(np.abs(result.conj().T @ result - np.eye(4))) < 1e-12
    assert np.max(np.abs(nearest_unitary(result) - result)) < 1e-12


def test_nearest_unitary_singular():
    with pytest.raises(PreconditionException):
        nearest_unitary(np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_norm_col1():
    assert norm_col1(np.zeros((3, 3))) == 0.0
    assert norm_col1(np.array([[1.0, -2.0], [3j, 0.0]])) == pytest.approx(4.0)


def test_quadrature():
    ones = quadrature(np.ones(101), 0.01)
    grid = np.linspace(0.0, np.pi, 1001)
    sine = quadrature(np.sin(grid), grid[1] - grid[0])

    assert ones[0] == 0.0
    assert ones[-1] == pytest.approx(1.0, abs=1e-14)
    assert sine[-1] == pytest.approx(2.0, abs=1e-5)


def test_quadrature_is_linear():
    grid = np.linspace(0.0, 1.0, 51)
    f, g = np.cos(3 * grid), grid**2 + 1j * grid
    step = grid[1] - grid[0]

    combined = quadrature(2.0 * f - 3.0 * g, step)

    assert np.allclose(combined, 2.0 * quadrature(f, step) - 3.0 * quadrature(g, step), atol=1e-14)


def test_quadrature_needs_two_samples():
    with pytest.raises(PreconditionException):
        quadrature(np.array([1.0]), 0.1)


def test_ode_rk4_constant_and_exponential():
    grid = np.linspace(0.0, 1.0, 1001)
    constant = ode_rk4(lambda s, y: np.zeros_like(y), np.array([2.0 + 1j]), grid)
    rotating = ode_rk4(lambda s, y: 1j * y, np.array([1.0]), grid)
    phase = ode_rk4(lambda s, u: u @ np.array([[-0.7j]]), np.eye(1), grid)

    assert np.all(constant == 2.0 + 1j)
    assert abs(rotating[-1, 0] - np.exp(1j)) < 1e-10
    assert np.allclose(phase[:, 0, 0], np.exp(-0.7j * grid), atol=1e-10)


def test_ode_rk4_convergence_order():
    steps = np.array([10, 20, 40, 80])
    errors = []

    for n in steps:
        grid = np.linspace(0.0, 1.0, n + 1)
        errors.append(abs(ode_rk4(lambda s, y: 1j * y, np.array([1.0]), grid)[-1, 0] - np.exp(1j)))

    slope = np.polyfit(np.log(1.0 / steps), np.log(errors), 1)[0]

    assert slope == pytest.approx(4.0, abs=0.2)


def test_central_derivative_is_exact_on_quadratics():
    grid = np.linspace(0.0, 1.0, 21)
    derivative = central_derivative(grid**2 - 3 * grid, grid[1] - grid[0])

    assert np.allclose(derivative, 2 * grid - 3, atol=1e-12)


def test_nearest_unitary_is_idempotent():
    rng = np.random.default_rng(3)
    unitary = _random_unitary(rng, 5)
    projected = nearest_unitary(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))

    assert np.max(np.abs(nearest_unitary(unitary) - unitary)) < 1e-12
    assert np.max(np.abs(nearest_unitary(projected) - projected)) < 1e-12
