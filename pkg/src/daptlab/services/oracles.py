import time
import logging
from typing import Dict, Tuple
import numpy as np
from .linalg import eigh, ode_rk4
from ..models import (
    HamiltonianPath, FourLevelModel, QuadraticModel, SpectralFlow, QuantumState, StateTrajectory, BasisKind)
from ..models.pauli import GAMMA_X, GAMMA_Z, PI_Z
from ..models.exceptions import PreconditionException, NumericalException
from ..utils.constants import MIN_STEPS, DEFAULT_SE_TOLERANCE

_LOGGER = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)
_CHUNK_STEPS = 2048
_GRID_MATCH_TOL = 1e-9


def four_level_snapshot_basis(model: FourLevelModel, t: float) -> np.ndarray:
    """Columns |0^0>, |0^1>, |1^0>, |1^1> at real time t."""
    return model.snapshot_basis_at_time(t)


def four_level_exact(model: FourLevelModel, t: float) -> QuantumState:
    """Exact state started in |0^0(0)>, as amplitudes on the snapshot basis at time t."""
    amplitudes = four_level_exact_amplitudes(model, np.array([t]))[0]

    return QuantumState(BasisKind.SNAPSHOT, amplitudes, t * model.v)


def four_level_exact_trajectory(model: FourLevelModel, grid: np.ndarray,
                                basis: BasisKind = BasisKind.SNAPSHOT) -> StateTrajectory:
    s = np.asarray(grid, dtype=float)
    amplitudes = four_level_exact_amplitudes(model, model.time(s))

    if basis == BasisKind.LAB:
        snapshots = np.stack([model.snapshot_basis_at_time(t) for t in model.time(s)])
        amplitudes = np.einsum('sia,sa->si', snapshots, amplitudes)

    return StateTrajectory(basis, s, amplitudes)


def four_level_exact_amplitudes(model: FourLevelModel, t: np.ndarray) -> np.ndarray:
    """c00, c01, c10, c11 as columns, shape (len(t), 4). Regular for every theta in [0, pi]."""
    t = np.asarray(t, dtype=float)
    b, w, theta = model.b, model.w, model.theta
    cos_theta, sin_theta = np.cos(theta), np.sin(theta)
    a_plus, b_plus = _a_b_terms(b, w, cos_theta, model.omega_plus, 1.0, t)
    a_minus, b_minus = _a_b_terms(b, w, cos_theta, model.omega_minus, -1.0, t)
    forward = np.exp(0.5j * w * t)
    backward = np.exp(-0.5j * w * t)

    c00 = 0.5 * forward * ((1.0 + cos_theta) * a_minus + (1.0 - cos_theta) * a_plus)
    c01 = 0.5 * backward * sin_theta * (a_plus - a_minus)
    c10 = 0.5 * forward * sin_theta**2 * (b_plus + b_minus)
    c11 = 0.5 * backward * sin_theta * ((1.0 + cos_theta) * b_minus - (1.0 - cos_theta) * b_plus)

    return np.stack((c00, c01, c10, c11), axis=1)


def four_level_rotating_frame(model: FourLevelModel) -> Tuple[np.ndarray, np.ndarray]:
    """The time-independent Hamiltonian seen from the frame co-rotating with the field.

    Returns the matrix and its closed-form spectrum
    (-hbar Omega_-/2, hbar Omega_-/2, -hbar Omega_+/2, hbar Omega_+/2).
    """
    b, w, theta, hbar = model.b, model.w, model.theta, model.hbar
    matrix = 0.5 * hbar * (b * np.sin(theta) * GAMMA_X + b * np.cos(theta) * GAMMA_Z - w * PI_Z)
    half_minus = 0.5 * hbar * model.omega_minus
    half_plus = 0.5 * hbar * model.omega_plus

    return matrix.astype(complex), np.array([-half_minus, half_minus, -half_plus, half_plus])


def four_level_exact_rotating(model: FourLevelModel, t: float) -> QuantumState:
    """Exact state through the rotating frame, e^{-i w t Pi_z / 2} e^{-i H' t / hbar} |0^0(0)>."""
    matrix, _ = four_level_rotating_frame(model)
    values, vectors = eigh(matrix)
    initial = model.snapshot_basis_at_time(0.0)[:, 0]
    weights = vectors.conj().T @ initial
    rotated = vectors @ (np.exp(-1j * values * t / model.hbar) * weights)
    frame = np.exp(-0.5j * model.w * t * np.diag(PI_Z).real)
    lab = frame * rotated
    amplitudes = model.snapshot_basis_at_time(t).conj().T @ lab

    return QuantumState(BasisKind.SNAPSHOT, amplitudes, t * model.v)


def four_level_expansion(model: FourLevelModel, t: float, order: int) -> QuantumState:
    """Terms of the exact solution expanded in v = w: order 0 is Psi^(0), order 1 is Psi^(1)."""
    amplitudes = four_level_expansion_amplitudes(model, np.array([t]), order)[0]

    return QuantumState(BasisKind.SNAPSHOT, amplitudes, t * model.v)


def four_level_expansion_amplitudes(model: FourLevelModel, t: np.ndarray, order: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    b, w, v, theta = model.b, model.w, model.v, model.theta
    cos_theta, sin_theta = np.cos(theta), np.sin(theta)
    angle = 0.5 * w * t * cos_theta
    forward = np.exp(0.5j * b * t) * np.exp(0.5j * w * t)
    backward = np.exp(0.5j * b * t) * np.exp(-0.5j * w * t)
    transported = np.cos(angle) - 1j * cos_theta * np.sin(angle)
    zeros = np.zeros_like(t, dtype=complex)

    match order:
        case 0:
            columns = (forward * transported, 1j * backward * sin_theta * np.sin(angle), zeros, zeros)
        case 1:
            growth = w**2 * t / (4.0 * b * v)
            scale = w / (2.0 * b * v)
            decay = np.exp(-1j * b * t)
            columns = (
                1j * forward * growth * sin_theta**2 * transported,
                -backward * growth * sin_theta**3 * np.sin(angle),
                forward * scale * sin_theta**2 * np.cos(angle) * (1.0 - decay),
                backward * scale * sin_theta * ((1.0 - decay) * cos_theta * np.cos(angle)
                                                - 1j * (1.0 + decay) * np.sin(angle))
            )
        case _:
            raise PreconditionException(
                f'The closed-form expansion is available for orders 0 and 1, not {order}')

    return np.stack(columns, axis=1)


def four_level_small_theta_amplitude(model: FourLevelModel, t: float | np.ndarray) -> complex | np.ndarray:
    """First order in theta of the |1^1> amplitude: i theta w e^{-iwt/2} sin((w-b)t/2)/(w-b)."""
    t = np.asarray(t, dtype=float)
    detuning = model.w - model.b
    prefactor = 1j * model.theta * model.w * np.exp(-0.5j * model.w * t)

    if detuning == 0.0:
        return prefactor * 0.5 * t

    return prefactor * np.sin(0.5 * detuning * t) / detuning


def four_level_conditions_closed_form(model: FourLevelModel, t: float | np.ndarray) -> Dict[str, np.ndarray]:
    t = np.asarray(t, dtype=float)
    b, w, theta = model.b, model.w, model.theta
    sin_theta, cos_theta = np.sin(theta), abs(np.cos(theta))
    angle = 0.5 * w * t * np.cos(theta)
    u00 = np.abs(np.cos(angle) - 1j * np.cos(theta) * np.sin(angle))
    u01 = sin_theta * np.abs(np.sin(angle))

    return {
        'necessary': w * sin_theta * (sin_theta + cos_theta) / (2.0 * b),
        'sufALhs': w**2 * t * sin_theta**2 / b,
        'sufBLhs': 5.0 * w * (2.0 * sin_theta**2 + abs(np.sin(2.0 * theta))) / (4.0 * b),
        'u00': u00,
        'u01': u01,
        'combinedLhs': 5.0 * w / (2.0 * b),
        'combinedRhs': np.abs(np.sin(angle)) / (cos_theta + sin_theta)
    }


def quadratic_snapshot_basis(model: QuadraticModel, s: float) -> np.ndarray:
    """Columns |0^0>, |0^1> (energy -E(s)) and |1^0>, |1^1> (energy +E(s))."""
    return model.snapshot_basis(s)


def integrate_se(path: HamiltonianPath, psi0: np.ndarray, n_steps: int, tolerance: float = DEFAULT_SE_TOLERANCE,
                 check: bool = True) -> StateTrajectory:
    """RK4 solution of i hbar v d/ds Psi = H(s) Psi on n_steps + 1 points, in the lab basis.

    With check set, the endpoint is compared against a run with half the
    steps and a NumericalException is raised when they differ by more than
    tolerance.
    """
    if n_steps < MIN_STEPS or n_steps % 2 != 0:
        raise PreconditionException(
            f'The number of oracle steps must be even and >= {MIN_STEPS}, got {n_steps}')

    start = time.time()
    initial = np.asarray(psi0, dtype=complex)

    if initial.shape != (path.dim,):
        raise PreconditionException(
            f'The initial state has shape {initial.shape}, expected ({path.dim},)')

    grid, trajectory = _propagate(path, initial, n_steps)

    if check:
        _, coarse = _propagate(path, initial, n_steps // 2)
        difference = float(np.linalg.norm(trajectory[-1] - coarse[-1]))

        if difference > tolerance:
            raise NumericalException(
                f'The Schrodinger integration has not converged: halving the steps changes the final state by {difference:.3e}')

        if difference > 0.1 * tolerance:
            _LOGGER.warning(
                f'The Schrodinger integration is close to its tolerance: step-halving difference {difference:.3e}')
        else:
            _LOGGER.debug(f'Schrodinger step-halving difference: {difference:.3e}')

    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Schrodinger equation integrated ({n_steps} steps): {round(end - start, 2)} sec.')
    # autopep8: on

    return StateTrajectory(BasisKind.LAB, grid, trajectory)


def infidelity(exact: QuantumState, approx: QuantumState) -> float:
    """1 - |<exact|approx>|^2."""
    if exact.basis != approx.basis:
        raise PreconditionException(
            f'Cannot compare states in the {exact.basis.value} and {approx.basis.value} bases')

    if abs(exact.s - approx.s) > _GRID_MATCH_TOL:
        raise PreconditionException(
            f'Cannot compare states at s = {exact.s} and s = {approx.s}')

    overlap = np.vdot(exact.amplitudes, approx.amplitudes)

    return float(min(max(1.0 - abs(overlap)**2, 0.0), 1.0))


def infidelity_curve(exact: StateTrajectory, approx: StateTrajectory) -> np.ndarray:
    if exact.basis != approx.basis:
        raise PreconditionException(
            f'Cannot compare trajectories in the {exact.basis.value} and {approx.basis.value} bases')

    if len(exact) != len(approx) or np.max(np.abs(exact.grid - approx.grid)) > _GRID_MATCH_TOL:
        raise PreconditionException('The trajectories are not sampled on the same grid')

    overlaps = np.einsum('si,si->s', exact.amplitudes.conj(), approx.amplitudes)

    return np.clip(1.0 - np.abs(overlaps)**2, 0.0, 1.0)


def epsilon(path: HamiltonianPath, flow: SpectralFlow) -> np.ndarray:
    """2 sqrt2 hbar v / smallest adjacent gap, at every grid point."""
    return 2.0 * _SQRT2 * path.hbar * path.v / flow.min_gap()


def _propagate(path: HamiltonianPath, initial: np.ndarray, n_steps: int) -> Tuple[np.ndarray, np.ndarray]:
    grid = np.linspace(0.0, 1.0, n_steps + 1)
    step = 1.0 / n_steps
    factor = -1j / (path.hbar * path.v)
    trajectory = np.empty((grid.size, initial.size), dtype=complex)
    trajectory[0] = initial
    state = initial
    begin = 0

    while begin < n_steps:
        stop = min(begin + _CHUNK_STEPS, n_steps)
        half_grid = np.linspace(grid[begin], grid[stop], 2 * (stop - begin) + 1)
        generators = factor * path.evaluate_many(half_grid)
        origin = grid[begin]

        def rhs(s: float, psi: np.ndarray) -> np.ndarray:
            return generators[int(round((s - origin) * 2.0 / step))] @ psi

        segment = ode_rk4(rhs, state, grid[begin:stop + 1])
        trajectory[begin + 1:stop + 1] = segment[1:]
        state = segment[-1]
        begin = stop

    return grid, trajectory


def _a_b_terms(b: float, w: float, cos_theta: float, omega: float, sign: float,
               t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    half_angle = 0.5 * omega * t

    if omega == 0.0:
        # limits of sin(omega t / 2) / omega
        return np.ones_like(t, dtype=complex) + 0.5j * (b + sign * w * cos_theta) * t, 0.5j * w * t

    a_term = np.cos(half_angle) + 1j * (b + sign * w * cos_theta) / omega * np.sin(half_angle)
    b_term = 1j * w / omega * np.sin(half_angle)

    return a_term, b_term


__all__ = [
    'four_level_snapshot_basis',
    'four_level_exact',
    'four_level_exact_trajectory',
    'four_level_exact_amplitudes',
    'four_level_rotating_frame',
    'four_level_exact_rotating',
    'four_level_expansion',
    'four_level_expansion_amplitudes',
    'four_level_small_theta_amplitude',
    'four_level_conditions_closed_form',
    'quadratic_snapshot_basis',
    'integrate_se',
    'infidelity',
    'infidelity_curve',
    'epsilon'
]
