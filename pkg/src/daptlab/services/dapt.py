import time
import logging
import numpy as np
from .linalg import quadrature, central_derivative
from .spectrum import build_flow, m_field
from .phases import wz_transport
from ..models import (
    HamiltonianPath, SpectralFlow, MField, WZTransport, CoeffSet, DaptSolution, StateTrajectory, BasisKind)
from ..models.exceptions import PreconditionException, GapClosureException, NumericalException
from ..utils.constants import SUM_RULE_TOL, DEFAULT_P_MAX

_LOGGER = logging.getLogger(__name__)


def solve(path: HamiltonianPath, n_steps: int, p_max: int = DEFAULT_P_MAX, b0: np.ndarray = None,
          initial_row: int = 0, deg_tol: float = None, use_analytic: bool = True,
          initial_block: int = 0) -> DaptSolution:
    flow = build_flow(path, n_steps, deg_tol, use_analytic)

    if b0 is None:
        b0 = initial_amplitudes(flow.n_blocks, initial_block)

    if initial_row >= flow.d_max:
        raise PreconditionException(
            f'The initial row {initial_row} exceeds the largest block dimension {flow.d_max}')

    mfield = m_field(flow, path)
    transport = wz_transport(mfield, flow, path)
    coeffs = compute_coefficients(flow, mfield, transport, path, p_max, b0)

    return DaptSolution(path, flow, mfield, transport, coeffs, initial_row)


def initial_amplitudes(n_blocks: int, initial_block: int = 0) -> np.ndarray:
    if not 0 <= initial_block < n_blocks:
        raise PreconditionException(
            f'The initial block {initial_block} does not exist ({n_blocks} blocks)')

    b0 = np.zeros(n_blocks, dtype=complex)
    b0[initial_block] = 1.0

    return b0


def compute_coefficients(flow: SpectralFlow, mfield: MField, transport: WZTransport, path: HamiltonianPath,
                         p_max: int, b0: np.ndarray = None) -> CoeffSet:
    start = time.time()

    if b0 is None:
        b0 = initial_amplitudes(flow.n_blocks)

    coeffs = zeroth_order(transport, b0, p_max)

    if p_max >= 1:
        coeffs.append(first_order(mfield, transport, flow, b0, path.hbar))
        _log_sum_rule(coeffs, 1)

    while coeffs.order < p_max:
        coeffs.append(recurse_order(coeffs, mfield, transport, flow, path.hbar))
        _log_sum_rule(coeffs, coeffs.order)

    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Coefficients computed up to order {coeffs.order}: {round(end - start, 2)} sec.')
    # autopep8: on

    return coeffs


def zeroth_order(transport: WZTransport, b0: np.ndarray, p_max: int) -> CoeffSet:
    """B^(0)_mn(s) = b_n(0) U^n(s) delta_mn."""
    d_list = [unitary.shape[1] for unitary in transport.unitaries]
    amplitudes = np.asarray(b0, dtype=complex)

    if amplitudes.shape != (len(d_list),):
        raise PreconditionException(
            f'Expected {len(d_list)} initial amplitudes, got shape {amplitudes.shape}')

    unitaries = _padded_unitaries(transport, max(d_list))
    level = np.zeros((unitaries.shape[0], len(d_list), len(d_list)) + unitaries.shape[2:], dtype=complex)

    for n in range(len(d_list)):
        level[:, n, n] = amplitudes[n] * unitaries[:, n]

    return CoeffSet([level], d_list, amplitudes, p_max)


def first_order(mfield: MField, transport: WZTransport, flow: SpectralFlow, b0: np.ndarray, hbar: float) -> np.ndarray:
    """Closed form of B^(1): off-diagonal blocks from the zeroth order, diagonal blocks through J^{nmn}."""
    gaps = _gap_table(flow)
    unitaries = _padded_unitaries(transport, flow.d_max)
    coupling = mfield.values
    n_blocks = flow.n_blocks
    level = np.zeros_like(coupling)

    for m in range(n_blocks):
        for n in range(n_blocks):
            if m != n:
                factor = 1j * hbar * b0[m] / gaps[:, m, n]
                level[:, m, n] = factor[:, None, None] * (unitaries[:, m] @ coupling[:, m, n])

    for n in range(n_blocks):
        u_n = unitaries[:, n]
        initial = -_sum_blocks(level[0, :, n], n)
        diagonal = initial @ u_n[0].conj().T @ u_n

        for m in range(n_blocks):
            if m != n:
                diagonal = diagonal + 1j * hbar * b0[n] * (j_integral(mfield, transport, flow, n, m) @ u_n)

        level[:, n, n] = diagonal

    return level


def j_integral(mfield: MField, transport: WZTransport, flow: SpectralFlow, n: int, m: int) -> np.ndarray:
    """J^{nmn}(s) = int_0^s U^n M^{nm} M^{mn} U^n^H / (E_n - E_m), padded to d_max."""
    unitaries = _padded_unitaries(transport, flow.d_max)
    u_n = unitaries[:, n]
    gap = flow.energies[:, n] - flow.energies[:, m]
    product = u_n @ mfield.values[:, n, m] @ mfield.values[:, m, n] @ np.conj(np.swapaxes(u_n, 1, 2))

    return quadrature(product / gap[:, None, None], flow.step)


def recurse_order(coeffs: CoeffSet, mfield: MField, transport: WZTransport, flow: SpectralFlow, hbar: float) -> np.ndarray:
    """Level p + 1 from level p.

    Off-diagonal: B^(p+1)_mn = (i hbar / (E_n - E_m)) (dB^(p)_mn/ds + sum_k B^(p)_mk M^{kn}).
    Diagonal: B^(p+1)_nn(s) = -sum_{m!=n} B^(p+1)_mn(0) U^n(0)^H U^n(s)
                              - [int_0^s sum_{m!=n} B^(p+1)_nm M^{mn} U^n^H] U^n(s).
    """
    if coeffs.order + 1 > coeffs.p_max:
        raise PreconditionException(
            f'Order {coeffs.order + 1} exceeds the configured maximum order {coeffs.p_max}')

    current = coeffs.level(coeffs.order)
    coupling = mfield.values
    rate = central_derivative(current, flow.step)
    mixed = np.einsum('smkab,sknbc->smnac', current, coupling)

    gaps = _gap_table(flow)
    off_diagonal = ~np.eye(flow.n_blocks, dtype=bool)
    factor = np.zeros(gaps.shape, dtype=complex)
    factor[:, off_diagonal] = 1j * hbar / gaps[:, off_diagonal]

    level = factor[:, :, :, None, None] * (rate + mixed)
    _fill_diagonal(level, coupling, _padded_unitaries(transport, flow.d_max), flow.step)

    return level


def assemble_state(solution: DaptSolution, p: int) -> StateTrajectory:
    """|Psi^(p)(s)> in the snapshot basis: amplitude on |n^g> is sum_m e^{-i omega_m / v} [B^(p)_mn]_{h g}."""
    level = solution.coeffs.level(p)
    flow = solution.flow
    row = solution.initial_row
    phases = np.exp(-1j * solution.transport.omega / solution.v)
    combined = np.einsum('sm,smnc->snc', phases, level[:, :, :, row, :])
    amplitudes = np.concatenate(
        [combined[:, n, :d] for n, d in enumerate(flow.d_list)], axis=1)

    return StateTrajectory(BasisKind.SNAPSHOT, flow.grid, amplitudes)


def assemble_truncated(solution: DaptSolution, k: int) -> StateTrajectory:
    """sum_{p <= k} v^p |Psi^(p)>, normalized at every grid point."""
    if k > solution.coeffs.order:
        raise PreconditionException(
            f'Order {k} is not available (computed up to {solution.coeffs.order})')

    total = None

    for p in range(k + 1):
        term = assemble_state(solution, p).amplitudes * solution.v**p
        total = term if total is None else total + term

    return StateTrajectory(BasisKind.SNAPSHOT, solution.flow.grid, total).normalized()


def to_lab(trajectory: StateTrajectory, flow: SpectralFlow, indices: np.ndarray = None) -> StateTrajectory:
    if trajectory.basis == BasisKind.LAB:
        return trajectory

    if indices is None:
        indices = np.arange(flow.n_points)

    bases = np.concatenate([basis[indices] for basis in flow.bases], axis=2)

    if bases.shape[0] != len(trajectory):
        raise PreconditionException(
            f'The trajectory has {len(trajectory)} points, the basis {bases.shape[0]}')

    amplitudes = np.einsum('sia,sa->si', bases, trajectory.amplitudes)

    return StateTrajectory(BasisKind.LAB, trajectory.grid, amplitudes)


def refinement_error(path: HamiltonianPath, n_steps: int, p_max: int, b0: np.ndarray = None,
                     initial_row: int = 0, deg_tol: float = None) -> float:
    """Max amplitude difference of the order-p_max truncated state between n_steps and 2 n_steps."""
    coarse = solve(path, n_steps, p_max, b0, initial_row, deg_tol)
    fine = solve(path, 2 * n_steps, p_max, b0, initial_row, deg_tol)

    coarse_state = to_lab(assemble_truncated(coarse, p_max), coarse.flow)
    fine_state = to_lab(assemble_truncated(fine, p_max), fine.flow)
    error = float(np.max(np.abs(coarse_state.amplitudes - fine_state.amplitudes[::2])))

    _LOGGER.debug(f'Refinement error at {n_steps} steps, order {p_max}: {error:.3e}')

    return error


def _fill_diagonal(level: np.ndarray, coupling: np.ndarray, unitaries: np.ndarray, step: float) -> None:
    n_blocks = level.shape[1]

    for n in range(n_blocks):
        u_n = unitaries[:, n]
        u_n_adjoint = np.conj(np.swapaxes(u_n, 1, 2))
        initial = -_sum_blocks(level[0, :, n], n) @ u_n_adjoint[0]
        source = _sum_blocks(np.swapaxes(level[:, n] @ coupling[:, :, n], 0, 1), n)
        running = quadrature(source @ u_n_adjoint, step)

        level[:, n, n] = (initial[None] - running) @ u_n


def _sum_blocks(blocks: np.ndarray, skip: int) -> np.ndarray:
    mask = np.arange(blocks.shape[0]) != skip

    return np.sum(blocks[mask], axis=0)


def _gap_table(flow: SpectralFlow) -> np.ndarray:
    """gaps[s, m, n] = E_n(s) - E_m(s), checked against deg_tol off the diagonal."""
    energies = flow.energies
    gaps = energies[:, None, :] - energies[:, :, None]
    off_diagonal = ~np.eye(flow.n_blocks, dtype=bool)
    closed = np.abs(gaps[:, off_diagonal]) < flow.deg_tol

    if np.any(closed):
        index = int(np.argmax(np.any(closed, axis=1)))
        raise GapClosureException(
            f'Two blocks are closer than deg_tol at s = {flow.grid[index]:.6g}')

    return gaps


def _padded_unitaries(transport: WZTransport, d_max: int) -> np.ndarray:
    n_points = transport.grid.size
    padded = np.zeros((n_points, transport.n_blocks, d_max, d_max), dtype=complex)

    for n, unitary in enumerate(transport.unitaries):
        d = unitary.shape[1]
        padded[:, n, :d, :d] = unitary

    return padded


def _log_sum_rule(coeffs: CoeffSet, p: int) -> None:
    error = coeffs.sum_rule_error(p)
    _LOGGER.debug(f'Order {p}: initial-condition sum rule error {error:.3e}')

    if error > SUM_RULE_TOL:
        raise NumericalException(
            f'The initial-condition sum rule fails at order {p} (error {error:.3e})')


__all__ = [
    'solve',
    'initial_amplitudes',
    'compute_coefficients',
    'zeroth_order',
    'first_order',
    'j_integral',
    'recurse_order',
    'assemble_state',
    'assemble_truncated',
    'to_lab',
    'refinement_error'
]
