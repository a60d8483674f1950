import time
import logging
from typing import Callable, List
import numpy as np
from .linalg import quadrature, ode_rk4, nearest_unitary, is_unitary
from ..models import HamiltonianPath, SpectralFlow, MField, WZTransport
from ..models.exceptions import PreconditionException, NumericalException
from ..utils.constants import REUNITARIZE_EVERY, UNITARITY_DRIFT_TOL

_LOGGER = logging.getLogger(__name__)

_U0_TOL = 1e-10


def dynamical_phase(flow: SpectralFlow, path: HamiltonianPath) -> np.ndarray:
    """omega_n(s) = (1/hbar) int_0^s E_n, shape (N+1, n_blocks)."""
    return quadrature(flow.energies, flow.step) / path.hbar


def wz_transport(mfield: MField, flow: SpectralFlow, path: HamiltonianPath, u0: List[np.ndarray] = None) -> WZTransport:
    start = time.time()

    if u0 is None:
        u0 = [np.eye(d, dtype=complex) for d in mfield.d_list]

    if len(u0) != mfield.n_blocks:
        raise PreconditionException(
            f'Expected {mfield.n_blocks} initial unitaries, got {len(u0)}')

    unitaries = [transport_block(mfield.block(n, n), flow.grid, u0[n])
                 for n in range(mfield.n_blocks)]

    transport = WZTransport(flow.grid, unitaries, dynamical_phase(flow, path))
    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Wilczek-Zee transport done ({mfield.n_blocks} blocks): {round(end - start, 2)} sec.')
    # autopep8: on

    return transport


def transport_block(m_block: np.ndarray, grid: np.ndarray, u0: np.ndarray) -> np.ndarray:
    """Integrates dU/ds = -U M(s) from U(0) = u0, projecting back to the unitaries every few steps."""
    initial = np.asarray(u0, dtype=complex)

    if initial.shape != m_block.shape[1:]:
        raise PreconditionException(
            f'The initial unitary has shape {initial.shape}, expected {m_block.shape[1:]}')

    if not is_unitary(initial, _U0_TOL):
        raise PreconditionException('The initial Wilczek-Zee matrix is not unitary')

    coupling = _interpolator(m_block, grid)

    def rhs(s: float, u: np.ndarray) -> np.ndarray:
        return -u @ coupling(s)

    n_steps = grid.size - 1
    identity = np.eye(initial.shape[0])
    result = np.empty((grid.size,) + initial.shape, dtype=complex)
    result[0] = initial
    current = initial
    begin = 0

    while begin < n_steps:
        stop = min(begin + REUNITARIZE_EVERY, n_steps)
        segment = ode_rk4(rhs, current, grid[begin:stop + 1])
        end_value = segment[-1]
        drift = float(np.max(np.abs(end_value.conj().T @ end_value - identity)))

        if drift > UNITARITY_DRIFT_TOL:
            raise NumericalException(
                f'Unitarity drift {drift:.3e} at s = {grid[stop]:.6g}; reduce the step size')

        current = nearest_unitary(end_value)
        result[begin + 1:stop] = segment[1:-1]
        result[stop] = current
        begin = stop

    return result


def _interpolator(values: np.ndarray, grid: np.ndarray) -> Callable[[float], np.ndarray]:
    origin = grid[0]
    step = grid[1] - grid[0]
    last = grid.size - 2

    def interpolate(s: float) -> np.ndarray:
        position = (s - origin) / step
        lower = min(max(int(position), 0), last)
        weight = position - lower

        return (1.0 - weight) * values[lower] + weight * values[lower + 1]

    return interpolate


__all__ = ['dynamical_phase', 'wz_transport', 'transport_block']
