import logging
from typing import List, Tuple
import numpy as np
from .linalg import quadrature, central_derivative
from ..models import SpectralFlow, MField
from ..models.exceptions import PreconditionException

_LOGGER = logging.getLogger(__name__)


def apt_coefficients(flow: SpectralFlow, mfield: MField, p_max: int, b0: np.ndarray,
                     hbar: float = 1.0) -> Tuple[List[np.ndarray], np.ndarray]:
    """Scalar adiabatic perturbation theory for a non-degenerate spectrum.

    Returns the levels b^(p)[s, n, m] for p = 0..p_max and the Berry phases
    gamma_m(s) = i int_0^s M^{mm}. The recursion is
    b^(p+1)_nm = (i hbar / (E_n - E_m)) (db^(p)_nm/ds - M^{mm} b^(p)_nm + sum_k b^(p)_km M^{kn}),
    with db_nn/ds = -sum_{k!=n} b_kn M^{kn} and sum_m b^(p)_nm(0) = 0 for p >= 1.
    """
    if any(d != 1 for d in flow.d_list):
        raise PreconditionException(
            f'Scalar perturbation theory needs a non-degenerate spectrum, got block sizes {flow.d_list}')

    coupling = mfield.values[:, :, :, 0, 0]
    n_blocks = flow.n_blocks
    diagonal = np.einsum('smm->sm', coupling)
    gamma = 1j * quadrature(diagonal, flow.step)

    energies = flow.energies
    gaps = energies[:, :, None] - energies[:, None, :]
    off_diagonal = ~np.eye(n_blocks, dtype=bool)
    factor = np.zeros(gaps.shape, dtype=complex)
    factor[:, off_diagonal] = 1j * hbar / gaps[:, off_diagonal]

    level = np.zeros((flow.n_points, n_blocks, n_blocks), dtype=complex)
    level[:, np.arange(n_blocks), np.arange(n_blocks)] = np.asarray(b0, dtype=complex)
    levels = [level]

    for p in range(p_max):
        current = levels[p]
        rate = central_derivative(current, flow.step)
        mixed = np.einsum('skm,skn->snm', current, coupling)
        following = factor * (rate - current * diagonal[:, None, :] + mixed)

        for n in range(n_blocks):
            others = np.arange(n_blocks) != n
            initial = -np.sum(following[0, n, others])
            source = np.sum(following[:, others, n] * coupling[:, others, n], axis=1)
            following[:, n, n] = initial - quadrature(source, flow.step)

        levels.append(following)
        _LOGGER.debug(f'APT order {p + 1}: max |b| = {np.max(np.abs(following)):.3e}')

    return levels, gamma


def apt_as_dapt(level: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """B_mn(s) = e^{i gamma_m(s)} b_nm(s), shape (N+1, n_blocks, n_blocks)."""
    return np.exp(1j * gamma)[:, :, None] * np.swapaxes(level, 1, 2)


__all__ = ['apt_coefficients', 'apt_as_dapt']
