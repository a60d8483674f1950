import time
import logging
from typing import List, Tuple
import numpy as np
from .linalg import eigh, nearest_unitary, central_derivative
from ..models import HamiltonianPath, SpectralFlow, MField
from ..models.exceptions import PreconditionException, StructureException, GapClosureException
from ..utils.constants import MIN_STEPS, GAUGE_MIN_OVERLAP, ANALYTIC_BASIS_TOL, DEG_TOL_SCALE

_LOGGER = logging.getLogger(__name__)


def build_flow(path: HamiltonianPath, n_steps: int, deg_tol: float = None, use_analytic: bool = True) -> SpectralFlow:
    """Eigen-decomposition of H(s) on n_steps + 1 uniform points, grouped into degenerate blocks.

    An analytic basis supplied by the path is used as is; otherwise the
    eigensolver output is clustered and aligned sequentially from s = 0.
    """
    if n_steps < MIN_STEPS:
        raise PreconditionException(
            f'The number of steps must be >= {MIN_STEPS}, got {n_steps}')

    start = time.time()
    grid = np.linspace(0.0, 1.0, n_steps + 1)
    hamiltonians = path.evaluate_many(grid)

    if deg_tol is None:
        deg_tol = default_deg_tol(hamiltonians)

    if deg_tol <= 0:
        raise PreconditionException('The degeneracy tolerance must be > 0')

    analytic = use_analytic and path.analytic_basis(0.0) is not None

    if analytic:
        energies, bases = _analytic_blocks(path, grid, hamiltonians, deg_tol)
    else:
        energies, bases = _numerical_blocks(grid, hamiltonians, deg_tol)

    flow = SpectralFlow(grid, energies, bases, deg_tol, analytic)
    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Spectral flow built ({n_steps} steps, blocks {flow.d_list}): {round(end - start, 2)} sec.')
    # autopep8: on

    return flow


def gauge_align(prev_basis: np.ndarray, cur_basis: np.ndarray) -> np.ndarray:
    if prev_basis.shape != cur_basis.shape:
        raise PreconditionException(
            f'Cannot align bases of shapes {prev_basis.shape} and {cur_basis.shape}')

    overlap = cur_basis.conj().T @ prev_basis
    singular_values = np.linalg.svd(overlap, compute_uv=False)

    if singular_values[-1] < GAUGE_MIN_OVERLAP:
        raise StructureException(
            f'Consecutive eigenspaces are nearly orthogonal (smallest overlap {singular_values[-1]:.3f}); increase n_steps')

    return cur_basis @ nearest_unitary(overlap)


def m_field(flow: SpectralFlow, path: HamiltonianPath) -> MField:
    """Coupling matrices M^{mn}(s), with [M^{mn}]_{g h} = <n^h|d/ds m^g>.

    Off-diagonal blocks come from <n|dH/ds|m> / (E_m - E_n); diagonal blocks
    from finite differences of the block basis.
    """
    grid = flow.grid
    step = flow.step
    derivatives = path.evaluate_derivative_many(grid)

    if derivatives is None:
        derivatives = central_derivative(path.evaluate_many(grid), step)

    n_blocks = flow.n_blocks
    values = np.zeros((flow.n_points, n_blocks, n_blocks, flow.d_max, flow.d_max), dtype=complex)

    for n in range(n_blocks):
        basis = flow.bases[n]
        d_n = flow.d_list[n]
        basis_rate = central_derivative(basis, step)
        overlap = np.einsum('sia,sib->sab', basis.conj(), basis_rate)
        values[:, n, n, :d_n, :d_n] = np.swapaxes(overlap, 1, 2)

        for m in range(n_blocks):
            if m == n:
                continue

            d_m = flow.d_list[m]
            gap = flow.gap(m, n)
            _check_gap(gap, grid, flow.deg_tol, m, n)
            coupling = np.einsum('sia,sij,sjb->sab', basis.conj(), derivatives, flow.bases[m])
            values[:, m, n, :d_m, :d_n] = np.swapaxes(coupling, 1, 2) / gap[:, None, None]

    mfield = MField(values, flow.d_list)
    _LOGGER.debug(f'M-field antisymmetry error: {mfield.antisymmetry_error():.3e}')

    return mfield


def default_deg_tol(hamiltonians: np.ndarray) -> float:
    scale = float(np.max(np.linalg.norm(hamiltonians, ord=2, axis=(1, 2))))

    return DEG_TOL_SCALE * scale if scale > 0 else DEG_TOL_SCALE


def cluster_eigenvalues(values: np.ndarray, deg_tol: float, s: float = 0.0) -> List[List[int]]:
    clusters: List[List[int]] = [[0]]

    for i in range(1, values.size):
        if values[i] - values[i - 1] < deg_tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    for cluster in clusters:
        spread = values[cluster[-1]] - values[cluster[0]]

        if spread >= deg_tol:
            raise StructureException(
                f'Ambiguous eigenvalue cluster at s = {s:.6g} (spread {spread:.3e} >= deg_tol {deg_tol:.3e})')

    return clusters


def _numerical_blocks(grid: np.ndarray, hamiltonians: np.ndarray, deg_tol: float) -> Tuple[np.ndarray, List[np.ndarray]]:
    d_list: List[int] = None
    energies: List[List[float]] = []
    raw: List[List[np.ndarray]] = []

    for index, s in enumerate(grid):
        values, vectors = eigh(hamiltonians[index])
        clusters = cluster_eigenvalues(values, deg_tol, s)
        dims = [len(cluster) for cluster in clusters]

        if d_list is None:
            d_list = dims
        elif dims != d_list:
            raise StructureException(
                f'The block structure changes at s = {s:.6g}: {d_list} -> {dims}')

        energies.append([float(np.mean(values[cluster])) for cluster in clusters])
        raw.append([vectors[:, cluster] for cluster in clusters])

    bases: List[np.ndarray] = []

    for n in range(len(d_list)):
        aligned = np.empty((grid.size, hamiltonians.shape[1], d_list[n]), dtype=complex)
        aligned[0] = raw[0][n]

        for index in range(1, grid.size):
            try:
                aligned[index] = gauge_align(aligned[index - 1], raw[index][n])
            except StructureException as error:
                raise StructureException(f'{error} (block {n}, s = {grid[index]:.6g})')

        bases.append(aligned)

    return np.array(energies), bases


def _analytic_blocks(path: HamiltonianPath, grid: np.ndarray, hamiltonians: np.ndarray,
                     deg_tol: float) -> Tuple[np.ndarray, List[np.ndarray]]:
    per_point = [path.analytic_basis(float(s)) for s in grid]
    n_blocks = len(per_point[0])
    bases = [np.stack([blocks[n] for blocks in per_point]) for n in range(n_blocks)]
    scale = max(float(np.max(np.abs(hamiltonians))), 1.0)
    energies = np.empty((grid.size, n_blocks))

    for n, basis in enumerate(bases):
        applied = hamiltonians @ basis
        rayleigh = np.einsum('sia,sia->s', basis.conj(), applied).real / basis.shape[2]
        residual = np.max(np.abs(applied - basis * rayleigh[:, None, None]))

        if residual > ANALYTIC_BASIS_TOL * scale:
            raise PreconditionException(
                f'The analytic basis of block {n} is not an eigenbasis (residual {residual:.3e})')

        energies[:, n] = rayleigh

    gaps = np.diff(energies, axis=1)

    if gaps.size > 0 and np.min(gaps) < deg_tol:
        index = int(np.argmin(np.min(gaps, axis=1)))
        raise GapClosureException(
            f'Analytic blocks are not separated by deg_tol at s = {grid[index]:.6g}')

    return energies, bases


def _check_gap(gap: np.ndarray, grid: np.ndarray, deg_tol: float, m: int, n: int) -> None:
    closed = np.abs(gap) < deg_tol

    if np.any(closed):
        index = int(np.argmax(closed))
        raise GapClosureException(
            f'The gap between blocks {m} and {n} closes at s = {grid[index]:.6g} (|gap| {abs(gap[index]):.3e})')


__all__ = [
    'build_flow',
    'gauge_align',
    'm_field',
    'default_deg_tol',
    'cluster_eigenvalues'
]
