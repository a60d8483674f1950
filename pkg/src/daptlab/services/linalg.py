import math
import logging
from typing import Callable, Tuple
import numpy as np
from scipy.integrate import cumulative_trapezoid
from ..models.exceptions import PreconditionException, NumericalException
from ..utils.constants import (
    HERMITIAN_TOL, JACOBI_TOL, JACOBI_MAX_SWEEPS, POLAR_TOL, POLAR_MAX_ITERATIONS, SINGULAR_TOL)

_LOGGER = logging.getLogger(__name__)

RhsFunction = Callable[[float, np.ndarray], np.ndarray]


def eigh(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns the eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns.
    """
    a = _as_square(matrix).astype(complex)
    _check_hermitian(a)

    n = a.shape[0]
    vectors = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)

    if n == 1 or scale == 0.0:
        return _sorted_eigenpairs(a, vectors)

    threshold = JACOBI_TOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(a) < threshold:
            return _sorted_eigenpairs(a, vectors)

        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, vectors, p, q)

    if _off_diagonal_norm(a) < threshold:
        return _sorted_eigenpairs(a, vectors)

    raise NumericalException(
        f'The Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps')


def nearest_unitary(matrix: np.ndarray) -> np.ndarray:
    """Unitary polar factor by the Newton iteration X <- (X + X^-H) / 2."""
    x = _as_square(matrix).astype(complex)
    singular_values = np.linalg.svd(x, compute_uv=False)

    if singular_values[-1] <= SINGULAR_TOL:
        raise PreconditionException(
            f'Cannot compute the unitary polar factor of a singular matrix (smallest singular value {singular_values[-1]:.3e})')

    for _ in range(POLAR_MAX_ITERATIONS):
        next_x = 0.5 * (x + np.linalg.inv(x).conj().T)
        change = np.max(np.abs(next_x - x))
        x = next_x

        if change < POLAR_TOL:
            return x

    _LOGGER.warning(
        f'Polar iteration stopped after {POLAR_MAX_ITERATIONS} iterations')

    return x


def norm_col1(matrix: np.ndarray) -> float:
    a = np.atleast_2d(np.asarray(matrix))

    if a.size == 0:
        return 0.0

    return float(np.max(np.sum(np.abs(a), axis=0)))


def quadrature(samples: np.ndarray, step: float) -> np.ndarray:
    """Running composite trapezoid integral along the first axis; starts at 0."""
    values = np.asarray(samples)

    if values.shape[0] < 2:
        raise PreconditionException(
            'The quadrature needs at least 2 samples')

    return cumulative_trapezoid(values, dx=step, axis=0, initial=0)


def ode_rk4(rhs: RhsFunction, y0: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Classic fixed-step 4th-order Runge-Kutta along the given grid.

    The rhs is evaluated at grid points and at the midpoints between them.
    Returns the state at every grid point, stacked along a new first axis.
    """
    nodes = np.asarray(grid, dtype=float)
    y = np.array(y0, dtype=complex)
    trajectory = np.empty((nodes.size,) + y.shape, dtype=complex)
    trajectory[0] = y

    for k in range(nodes.size - 1):
        s = nodes[k]
        h = nodes[k + 1] - s
        half = 0.5 * h

        k1 = rhs(s, y)
        k2 = rhs(s + half, y + half * k1)
        k3 = rhs(s + half, y + half * k2)
        k4 = rhs(s + h, y + h * k3)

        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        trajectory[k + 1] = y

    return trajectory


def central_derivative(samples: np.ndarray, step: float) -> np.ndarray:
    """Second-order finite-difference derivative along the first axis.

    Central differences inside, one-sided second-order stencils at both ends.
    """
    values = np.asarray(samples)

    if values.shape[0] < 3:
        raise PreconditionException(
            'The finite-difference derivative needs at least 3 samples')

    return np.gradient(values, step, axis=0, edge_order=2)


def is_unitary(matrix: np.ndarray, tol: float) -> bool:
    a = np.asarray(matrix)
    identity = np.eye(a.shape[-1])

    return bool(np.max(np.abs(a.conj().T @ a - identity)) <= tol)


def _as_square(matrix: np.ndarray) -> np.ndarray:
    a = np.asarray(matrix)

    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionException(
            f'Expected a square matrix, got shape {a.shape}')

    return a


def _check_hermitian(a: np.ndarray) -> None:
    scale = np.max(np.abs(a))
    asymmetry = np.max(np.abs(a - a.conj().T))

    if asymmetry > HERMITIAN_TOL * scale:
        raise PreconditionException(
            f'The matrix is not Hermitian (max |A - A^H| = {asymmetry:.3e})')


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))

    return float(np.linalg.norm(off))


def _rotate(a: np.ndarray, vectors: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)

    if r == 0.0:
        return

    phase = apq / r
    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * r)

    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))

    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    e = phase.conjugate()

    # A <- A G, then A <- G^H A, with G = diag(1, e) . [[c, s], [-s, c]] on (p, q)
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * e * col_q
    a[:, q] = s * col_p + c * e * col_q

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * phase * row_q
    a[q, :] = s * row_p + c * phase * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vec_p = vectors[:, p].copy()
    vec_q = vectors[:, q].copy()
    vectors[:, p] = c * vec_p - s * e * vec_q
    vectors[:, q] = s * vec_p + c * e * vec_q


def _sorted_eigenpairs(a: np.ndarray, vectors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    values = np.real(np.diag(a)).copy()
    order = np.argsort(values, kind='stable')

    return values[order], vectors[:, order]


__all__ = [
    'eigh',
    'nearest_unitary',
    'norm_col1',
    'quadrature',
    'ode_rk4',
    'central_derivative',
    'is_unitary'
]
