import logging
from typing import Tuple
import numpy as np
from .linalg import quadrature
from ..models import HamiltonianPath, SpectralFlow, MField, WZTransport, CoeffSet, ConditionReport
from ..models.exceptions import NumericalException
from ..utils.constants import DEFAULT_MARGIN, DEFAULT_NULL_TOL, RATIO_NULL_TOL

_LOGGER = logging.getLogger(__name__)


def necessary_strong(mfield: MField, flow: SpectralFlow, v: float, hbar: float) -> np.ndarray:
    """hbar ||M^{0n}(t)||_1 / |E_n - E_0| per excited block n, shape (N+1, n_blocks - 1)."""
    values = np.zeros((flow.n_points, flow.n_blocks - 1))

    for n in range(1, flow.n_blocks):
        column_sums = np.sum(np.abs(v * mfield.block(0, n)), axis=1)
        values[:, n - 1] = hbar * np.max(column_sums, axis=1) / np.abs(flow.gap(n, 0))

    return values


def necessary_weak(mfield: MField, transport: WZTransport, flow: SpectralFlow, v: float, hbar: float) -> np.ndarray:
    """hbar max_{h, g} |(U^0 M^{0n}(t))_{h g}| / |E_n - E_0|, shape (N+1, n_blocks - 1)."""
    values = np.zeros((flow.n_points, flow.n_blocks - 1))
    ground = transport.unitaries[0]

    for n in range(1, flow.n_blocks):
        transported = ground @ (v * mfield.block(0, n))
        values[:, n - 1] = hbar * np.max(np.abs(transported), axis=(1, 2)) / np.abs(flow.gap(n, 0))

    return values


def sufficient_practical(mfield: MField, transport: WZTransport, flow: SpectralFlow, v: float, hbar: float,
                         null_tol: float = DEFAULT_NULL_TOL) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Left-hand sides of the two practical sufficient conditions and their common right-hand side.

    suf_a: hbar d_0 int_0^t sum_n sum |[M^{0n} M^{0n}^H]| / |E_0 - E_n| dt', shape (N+1,).
    suf_b: hbar / |E_n(0) - E_0(0)| (sum_k |M^{0n}_{k g}(t)| + d_n sum |M^{0n}(0)|),
    shape (N+1, n_blocks - 1, d_max), NaN where g >= d_n.
    rhs: min over the non-null |U^0_{0 g}(t)|.
    """
    d_0 = flow.d_list[0]
    integrand = np.zeros(flow.n_points)
    suf_b = np.full((flow.n_points, flow.n_blocks - 1, flow.d_max), np.nan)

    for n in range(1, flow.n_blocks):
        block = mfield.block(0, n)
        product = block @ np.conj(np.swapaxes(block, 1, 2))
        integrand += np.sum(np.abs(product), axis=(1, 2)) / np.abs(flow.gap(0, n))

        real_time = v * block
        column_sums = np.sum(np.abs(real_time), axis=1)
        initial_total = np.sum(np.abs(real_time[0]))
        d_n = flow.d_list[n]
        suf_b[:, n - 1, :d_n] = hbar * (column_sums + d_n * initial_total) / abs(flow.gap(n, 0)[0])

    # dt = ds / v and M(t) = v M(s)
    suf_a = hbar * d_0 * v * quadrature(integrand, flow.step)
    rhs = min_nonnull(np.abs(transport.unitaries[0][:, 0, :]), null_tol)

    return suf_a, suf_b, rhs


def ratio_diagnostic(coeffs: CoeffSet, v: float, row: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Ratio test between consecutive orders.

    Returns the per-channel ratios v sum_m |[B^(p+1)_mn]_{row g}| / sum_m |[B^(p)_mn]_{row g}|
    with shape (order, N+1, n_blocks, d_max), and the aggregate ratio summed over n, g and m
    with shape (order, N+1). Entries whose denominator vanishes are NaN.
    """
    n_tests = coeffs.order
    first = coeffs.level(0)
    n_points, n_blocks, d_max = first.shape[0], first.shape[1], first.shape[3]
    channels = np.full((n_tests, n_points, n_blocks, d_max), np.nan)
    aggregate = np.full((n_tests, n_points), np.nan)
    valid = np.zeros((n_blocks, d_max), dtype=bool)

    for n, d_n in enumerate(coeffs.d_list):
        valid[n, :d_n] = True

    for p in range(n_tests):
        lower = np.sum(np.abs(coeffs.level(p)[:, :, :, row, :]), axis=1)
        upper = v * np.sum(np.abs(coeffs.level(p + 1)[:, :, :, row, :]), axis=1)
        usable = (lower > RATIO_NULL_TOL) & valid[None]
        channels[p][usable] = upper[usable] / lower[usable]

        lower_total = np.sum(np.where(valid[None], lower, 0.0), axis=(1, 2))
        upper_total = np.sum(np.where(valid[None], upper, 0.0), axis=(1, 2))
        nonzero = lower_total > RATIO_NULL_TOL
        aggregate[p][nonzero] = upper_total[nonzero] / lower_total[nonzero]

    return channels, aggregate


def min_nonnull(values: np.ndarray, null_tol: float = DEFAULT_NULL_TOL) -> np.ndarray | float:
    moduli = np.abs(np.asarray(values, dtype=complex))
    masked = np.where(moduli >= null_tol, moduli, np.inf)
    result = np.min(masked, axis=-1)

    if np.any(np.isinf(result)):
        raise NumericalException(
            'Every entry of a row is null; a row of a unitary matrix cannot be null')

    return float(result) if result.ndim == 0 else result


def evaluate_conditions(path: HamiltonianPath, flow: SpectralFlow, mfield: MField, transport: WZTransport,
                        margin: float = DEFAULT_MARGIN, null_tol: float = DEFAULT_NULL_TOL,
                        coeffs: CoeffSet = None) -> ConditionReport:
    v, hbar = path.v, path.hbar
    nec_strong = necessary_strong(mfield, flow, v, hbar)
    nec_weak = necessary_weak(mfield, transport, flow, v, hbar)
    suf_a, suf_b, rhs = sufficient_practical(mfield, transport, flow, v, hbar, null_tol)
    aggregate = None

    if coeffs is not None and coeffs.order > 0:
        _, aggregate = ratio_diagnostic(coeffs, v)

    report = ConditionReport(flow.grid / v, nec_strong, nec_weak, suf_a, suf_b, rhs, margin, aggregate)

    for p in range(coeffs.order if coeffs is not None else 0):
        _LOGGER.info(f'Ratio test, orders {p} -> {p + 1}: max {report.ratio_max(p):.6g}')

    return report


__all__ = [
    'necessary_strong',
    'necessary_weak',
    'sufficient_practical',
    'ratio_diagnostic',
    'min_nonnull',
    'evaluate_conditions'
]
