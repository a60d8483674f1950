from typing import Dict, Optional
import numpy as np


class ConditionReport:
    """Per-grid-point adiabaticity conditions, in real time t.

    nec_strong, nec_weak: shape (N+1, n_blocks-1), one column per excited block.
    suf_b_lhs: shape (N+1, n_blocks-1, d_max), NaN-padded for g_n >= d_n.
    ratio_aggregate: shape (p_tested, N+1), NaN where not applicable.
    """

    def __init__(self, t: np.ndarray, nec_strong: np.ndarray, nec_weak: np.ndarray,
                 suf_a_lhs: np.ndarray, suf_b_lhs: np.ndarray, suf_rhs: np.ndarray, margin: float,
                 ratio_aggregate: Optional[np.ndarray] = None):
        self.t = t
        self.nec_strong = nec_strong
        self.nec_weak = nec_weak
        self.suf_a_lhs = suf_a_lhs
        self.suf_b_lhs = suf_b_lhs
        self.suf_rhs = suf_rhs
        self.margin = margin
        self.ratio_aggregate = ratio_aggregate

    @property
    def nec_strong_max(self) -> np.ndarray:
        return _row_max(self.nec_strong)

    @property
    def nec_weak_max(self) -> np.ndarray:
        return _row_max(self.nec_weak)

    @property
    def suf_b_lhs_max(self) -> np.ndarray:
        flat = self.suf_b_lhs.reshape(self.suf_b_lhs.shape[0], -1)

        return _row_max(flat)

    @property
    def verdict_necessary(self) -> bool:
        return bool(np.all(self.nec_strong_max < self.margin))

    @property
    def verdict_sufficient(self) -> bool:
        threshold = self.margin * self.suf_rhs
        suf_a = self.suf_a_lhs < threshold
        suf_b = self.suf_b_lhs_max < threshold

        return bool(np.all(suf_a & suf_b))

    def ratio_max(self, p: int) -> float:
        if self.ratio_aggregate is None or p >= self.ratio_aggregate.shape[0]:
            return float('nan')

        values = self.ratio_aggregate[p]

        if np.all(np.isnan(values)):
            return float('nan')

        return float(np.nanmax(values))

    def to_dict(self) -> Dict:
        return {
            'necessary': self.verdict_necessary,
            'sufficient': self.verdict_sufficient,
            'margin': self.margin,
            'necStrongMax': float(np.max(self.nec_strong_max)),
            'sufALhsMax': float(np.max(self.suf_a_lhs)),
            'sufBLhsMax': float(np.max(self.suf_b_lhs_max))
        }


def _row_max(values: np.ndarray) -> np.ndarray:
    if values.shape[1] == 0:
        return np.zeros(values.shape[0])

    return np.nanmax(values, axis=1)


__all__ = ['ConditionReport']
