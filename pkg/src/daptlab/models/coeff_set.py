from typing import List
import numpy as np
from .exceptions import PreconditionException


class CoeffSet:
    """The coefficient hierarchy B^(p)_mn(s), stored without dynamical phases.

    levels[p] has shape (N+1, n_blocks, n_blocks, d_max, d_max). Rows of the (m, n)
    block are labelled by the initial-condition row h, columns by g_n < d_n; the rest is zero.
    """

    def __init__(self, levels: List[np.ndarray], d_list: List[int], b0: np.ndarray, p_max: int):
        self.levels = levels
        self.d_list = d_list
        self.b0 = b0
        self.p_max = p_max

    @property
    def order(self) -> int:
        return len(self.levels) - 1

    @property
    def n_blocks(self) -> int:
        return len(self.d_list)

    def level(self, p: int) -> np.ndarray:
        if p < 0 or p > self.order:
            raise PreconditionException(
                f'Order {p} is not available (computed up to {self.order})')

        return self.levels[p]

    def block(self, p: int, m: int, n: int) -> np.ndarray:
        return self.level(p)[:, m, n, :, :self.d_list[n]]

    def append(self, level: np.ndarray) -> None:
        if self.order + 1 > self.p_max:
            raise PreconditionException(
                f'Order {self.order + 1} exceeds the configured maximum order {self.p_max}')

        self.levels.append(level)

    def sum_rule_error(self, p: int) -> float:
        """max |sum_m B^(p)_mn(0)| over n; zero for p >= 1 by construction."""
        initial = self.level(p)[0]

        return float(np.max(np.abs(np.sum(initial, axis=0))))


__all__ = ['CoeffSet']
