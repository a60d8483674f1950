from typing import List
import numpy as np


class MField:
    """Coupling matrices M^{mn}(s) in rescaled-time units.

    values has shape (N+1, n_blocks, n_blocks, d_max, d_max); the block (m, n)
    holds the d_m x d_n matrix with [M^{mn}]_{g h} = <n^h|d/ds m^g>, zero-padded.
    """

    def __init__(self, values: np.ndarray, d_list: List[int]):
        self.values = values
        self.d_list = d_list

    @property
    def n_blocks(self) -> int:
        return len(self.d_list)

    def block(self, m: int, n: int) -> np.ndarray:
        return self.values[:, m, n, :self.d_list[m], :self.d_list[n]]

    def antisymmetry_error(self) -> float:
        """max over s, m, n of |(M^{nm})^H + M^{mn}|."""
        swapped = np.swapaxes(self.values, 1, 2).conj()
        residual = np.swapaxes(swapped, 3, 4) + self.values

        return float(np.max(np.abs(residual)))


__all__ = ['MField']
