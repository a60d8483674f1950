from typing import List, Dict
import numpy as np


class SpectralFlow:
    """Gauge-smoothed eigen-decomposition of H(s) on a uniform grid.

    energies has shape (N+1, n_blocks); bases[n] has shape (N+1, dim, d_n),
    columns being the eigenvectors |n^g(s)>.
    """

    def __init__(self, grid: np.ndarray, energies: np.ndarray, bases: List[np.ndarray], deg_tol: float,
                 analytic: bool = False):
        self.grid = grid
        self.energies = energies
        self.bases = bases
        self.deg_tol = deg_tol
        self.analytic = analytic
        self.d_list: List[int] = [basis.shape[2] for basis in bases]
        self.d_max: int = max(self.d_list)

    @property
    def n_blocks(self) -> int:
        return len(self.bases)

    @property
    def n_points(self) -> int:
        return self.grid.size

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @property
    def dim(self) -> int:
        return self.bases[0].shape[1]

    def gap(self, m: int, n: int) -> np.ndarray:
        """Delta_mn(s) = E_m(s) - E_n(s)."""
        return self.energies[:, m] - self.energies[:, n]

    def min_gap(self) -> np.ndarray:
        if self.n_blocks < 2:
            return np.full(self.n_points, np.inf)

        return np.min(np.diff(self.energies, axis=1), axis=1)

    def to_dict(self) -> Dict:
        return {
            'nPoints': self.n_points,
            'nBlocks': self.n_blocks,
            'dList': self.d_list,
            'dMax': self.d_max,
            'degTol': self.deg_tol,
            'analyticBasis': self.analytic,
            'minGap': float(np.min(self.min_gap()))
        }


__all__ = ['SpectralFlow']
