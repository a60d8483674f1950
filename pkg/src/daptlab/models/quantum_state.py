import numpy as np
from .basis_kind import BasisKind


class QuantumState:
    def __init__(self, basis: BasisKind, amplitudes: np.ndarray, s: float):
        self.basis = basis
        self.amplitudes = amplitudes
        self.s = s


class StateTrajectory:
    """Amplitudes of shape (N+1, dim) on a grid of s values, in one basis."""

    def __init__(self, basis: BasisKind, grid: np.ndarray, amplitudes: np.ndarray):
        self.basis = basis
        self.grid = grid
        self.amplitudes = amplitudes

    def __len__(self) -> int:
        return self.grid.size

    def at(self, index: int) -> QuantumState:
        return QuantumState(self.basis, self.amplitudes[index], float(self.grid[index]))

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.amplitudes, axis=1)

    def normalized(self) -> 'StateTrajectory':
        norms = self.norms()
        safe = np.where(norms == 0.0, 1.0, norms)

        return StateTrajectory(self.basis, self.grid, self.amplitudes / safe[:, None])

    def take(self, indices: np.ndarray) -> 'StateTrajectory':
        return StateTrajectory(self.basis, self.grid[indices], self.amplitudes[indices])


__all__ = ['QuantumState', 'StateTrajectory']
