from typing import List, Dict
import numpy as np
from .hamiltonian_path import HamiltonianPath
from .pauli import SIGMA_X, SIGMA_Y, SIGMA_Z


class TwoLevelModel(HamiltonianPath):
    """Spin-1/2 in a field of magnitude b tilted by theta from z, rotating about z at rate w.

    H(s) = (hbar b / 2)(cos(theta) sigma_z + sin(theta)(cos(phi) sigma_x + sin(phi) sigma_y)),
    phi(s) = (w / v) s. Non-degenerate, with levels -hbar b/2 and +hbar b/2.
    """

    def __init__(self, b: float, w: float, theta: float, v: float, hbar: float = 1.0):
        super().__init__(2, v, hbar)
        self.b = b
        self.w = w
        self.theta = theta

    def phase(self, s: float | np.ndarray) -> float | np.ndarray:
        return (self.w / self.v) * np.asarray(s, dtype=float)

    def evaluate(self, s: float) -> np.ndarray:
        return self.evaluate_many(np.array([s]))[0]

    def evaluate_many(self, grid: np.ndarray) -> np.ndarray:
        phi = self.phase(grid)
        sin_theta, cos_theta = np.sin(self.theta), np.cos(self.theta)
        cx = sin_theta * np.cos(phi)
        cy = sin_theta * np.sin(phi)

        return 0.5 * self.hbar * self.b * (cx[:, None, None] * SIGMA_X + cy[:, None, None] * SIGMA_Y + cos_theta * SIGMA_Z)

    def evaluate_derivative(self, s: float) -> np.ndarray:
        return self.evaluate_derivative_many(np.array([s]))[0]

    def evaluate_derivative_many(self, grid: np.ndarray) -> np.ndarray:
        phi = self.phase(grid)
        scale = 0.5 * self.hbar * self.b * np.sin(self.theta) * self.w / self.v

        return scale * (-np.sin(phi)[:, None, None] * SIGMA_X + np.cos(phi)[:, None, None] * SIGMA_Y)

    def analytic_basis(self, s: float) -> List[np.ndarray]:
        phi = float(self.phase(s))
        half = 0.5 * self.theta
        down = np.array([[-np.sin(half) * np.exp(-1j * phi)], [np.cos(half)]], dtype=complex)
        up = np.array([[np.cos(half)], [np.sin(half) * np.exp(1j * phi)]], dtype=complex)

        return [down, up]

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({'b': self.b, 'w': self.w, 'theta': self.theta})

        return data


__all__ = ['TwoLevelModel']
