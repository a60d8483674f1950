from typing import List, Dict
import numpy as np
from .hamiltonian_path import HamiltonianPath
from .pauli import GAMMA_X, GAMMA_Y, GAMMA_Z

_SQRT2 = np.sqrt(2.0)


class FourLevelModel(HamiltonianPath):
    """Four-level system in a field of fixed magnitude rotating about z.

    H(t) = (hbar b / 2)(sin(theta) cos(wt) Gamma_x + sin(theta) sin(wt) Gamma_y + cos(theta) Gamma_z),
    with two doubly degenerate levels -hbar b/2 and +hbar b/2. On the rescaled
    time, t = s / v.
    """

    def __init__(self, b: float, w: float, theta: float, v: float, hbar: float = 1.0):
        super().__init__(4, v, hbar)
        self.b = b
        self.w = w
        self.theta = theta

    @property
    def omega_plus(self) -> float:
        return float(np.sqrt(self.w**2 + self.b**2 + 2.0 * self.w * self.b * np.cos(self.theta)))

    @property
    def omega_minus(self) -> float:
        return float(np.sqrt(max(self.w**2 + self.b**2 - 2.0 * self.w * self.b * np.cos(self.theta), 0.0)))

    def time(self, s: float | np.ndarray) -> float | np.ndarray:
        return s / self.v

    def hamiltonian_at_time(self, t: float | np.ndarray) -> np.ndarray:
        phi = self.w * np.asarray(t, dtype=float)
        sin_theta, cos_theta = np.sin(self.theta), np.cos(self.theta)
        cx = sin_theta * np.cos(phi)
        cy = sin_theta * np.sin(phi)
        scale = 0.5 * self.hbar * self.b

        return scale * (cx[..., None, None] * GAMMA_X + cy[..., None, None] * GAMMA_Y + cos_theta * GAMMA_Z)

    def evaluate(self, s: float) -> np.ndarray:
        return self.hamiltonian_at_time(self.time(s))

    def evaluate_many(self, grid: np.ndarray) -> np.ndarray:
        return self.hamiltonian_at_time(self.time(np.asarray(grid, dtype=float)))

    def evaluate_derivative(self, s: float) -> np.ndarray:
        return self.evaluate_derivative_many(np.array([s]))[0]

    def evaluate_derivative_many(self, grid: np.ndarray) -> np.ndarray:
        phi = self.w * self.time(np.asarray(grid, dtype=float))
        rate = self.w / self.v
        scale = 0.5 * self.hbar * self.b * np.sin(self.theta) * rate
        cx = -np.sin(phi)
        cy = np.cos(phi)

        return scale * (cx[..., None, None] * GAMMA_X + cy[..., None, None] * GAMMA_Y)

    def snapshot_basis_at_time(self, t: float) -> np.ndarray:
        """Columns |0^0>, |0^1>, |1^0>, |1^1> in the uu, ud, du, dd basis."""
        phi = self.w * t
        sin_theta, cos_theta = np.sin(self.theta), np.cos(self.theta)
        up = np.array([np.exp(-1j * phi) * sin_theta, -cos_theta])
        down = np.array([cos_theta, np.exp(1j * phi) * sin_theta])

        columns = [
            np.concatenate((up, [0.0, -1.0])),
            np.concatenate((down, [-1.0, 0.0])),
            np.concatenate((up, [0.0, 1.0])),
            np.concatenate((down, [1.0, 0.0]))
        ]

        return np.stack(columns, axis=1).astype(complex) / _SQRT2

    def analytic_basis(self, s: float) -> List[np.ndarray]:
        basis = self.snapshot_basis_at_time(self.time(s))

        return [basis[:, :2], basis[:, 2:]]

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({'b': self.b, 'w': self.w, 'theta': self.theta})

        return data


__all__ = ['FourLevelModel']
