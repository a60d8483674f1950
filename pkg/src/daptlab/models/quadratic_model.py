from typing import List, Dict
import numpy as np
from .hamiltonian_path import HamiltonianPath

_SQRT2 = np.sqrt(2.0)


class QuadraticModel(HamiltonianPath):
    """Doubly degenerate four-level path with a gap quadratic in s.

    H(s) = (1/sqrt2) [[0, H1], [H1^H, 0]], H1 = E(s) [[-1, e^{-i theta}], [e^{i theta}, 1]],
    E(s) = E0 + lambda (s - 1/2)^2, theta(s) = theta0 + w s^2. Levels are -E(s) and +E(s).
    """

    def __init__(self, E0: float, lambda_: float, theta0: float, w: float, v: float, hbar: float = 1.0):
        super().__init__(4, v, hbar)
        self.E0 = E0
        self.lambda_ = lambda_
        self.theta0 = theta0
        self.w = w

    def energy(self, s: float | np.ndarray) -> float | np.ndarray:
        return self.E0 + self.lambda_ * (np.asarray(s, dtype=float) - 0.5)**2

    def angle(self, s: float | np.ndarray) -> float | np.ndarray:
        return self.theta0 + self.w * np.asarray(s, dtype=float)**2

    def epsilon(self, s: float | np.ndarray) -> float | np.ndarray:
        return _SQRT2 * self.hbar * self.v / self.energy(s)

    def evaluate(self, s: float) -> np.ndarray:
        return self.evaluate_many(np.array([s]))[0]

    def evaluate_many(self, grid: np.ndarray) -> np.ndarray:
        s = np.asarray(grid, dtype=float)
        coupling = self.__coupling(self.angle(s))

        return (self.energy(s) / _SQRT2)[:, None, None] * self.__embed(coupling)

    def evaluate_derivative(self, s: float) -> np.ndarray:
        return self.evaluate_derivative_many(np.array([s]))[0]

    def evaluate_derivative_many(self, grid: np.ndarray) -> np.ndarray:
        s = np.asarray(grid, dtype=float)
        angle = self.angle(s)
        energy_rate = 2.0 * self.lambda_ * (s - 0.5)
        angle_rate = 2.0 * self.w * s

        coupling_rate = np.zeros((s.size, 2, 2), dtype=complex)
        coupling_rate[:, 0, 1] = -1j * angle_rate * np.exp(-1j * angle)
        coupling_rate[:, 1, 0] = 1j * angle_rate * np.exp(1j * angle)

        block = energy_rate[:, None, None] * self.__coupling(angle) + \
            self.energy(s)[:, None, None] * coupling_rate

        return self.__embed(block) / _SQRT2

    def snapshot_basis(self, s: float) -> np.ndarray:
        """Columns |0^0>, |0^1>, |1^0>, |1^1> in the uu, ud, du, dd basis."""
        theta = float(self.angle(s))
        forward = np.exp(-1j * theta)
        backward = np.exp(1j * theta)

        columns = [
            [forward, 1.0, 0.0, -_SQRT2],
            [1.0, -backward, _SQRT2, 0.0],
            [forward, 1.0, 0.0, _SQRT2],
            [1.0, -backward, -_SQRT2, 0.0]
        ]

        return np.array(columns, dtype=complex).T / 2.0

    def analytic_basis(self, s: float) -> List[np.ndarray]:
        basis = self.snapshot_basis(s)

        return [basis[:, :2], basis[:, 2:]]

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({'E0': self.E0, 'lambda': self.lambda_,
                    'theta0': self.theta0, 'w': self.w})

        return data

    def __coupling(self, angle: np.ndarray) -> np.ndarray:
        coupling = np.empty((angle.size, 2, 2), dtype=complex)
        coupling[:, 0, 0] = -1.0
        coupling[:, 0, 1] = np.exp(-1j * angle)
        coupling[:, 1, 0] = np.exp(1j * angle)
        coupling[:, 1, 1] = 1.0

        return coupling

    def __embed(self, block: np.ndarray) -> np.ndarray:
        # the coupling block is Hermitian, so both off-diagonal corners carry it unchanged
        full = np.zeros((block.shape[0], 4, 4), dtype=complex)
        full[:, :2, 2:] = block
        full[:, 2:, :2] = np.conj(np.swapaxes(block, 1, 2))

        return full


__all__ = ['QuadraticModel']
