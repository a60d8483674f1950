from abc import ABC, abstractmethod
from typing import Callable, List, Optional
import numpy as np


class HamiltonianPath(ABC):
    """A Hamiltonian H(s) on the rescaled time s = v t in [0, 1].

    Subclasses provide `evaluate`; `evaluate_derivative` and `analytic_basis`
    are optional and return None when not available.
    """

    def __init__(self, dim: int, v: float, hbar: float = 1.0):
        self.dim = dim
        self.v = v
        self.hbar = hbar

    @abstractmethod
    def evaluate(self, s: float) -> np.ndarray:
        pass

    def evaluate_many(self, grid: np.ndarray) -> np.ndarray:
        return np.stack([self.evaluate(float(s)) for s in grid])

    def evaluate_derivative(self, s: float) -> Optional[np.ndarray]:
        return None

    def evaluate_derivative_many(self, grid: np.ndarray) -> Optional[np.ndarray]:
        if self.evaluate_derivative(float(grid[0])) is None:
            return None

        return np.stack([self.evaluate_derivative(float(s)) for s in grid])

    def analytic_basis(self, s: float) -> Optional[List[np.ndarray]]:
        """Per-block eigenvector matrices (columns) in ascending energy order."""
        return None

    def to_dict(self) -> dict:
        return {
            'type': type(self).__name__,
            'dim': self.dim,
            'v': self.v,
            'hbar': self.hbar
        }


class MatrixPath(HamiltonianPath):
    def __init__(self, hamiltonian: Callable[[float], np.ndarray], v: float, hbar: float = 1.0,
                 derivative: Callable[[float], np.ndarray] = None,
                 basis: Callable[[float], List[np.ndarray]] = None):
        dim = np.asarray(hamiltonian(0.0)).shape[0]
        super().__init__(dim, v, hbar)
        self.__hamiltonian = hamiltonian
        self.__derivative = derivative
        self.__basis = basis

    def evaluate(self, s: float) -> np.ndarray:
        return np.asarray(self.__hamiltonian(s), dtype=complex)

    def evaluate_derivative(self, s: float) -> Optional[np.ndarray]:
        if self.__derivative is None:
            return None

        return np.asarray(self.__derivative(s), dtype=complex)

    def analytic_basis(self, s: float) -> Optional[List[np.ndarray]]:
        if self.__basis is None:
            return None

        return [np.asarray(block, dtype=complex) for block in self.__basis(s)]


class ConstantPath(MatrixPath):
    def __init__(self, matrix: np.ndarray, v: float, hbar: float = 1.0):
        fixed = np.asarray(matrix, dtype=complex)
        super().__init__(lambda _: fixed, v, hbar,
                         derivative=lambda _: np.zeros_like(fixed))


__all__ = ['HamiltonianPath', 'MatrixPath', 'ConstantPath']
