from typing import List, Dict
import numpy as np


class WZTransport:
    """Wilczek-Zee propagators and dynamical phases for every block.

    unitaries[n] has shape (N+1, d_n, d_n); omega has shape (N+1, n_blocks).
    """

    def __init__(self, grid: np.ndarray, unitaries: List[np.ndarray], omega: np.ndarray):
        self.grid = grid
        self.unitaries = unitaries
        self.omega = omega

    @property
    def n_blocks(self) -> int:
        return len(self.unitaries)

    def initial(self, n: int) -> np.ndarray:
        return self.unitaries[n][0]

    def unitarity_error(self) -> float:
        errors = []

        for unitary in self.unitaries:
            identity = np.eye(unitary.shape[1])
            gram = np.conj(np.swapaxes(unitary, 1, 2)) @ unitary
            errors.append(np.max(np.abs(gram - identity)))

        return float(max(errors))

    def to_dict(self) -> Dict:
        return {
            'nBlocks': self.n_blocks,
            'unitarityError': self.unitarity_error(),
            'finalOmega': [float(value) for value in self.omega[-1]]
        }


__all__ = ['WZTransport']
