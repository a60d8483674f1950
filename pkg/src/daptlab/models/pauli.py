from typing import Final
import numpy as np

IDENTITY_2: Final[np.ndarray] = np.eye(2, dtype=complex)
SIGMA_X: Final[np.ndarray] = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y: Final[np.ndarray] = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z: Final[np.ndarray] = np.array([[1, 0], [0, -1]], dtype=complex)

# Gamma_j = sigma_x (x) sigma_j, Pi_z = 1 (x) sigma_z, basis order uu, ud, du, dd
GAMMA_X: Final[np.ndarray] = np.kron(SIGMA_X, SIGMA_X)
GAMMA_Y: Final[np.ndarray] = np.kron(SIGMA_X, SIGMA_Y)
GAMMA_Z: Final[np.ndarray] = np.kron(SIGMA_X, SIGMA_Z)
PI_Z: Final[np.ndarray] = np.kron(IDENTITY_2, SIGMA_Z)
