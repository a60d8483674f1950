from os import getenv
from typing import Final

LOG_DIR: Final[str] = getenv('DAPTLAB_LOG_DIR')
CONFIG_DIR: Final[str] = getenv('DAPTLAB_CONFIG_DIR')

HERMITIAN_TOL: Final[float] = 1e-12
JACOBI_TOL: Final[float] = 1e-13
JACOBI_MAX_SWEEPS: Final[int] = 50
POLAR_TOL: Final[float] = 1e-13
POLAR_MAX_ITERATIONS: Final[int] = 50
SINGULAR_TOL: Final[float] = 1e-12

MIN_STEPS: Final[int] = 16
GAUGE_MIN_OVERLAP: Final[float] = 0.9
ANALYTIC_BASIS_TOL: Final[float] = 1e-8
DEG_TOL_SCALE: Final[float] = 1e-8

REUNITARIZE_EVERY: Final[int] = 32
UNITARITY_DRIFT_TOL: Final[float] = 1e-6

SUM_RULE_TOL: Final[float] = 1e-8
RATIO_NULL_TOL: Final[float] = 1e-14

DEFAULT_P_MAX: Final[int] = 3
P_MAX_CAP: Final[int] = 8
DEFAULT_N_STEPS: Final[int] = 4000
DEFAULT_ORACLE_STEPS: Final[int] = 200000
DEFAULT_OUTPUT_POINTS: Final[int] = 1001
DEFAULT_MARGIN: Final[float] = 0.1
DEFAULT_NULL_TOL: Final[float] = 1e-6
DEFAULT_SE_TOLERANCE: Final[float] = 1e-9

# 17 significant digits round-trip IEEE doubles
CSV_NUMBER_FORMAT: Final[str] = '.17g'

EXIT_OK: Final[int] = 0
EXIT_CONFIG_ERROR: Final[int] = 2
EXIT_NUMERICAL_ERROR: Final[int] = 3
