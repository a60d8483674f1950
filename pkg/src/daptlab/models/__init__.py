from .basis_kind import BasisKind
from .coeff_set import CoeffSet
from .condition_report import ConditionReport
from .dapt_solution import DaptSolution
from .exceptions import DaptException, ConfigException, PreconditionException, StructureException, GapClosureException, NumericalException
from .four_level_model import FourLevelModel
from .hamiltonian_path import HamiltonianPath, MatrixPath, ConstantPath
from .m_field import MField
from .quadratic_model import QuadraticModel
from .quantum_state import QuantumState, StateTrajectory
from .result_table import ResultTable
from .spectral_flow import SpectralFlow
from .two_level_model import TwoLevelModel
from .wz_transport import WZTransport
