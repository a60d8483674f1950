from .services.config import load_config
from .services.dapt import solve, assemble_state, assemble_truncated, to_lab
from .services.experiments import cmd_run, cmd_check, cmd_sweep
from .models import FourLevelModel, QuadraticModel, TwoLevelModel, MatrixPath, ConstantPath
