from .experiment_config import ExperimentConfig
from .model_type import ModelType
from .sweep_field import SweepField
