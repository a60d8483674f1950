from typing import Optional, Dict
from pydantic import BaseModel, Field, root_validator, validator
from .model_type import ModelType
from ...utils.constants import (
    DEFAULT_N_STEPS, DEFAULT_P_MAX, P_MAX_CAP, DEFAULT_MARGIN, DEFAULT_NULL_TOL, DEFAULT_ORACLE_STEPS,
    DEFAULT_OUTPUT_POINTS, DEFAULT_SE_TOLERANCE, MIN_STEPS)

_REQUIRED_FIELDS = {
    ModelType.FOUR_LEVEL: ['b', 'theta'],
    ModelType.QUADRATIC: ['E0']
}


class ExperimentConfig(BaseModel):
    model: ModelType
    b: Optional[float] = None
    w: Optional[float] = None
    theta: Optional[float] = None
    E0: Optional[float] = None
    lambda_: float = Field(0.0, alias='lambda')
    theta0: float = 0.0
    v: float
    hbar: float = 1.0
    n_steps: int = DEFAULT_N_STEPS
    p_max: int = DEFAULT_P_MAX
    margin: float = DEFAULT_MARGIN
    null_tol: float = DEFAULT_NULL_TOL
    deg_tol: Optional[float] = None
    oracle_steps: int = DEFAULT_ORACLE_STEPS
    output_points: int = DEFAULT_OUTPUT_POINTS
    se_tolerance: float = DEFAULT_SE_TOLERANCE
    initial_block: int = 0
    initial_row: int = 0
    output: Optional[str] = None

    class Config:
        allow_population_by_field_name = True
        extra = 'forbid'

    @root_validator(pre=True)
    def check_model_fields(cls, values: Dict) -> Dict:
        model = values.get('model')

        try:
            model_type = ModelType(model)
        except ValueError:
            return values

        missing = [name for name in _REQUIRED_FIELDS[model_type]
                   if values.get(name) is None]

        if missing:
            raise ValueError(
                f'The model "{model_type.value}" requires the field(s) ' + ', '.join(f'"{name}"' for name in missing))

        return values

    @validator('b', 'w', 'E0', 'v', 'hbar', 'margin', 'null_tol', 'deg_tol', 'se_tolerance')
    def check_positive(cls, value: Optional[float], field) -> Optional[float]:
        if value is not None and not value > 0:
            raise ValueError(f'The field "{field.name}" must be > 0')

        return value

    @validator('lambda_', 'initial_block', 'initial_row')
    def check_non_negative(cls, value: float, field) -> float:
        if value < 0:
            raise ValueError(f'The field "{field.alias}" must be >= 0')

        return value

    @validator('theta')
    def check_theta(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not 0.0 <= value <= 3.141592653589793:
            raise ValueError('The field "theta" must lie in [0, pi]')

        return value

    @validator('p_max')
    def check_p_max(cls, value: int) -> int:
        if not 0 <= value <= P_MAX_CAP:
            raise ValueError(
                f'The field "p_max" must lie in [0, {P_MAX_CAP}]')

        return value

    @validator('n_steps', 'oracle_steps')
    def check_steps(cls, value: int, field) -> int:
        if value < MIN_STEPS:
            raise ValueError(
                f'The field "{field.name}" must be >= {MIN_STEPS}')

        return value

    @validator('output_points')
    def check_output_points(cls, value: int) -> int:
        if value < 2:
            raise ValueError('The field "output_points" must be >= 2')

        return value

    @root_validator(skip_on_failure=True)
    def check_oracle_grid(cls, values: Dict) -> Dict:
        n_steps, oracle_steps = values['n_steps'], values['oracle_steps']

        # every output row must land on an oracle grid point
        if oracle_steps % 2 != 0 or oracle_steps % n_steps != 0:
            raise ValueError(
                f'The field "oracle_steps" must be even and a multiple of "n_steps" ({n_steps}), got {oracle_steps}')

        return values

    @property
    def rotation_rate(self) -> float:
        return self.w if self.w is not None else self.v


__all__ = ['ExperimentConfig']
