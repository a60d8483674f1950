from pathlib import Path
from typing import Callable
import numpy as np
import pytest
import yaml
from daptlab.models import FourLevelModel, QuadraticModel, ConstantPath
from daptlab.services.dapt import solve
from daptlab.services.spectrum import build_flow


@pytest.fixture(scope='session')
def four_level() -> FourLevelModel:
    return FourLevelModel(b=1.0, w=0.1, theta=1.0, v=0.1)


@pytest.fixture(scope='session')
def four_level_solution(four_level):
    return solve(four_level, 4000, p_max=2)


@pytest.fixture(scope='session')
def quadratic() -> QuadraticModel:
    return QuadraticModel(E0=1.0, lambda_=1.0, theta0=0.1, w=0.5, v=0.5)


@pytest.fixture(scope='session')
def quadratic_flow(quadratic):
    return build_flow(quadratic, 4000)


@pytest.fixture
def degenerate_constant() -> ConstantPath:
    return ConstantPath(np.diag([0.0, 0.0, 1.0]), v=0.1)


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    def write(name: str = 'experiment.yml', **fields) -> Path:
        file_path = tmp_path.joinpath(name)

        if file_path.suffix in ('.yml', '.yaml'):
            file_path.write_text(yaml.safe_dump(fields))
        else:
            file_path.write_text('\n'.join(f'{key} = {value}' for key, value in fields.items()))

        return file_path

    return write
