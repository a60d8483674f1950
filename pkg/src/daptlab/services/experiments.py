import time
import logging
import asyncio
from pathlib import Path
from typing import List, Tuple
import numpy as np
from .config import create_config
from .dapt import solve, assemble_truncated, to_lab
from .oracles import four_level_exact_trajectory, integrate_se, infidelity_curve, epsilon
from .conditions import evaluate_conditions
from .report import write_csv
from ..models import (
    HamiltonianPath, FourLevelModel, QuadraticModel, DaptSolution, StateTrajectory, BasisKind, ConditionReport,
    ResultTable)
from ..models.config import ExperimentConfig, ModelType, SweepField
from ..models.exceptions import ConfigException, PreconditionException
from ..utils.helpers.common import format_value_label
from ..utils.run_context import get_run_id, run_scope

_LOGGER = logging.getLogger(__name__)

RUN_FILE_NAME = 'run.csv'
CHECK_FILE_NAME = 'check.csv'
SUMMARY_FILE_NAME = 'summary.csv'

_SWEEP_KEYS = {
    ModelType.FOUR_LEVEL: {
        SweepField.V: 'v',
        SweepField.W: 'w',
        SweepField.THETA: 'theta'
    },
    ModelType.QUADRATIC: {
        SweepField.V: 'v',
        SweepField.E0: 'E0',
        SweepField.W: 'w',
        SweepField.THETA: 'theta0'
    }
}


def cmd_run(config: ExperimentConfig, out_dir: Path) -> Path:
    start = time.time()
    table = run_table(config)
    file_path = write_csv(table, out_dir.joinpath(RUN_FILE_NAME))
    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Run ({config.model.value}, v = {config.v}, p_max = {config.p_max}): {round(end - start, 2)} sec.')
    # autopep8: on

    return file_path


def cmd_check(config: ExperimentConfig, out_dir: Path) -> Tuple[Path, ConditionReport]:
    start = time.time()
    table, report = check_table(config)
    file_path = write_csv(table, out_dir.joinpath(CHECK_FILE_NAME))
    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Check ({config.model.value}, v = {config.v}): {round(end - start, 2)} sec.')
    # autopep8: on

    return file_path, report


def cmd_sweep(config: ExperimentConfig, field: str, values: List[float], out_dir: Path) -> Path:
    start = time.time()
    sweep_field = parse_sweep_field(field)
    configs = [(value, sweep_config(config, sweep_field, value)) for value in values]

    try:
        rows = asyncio.run(_run_sweep(sweep_field, configs, out_dir))
    except ExceptionGroup as group:
        raise _first_error(group)

    header = ['value'] + [f'max_I{k}' for k in range(config.p_max + 1)] + ['epsilon_min_gap']
    file_path = write_csv(ResultTable(header, np.array(rows)), out_dir.joinpath(SUMMARY_FILE_NAME))
    end = time.time()

    # autopep8: off
    _LOGGER.info(f'Sweep over {sweep_field.value} ({len(values)} values): {round(end - start, 2)} sec.')
    # autopep8: on

    return file_path


def build_path(config: ExperimentConfig) -> HamiltonianPath:
    match config.model:
        case ModelType.FOUR_LEVEL:
            return FourLevelModel(config.b, config.rotation_rate, config.theta, config.v, config.hbar)
        case ModelType.QUADRATIC:
            return QuadraticModel(
                config.E0, config.lambda_, config.theta0, config.rotation_rate, config.v, config.hbar)
        case _:
            raise ConfigException(f'Unknown model "{config.model}"')


def solve_config(config: ExperimentConfig, path: HamiltonianPath) -> DaptSolution:
    return solve(path, config.n_steps, config.p_max, initial_row=config.initial_row,
                 deg_tol=config.deg_tol, initial_block=config.initial_block)


def output_indices(n_steps: int, output_points: int) -> np.ndarray:
    """Nearest internal grid index for each of output_points uniformly spaced s values."""
    return np.rint(np.linspace(0.0, n_steps, output_points)).astype(int)


def run_table(config: ExperimentConfig) -> ResultTable:
    path = build_path(config)
    solution = solve_config(config, path)
    _LOGGER.debug(f'Solution: {solution.to_dict()}')
    indices = output_indices(config.n_steps, config.output_points)
    exact = exact_trajectory(config, path, solution, indices)
    curves: List[np.ndarray] = []

    for k in range(config.p_max + 1):
        approx = assemble_truncated(solution, k).take(indices)

        if exact.basis == BasisKind.LAB:
            approx = to_lab(approx, solution.flow, indices)

        curves.append(infidelity_curve(exact, approx))

    header = ['s'] + [f'I{k}' for k in range(config.p_max + 1)] + ['epsilon', 'norm_exact']
    eps = epsilon(path, solution.flow)[indices]
    rows = np.column_stack([exact.grid, *curves, eps, exact.norms()])

    return ResultTable(header, rows)


def exact_trajectory(config: ExperimentConfig, path: HamiltonianPath, solution: DaptSolution,
                     indices: np.ndarray) -> StateTrajectory:
    flow = solution.flow
    grid = flow.grid[indices]

    if config.initial_row >= flow.d_list[config.initial_block]:
        raise PreconditionException(
            f'The block {config.initial_block} has no row {config.initial_row}')

    if isinstance(path, FourLevelModel) and config.initial_block == 0 and config.initial_row == 0:
        return four_level_exact_trajectory(path, grid)

    psi0 = flow.bases[config.initial_block][0][:, config.initial_row]
    oracle = integrate_se(path, psi0, config.oracle_steps, config.se_tolerance)
    oracle_indices = indices * (config.oracle_steps // config.n_steps)

    return StateTrajectory(BasisKind.LAB, grid, oracle.amplitudes[oracle_indices])


def check_table(config: ExperimentConfig) -> Tuple[ResultTable, ConditionReport]:
    path = build_path(config)
    solution = solve_config(config, path)
    report = evaluate_conditions(path, solution.flow, solution.mfield, solution.transport,
                                 config.margin, config.null_tol, solution.coeffs)
    _LOGGER.debug(f'Conditions: {report.to_dict()}')
    indices = output_indices(config.n_steps, config.output_points)

    header = ['t', 'nec_strong', 'nec_weak', 'suf_a_lhs', 'suf_a_rhs', 'suf_b_lhs_max', 'suf_b_rhs']
    columns = [
        report.t[indices],
        report.nec_strong_max[indices],
        report.nec_weak_max[indices],
        report.suf_a_lhs[indices],
        report.suf_rhs[indices],
        report.suf_b_lhs_max[indices],
        report.suf_rhs[indices]
    ]

    for p in range(solution.coeffs.order):
        header.append(f'ratio_max_p{p}')
        columns.append(report.ratio_aggregate[p][indices])

    return ResultTable(header, np.column_stack(columns), verdict_line(report)), report


def verdict_line(report: ConditionReport) -> str:
    necessary = str(report.verdict_necessary).lower()
    sufficient = str(report.verdict_sufficient).lower()

    return f'verdict necessary={necessary} sufficient={sufficient} margin={format_value_label(report.margin)}'


def parse_sweep_field(field: str) -> SweepField:
    try:
        return SweepField(field)
    except ValueError:
        allowed = ', '.join(member.value for member in SweepField)
        raise ConfigException(f'Unknown sweep field "{field}" (expected one of {allowed})')


def sweep_config(config: ExperimentConfig, field: SweepField, value: float) -> ExperimentConfig:
    key = _SWEEP_KEYS[config.model].get(field)

    if key is None:
        raise ConfigException(
            f'The sweep field "{field.value}" does not apply to the {config.model.value} model')

    return create_config({**config.dict(by_alias=True), key: value})


async def _run_sweep(field: SweepField, configs: List[Tuple[float, ExperimentConfig]], out_dir: Path) -> List[List[float]]:
    tasks: List[asyncio.Task] = []

    async with asyncio.TaskGroup() as tg:
        for value, config in configs:
            task = tg.create_task(asyncio.to_thread(
                _run_value, field, value, config, out_dir))
            tasks.append(task)

    return [task.result() for task in tasks]


def _run_value(field: SweepField, value: float, config: ExperimentConfig, out_dir: Path) -> List[float]:
    label = f'{field.value}={format_value_label(value)}'

    with run_scope(f'{get_run_id() or "sweep"}/{label}'):
        table = run_table(config)
        write_csv(table, out_dir.joinpath(f'{label}.csv'))

    maxima = [float(np.max(table.column(f'I{k}'))) for k in range(config.p_max + 1)]

    return [value, *maxima, float(np.max(table.column('epsilon')))]


def _first_error(group: BaseExceptionGroup) -> BaseException:
    error = group.exceptions[0]

    return _first_error(error) if isinstance(error, BaseExceptionGroup) else error


__all__ = [
    'cmd_run',
    'cmd_check',
    'cmd_sweep',
    'build_path',
    'solve_config',
    'output_indices',
    'run_table',
    'exact_trajectory',
    'check_table',
    'verdict_line',
    'parse_sweep_field',
    'sweep_config'
]
