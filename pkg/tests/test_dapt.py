import numpy as np
import pytest
from daptlab.models import FourLevelModel, BasisKind
from daptlab.models.exceptions import PreconditionException
from daptlab.services.dapt import (
    solve, initial_amplitudes, zeroth_order, first_order, j_integral, recurse_order, assemble_state,
    assemble_truncated, to_lab, refinement_error)
from daptlab.services.oracles import four_level_expansion_amplitudes, four_level_exact_amplitudes


def test_sum_rule_at_every_order(four_level_solution):
    coeffs = four_level_solution.coeffs

    assert coeffs.order == 2

    for p in range(1, coeffs.order + 1):
        assert coeffs.sum_rule_error(p) < 1e-8


def test_zeroth_order_matches_closed_form(four_level, four_level_solution):
    t = four_level.time(four_level_solution.flow.grid)
    computed = assemble_state(four_level_solution, 0).amplitudes
    expected = four_level_expansion_amplitudes(four_level, t, 0)

    assert np.max(np.abs(computed - expected)) < 1e-6


def test_first_order_matches_closed_form(four_level, four_level_solution):
    t = four_level.time(four_level_solution.flow.grid)
    computed = four_level.v * assemble_state(four_level_solution, 1).amplitudes
    expected = four_level.v * four_level_expansion_amplitudes(four_level, t, 1)

    assert np.max(np.abs(computed - expected)) < 1e-6


def test_j_integral_closed_form(four_level, four_level_solution):
    solution = four_level_solution
    integral = j_integral(solution.mfield, solution.transport, solution.flow, 0, 1)
    s = solution.flow.grid
    w, v, b = four_level.w, four_level.v, four_level.b
    expected = w**2 * s * np.sin(four_level.theta)**2 / (4.0 * v**2 * four_level.hbar * b)

    assert np.allclose(integral[:, 0, 0], expected, atol=1e-6)
    assert np.allclose(integral[:, 1, 1], expected, atol=1e-6)
    assert np.max(np.abs(integral[:, 0, 1])) < 1e-6


def test_initial_state(four_level_solution):
    state = assemble_truncated(four_level_solution, 2).at(0)

    assert np.allclose(state.amplitudes, [1.0, 0.0, 0.0, 0.0], atol=1e-12)


def test_truncated_states_are_normalized(four_level_solution):
    for k in range(3):
        trajectory = assemble_truncated(four_level_solution, k)

        assert trajectory.basis == BasisKind.SNAPSHOT
        assert np.allclose(trajectory.norms(), 1.0, atol=1e-12)


def test_lab_conversion_preserves_norm(four_level_solution):
    snapshot = assemble_truncated(four_level_solution, 1)
    lab = to_lab(snapshot, four_level_solution.flow)

    assert lab.basis == BasisKind.LAB
    assert np.allclose(lab.norms(), 1.0, atol=1e-12)
    assert to_lab(lab, four_level_solution.flow) is lab


def test_order_scaling_law():
    rates = np.array([0.01, 0.02, 0.04, 0.08])
    errors = {p: [] for p in range(3)}

    for v in rates:
        model = FourLevelModel(b=1.0, w=v, theta=1.0, v=v)
        solution = solve(model, 4000, p_max=2)
        exact = four_level_exact_amplitudes(model, model.time(solution.flow.grid))
        partial = np.zeros_like(exact)

        for p in range(3):
            partial = partial + v**p * assemble_state(solution, p).amplitudes
            errors[p].append(np.max(np.linalg.norm(exact - partial, axis=1)))

    for p in range(3):
        slope = np.polyfit(np.log(rates), np.log(errors[p]), 1)[0]

        assert slope == pytest.approx(p + 1, abs=0.2)


def test_refinement_error_is_small(four_level):
    assert refinement_error(four_level, 1000, 1) < 1e-5


def test_initial_amplitudes():
    assert np.allclose(initial_amplitudes(3, 1), [0.0, 1.0, 0.0])

    with pytest.raises(PreconditionException):
        initial_amplitudes(2, 2)


def test_order_above_maximum(four_level_solution):
    solution = four_level_solution

    with pytest.raises(PreconditionException):
        recurse_order(solution.coeffs, solution.mfield, solution.transport, solution.flow, solution.hbar)

    with pytest.raises(PreconditionException):
        assemble_truncated(solution, 3)


def test_excited_start(four_level):
    solution = solve(four_level, 400, p_max=1, initial_block=1, initial_row=1)
    state = assemble_truncated(solution, 1).at(0)

    assert np.allclose(state.amplitudes, [0.0, 0.0, 0.0, 1.0], atol=1e-12)
    assert solution.coeffs.sum_rule_error(1) < 1e-8


def test_initial_row_out_of_range(four_level):
    with pytest.raises(PreconditionException):
        solve(four_level, 64, p_max=0, initial_row=2)


def test_recursion_from_zeroth_order_matches_first_order(four_level_solution):
    solution = four_level_solution
    b0 = solution.coeffs.b0
    base = zeroth_order(solution.transport, b0, 1)
    recursed = recurse_order(base, solution.mfield, solution.transport, solution.flow, solution.hbar)
    closed = first_order(solution.mfield, solution.transport, solution.flow, b0, solution.hbar)

    assert np.max(np.abs(recursed - closed)) < 1e-8
    assert np.max(np.abs(closed - solution.coeffs.level(1))) < 1e-12


def test_constant_hamiltonian_has_no_corrections(degenerate_constant):
    solution = solve(degenerate_constant, 32, p_max=2)

    assert solution.flow.d_list == [2, 1]

    for p in (1, 2):
        assert np.max(np.abs(solution.coeffs.level(p))) < 1e-14


def test_first_order_diagonal_starts_from_the_sum_rule(four_level_solution):
    level = four_level_solution.coeffs.level(1)

    assert np.max(np.abs(four_level_solution.mfield.block(0, 1)[0])) > 1e-3
    assert np.max(np.abs(level[0, 1, 1])) > 1e-3
    assert np.allclose(level[0, 1, 1], -level[0, 0, 1], atol=1e-14)
