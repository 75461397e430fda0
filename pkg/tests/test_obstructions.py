from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncbu.actions import phase_action
from ncbu.constructions import clopen_setting, synthetic_rank_jump
from ncbu.ncpoly import clock_shift
from ncbu.obstructions import (FiniteDimAlgebra, IllConditionedProjection, InsufficientSampling, PathSample,
                               PreconditionError, averaging_projection, circle_loop_points,
                               order_k_obstruction, projection_rank, projection_rank_path, saturation_check,
                               winding_number)
from ncbu.oracle import random_unitary


def matrix_units(k):
    return [np.outer(np.eye(k)[i], np.eye(k)[j]) for i in range(k) for j in range(k)]


def conj_algebra(U, k):
    n = U.shape[0]
    return FiniteDimAlgebra.from_matrix_basis(matrix_units(n), lambda m: U @ m @ U.conj().T, k)


def test_free_translation_and_fixed_point():
    assert saturation_check(FiniteDimAlgebra.functions(4, [1, 2, 3, 0], 4)).free
    assert not saturation_check(FiniteDimAlgebra.functions(3, [1, 0, 2], 2)).free
    # Z/4 acting through Z/2 is not free even though no point is fixed by the generator
    assert not saturation_check(FiniteDimAlgebra.functions(2, [1, 0], 4)).free


def test_unit_criterion_is_stricter_than_ideal():
    A = conj_algebra(np.diag([1, 1j]), 4)
    sat = saturation_check(A)
    assert not sat.free
    e = sat.entries[1]
    assert e.ideal_is_whole and not e.contains_unit


def test_trivial_action_is_not_free():
    A = FiniteDimAlgebra.from_matrix_basis(matrix_units(2), lambda m: m, 2)
    assert not saturation_check(A).free


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10_000))
def test_verdict_invariant_under_unitary_conjugation(k, seed):
    V = np.diag(np.exp(2j * np.pi * np.arange(k) / k))
    U = random_unitary(np.random.default_rng(seed), k)
    a = saturation_check(conj_algebra(V, k))
    b = saturation_check(conj_algebra(U @ V @ U.conj().T, k))
    assert a.free and b.free
    assert [x.isotypic_dim for x in a.entries] == [x.isotypic_dim for x in b.entries]


def test_from_presentation_matches_matrices():
    P = clock_shift(3)
    A = FiniteDimAlgebra.from_presentation(P, phase_action(P, 3, {"W": 1}))
    assert A.dim == 9
    assert saturation_check(A).free


def test_bad_structure_constants():
    mult = np.zeros((1, 1, 1))
    with pytest.raises(ValueError):
        FiniteDimAlgebra(mult, np.ones(1), np.eye(1), np.eye(1), 2)


@pytest.mark.parametrize("k", range(2, 9))
def test_averaging_projection_rank_one(k):
    r, gap = projection_rank(averaging_projection(k))
    assert r == 1 and gap > 0.4


def test_projection_rank_errors():
    with pytest.raises(ValueError):
        projection_rank(np.array([[2.0]]))
    with pytest.raises(IllConditionedProjection):
        projection_rank(np.diag([0.55, 0.0]), tol=1.0)


def test_synthetic_jumps_rejected():
    jump, blend = synthetic_rank_jump()
    res = projection_rank_path(jump)
    assert not res.constant and res.lipschitz_violations
    with pytest.raises((IllConditionedProjection, ValueError)):
        projection_rank_path(blend)


def test_path_sample_validation():
    with pytest.raises(ValueError):
        PathSample([0.0, 0.0], [np.eye(1), np.eye(1)])
    with pytest.raises(ValueError):
        PathSample([0.0, 2.0], [np.eye(1), np.eye(1)])
    with pytest.raises(ValueError):
        PathSample([0.0], [])


@pytest.mark.parametrize("n", [-2, 0, 1, 3])
def test_winding_of_powers(n):
    pts = circle_loop_points(64)
    assert winding_number([np.array([[z ** n]]) for z in pts]) == n


def test_winding_needs_sampling():
    with pytest.raises(InsufficientSampling):
        winding_number([np.array([[z ** 4]]) for z in circle_loop_points(8)])
    with pytest.raises(InsufficientSampling):
        winding_number([np.zeros((1, 1))] * 3)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_clopen_endpoints_contradict(k):
    st_ = clopen_setting(k)
    v = order_k_obstruction(st_.endpoints, st_.cp, st_.fixed_rep)
    assert v.start_rank == 1 and v.end_rank == k
    assert v.contradiction and v.fixed_rep_invariant


def test_order_k_preconditions():
    st_ = clopen_setting(3)
    u = st_.cp.lift(st_.pres.gen("u"))
    with pytest.raises(PreconditionError):
        order_k_obstruction(PathSample([0.0, 1.0], [u, u], "unitary"), st_.cp, st_.fixed_rep)
    mu = st_.cp.mu_poly()
    with pytest.raises(PreconditionError):
        order_k_obstruction(PathSample([0.0, 1.0], [mu.scale(2), u], "unitary"), st_.cp, st_.fixed_rep)
