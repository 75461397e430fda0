from __future__ import annotations

import random

import numpy as np
import pytest

from ncbu.crossed import crossed_presentation
from ncbu.actions import phase_action
from ncbu.ncpoly import clock_shift, cyclic_group, random_poly, theta_sphere
from ncbu.oracle import (Representation, RepresentationError, circle_points, clock_shift_defining,
                         crossed_expand, cyclic_shift, free_sphere_random, op_norm, oracle_compare,
                         rep_builtin, theta_sphere_weyl, uniform_grid)


def test_rejects_bad_matrices(circle_pres, sphere_pres):
    with pytest.raises(RepresentationError):
        circle_points(circle_pres, [2.0])
    with pytest.raises(RepresentationError):
        Representation(sphere_pres, {"x": np.eye(2)})
    with pytest.raises(RepresentationError):
        Representation(sphere_pres, {"x": np.eye(2), "y": np.eye(3)})
    with pytest.raises(RepresentationError):
        Representation(sphere_pres, {"x": np.eye(2), "y": np.eye(2)})


def test_builtin_families_satisfy_relations(sphere_pres):
    th = theta_sphere(3, [[0, "1/3", "1/6"], ["-1/3", 0, "1/2"], ["-1/6", "-1/2", 0]])
    reps = [
        free_sphere_random(sphere_pres, seed=4, dim=3),
        theta_sphere_weyl(th, [[0, "1/3", "1/6"], ["-1/3", 0, "1/2"], ["-1/6", "-1/2", 0]], seed=1),
        cyclic_shift(cyclic_group(5), 5),
        clock_shift_defining(clock_shift(4), 4),
    ]
    for r in reps:
        assert r.relation_residual() < 1e-10


def test_unknown_kind(sphere_pres):
    with pytest.raises(ValueError):
        rep_builtin("nope", sphere_pres)


def test_oracle_agrees_with_normal_forms(sphere_pres):
    rng = random.Random(5)
    reps = [free_sphere_random(sphere_pres, seed=s) for s in range(3)]
    for _ in range(50):
        p = random_poly(sphere_pres, rng, max_degree=5, path=True)
        for r in reps:
            assert oracle_compare(r, p, grid=uniform_grid(5)) <= 1e-9


def test_crossed_expand_is_a_representation(sphere_anti, sphere_pres):
    base = free_sphere_random(sphere_pres, seed=2)
    r = crossed_expand(base, sphere_anti)
    assert r.dim == 4
    assert r.relation_residual() < 1e-10
    mu = r.assign["mu"]
    assert op_norm(mu @ mu.conj().T - np.eye(4)) < 1e-12


def test_phase_crossed_expand():
    P = clock_shift(3)
    cp = crossed_presentation(P, phase_action(P, 3, {"V": 1}), 3)
    r = crossed_expand(clock_shift_defining(P, 3), cp)
    assert r.relation_residual() < 1e-10


def test_op_norm_shortcut():
    assert op_norm(np.zeros((0, 0))) == 0.0
    tiny = 1e-12 * np.ones((3, 3))
    assert op_norm(tiny) <= 3e-12
    assert abs(op_norm(np.diag([3.0, 1.0])) - 3.0) < 1e-12
