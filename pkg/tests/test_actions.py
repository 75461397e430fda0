from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ncbu.actions import (CyclicAction, action_apply, action_validate, actions_commute, antipodal,
                          conjugation, isotypic_project, phase_action, trivial)
from ncbu.ncpoly import circle, clock_shift, free_sphere, random_poly, theta_sphere
from ncbu.scalars import root_of_unity
from strategies import polys


def test_circle_actions(circle_pres):
    anti, conj = antipodal(circle_pres), conjugation(circle_pres)
    assert action_validate(anti).ok
    rep = action_validate(conj, other=anti)
    assert rep.ok and rep.flags["commutes"]
    assert action_apply(conj, 1, circle_pres.gen("z")) == circle_pres.gen("z*")


def test_sphere_antipodal_order_two(sphere_pres):
    a = antipodal(sphere_pres)
    x = sphere_pres.gen("x")
    assert action_apply(a, 2, x * sphere_pres.gen("y")) == x * sphere_pres.gen("y")


def test_scaling_is_not_an_automorphism(circle_pres):
    bad = CyclicAction(circle_pres, 2, {"z": circle_pres.gen("z").scale(2)}, "double")
    rep = action_validate(bad)
    assert not rep.ok
    assert rep.failures()


def test_wrong_order_is_reported(circle_pres):
    quarter = phase_action(circle_pres, 2, {"z": 1})  # z -> -z claims order 2: fine
    assert action_validate(quarter).ok
    turn = CyclicAction(circle_pres, 2, {"z": circle_pres.gen("z").scale(root_of_unity(4))}, "i")
    assert not action_validate(turn).ok


def test_self_adjointness_must_be_preserved(sphere_pres):
    x, y = sphere_pres.gen("x"), sphere_pres.gen("y")
    bad = CyclicAction(sphere_pres, 4, {"x": x.scale(root_of_unity(4)), "y": y}, "ix")
    assert not action_validate(bad).ok


def test_noncommuting_pair(sphere_pres):
    F = sphere_pres
    x, y = F.gen("x"), F.gen("y")
    swap = CyclicAction(F, 2, {"x": y, "y": x}, "swap")
    refl = phase_action(F, 2, {"y": 1})
    assert action_validate(swap).ok
    assert not actions_commute(swap, refl)


THETA = [[0, Fraction(1, 4)], [Fraction(-1, 4), 0]]


@pytest.mark.parametrize("pres,action", [
    (free_sphere(), "antipodal"),
    (theta_sphere(2, THETA), "antipodal"),
    (clock_shift(3), "phase"),
], ids=["sphere", "theta", "clock"])
def test_isotypic_completeness_and_orthogonality(pres, action):
    a = antipodal(pres) if action == "antipodal" else phase_action(pres, 3, {"W": 1})
    rng = random.Random(7)
    for _ in range(25):
        p = random_poly(pres, rng, max_degree=4, path=True)
        parts = [isotypic_project(a, g, p) for g in range(a.k)]
        total = parts[0]
        for q in parts[1:]:
            total = total + q
        assert pres.equal(total, p)
        for g, q in enumerate(parts):
            assert pres.equal(action_apply(a, 1, q), q.scale(root_of_unity(a.k, g)))
            for h in range(a.k):
                proj = isotypic_project(a, h, q)
                assert pres.equal(proj, q if h == g else pres.zero())


@settings(max_examples=30, deadline=None)
@given(polys(circle(), path=True), polys(circle(), path=True))
def test_actions_are_multiplicative(p, q):
    C = circle()
    conj = conjugation(C)
    assert C.equal(conj(p * q), conj(p) * conj(q))
    assert C.equal(conj(p.star()), conj(p).star())


def test_trivial_action_json_round_trip(circle_pres):
    a = trivial(circle_pres, 3)
    again = CyclicAction.from_json(a.to_json(), circle_pres)
    assert again.k == 3 and again.images["z"] == circle_pres.gen("z")
