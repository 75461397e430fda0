from __future__ import annotations

import random

import numpy as np
import pytest

from ncbu.actions import CyclicAction, antipodal, conjugation, phase_action
from ncbu.crossed import (InvalidAction, MatrixOverAlg, combined_dual_action, crossed_presentation,
                          dual_action, expand_matrix, mu_components, shift_matrix)
from ncbu.ncpoly import clock_shift, random_poly


def rule_strings(cp):
    return {str(r) for r in cp.full.rules}


def test_circle_conjugation_rules(circle_conj):
    assert "[mu z] -> (1)[z* mu]" in rule_strings(circle_conj)
    assert "[mu*] -> (1)[mu]" in rule_strings(circle_conj)


def test_sphere_antipodal_rules(sphere_anti):
    assert "[mu x] -> (-1)[x mu]" in rule_strings(sphere_anti)
    full = sphere_anti.full
    assert full.equal(full.gen("mu") * full.gen("x") * full.gen("mu"), -full.gen("x"))


def test_order_must_divide(circle_pres):
    with pytest.raises(InvalidAction):
        crossed_presentation(circle_pres, conjugation(circle_pres), 3)


def test_dual_actions(circle_conj, circle_pres):
    d = dual_action(circle_conj)
    assert d.images["mu"] == circle_conj.mu_poly().scale(-1)
    c = combined_dual_action(circle_conj, antipodal(circle_pres))
    assert c.images["z"] == -circle_conj.full.gen("z")


def test_combined_action_needs_commuting_pair(sphere_pres):
    F = sphere_pres
    swap = CyclicAction(F, 2, {"x": F.gen("y"), "y": F.gen("x")}, "swap")
    cp = crossed_presentation(F, phase_action(F, 2, {"y": 1}), 2)
    with pytest.raises(InvalidAction):
        combined_dual_action(cp, swap)


def test_expansion_of_generators(circle_conj):
    C = circle_conj.base
    E = expand_matrix(circle_conj, circle_conj.full.gen("z") * circle_conj.mu_poly())
    z, zs = C.gen("z"), C.gen("z*")
    assert E == MatrixOverAlg(C, [[C.zero(), z], [zs, C.zero()]])


def test_shift_intertwines():
    for k in range(2, 6):
        S = shift_matrix(k)
        assert (np.linalg.matrix_power(S, k) == np.eye(k)).all()


@pytest.mark.parametrize("name", ["circle_conj", "sphere_anti", "clock"])
def test_expansion_is_multiplicative(name, circle_conj, sphere_anti):
    if name == "clock":
        P = clock_shift(3)
        cp = crossed_presentation(P, phase_action(P, 3, {"W": 1}), 3)
    else:
        cp = {"circle_conj": circle_conj, "sphere_anti": sphere_anti}[name]
    rng = random.Random(11)
    for _ in range(200):
        p = random_poly(cp.full, rng, max_degree=3, max_terms=2)
        q = random_poly(cp.full, rng, max_degree=3, max_terms=2)
        assert expand_matrix(cp, p * q) == expand_matrix(cp, p) * expand_matrix(cp, q)


def test_expansion_respects_star(sphere_anti):
    rng = random.Random(3)
    for _ in range(30):
        p = random_poly(sphere_anti.full, rng, max_degree=3, path=True)
        assert expand_matrix(sphere_anti, p.star()) == expand_matrix(sphere_anti, p).star()


def test_mu_components(sphere_anti):
    full = sphere_anti.full
    p = full.gen("x") * full.gen("mu") + full.gen("y")
    comps = mu_components(sphere_anti, p)
    F = sphere_anti.base
    assert comps[0] == F.gen("y") and comps[1] == F.gen("x")


def test_matrix_json_round_trip(sphere_anti):
    m = expand_matrix(sphere_anti, sphere_anti.full.gen("x") + sphere_anti.mu_poly())
    assert MatrixOverAlg.from_json(m.to_json(), sphere_anti.base) == m
