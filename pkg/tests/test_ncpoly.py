from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

import ncbu.ncpoly as ncpoly
from ncbu.ncpoly import (Alphabet, AlphabetMismatch, NCPoly, OrderViolation, Presentation,
                         ReductionBudgetExceeded, RewriteRule, builtin_presentation, clock_shift,
                         cyclic_group, free_sphere, parse_word, theta_sphere)
from ncbu.scalars import PathScalar, root_of_unity
from strategies import polys

THETA2 = [[0, Fraction(1, 3)], [Fraction(-1, 3), 0]]


def nf_str(pres, p):
    return str(pres.normal_form(p))


def test_sphere_orientation(sphere_pres):
    F = sphere_pres
    y = F.gen("y")
    assert F.equal(y * y, 1 - F.gen("x") * F.gen("x"))
    assert F.is_zero(F.gen("x") * F.gen("x") + y * y - 1)


def test_star_of_self_adjoint_combination(sphere_anti):
    full = sphere_anti.full
    t, s = PathScalar.t(), PathScalar.s()
    p = full.gen("x").scale(t) + full.gen("mu").scale(s)
    assert full.equal(p.star(), p)


def test_cyclic_group_rules():
    G = cyclic_group(2)
    mu = G.gen("mu")
    assert nf_str(G, mu * mu) == "(1)[]"
    assert G.equal(G.gen("mu*"), mu)


def test_theta_sphere_commutation():
    A = theta_sphere(2, THETA2)
    z1, z2 = A.gen("z1"), A.gen("z2")
    lam = root_of_unity(3, 1)
    assert A.equal(z2 * z1, (z1 * z2).scale(lam))
    assert A.equal(z2.star() * z2, 1 - z1.star() * z1)


def test_clock_shift_weyl_relation():
    P = clock_shift(3)
    V, W = P.gen("V"), P.gen("W")
    assert P.equal(W * V, (V * W).scale(root_of_unity(3, -1)))
    assert P.is_zero(V ** 3 - 1)
    assert P.is_zero(W * W.star() - 1)


def test_rules_must_decrease():
    A = Alphabet.of(["x"])
    with pytest.raises(OrderViolation):
        Presentation("bad", A, (RewriteRule(parse_word("x", A), NCPoly.word(A, "x x")),))


def test_duplicate_rules_rejected():
    A = Alphabet.of(["x"])
    one = NCPoly.const(A)
    r = RewriteRule(parse_word("x x", A), one)
    with pytest.raises(ValueError):
        Presentation("dup", A, (r, r))


def test_path_dependent_rule_rejected():
    A = Alphabet.of(["x"])
    with pytest.raises(ValueError):
        Presentation("bad", A, (RewriteRule(parse_word("x x", A), NCPoly.const(A, PathScalar.t())),))


def test_alphabet_mismatch(sphere_pres, circle_pres):
    with pytest.raises(AlphabetMismatch):
        sphere_pres.gen("x") + circle_pres.gen("z")


def test_step_budget(monkeypatch, sphere_pres):
    monkeypatch.setattr(ncpoly, "STEP_BUDGET", 3)
    F = free_sphere()
    with pytest.raises(ReductionBudgetExceeded):
        F.normal_form(F.gen("y") ** 12)


def test_presentation_json_round_trip():
    for pres in (free_sphere(), theta_sphere(2, THETA2), clock_shift(4)):
        again = Presentation.from_json(pres.to_json())
        rng = random.Random(1)
        for _ in range(20):
            p = ncpoly.random_poly(pres, rng)
            assert pres.normal_form(p) == again.normal_form(p.over(again.alphabet))


def test_poly_json_round_trip(sphere_anti):
    full = sphere_anti.full
    p = ncpoly.random_poly(full, random.Random(5), path=True)
    assert NCPoly.from_json(p.to_json(), full.alphabet) == p


def test_builtin_lookup():
    assert builtin_presentation("ClockShift", k=3).label == "ClockShift(3)"
    with pytest.raises(ValueError):
        builtin_presentation("Torus")
    with pytest.raises(ValueError):
        builtin_presentation("ClockShift", n=3)


BUILTINS = [free_sphere(), theta_sphere(2, THETA2), cyclic_group(3), clock_shift(3)]


@pytest.mark.parametrize("pres", BUILTINS, ids=lambda p: p.label)
def test_normal_form_idempotent_and_irreducible(pres):
    rng = random.Random(pres.label)
    for _ in range(40):
        p = ncpoly.random_poly(pres, rng, path=True)
        nf = pres.normal_form(p)
        assert pres.normal_form(nf) == nf
        assert all(pres.is_irreducible(w) for w in nf.terms)


@settings(max_examples=40, deadline=None)
@given(polys(free_sphere(), path=True), polys(free_sphere(), path=True))
def test_star_compatibility_and_multiplicativity(p, q):
    F = free_sphere()
    assert F.normal_form(p.star()) == F.normal_form(F.normal_form(p).star())
    assert F.normal_form(p * q) == F.normal_form(F.normal_form(p) * F.normal_form(q))
    assert (p * q).star() == q.star() * p.star()


@pytest.mark.parametrize("pres", BUILTINS + [ncpoly.circle(), ncpoly.clopen_product(3)], ids=lambda p: p.label)
def test_builtins_are_confluent(pres):
    assert pres.critical_pairs() == []


def test_incomplete_sphere_rules_are_detected():
    A = Alphabet.of([("x", "self"), ("y", "self")])
    x = NCPoly.gen(A, "x")
    incomplete = Presentation("half-sphere", A, (RewriteRule(parse_word("y y", A), 1 - x * x),))
    pairs = incomplete.critical_pairs()
    assert pairs and pairs[0][0] == ("y", "y", "y")
    assert str(pairs[0][1]) in {"(1)[x x y] + (-1)[y x x]", "(-1)[x x y] + (1)[y x x]"}
