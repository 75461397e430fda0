from __future__ import annotations

import pytest

from ncbu.actions import CyclicAction, antipodal, phase_action
from ncbu.constructions import S, T, circle_join, sphere_join, sphere_to_circle
from ncbu.homs import GenHom
from ncbu.join import (JoinElement, boundary_check, induce_join_hom, join_hom_validate, join_map,
                       tilde_action_apply)


def test_circle_join_image_is_unitary():
    js = circle_join()
    f = JoinElement(js.elements["f"], js.cp)
    assert (f * f.star() - 1).is_zero()
    assert (f.star() * f - 1).is_zero()
    assert boundary_check(f).ok
    assert (tilde_action_apply(f, js.alpha) + f).is_zero()


def test_boundary_witnesses(sphere_anti):
    full = sphere_anti.full
    x, mu = full.gen("x"), sphere_anti.mu_poly()
    assert boundary_check(JoinElement(x.scale(T) + mu.scale(S), sphere_anti)).ok
    bad0 = boundary_check(JoinElement(x, sphere_anti))
    assert not bad0.ok and bad0.witness.startswith("t=0")
    bad1 = boundary_check(JoinElement(mu, sphere_anti))
    assert not bad1.ok and bad1.witness.startswith("t=1")


def test_join_elements_must_share_twist(sphere_anti, circle_conj):
    a = JoinElement(sphere_anti.mu_poly(), sphere_anti)
    b = JoinElement(circle_conj.mu_poly(), circle_conj)
    with pytest.raises(ValueError):
        a + b


def test_join_hom_validate_flags_boundary():
    js = sphere_join()
    assert join_hom_validate(js.phi, js.cp).ok
    F, cp = js.base, js.cp
    wrong = GenHom(F, cp.full, {"x": cp.full.gen("x"), "y": cp.mu_poly()}, "wrong")
    report = join_hom_validate(wrong, cp)
    assert not report.ok


def test_induced_map_on_quotient():
    phi, refl, conj, antiF, antiC = sphere_to_circle()
    psi, report, (cpA, cpB) = induce_join_hom(phi, refl, conj, antiF, antiC)
    assert report.ok
    e = JoinElement(cpA.full.gen("x").scale(T) + cpA.mu_poly().scale(S), cpA)
    image = join_map(psi, e, cpB)
    assert boundary_check(image).ok


def test_induce_rejects_non_equivariant():
    phi, refl, conj, antiF, antiC = sphere_to_circle()
    with pytest.raises(ValueError) as err:
        induce_join_hom(phi, antiF, conj)
    assert not err.value.report.ok


def test_induce_rejects_invalid(sphere_pres):
    F = sphere_pres
    bad = GenHom(F, F, {"x": F.gen("x"), "y": F.gen("x")}, "collapse")
    with pytest.raises(ValueError):
        induce_join_hom(bad, antipodal(F), antipodal(F))


def test_noncommuting_alpha_is_flagged(sphere_pres):
    F = sphere_pres
    refl = phase_action(F, 2, {"y": 1}, "reflection")
    ident = GenHom(F, F, {"x": F.gen("x"), "y": F.gen("y")}, "id")
    swap = CyclicAction(F, 2, {"x": F.gen("y"), "y": F.gen("x")}, "swap")
    _, report, _ = induce_join_hom(ident, refl, refl, swap, swap)
    assert report.flags.get("alpha commutes with beta") is False
