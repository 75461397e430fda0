"""Twisted joins J(A, beta): polynomial paths in the crossed product.

A join element is a crossed-product polynomial whose coefficients depend on
t (and s = sqrt(1 - t^2)).  At t = 0 it must lie in the group algebra, at
t = 1 in A.  Only polynomial paths are represented; every explicit element
used by the scenarios has this form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .actions import CyclicAction, action_apply, actions_commute
from .crossed import CrossedPresentation, combined_dual_action, crossed_presentation
from .homs import GenHom, hom_apply, hom_equivariance_check, hom_validate
from .ncpoly import NCPoly
from .validation import Defect, ValidationReport


@dataclass(eq=False)
class JoinElement:
    body: NCPoly
    cp: CrossedPresentation

    def __post_init__(self):
        self.body = self.cp.full.normal_form(self.body.over(self.cp.full.alphabet))

    def _wrap(self, p: NCPoly) -> JoinElement:
        return JoinElement(p, self.cp)

    def _other(self, other) -> NCPoly:
        if isinstance(other, JoinElement):
            if other.cp is not self.cp:
                raise ValueError("join elements live in different twisted joins")
            return other.body
        return self.cp.full.one().scale(other)

    def __add__(self, other) -> JoinElement:
        return self._wrap(self.body + self._other(other))

    __radd__ = __add__

    def __sub__(self, other) -> JoinElement:
        return self._wrap(self.body - self._other(other))

    def __neg__(self) -> JoinElement:
        return self._wrap(-self.body)

    def __mul__(self, other) -> JoinElement:
        if isinstance(other, JoinElement):
            return self._wrap(self.body * self._other(other))
        return self._wrap(self.body.scale(other))

    def __rmul__(self, other) -> JoinElement:
        return self._wrap(self.body.scale(other))

    def star(self) -> JoinElement:
        return self._wrap(self.body.star())

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def endpoint(self, t0: int) -> NCPoly:
        return self.cp.full.normal_form(self.body.at_endpoint(t0))

    def __str__(self) -> str:
        return str(self.body)

    def to_json(self) -> dict:
        return {
            "body": self.body.to_json(),
            "twist": {"base": self.cp.base.label, "beta": self.cp.beta.label, "k": self.cp.k},
        }


@dataclass
class BoundaryResult:
    ok: bool
    at_zero: NCPoly
    at_one: NCPoly
    witness: str = ""

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "f(0)": str(self.at_zero),
            "f(1)": str(self.at_one),
            "witness": self.witness,
        }


def boundary_check(e: JoinElement) -> BoundaryResult:
    """f(0) must be a combination of mu-words, f(1) must be mu-free."""
    cp = e.cp
    f0, f1 = e.endpoint(0), e.endpoint(1)
    witness = ""
    for w in sorted(f0.terms):
        if not all(cp.is_mu_letter(a) for a in w):
            witness = f"t=0: term ({f0.terms[w]}){list(w)} is not in C*(Z/{cp.k})"
            break
    if not witness:
        for w in sorted(f1.terms):
            if any(cp.is_mu_letter(a) for a in w):
                witness = f"t=1: term ({f1.terms[w]}){list(w)} is not in A"
                break
    return BoundaryResult(not witness, f0, f1, witness)


def tilde_action_apply(e: JoinElement, alpha: CyclicAction, j: int = 1) -> JoinElement:
    """Pointwise application of alpha composed with the dual action."""
    combined = combined_dual_action(e.cp, alpha)
    return JoinElement(action_apply(combined, j, e.body), e.cp)


def tilde_action(cp: CrossedPresentation, alpha: CyclicAction) -> CyclicAction:
    return combined_dual_action(cp, alpha)


def join_hom_validate(h: GenHom, cp: CrossedPresentation) -> ValidationReport:
    """Validate a map A -> J(A, beta): relations plus boundary conditions of every image."""
    report = hom_validate(h)
    for g, p in h.images.items():
        b = boundary_check(JoinElement(p, cp))
        report.flags[f"boundary of image of {g}"] = b.ok
        if not b.ok:
            report.notes.append(b.witness)
    if not report.ok:
        h.status, h.witness = "invalid", report.witness()
    return report


def induce_join_hom(
    phi: GenHom,
    betaA: CyclicAction,
    betaB: CyclicAction,
    alphaA: CyclicAction | None = None,
    alphaB: CyclicAction | None = None,
    k: int | None = None,
) -> Tuple[GenHom, ValidationReport, Tuple[CrossedPresentation, CrossedPresentation]]:
    """The crossed-product map a -> phi(a), mu -> mu induced by a beta-equivariant phi.

    Raises ValueError (carrying the defect report) when phi is not valid or
    not (betaA, betaB)-equivariant.  When alphaA/alphaB are given, the report
    also certifies equivariance for the combined actions.
    """
    k = k or betaA.k
    base_report = hom_validate(phi)
    if not base_report.ok:
        err = ValueError(f"{phi.label} is not a *-homomorphism: {base_report.witness()}")
        err.report = base_report
        raise err
    eq = hom_equivariance_check(phi, betaA, betaB)
    if not eq.ok:
        err = ValueError(f"{phi.label} is not ({betaA.label}, {betaB.label})-equivariant: {eq.witness()}")
        err.report = eq
        raise err

    cpA = crossed_presentation(phi.dom, betaA, k)
    cpB = crossed_presentation(phi.cod, betaB, k)
    images = {g: cpB.lift(p) for g, p in phi.images.items()}
    images[cpA.mu] = cpB.mu_poly()
    psi = GenHom(cpA.full, cpB.full, images, f"J({phi.label})")
    report = hom_validate(psi)
    report.subject = f"induced map {psi.label}: {cpA.label} -> {cpB.label}"
    report.defects.extend(Defect(f"beta-{d.name}", d.residue) for d in eq.defects)
    if alphaA is not None and alphaB is not None:
        if not (actions_commute(alphaA, betaA) and actions_commute(alphaB, betaB)):
            report.flags["alpha commutes with beta"] = False
        else:
            a_eq = hom_equivariance_check(phi, alphaA, alphaB)
            tA = combined_dual_action(cpA, alphaA)
            tB = combined_dual_action(cpB, alphaB)
            t_eq = hom_equivariance_check(psi, tA, tB)
            report.defects.extend(Defect(f"alpha-{d.name}", d.residue) for d in a_eq.defects)
            report.defects.extend(Defect(f"combined-{d.name}", d.residue) for d in t_eq.defects)
    if not report.ok:
        psi.status, psi.witness = "invalid", report.witness()
    return psi, report, (cpA, cpB)


def join_map(psi: GenHom, e: JoinElement, cpB: CrossedPresentation) -> JoinElement:
    """Pointwise application of an induced crossed-product map."""
    return JoinElement(hom_apply(psi, e.body), cpB)
