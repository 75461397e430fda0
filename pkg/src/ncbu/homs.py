"""Unital *-homomorphisms between presented algebras, given on generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping

from .actions import CyclicAction
from .ncpoly import AlphabetMismatch, NCPoly, Presentation
from .scalars import Cyclotomic, PathScalar
from .validation import Defect, ValidationReport, relation_defects, substitute


@dataclass(eq=False)
class GenHom:
    dom: Presentation
    cod: Presentation
    images: Dict[str, NCPoly]
    label: str = "hom"
    status: str = "unvalidated"
    witness: str = ""
    report: ValidationReport | None = field(default=None, repr=False)

    def __post_init__(self):
        missing = set(self.dom.alphabet.names) - set(self.images)
        if missing:
            raise ValueError(f"{self.label}: no image for generators {sorted(missing)}")
        self.images = {g: self.cod.normal_form(p.over(self.cod.alphabet)) for g, p in self.images.items()}

    def __call__(self, p: NCPoly) -> NCPoly:
        return hom_apply(self, p)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "domain": self.dom.label,
            "codomain": self.cod.label,
            "images": {g: p.to_json() for g, p in self.images.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping, dom: Presentation, cod: Presentation) -> GenHom:
        images = {g: NCPoly.from_json(v, cod.alphabet) for g, v in data["images"].items()}
        return cls(dom, cod, images, data.get("label", "hom"))


def hom_validate(h: GenHom) -> ValidationReport:
    report = ValidationReport(f"hom {h.label}: {h.dom.label} -> {h.cod.label}")
    report.defects.extend(relation_defects(h.images, h.dom, h.cod))
    h.report = report
    if report.ok:
        h.status, h.witness = "valid", ""
    else:
        h.status, h.witness = "invalid", report.witness()
    return report


def hom_apply(h: GenHom, p: NCPoly) -> NCPoly:
    if p.alphabet != h.dom.alphabet:
        try:
            p = p.over(h.dom.alphabet)
        except AlphabetMismatch:
            raise AlphabetMismatch(f"{h.label} cannot be applied to a polynomial over {p.alphabet.names}") from None
    return substitute(p, h.images, h.cod)


def hom_compose(g: GenHom, h: GenHom) -> GenHom:
    """g after h."""
    if h.cod.alphabet != g.dom.alphabet:
        raise AlphabetMismatch(f"cannot compose {g.label} after {h.label}: codomain/domain differ")
    images = {name: hom_apply(g, p) for name, p in h.images.items()}
    out = GenHom(h.dom, g.cod, images, f"{g.label}.{h.label}")
    hom_validate(out)
    return out


def hom_equivariance_check(h: GenHom, a_dom: CyclicAction, a_cod: CyclicAction) -> ValidationReport:
    """phi(alpha_dom(g)) - alpha_cod(phi(g)) for every generator g."""
    report = ValidationReport(f"{h.label} is ({a_dom.label}, {a_cod.label})-equivariant")
    for g in h.dom.alphabet.names:
        lhs = hom_apply(h, a_dom.images[g])
        rhs = a_cod(h.images[g])
        report.defects.append(Defect(f"equivariance on {g}", h.cod.normal_form(lhs - rhs)))
    return report


def identity_hom(pres: Presentation) -> GenHom:
    h = GenHom(pres, pres, {g: pres.gen(g) for g in pres.alphabet.names}, "id")
    hom_validate(h)
    return h


def inclusion_hom(dom: Presentation, cod: Presentation, label: str = "incl") -> GenHom:
    return GenHom(dom, cod, {g: NCPoly.gen(cod.alphabet, g) for g in dom.alphabet.names}, label)


def evaluate_hom(h: GenHom, t, s=None) -> GenHom:
    """Substitute exact values for the path parameters in every image.

    ``t`` may be the endpoint 0 or 1 (s follows), or a cyclotomic pair (t, s).
    """
    if s is None:
        if t not in (0, 1):
            raise ValueError("give s explicitly away from the endpoints")
        s = 1 - t
    t, s = Cyclotomic.coerce(t), Cyclotomic.coerce(s)
    if t * t + s * s != 1:
        raise ValueError("evaluation point must satisfy t^2 + s^2 = 1")
    images = {g: p.map_coefficients(lambda c: c.substitute(t, s)) for g, p in h.images.items()}
    out = GenHom(h.dom, h.cod, images, f"ev({h.label})")
    hom_validate(out)
    return out


def rotation(pres: Presentation, s, t, label: str | None = None) -> GenHom:
    """R_(s,t): x -> s x + t y, y -> -t x + s y on the free sphere."""
    s, t = PathScalar.coerce(s), PathScalar.coerce(t)
    x, y = pres.gen("x"), pres.gen("y")
    images = {"x": x.scale(s) + y.scale(t), "y": x.scale(-t) + y.scale(s)}
    return GenHom(pres, pres, images, label or f"R({s}, {t})")
