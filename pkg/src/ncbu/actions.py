"""Z/kZ actions on presented algebras and their isotypic decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping

from .ncpoly import NCPoly, Presentation
from .scalars import root_of_unity
from .validation import Defect, ValidationReport, relation_defects, substitute


@dataclass(eq=False)
class CyclicAction:
    """Order-k automorphism given on generators and extended multiplicatively."""

    pres: Presentation
    k: int
    images: Dict[str, NCPoly]
    label: str = "action"
    _cache: Dict[int, Dict[str, NCPoly]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("actions need order k >= 2")
        missing = set(self.pres.alphabet.names) - set(self.images)
        if missing:
            raise ValueError(f"{self.label}: no image for generators {sorted(missing)}")
        self.images = {g: p.over(self.pres.alphabet) for g, p in self.images.items()}

    def __call__(self, p: NCPoly) -> NCPoly:
        return substitute(p, self.images, self.pres)

    def power_images(self, j: int) -> Dict[str, NCPoly]:
        """Generator images of the j-th iterate (j reduced mod k)."""
        j %= self.k
        if j not in self._cache:
            if j == 0:
                self._cache[0] = {g: self.pres.gen(g) for g in self.pres.alphabet.names}
            else:
                prev = self.power_images(j - 1)
                self._cache[j] = {g: self(prev[g]) for g in prev}
        return self._cache[j]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "label": self.label,
            "images": {g: p.to_json() for g, p in self.images.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping, pres: Presentation) -> CyclicAction:
        images = {g: NCPoly.from_json(v, pres.alphabet) for g, v in data["images"].items()}
        for g in pres.alphabet.names:
            images.setdefault(g, pres.gen(g))
        return cls(pres, int(data["k"]), images, data.get("label", "action"))


def action_validate(
    a: CyclicAction, pres: Presentation | None = None, other: CyclicAction | None = None
) -> ValidationReport:
    pres = pres or a.pres
    if pres is not a.pres:
        a = CyclicAction(pres, a.k, a.images, a.label)
    report = ValidationReport(f"action {a.label} on {pres.label}")
    report.defects.extend(relation_defects(a.images, pres, pres))
    # k-fold composite computed explicitly, not via the mod-k shortcut
    cur = {g: pres.gen(g) for g in pres.alphabet.names}
    for _ in range(a.k):
        cur = {g: a(p) for g, p in cur.items()}
    for g in pres.alphabet.names:
        report.defects.append(Defect(f"order {a.k} on {g}", pres.normal_form(cur[g] - pres.gen(g))))
    if other is not None:
        report.flags["commutes"] = actions_commute(a, other)
    return report


def actions_commute(a: CyclicAction, b: CyclicAction) -> bool:
    pres = a.pres
    return all(
        pres.is_zero(a(b.images[g]) - b(a.images[g])) for g in pres.alphabet.names
    )


def action_apply(a: CyclicAction, j: int, p: NCPoly, pres: Presentation | None = None) -> NCPoly:
    pres = pres or a.pres
    return substitute(p, a.power_images(j), pres)


def isotypic_project(a: CyclicAction, gamma: int, p: NCPoly, pres: Presentation | None = None) -> NCPoly:
    """(1/k) sum_j omega^(-gamma j) alpha^j(p): the part of p scaled by omega^gamma."""
    pres = pres or a.pres
    k = a.k
    out = pres.zero()
    for j in range(k):
        out = out + action_apply(a, j, p, pres).scale(root_of_unity(k, -gamma * j))
    return pres.normal_form(out.scale(Fraction(1, k)))


# ---------------------------------------------------------------------------
# standard actions
# ---------------------------------------------------------------------------

def antipodal(pres: Presentation, k: int = 2) -> CyclicAction:
    """Negate every generator."""
    return CyclicAction(pres, k, {g: -pres.gen(g) for g in pres.alphabet.names}, "antipodal")


def trivial(pres: Presentation, k: int = 2) -> CyclicAction:
    return CyclicAction(pres, k, {g: pres.gen(g) for g in pres.alphabet.names}, "trivial")


def conjugation(pres: Presentation, k: int = 2) -> CyclicAction:
    """g -> g* on every free generator (z -> z* on the circle)."""
    images = {g: pres.gen(pres.alphabet.star_letter(g)) for g in pres.alphabet.names}
    return CyclicAction(pres, k, images, "conjugation")


def phase_action(pres: Presentation, k: int, exponents: Mapping[str, int], label: str = "phase") -> CyclicAction:
    """g -> omega^e_g g with omega = exp(2 pi i / k); unlisted generators are fixed."""
    images = {
        g: pres.gen(g).scale(root_of_unity(k, exponents.get(g, 0))) for g in pres.alphabet.names
    }
    return CyclicAction(pres, k, images, label)
