"""Defect reports shared by actions, homomorphisms and joins."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping

from .ncpoly import NCPoly, Presentation


@dataclass
class Defect:
    """Normal form of something that should reduce to zero."""

    name: str
    residue: NCPoly

    @property
    def ok(self) -> bool:
        return self.residue.is_zero()

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "normal_form": str(self.residue)}


@dataclass
class ValidationReport:
    subject: str
    defects: List[Defect] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.defects) and all(self.flags.values())

    def failures(self) -> List[Defect]:
        return [d for d in self.defects if not d.ok]

    def witness(self) -> str:
        bad = self.failures()
        if bad:
            return f"{bad[0].name}: {bad[0].residue}"
        off = [k for k, v in self.flags.items() if not v]
        return ", ".join(off)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "defects": [d.to_json() for d in self.defects],
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


def substitute(p: NCPoly, images: Mapping[str, NCPoly], cod: Presentation) -> NCPoly:
    """Apply the letter map g -> images[g], g* -> images[g]^* and reduce in ``cod``.

    Products are reduced letter by letter so intermediate expansions stay small.
    """
    alphabet = p.alphabet
    letter_img: Dict[str, NCPoly] = {}

    def img(letter: str) -> NCPoly:
        hit = letter_img.get(letter)
        if hit is None:
            name = alphabet.base_name(letter)
            base = images[name].over(cod.alphabet)
            hit = base if letter == name else base.star()
            letter_img[letter] = hit
        return hit

    words: Dict[tuple, NCPoly] = {(): cod.one()}

    def word_img(w: tuple) -> NCPoly:
        hit = words.get(w)
        if hit is None:
            hit = cod.normal_form(word_img(w[:-1]) * img(w[-1]))
            words[w] = hit
        return hit

    out = cod.zero()
    for w, c in p.terms.items():
        out = out + word_img(w).scale(c)
    return cod.normal_form(out)


def relation_defects(
    images: Mapping[str, NCPoly], dom: Presentation, cod: Presentation
) -> List[Defect]:
    """Defects showing whether a generator assignment respects every relation of ``dom``."""
    out = []
    for g in dom.self_adjoint():
        im = images[g].over(cod.alphabet)
        out.append(Defect(f"{g} = {g}*", cod.normal_form(im.star() - im)))
    for rule, rel in zip(dom.rules, dom.relations()):
        out.append(Defect(f"relation {rule}", substitute(rel, images, cod)))
    return out
