"""Crossed products A x_beta Z/kZ, dual and combined actions, and the matrix expansion E."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .actions import CyclicAction, action_apply, action_validate, actions_commute
from .ncpoly import Generator, NCPoly, OrderViolation, Presentation, RewriteRule
from .scalars import root_of_unity


class InvalidAction(ValueError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


@dataclass(eq=False)
class CrossedPresentation:
    base: Presentation
    beta: CyclicAction
    k: int
    full: Presentation
    mu: str = "mu"
    _letter_mats: Dict[str, "MatrixOverAlg"] = field(default_factory=dict, init=False, repr=False)

    @property
    def label(self) -> str:
        return self.full.label

    def mu_poly(self) -> NCPoly:
        return self.full.gen(self.mu)

    def lift(self, p: NCPoly) -> NCPoly:
        """View a base polynomial inside the crossed product."""
        return p.over(self.full.alphabet)

    def is_mu_letter(self, letter: str) -> bool:
        return letter in (self.mu, self.mu + "*")


def crossed_presentation(
    base: Presentation, beta: CyclicAction, k: int, mu: str = "mu"
) -> CrossedPresentation:
    if beta.pres is not base:
        raise InvalidAction("beta must act on the base presentation")
    if k % beta.k:
        raise InvalidAction(f"beta has order {beta.k}, which does not divide {k}")
    report = action_validate(beta)
    if not report.ok:
        raise InvalidAction(f"beta is not a valid action: {report.witness()}", report)
    if mu in base.alphabet.names:
        raise ValueError(f"group generator name {mu!r} clashes with the base alphabet")

    alphabet = base.alphabet.extend(Generator(mu, "free"))
    lift = lambda p: p.over(alphabet)  # noqa: E731
    mu_p = NCPoly.gen(alphabet, mu)
    rules: List[RewriteRule] = [RewriteRule(r.lhs, lift(r.rhs)) for r in base.rules]
    rules.append(RewriteRule((mu + "*",), mu_p ** (k - 1)))
    rules.append(RewriteRule((mu,) * k, NCPoly.const(alphabet)))
    eliminated = {r.lhs[0] for r in base.rules if len(r.lhs) == 1}
    for letter in base.alphabet.letters():
        if letter in eliminated:
            continue
        # mu a = beta(a) mu
        image = action_apply(beta, 1, NCPoly.gen(base.alphabet, letter))
        rules.append(RewriteRule((mu, letter), lift(image) * mu_p))
    label = f"{base.label}x[{beta.label},{k}]"
    try:
        full = Presentation(label, alphabet, tuple(rules))
    except OrderViolation as exc:
        raise InvalidAction(f"beta images must have degree <= 1 to orient mu-rules: {exc}") from None
    return CrossedPresentation(base, beta, k, full, mu)


def combined_dual_action(cp: CrossedPresentation, alpha: CyclicAction) -> CyclicAction:
    """alpha on base letters composed with the dual action mu -> omega mu."""
    if alpha.pres is not cp.base:
        raise InvalidAction("alpha must act on the base presentation")
    if cp.k % alpha.k:
        raise InvalidAction(f"alpha has order {alpha.k}, incompatible with k = {cp.k}")
    if not actions_commute(alpha, cp.beta):
        raise InvalidAction(f"{alpha.label} does not commute with {cp.beta.label}")
    images = {g: cp.lift(p) for g, p in alpha.images.items()}
    images[cp.mu] = cp.mu_poly().scale(root_of_unity(cp.k, 1))
    return CyclicAction(cp.full, cp.k, images, f"{alpha.label}*dual")


def dual_action(cp: CrossedPresentation) -> CyclicAction:
    from .actions import trivial

    return combined_dual_action(cp, trivial(cp.base, cp.k))


def beta_extended(cp: CrossedPresentation) -> CyclicAction:
    """beta on the crossed product, fixing mu."""
    images = {g: cp.lift(p) for g, p in cp.beta.images.items()}
    images[cp.mu] = cp.mu_poly()
    return CyclicAction(cp.full, cp.k, images, cp.beta.label)


# ---------------------------------------------------------------------------
# k x k matrices over the base algebra
# ---------------------------------------------------------------------------

class MatrixOverAlg:
    """Square matrix of polynomials, reduced entrywise in ``pres``."""

    def __init__(self, pres: Presentation, entries: Sequence[Sequence[NCPoly]]):
        self.pres = pres
        self.size = len(entries)
        self.entries = [[pres.normal_form(e) for e in row] for row in entries]
        if any(len(row) != self.size for row in self.entries):
            raise ValueError("matrix must be square")

    @classmethod
    def zeros(cls, pres: Presentation, n: int) -> MatrixOverAlg:
        return cls(pres, [[pres.zero() for _ in range(n)] for _ in range(n)])

    @classmethod
    def identity(cls, pres: Presentation, n: int) -> MatrixOverAlg:
        return cls.diag(pres, [pres.one()] * n)

    @classmethod
    def diag(cls, pres: Presentation, items: Sequence[NCPoly]) -> MatrixOverAlg:
        n = len(items)
        return cls(pres, [[items[i] if i == j else pres.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def scalar_matrix(cls, pres: Presentation, rows) -> MatrixOverAlg:
        """Matrix with scalar (PathScalar / cyclotomic / rational) entries."""
        return cls(pres, [[pres.one().scale(c) for c in row] for row in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: MatrixOverAlg) -> None:
        same = other.pres is self.pres or (
            other.pres.label == self.pres.label and other.pres.alphabet == self.pres.alphabet)
        if other.size != self.size or not same:
            raise ValueError("matrix shape or algebra mismatch")

    def __add__(self, other: MatrixOverAlg) -> MatrixOverAlg:
        self._check(other)
        n = self.size
        return MatrixOverAlg(self.pres, [[self.entries[i][j] + other.entries[i][j] for j in range(n)] for i in range(n)])

    def __sub__(self, other: MatrixOverAlg) -> MatrixOverAlg:
        return self + other.scale(-1)

    def scale(self, c) -> MatrixOverAlg:
        return MatrixOverAlg(self.pres, [[e.scale(c) for e in row] for row in self.entries])

    def __mul__(self, other) -> MatrixOverAlg:
        if not isinstance(other, MatrixOverAlg):
            return self.scale(other)
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.pres.zero()
                for m in range(n):
                    a, b = self.entries[i][m], other.entries[m][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixOverAlg(self.pres, out)

    def star(self) -> MatrixOverAlg:
        n = self.size
        return MatrixOverAlg(self.pres, [[self.entries[j][i].star() for j in range(n)] for i in range(n)])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixOverAlg):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_entries(self, fn) -> MatrixOverAlg:
        return MatrixOverAlg(self.pres, [[fn(e) for e in row] for row in self.entries])

    def at_endpoint(self, t0: int) -> MatrixOverAlg:
        return self.map_entries(lambda e: e.at_endpoint(t0))

    def is_scalar_valued(self) -> bool:
        """Every entry lies in C * 1 (image in M_k(C))."""
        return all(set(e.terms) <= {()} for row in self.entries for e in row)

    def evaluate(self, rep, t0: float = 0.0) -> np.ndarray:
        """Block matrix sum_ij E_ij (x) rep(entry_ij)."""
        d = rep.dim
        n = self.size
        out = np.zeros((n * d, n * d), dtype=complex)
        for i in range(n):
            for j in range(n):
                e = self.entries[i][j]
                if e.terms:
                    out[i * d:(i + 1) * d, j * d:(j + 1) * d] = rep.evaluate(e, t0)
        return out

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]

    @classmethod
    def from_json(cls, data, pres: Presentation) -> MatrixOverAlg:
        return cls(pres, [[NCPoly.from_json(e, pres.alphabet) for e in row] for row in data])

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "]"


def shift_matrix(k: int) -> np.ndarray:
    """S with S[n, n+1] = 1; S^k = I and S E(a) = E(beta(a)) S."""
    S = np.zeros((k, k))
    for n in range(k):
        S[n, (n + 1) % k] = 1
    return S


def expand_matrix(cp: CrossedPresentation, p: NCPoly) -> MatrixOverAlg:
    """E(a) = diag(a, beta(a), ..., beta^(k-1)(a)) and E(mu) = shift."""
    base, k = cp.base, cp.k

    def letter_matrix(letter: str) -> MatrixOverAlg:
        hit = cp._letter_mats.get(letter)
        if hit is not None:
            return hit
        if cp.is_mu_letter(letter):
            S = shift_matrix(k)
            if letter.endswith("*"):
                S = S.T
            hit = MatrixOverAlg.scalar_matrix(base, [[int(v) for v in row] for row in S])
        else:
            g = NCPoly.gen(base.alphabet, letter)
            hit = MatrixOverAlg.diag(base, [action_apply(cp.beta, i, g) for i in range(k)])
        cp._letter_mats[letter] = hit
        return hit

    p = cp.full.normal_form(p.over(cp.full.alphabet))
    out = MatrixOverAlg.zeros(base, k)
    for w, c in p.terms.items():
        m = MatrixOverAlg.identity(base, k)
        for a in w:
            m = m * letter_matrix(a)
        out = out + m.scale(c)
    return out


def mu_components(cp: CrossedPresentation, p: NCPoly) -> List[NCPoly]:
    """Coefficients a_j (over the base) of the normal form sum_j a_j mu^j."""
    p = cp.full.normal_form(p.over(cp.full.alphabet))
    comps = [cp.base.zero() for _ in range(cp.k)]
    for w, c in p.terms.items():
        j = 0
        while j < len(w) and w[len(w) - 1 - j] == cp.mu:
            j += 1
        head = w[:len(w) - j]
        if any(cp.is_mu_letter(a) for a in head):
            raise ValueError(f"normal form word {w} is not of the form a mu^j")
        comps[j] = comps[j] + NCPoly(cp.base.alphabet, {head: c})
    return comps
