"""Free *-polynomials and oriented rewriting systems for presented *-algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .scalars import Cyclotomic, PathScalar, format_scalar, parse_scalar, root_of_unity

Word = Tuple[str, ...]

STEP_BUDGET = 10**6


class AlphabetMismatch(ValueError):
    pass


class ReductionBudgetExceeded(RuntimeError):
    pass


class OrderViolation(ValueError):
    """A rewrite rule does not strictly decrease the monomial order."""


@dataclass(frozen=True)
class Generator:
    name: str
    star: str = "free"  # "self" for self-adjoint generators

    def __post_init__(self):
        if self.star not in ("self", "free"):
            raise ValueError(f"generator {self.name}: star must be 'self' or 'free'")
        if self.name.endswith("*") or not self.name:
            raise ValueError(f"bad generator name {self.name!r}")


@dataclass(frozen=True)
class Alphabet:
    generators: Tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")

    @classmethod
    def of(cls, spec: Iterable) -> Alphabet:
        gens = []
        for g in spec:
            if isinstance(g, Generator):
                gens.append(g)
            elif isinstance(g, str):
                gens.append(Generator(g))
            else:
                gens.append(Generator(*g))
        return cls(tuple(gens))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def letters(self) -> Tuple[str, ...]:
        """All letters in increasing order: for free generators g* precedes g."""
        out: List[str] = []
        for g in self.generators:
            if g.star == "free":
                out.append(g.name + "*")
            out.append(g.name)
        return tuple(out)

    def star_letter(self, letter: str) -> str:
        if letter.endswith("*"):
            return letter[:-1]
        if self.generator(letter).star == "self":
            return letter
        return letter + "*"

    def base_name(self, letter: str) -> str:
        return letter[:-1] if letter.endswith("*") else letter

    def contains(self, other: Alphabet) -> bool:
        return set(other.generators) <= set(self.generators)

    def extend(self, *gens: Generator) -> Alphabet:
        return Alphabet(self.generators + tuple(gens))


def parse_word(spec, alphabet: Alphabet) -> Word:
    """Accept a token list or a whitespace-separated string ('' is the unit)."""
    tokens = spec.split() if isinstance(spec, str) else list(spec)
    letters = set(alphabet.letters())
    for tok in tokens:
        if tok not in letters:
            raise AlphabetMismatch(f"letter {tok!r} not in alphabet {alphabet.names}")
    return tuple(tokens)


def format_word(w: Word) -> str:
    return "[" + " ".join(w) + "]"


class NCPoly:
    """Finite sum of words with PathScalar coefficients over a fixed alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] | None = None):
        self.alphabet = alphabet
        self.terms: Dict[Word, PathScalar] = {}
        for w, c in (terms or {}).items():
            self._acc(tuple(w), PathScalar.coerce(c))

    def _acc(self, w: Word, c: PathScalar) -> None:
        prev = self.terms.get(w)
        new = c if prev is None else prev + c
        if new.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = new

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, alphabet: Alphabet, c=1) -> NCPoly:
        return cls(alphabet, {(): c})

    @classmethod
    def word(cls, alphabet: Alphabet, w, c=1) -> NCPoly:
        return cls(alphabet, {parse_word(w, alphabet): c})

    @classmethod
    def gen(cls, alphabet: Alphabet, letter: str) -> NCPoly:
        return cls.word(alphabet, [letter])

    # structure --------------------------------------------------------------
    def _check(self, other: NCPoly) -> None:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(
                f"alphabets differ: {self.alphabet.names} vs {other.alphabet.names}"
            )

    def _lift(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.const(self.alphabet, PathScalar.coerce(other))

    def over(self, alphabet: Alphabet) -> NCPoly:
        """Re-home onto a larger (or equal) alphabet."""
        if alphabet == self.alphabet:
            return self
        letters = set(alphabet.letters())
        for w in self.terms:
            for a in w:
                if a not in letters:
                    raise AlphabetMismatch(f"letter {a!r} missing from {alphabet.names}")
        out = NCPoly(alphabet)
        out.terms = dict(self.terms)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, w) -> PathScalar:
        return self.terms.get(tuple(w), PathScalar())

    def letters(self) -> set:
        return {a for w in self.terms for a in w}

    def map_coefficients(self, fn) -> NCPoly:
        out = NCPoly(self.alphabet)
        for w, c in self.terms.items():
            out._acc(w, PathScalar.coerce(fn(c)))
        return out

    def at_endpoint(self, t0: int) -> NCPoly:
        return self.map_coefficients(lambda c: c.at_endpoint(t0))

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other) -> NCPoly:
        other = self._lift(other)
        out = NCPoly(self.alphabet)
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            out._acc(w, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        out = NCPoly(self.alphabet)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other) -> NCPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> NCPoly:
        return self._lift(other) - self

    def scale(self, c) -> NCPoly:
        c = PathScalar.coerce(c)
        out = NCPoly(self.alphabet)
        if c.is_zero():
            return out
        for w, d in self.terms.items():
            out._acc(w, d * c)
        return out

    def __mul__(self, other) -> NCPoly:
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        out = NCPoly(self.alphabet)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._acc(w1 + w2, c1 * c2)
        return out

    def __rmul__(self, other) -> NCPoly:
        return self.scale(other)

    def __pow__(self, e: int) -> NCPoly:
        out = NCPoly.const(self.alphabet)
        for _ in range(e):
            out = out * self
        return out

    def star(self) -> NCPoly:
        out = NCPoly(self.alphabet)
        sl = self.alphabet.star_letter
        for w, c in self.terms.items():
            out._acc(tuple(sl(a) for a in reversed(w)), c.conj())
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.const(self.alphabet, PathScalar.coerce(other))
            except TypeError:
                return NotImplemented
        return self.alphabet == other.alphabet and (self - other).is_zero()

    __hash__ = None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({format_scalar(self.terms[w])}){format_word(w)}" for w in sorted(self.terms)
        )

    def __repr__(self) -> str:
        return f"NCPoly({self})"

    # serialization ------------------------------------------------------------
    def to_json(self) -> list:
        return [[list(w), format_scalar(self.terms[w])] for w in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: Sequence, alphabet: Alphabet) -> NCPoly:
        out = cls(alphabet)
        for word, coeff in data:
            out._acc(parse_word(word, alphabet), parse_scalar(coeff))
        return out


def star(p: NCPoly) -> NCPoly:
    return p.star()


def poly_arith(op: str, a: NCPoly, b=None) -> NCPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "star":
        return a.star()
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown poly op {op!r}")


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {self.rhs}"


@dataclass(eq=False)
class Presentation:
    """Generators, star structure and oriented rules of a presented *-algebra.

    Words are compared by (number of eliminated letters, length, letter ranks),
    where a letter is eliminated when it is the whole left side of a rule
    (e.g. mu* -> mu^(k-1)).  Every rule must strictly decrease this order.
    """

    label: str
    alphabet: Alphabet
    rules: Tuple[RewriteRule, ...]
    _rule_map: Dict[Word, Dict[Word, Cyclotomic]] = field(init=False, repr=False)
    _lengths: Tuple[int, ...] = field(init=False, repr=False)
    _rank: Dict[str, int] = field(init=False, repr=False)
    _eliminated: frozenset = field(init=False, repr=False)
    _memo: Dict[Word, Dict[Word, Cyclotomic]] = field(init=False, repr=False)

    def __post_init__(self):
        self.rules = tuple(self.rules)
        self._rank = {a: i for i, a in enumerate(self.alphabet.letters())}
        self._eliminated = frozenset(r.lhs[0] for r in self.rules if len(r.lhs) == 1)
        self._rule_map = {}
        for r in self.rules:
            if r.rhs.alphabet != self.alphabet:
                raise AlphabetMismatch(f"rule {r} not over {self.alphabet.names}")
            if r.lhs in self._rule_map:
                raise ValueError(f"duplicate rule for {format_word(r.lhs)}")
            if not r.lhs:
                raise ValueError("the unit cannot be rewritten")
            consts = {}
            for w, c in r.rhs.terms.items():
                if not c.is_constant():
                    raise ValueError(f"rule {r} has path-dependent coefficients")
                if self.key(w) >= self.key(r.lhs):
                    raise OrderViolation(f"rule {r} does not decrease the order at {format_word(w)}")
                consts[w] = c.constant_value()
            self._rule_map[r.lhs] = consts
        self._lengths = tuple(sorted({len(lhs) for lhs in self._rule_map}))
        self._memo = {}

    def key(self, w: Word) -> tuple:
        return (
            sum(a in self._eliminated for a in w),
            len(w),
            tuple(self._rank[a] for a in w),
        )

    # convenience -------------------------------------------------------------
    def gen(self, letter: str) -> NCPoly:
        return NCPoly.gen(self.alphabet, letter)

    def one(self) -> NCPoly:
        return NCPoly.const(self.alphabet)

    def zero(self) -> NCPoly:
        return NCPoly(self.alphabet)

    def poly(self, terms: Mapping) -> NCPoly:
        return NCPoly(self.alphabet, {parse_word(w, self.alphabet): c for w, c in terms.items()})

    def self_adjoint(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.alphabet.generators if g.star == "self")

    # reduction ---------------------------------------------------------------
    def _match(self, w: Word):
        rm = self._rule_map
        for i in range(len(w)):
            for L in self._lengths:
                if i + L > len(w):
                    break
                seg = w[i:i + L]
                if seg in rm:
                    return i, seg
        return None

    def _reduce_word(self, w: Word, budget: list) -> Dict[Word, Cyclotomic]:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        m = self._match(w)
        if m is None:
            out = {w: Cyclotomic.rational(1)}
        else:
            budget[0] -= 1
            if budget[0] < 0:
                raise ReductionBudgetExceeded(
                    f"{self.label}: more than {STEP_BUDGET} rewrite steps"
                )
            i, seg = m
            pre, post = w[:i], w[i + len(seg):]
            out = {}
            for rw, c in self._rule_map[seg].items():
                for u, d in self._reduce_word(pre + rw + post, budget).items():
                    v = out.get(u)
                    v = c * d if v is None else v + c * d
                    if v.is_zero():
                        out.pop(u, None)
                    else:
                        out[u] = v
        self._memo[w] = out
        return out

    def normal_form(self, p: NCPoly) -> NCPoly:
        if p.alphabet != self.alphabet:
            p = p.over(self.alphabet)
        budget = [STEP_BUDGET]
        out = NCPoly(self.alphabet)
        for w, c in p.terms.items():
            for u, d in self._reduce_word(w, budget).items():
                out._acc(u, c * d)
        return out

    def is_irreducible(self, w: Word) -> bool:
        return self._match(tuple(w)) is None

    def is_zero(self, p: NCPoly) -> bool:
        return self.normal_form(p).is_zero()

    def equal(self, p: NCPoly, q: NCPoly) -> bool:
        return self.is_zero(p - q)

    def critical_pairs(self) -> List[Tuple[Word, NCPoly]]:
        """Overlaps and inclusions of rule left sides whose two reductions disagree.

        An empty list means the rule system is locally confluent, hence
        (being terminating) normal forms are unique.
        """
        out = []
        one = lambda w: NCPoly(self.alphabet, {w: 1})  # noqa: E731
        for r1 in self.rules:
            l1 = r1.lhs
            for r2 in self.rules:
                l2 = r2.lhs
                for i in range(1, len(l1)):
                    n = len(l1) - i
                    if n < len(l2) and l1[i:] == l2[:n]:
                        a = r1.rhs * one(l2[n:])
                        b = one(l1[:i]) * r2.rhs
                        diff = self.normal_form(a - b)
                        if not diff.is_zero():
                            out.append((l1 + l2[n:], diff))
                if r1 is not r2 and len(l2) < len(l1):
                    for i in range(len(l1) - len(l2) + 1):
                        if l1[i:i + len(l2)] == l2:
                            b = one(l1[:i]) * r2.rhs * one(l1[i + len(l2):])
                            diff = self.normal_form(r1.rhs - b)
                            if not diff.is_zero():
                                out.append((l1, diff))
        return out

    def is_confluent(self) -> bool:
        return not self.critical_pairs()

    def relations(self) -> List[NCPoly]:
        """lhs - rhs for every rule (the defining relations)."""
        return [NCPoly(self.alphabet, {r.lhs: 1}) - r.rhs for r in self.rules]

    def __str__(self) -> str:
        return self.label

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "label": self.label,
            "generators": [{"name": g.name, "star": g.star} for g in self.alphabet.generators],
            "rules": [[list(r.lhs), r.rhs.to_json()] for r in self.rules],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Presentation:
        alphabet = Alphabet.of((g["name"], g.get("star", "free")) for g in data["generators"])
        rules = [
            RewriteRule(parse_word(lhs, alphabet), NCPoly.from_json(rhs, alphabet))
            for lhs, rhs in data["rules"]
        ]
        return cls(data.get("label", "custom"), alphabet, tuple(rules))


def normal_form(p: NCPoly, pres: Presentation) -> NCPoly:
    return pres.normal_form(p)


def is_zero_mod(p: NCPoly, pres: Presentation) -> bool:
    return pres.is_zero(p)


# ---------------------------------------------------------------------------
# built-in presentations
# ---------------------------------------------------------------------------

def _rule(alphabet: Alphabet, lhs, rhs: NCPoly) -> RewriteRule:
    return RewriteRule(parse_word(lhs, alphabet), rhs)


def circle() -> Presentation:
    """C(S^1): one unitary z."""
    A = Alphabet.of(["z"])
    one = NCPoly.const(A)
    return Presentation("Circle", A, (
        _rule(A, "z z*", one),
        _rule(A, "z* z", one),
    ))


def free_sphere() -> Presentation:
    """C*(x, y | x = x*, y = y*, x^2 + y^2 = 1), oriented y^2 -> 1 - x^2.

    The overlap y y y forces x^2 to commute with y; that consequence is added
    as y x x -> x x y so the system is confluent.
    """
    A = Alphabet.of([("x", "self"), ("y", "self")])
    x = NCPoly.gen(A, "x")
    return Presentation("FreeSphere", A, (
        _rule(A, "y y", 1 - x * x),
        _rule(A, "y x x", NCPoly.word(A, "x x y")),
    ))


def theta_sphere(n: int, theta) -> Presentation:
    """Odd theta-sphere on z_1..z_n with root-of-unity phases.

    ``theta`` is an n x n antisymmetric matrix of rationals; the phase of the
    pair j < k is exp(2 pi i theta[j][k]) and z_k z_j = phase * z_j z_k.
    """
    if n < 1:
        raise ValueError("theta_sphere needs n >= 1")
    th = [[Fraction(theta[j][k]) for k in range(n)] for j in range(n)]
    for j in range(n):
        for k in range(n):
            if th[j][k] != -th[k][j]:
                raise ValueError("theta must be antisymmetric")
    names = [f"z{j + 1}" for j in range(n)]
    A = Alphabet.of(names)

    def phase(j: int, k: int) -> Cyclotomic:
        q = th[j][k]
        return root_of_unity(q.denominator, q.numerator)

    rules = []
    for k in range(n):
        for j in range(k):
            lam = phase(j, k)
            zj, zk = names[j], names[k]
            rules.append(_rule(A, f"{zk} {zj}", NCPoly.word(A, f"{zj} {zk}", lam)))
            rules.append(_rule(A, f"{zk} {zj}*", NCPoly.word(A, f"{zj}* {zk}", lam.conj())))
            rules.append(_rule(A, f"{zk}* {zj}", NCPoly.word(A, f"{zj} {zk}*", lam.conj())))
            rules.append(_rule(A, f"{zk}* {zj}*", NCPoly.word(A, f"{zj}* {zk}*", lam)))
    for j in range(n):
        z = names[j]
        rules.append(_rule(A, f"{z} {z}*", NCPoly.word(A, f"{z}* {z}")))
    last = names[-1]
    rhs = NCPoly.const(A)
    for z in names[:-1]:
        rhs = rhs - NCPoly.word(A, f"{z}* {z}")
    rules.append(_rule(A, f"{last}* {last}", rhs))
    label = f"ThetaSphere({n})"
    return Presentation(label, A, tuple(rules))


def cyclic_group(k: int, name: str = "mu") -> Presentation:
    """C*(Z/kZ): a unitary mu with mu^k = 1."""
    if k < 2:
        raise ValueError("CyclicGroup needs k >= 2")
    A = Alphabet.of([name])
    return Presentation(f"CyclicGroup({k})", A, (
        _rule(A, [name + "*"], NCPoly(A, {(name,) * (k - 1): 1})),
        _rule(A, [name] * k, NCPoly.const(A)),
    ))


def clock_shift(k: int) -> Presentation:
    """M_k(C) generated by clock V and shift W with W V = conj(omega) V W."""
    if k < 2:
        raise ValueError("ClockShift needs k >= 2")
    A = Alphabet.of(["V", "W"])
    one = NCPoly.const(A)
    return Presentation(f"ClockShift({k})", A, (
        _rule(A, ["V*"], NCPoly(A, {("V",) * (k - 1): 1})),
        _rule(A, ["W*"], NCPoly(A, {("W",) * (k - 1): 1})),
        _rule(A, ["V"] * k, one),
        _rule(A, ["W"] * k, one),
        _rule(A, "W V", NCPoly.word(A, "V W", root_of_unity(k, -1))),
    ))


def clopen_product(k: int) -> Presentation:
    """C(Z/k x ({0} u mu_k)): unitary u of order k and w with w^(k+1) = w, commuting."""
    if k < 2:
        raise ValueError("ClopenProduct needs k >= 2")
    A = Alphabet.of(["u", "w"])
    return Presentation(f"ClopenProduct({k})", A, (
        _rule(A, ["u*"], NCPoly(A, {("u",) * (k - 1): 1})),
        _rule(A, ["w*"], NCPoly(A, {("w",) * (k - 1): 1})),
        _rule(A, ["u"] * k, NCPoly.const(A)),
        _rule(A, ["w"] * (k + 1), NCPoly.gen(A, "w")),
        _rule(A, "w u", NCPoly.word(A, "u w")),
    ))


BUILTINS = {
    "Circle": circle,
    "FreeSphere": free_sphere,
    "ThetaSphere": theta_sphere,
    "CyclicGroup": cyclic_group,
    "ClockShift": clock_shift,
    "ClopenProduct": clopen_product,
}


def builtin_presentation(name: str, **params) -> Presentation:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown presentation {name!r}; choose from {sorted(BUILTINS)}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise ValueError(f"invalid parameters for {name}: {exc}") from None


# ---------------------------------------------------------------------------
# random elements (used by property tests and soundness scripts)
# ---------------------------------------------------------------------------

def random_scalar(rng: random.Random, path: bool = False, conductor: int = 4) -> PathScalar:
    q = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    c = PathScalar.constant(q)
    if conductor > 1 and rng.random() < 0.3:
        c = c * root_of_unity(conductor, rng.randrange(conductor))
    if path:
        c = c * PathScalar.t() ** rng.randint(0, 2)
        if rng.random() < 0.5:
            c = c * PathScalar.s()
    return c


def random_word(pres: Presentation, rng: random.Random, max_degree: int = 6) -> Word:
    letters = pres.alphabet.letters()
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_degree)))


def random_poly(
    pres: Presentation,
    rng: random.Random,
    max_degree: int = 6,
    max_terms: int = 4,
    path: bool = False,
) -> NCPoly:
    out = NCPoly(pres.alphabet)
    for _ in range(rng.randint(1, max_terms)):
        out._acc(random_word(pres, rng, max_degree), random_scalar(rng, path))
    return out
