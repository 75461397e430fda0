"""Exact scalars: cyclotomic rationals extended by path parameters t and s.

A :class:`Cyclotomic` is an element of Q(zeta_N) stored in the power basis
1, zeta, ..., zeta^(phi(N)-1) and reduced modulo the N-th cyclotomic
polynomial.  A :class:`PathScalar` is a polynomial in two commuting
parameters t and s with cyclotomic coefficients, subject to s^2 = 1 - t^2;
s is evaluated on the branch s = +sqrt(1 - t^2).
"""

from __future__ import annotations

import cmath
import math
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

DEFAULT_CONDUCTOR_MAX = 64


class ConductorOverflow(ValueError):
    """Raised when a phase would need a cyclotomic field beyond the bound."""


def conductor_bound() -> int:
    return int(os.environ.get("NCBU_CONDUCTOR_MAX", DEFAULT_CONDUCTOR_MAX))


def _check_conductor(n: int) -> None:
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    bound = conductor_bound()
    if n > bound:
        raise ConductorOverflow(f"conductor {n} exceeds bound {bound}")


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        den = cyclotomic_polynomial(d)
        num = _poly_divexact(num, list(den))
    return tuple(num)


def _poly_divexact(num: list, den: list) -> list:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert not any(num), "inexact cyclotomic division"
    return out


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Coordinates of x^m mod Phi_n for 0 <= m < max(n, 2*phi(n) - 1)."""
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    size = max(n, 2 * deg - 1)
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(size):
        rows.append(tuple(cur))
        # multiply by x, then fold x^deg = -sum c_i x^i
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * phi_poly[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce(n: int, raw: list) -> Tuple[Fraction, ...]:
    table = _power_table(n)
    deg = len(table[0])
    out = list(raw[:deg]) + [Fraction(0)] * max(0, deg - len(raw))
    for m in range(deg, len(raw)):
        c = raw[m]
        if c:
            row = table[m]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


Rational = Union[int, Fraction]


class Cyclotomic:
    """Exact element of Q(zeta_N).  Rational values always use N = 1."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords: Iterable[Rational]):
        coords = tuple(Fraction(c) for c in coords)
        if conductor > 1 and not any(coords[1:]):
            conductor, coords = 1, coords[:1]
        self.conductor = conductor
        self.coords = coords

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, q: Rational) -> Cyclotomic:
        return cls(1, (Fraction(q),))

    @classmethod
    def coerce(cls, x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # structure ------------------------------------------------------------
    def lift(self, n: int) -> Cyclotomic:
        """Re-express in Q(zeta_n); requires conductor | n."""
        if n == self.conductor:
            return self
        if n % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {n}")
        _check_conductor(n)
        step = n // self.conductor
        raw = [Fraction(0)] * ((len(self.coords) - 1) * step + 1)
        for j, c in enumerate(self.coords):
            raw[j * step] = c
        out = Cyclotomic.__new__(Cyclotomic)
        out.conductor = n
        out.coords = _reduce(n, raw)
        return out

    def _common(self, other: Cyclotomic) -> Tuple[Cyclotomic, Cyclotomic]:
        if self.conductor == other.conductor:
            return self, other
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> Cyclotomic:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return Cyclotomic(1, (self.coords[0] + other.coords[0],))
        a, b = self._common(other)
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.conductor, [-c for c in self.coords])

    def __sub__(self, other) -> Cyclotomic:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Cyclotomic:
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other) -> Cyclotomic:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if other.conductor == 1:
            q = other.coords[0]
            return Cyclotomic(self.conductor, [c * q for c in self.coords])
        if self.conductor == 1:
            q = self.coords[0]
            return Cyclotomic(other.conductor, [c * q for c in other.coords])
        a, b = self._common(other)
        raw = [Fraction(0)] * (len(a.coords) + len(b.coords) - 1)
        for i, x in enumerate(a.coords):
            if not x:
                continue
            for j, y in enumerate(b.coords):
                if y:
                    raw[i + j] += x * y
        return Cyclotomic(a.conductor, _reduce(a.conductor, raw))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Cyclotomic:
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> Cyclotomic:
        n = self.conductor
        if n == 1:
            return self
        raw = [Fraction(0)] * n
        for j, c in enumerate(self.coords):
            raw[(-j) % n] += c
        return Cyclotomic(n, _reduce(n, raw))

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse by solving the multiplication-matrix system."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        n = self.conductor
        if n == 1:
            return Cyclotomic.rational(1 / self.coords[0])
        deg = len(self.coords)
        basis = [Cyclotomic(n, [int(i == j) for i in range(deg)]) for j in range(deg)]
        # columns: coords of self * zeta^j
        cols = [(self * b).lift(n).coords for b in basis]
        rows = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        sol = _solve_fraction(rows)
        return Cyclotomic(n, sol)

    def __truediv__(self, other) -> Cyclotomic:
        other = Cyclotomic.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> Cyclotomic:
        return Cyclotomic.coerce(other) * self.inverse()

    # comparison -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return a.coords == b.coords

    __hash__ = None  # equality crosses conductors; no canonical hash

    # evaluation -------------------------------------------------------------
    def __complex__(self) -> complex:
        n = self.conductor
        return sum(
            (float(c) * _unit_root(n, j) for j, c in enumerate(self.coords) if c),
            0j,
        )

    def __repr__(self) -> str:
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coords]})"

    def __str__(self) -> str:
        return format_scalar(PathScalar.constant(self))


@lru_cache(maxsize=4096)
def _unit_root(n: int, j: int) -> complex:
    return cmath.exp(2j * math.pi * j / n)


def _solve_fraction(rows: list) -> list:
    n = len(rows)
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def root_of_unity(n: int, j: int = 1) -> Cyclotomic:
    """zeta_n^j in reduced power-basis coordinates."""
    if n < 1:
        raise ValueError("root_of_unity needs n >= 1")
    _check_conductor(n)
    j %= n
    if n == 1:
        return Cyclotomic.rational(1)
    return Cyclotomic(n, _power_table(n)[j])


def sqrt2_inverse() -> Cyclotomic:
    """1/sqrt(2) = (zeta_8 + zeta_8^-1) / 2."""
    return (root_of_unity(8, 1) + root_of_unity(8, 7)) * Fraction(1, 2)


I = root_of_unity(4, 1)


# ---------------------------------------------------------------------------
# PathScalar
# ---------------------------------------------------------------------------

Monomial = Tuple[int, int]  # (t-degree, s-degree in {0, 1})


class PathScalar:
    """Polynomial in t and s = sqrt(1 - t^2) with cyclotomic coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Cyclotomic] | None = None):
        self.terms: Dict[Monomial, Cyclotomic] = {}
        for (a, b), c in (terms or {}).items():
            c = Cyclotomic.coerce(c)
            self._accumulate(a, b, c)

    def _accumulate(self, a: int, b: int, c: Cyclotomic) -> None:
        if b >= 2:
            # s^2 = 1 - t^2
            q, r = divmod(b, 2)
            # expand (1 - t^2)^q
            for i in range(q + 1):
                coef = math.comb(q, i) * (-1) ** i
                self._accumulate(a + 2 * i, r, c * coef)
            return
        key = (a, b)
        prev = self.terms.get(key)
        new = c if prev is None else prev + c
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    # constructors ----------------------------------------------------------
    @classmethod
    def constant(cls, c) -> PathScalar:
        c = Cyclotomic.coerce(c)
        out = cls()
        if not c.is_zero():
            out.terms[(0, 0)] = c
        return out

    @classmethod
    def coerce(cls, x) -> PathScalar:
        if isinstance(x, PathScalar):
            return x
        return cls.constant(x)

    @classmethod
    def t(cls) -> PathScalar:
        return cls({(1, 0): Cyclotomic.rational(1)})

    @classmethod
    def s(cls) -> PathScalar:
        return cls({(0, 1): Cyclotomic.rational(1)})

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_value(self) -> Cyclotomic:
        if not self.is_constant():
            raise ValueError(f"{format_scalar(self)} depends on t or s")
        return self.terms.get((0, 0), Cyclotomic.rational(0))

    def s_degree(self) -> int:
        return max((b for _, b in self.terms), default=0)

    # arithmetic --------------------------------------------------------------
    def __add__(self, other) -> PathScalar:
        try:
            other = PathScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = PathScalar()
        out.terms = dict(self.terms)
        for (a, b), c in other.terms.items():
            out._accumulate(a, b, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> PathScalar:
        out = PathScalar()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other) -> PathScalar:
        try:
            other = PathScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PathScalar:
        return PathScalar.coerce(other) - self

    def __mul__(self, other) -> PathScalar:
        try:
            other = PathScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = PathScalar()
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                out._accumulate(a1 + a2, b1 + b2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PathScalar:
        if e < 0:
            raise ValueError("negative powers of PathScalar are not supported")
        out = PathScalar.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def conj(self) -> PathScalar:
        out = PathScalar()
        out.terms = {k: c.conj() for k, c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        try:
            other = PathScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # evaluation --------------------------------------------------------------
    def __call__(self, t0: float) -> complex:
        return self.evaluate(t0)

    def evaluate(self, t0: float) -> complex:
        """Numeric value at t = t0, s = +sqrt(1 - t0^2)."""
        s0 = math.sqrt(max(0.0, 1.0 - t0 * t0))
        total = 0j
        for (a, b), c in self.terms.items():
            total += complex(c) * (t0 ** a) * (s0 ** b)
        return total

    def substitute(self, t, s) -> Cyclotomic:
        """Exact value with t and s replaced by cyclotomics (caller ensures t^2 + s^2 = 1)."""
        t = Cyclotomic.coerce(t)
        s = Cyclotomic.coerce(s)
        total = Cyclotomic.rational(0)
        for (a, b), c in self.terms.items():
            total = total + c * (t ** a) * (s ** b)
        return total

    def at_endpoint(self, t0: int) -> Cyclotomic:
        if t0 == 0:
            return self.substitute(0, 1)
        if t0 == 1:
            return self.substitute(1, 0)
        raise ValueError("exact endpoint evaluation only at t = 0 or t = 1")

    def __repr__(self) -> str:
        return f"PathScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


# ---------------------------------------------------------------------------
# text serialization:  p/q * zeta(N,j) * t^a * s^b  joined by " + "
# ---------------------------------------------------------------------------

def format_scalar(x: PathScalar | Cyclotomic) -> str:
    x = PathScalar.coerce(x)
    if x.is_zero():
        return "0"
    parts = []
    for (a, b) in sorted(x.terms):
        c = x.terms[(a, b)]
        for j, q in enumerate(c.coords):
            if not q:
                continue
            factors = [str(q)]
            if j:
                factors.append(f"zeta({c.conductor},{j})")
            if a:
                factors.append("t" if a == 1 else f"t^{a}")
            if b:
                factors.append("s")
            parts.append(" * ".join(factors))
    return " + ".join(parts)


_FACTOR = re.compile(
    r"\s*(?:"
    r"(?P<zeta>zeta\(\s*(?P<n>\d+)\s*,\s*(?P<j>-?\d+)\s*\))"
    r"|(?P<var>[ts])(?:\^(?P<exp>\d+))?"
    r"|(?P<i>i)"
    r"|(?P<num>-?\d+(?:/\d+)?)"
    r")\s*$"
)


def parse_scalar(text: str) -> PathScalar:
    """Inverse of :func:`format_scalar`; also accepts ``i``, ``-`` and bare factors."""
    text = str(text).strip()
    if not text:
        raise ValueError("empty scalar literal")
    # split into signed terms at top level (no nesting beyond zeta(...))
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith("*"):
            terms.append(cur)
            cur = "" if ch == "+" else "-"
            continue
        cur += ch
    terms.append(cur)

    total = PathScalar()
    for term in terms:
        term = term.strip()
        sign = 1
        while term.startswith("-") and not re.match(r"-\d", term):
            sign, term = -sign, term[1:].strip()
        value = PathScalar.constant(sign)
        for factor in term.split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad scalar factor {factor!r} in {text!r}")
            if m.group("zeta"):
                value = value * root_of_unity(int(m.group("n")), int(m.group("j")))
            elif m.group("var"):
                gen = PathScalar.t() if m.group("var") == "t" else PathScalar.s()
                value = value * gen ** int(m.group("exp") or 1)
            elif m.group("i"):
                value = value * I
            else:
                value = value * Fraction(m.group("num"))
        total = total + value
    return total
