"""Concrete matrix representations used as an independent numeric falsifier.

Agreement between a polynomial and its normal form in every representation
does not prove the rewriting engine correct; disagreement proves it wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence

import numpy as np

from .ncpoly import NCPoly, Presentation

CONSTRUCT_TOL = 1e-10


class RepresentationError(ValueError):
    pass


FROBENIUS_SHORTCUT = 1e-9


def op_norm(m: np.ndarray) -> float:
    """Operator norm; tiny matrices are bounded by their Frobenius norm instead of an SVD."""
    if m.size == 0:
        return 0.0
    fro = float(np.linalg.norm(m))
    if fro <= FROBENIUS_SHORTCUT:
        return fro
    return float(np.linalg.norm(m, 2))


def norm_at_most(m: np.ndarray, bound: float) -> bool:
    return float(np.linalg.norm(m)) <= bound or op_norm(m) <= bound


@dataclass(eq=False)
class Representation:
    pres: Presentation
    assign: Dict[str, np.ndarray]
    tol: float = CONSTRUCT_TOL
    label: str = "rep"
    _words: Dict[tuple, np.ndarray] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        alphabet = self.pres.alphabet
        mats = {}
        for g in alphabet.names:
            if g not in self.assign:
                raise RepresentationError(f"{self.label}: no matrix for generator {g}")
            mats[g] = np.asarray(self.assign[g], dtype=complex)
        dims = {m.shape for m in mats.values()}
        if len(dims) != 1 or any(a != b for a, b in dims):
            raise RepresentationError(f"{self.label}: generator matrices must be square and equal size")
        for letter in alphabet.letters():
            if letter.endswith("*"):
                mats[letter] = mats[letter[:-1]].conj().T
        self.assign = mats
        self.dim = next(iter(dims))[0]
        if math.isinf(self.tol):
            return
        residual = self.relation_residual()
        if residual > self.tol:
            raise RepresentationError(
                f"{self.label}: relation residual {residual:.3e} exceeds tol {self.tol:.1e}"
            )

    def word(self, w: tuple) -> np.ndarray:
        hit = self._words.get(w)
        if hit is None:
            if not w:
                hit = np.eye(self.dim, dtype=complex)
            else:
                hit = self.word(w[:-1]) @ self.assign[w[-1]]
            self._words[w] = hit
        return hit

    def evaluate(self, p: NCPoly, t0: float = 0.0) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for w, c in p.terms.items():
            out += c.evaluate(t0) * self.word(w)
        return out

    def relation_residual(self) -> float:
        worst = 0.0
        for g in self.pres.self_adjoint():
            m = self.assign[g]
            worst = max(worst, op_norm(m - m.conj().T))
        for rel in self.pres.relations():
            worst = max(worst, op_norm(self.evaluate(rel)))
        return worst


def rep_eval(r: Representation, p: NCPoly, t0: float = 0.0) -> np.ndarray:
    return r.evaluate(p, t0)


def oracle_compare(r: Representation, p: NCPoly, pres: Presentation | None = None,
                   grid: Iterable[float] = (0.0,)) -> float:
    """max over the grid of |eval(p) - eval(normal_form(p))|."""
    pres = pres or r.pres
    nf = pres.normal_form(p)
    return max(op_norm(r.evaluate(p, t) - r.evaluate(nf, t)) for t in grid)


def uniform_grid(n: int) -> list:
    return [i / (n - 1) for i in range(n)] if n > 1 else [0.0]


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------

def random_reflection(rng: np.random.Generator, dim: int) -> np.ndarray:
    """H = Q diag(+-1) Q* with Q from QR of a complex Gaussian matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, _ = np.linalg.qr(g)
    signs = rng.choice([-1.0, 1.0], size=dim)
    if dim > 1 and abs(signs.sum()) == dim:
        signs[0] = -signs[0]
    return q @ np.diag(signs) @ q.conj().T


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def circle_points(pres: Presentation, points: Sequence[complex]) -> Representation:
    """z -> diag(points); each point must lie on the unit circle."""
    gen = pres.alphabet.names[0]
    return Representation(pres, {gen: np.diag(np.asarray(points, dtype=complex))},
                          label=f"circle_points({len(points)})")


def free_sphere_random(pres: Presentation, seed: int = 0, theta0: float | None = None,
                       dim: int = 2, U: np.ndarray | None = None,
                       V: np.ndarray | None = None) -> Representation:
    """x -> cos(theta0) U, y -> sin(theta0) V with U, V self-adjoint unitaries."""
    rng = np.random.default_rng(seed)
    if theta0 is None:
        theta0 = float(rng.uniform(0.1, math.pi / 2 - 0.1))
    U = random_reflection(rng, dim) if U is None else np.asarray(U, dtype=complex)
    V = random_reflection(rng, dim) if V is None else np.asarray(V, dtype=complex)
    return Representation(pres, {"x": math.cos(theta0) * U, "y": math.sin(theta0) * V},
                          label=f"free_sphere_random(seed={seed})")


def _clock(n: int, power: int = 1) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * power * np.arange(n) / n))


def _shift(n: int) -> np.ndarray:
    """e_i -> e_(i+1)."""
    return np.roll(np.eye(n), 1, axis=0)


def theta_sphere_weyl(pres: Presentation, theta, seed: int = 0, blocks: int = 2) -> Representation:
    """Clock/shift realization: z_j = c_j W_j with W_k W_j = phase_jk W_j W_k.

    One tensor factor per pair j < k carries a shift (power = numerator of
    theta_jk in units of 1/N) on W_j and a clock on W_k.  Several blocks with
    different random weights c (|c|^2 summing to 1) are stacked.
    """
    from fractions import Fraction

    names = pres.alphabet.names
    n = len(names)
    th = [[Fraction(theta[j][k]) for k in range(n)] for j in range(n)]
    pairs = [(j, k) for k in range(n) for j in range(k)]
    factors = []
    for j, k in pairs:
        q = th[j][k]
        N = q.denominator
        # C X^m = zeta^m X^m C, want W_k W_j = zeta^m W_j W_k
        factors.append((j, k, N, q.numerator % N))
    W = [np.eye(1, dtype=complex) for _ in range(n)]
    for j, k, N, m in factors:
        for idx in range(n):
            if idx == j:
                f = np.linalg.matrix_power(_shift(N), m)
            elif idx == k:
                f = _clock(N)
            else:
                f = np.eye(N)
            W[idx] = np.kron(W[idx], f)
    rng = np.random.default_rng(seed)
    d = W[0].shape[0]
    out = {name: np.zeros((d * blocks, d * blocks), dtype=complex) for name in names}
    for b in range(blocks):
        c = rng.uniform(0.2, 1.0, size=n) * np.exp(2j * np.pi * rng.uniform(size=n))
        c /= np.linalg.norm(c)
        sl = slice(b * d, (b + 1) * d)
        for idx, name in enumerate(names):
            out[name][sl, sl] = c[idx] * W[idx]
    return Representation(pres, out, label=f"theta_sphere_weyl(seed={seed})")


def cyclic_shift(pres: Presentation, k: int) -> Representation:
    gen = pres.alphabet.names[0]
    return Representation(pres, {gen: _shift(k)}, label=f"cyclic_shift({k})")


def clock_shift_defining(pres: Presentation, k: int) -> Representation:
    return Representation(pres, {"V": _clock(k), "W": _shift(k)}, label=f"clock_shift({k})")


def crossed_expand(base_rep: Representation, cp) -> Representation:
    """Compose a base representation with the expansion map E."""
    from .crossed import expand_matrix

    assign = {}
    for g in cp.full.alphabet.names:
        assign[g] = expand_matrix(cp, cp.full.gen(g)).evaluate(base_rep)
    return Representation(cp.full, assign, label=f"crossed_expand({base_rep.label})")


def rep_builtin(kind: str, pres: Presentation, **params) -> Representation:
    kinds = {
        "circle_points": circle_points,
        "free_sphere_random": free_sphere_random,
        "theta_sphere_weyl": theta_sphere_weyl,
        "cyclic_shift": cyclic_shift,
        "clock_shift": clock_shift_defining,
    }
    if kind == "crossed_expand":
        return crossed_expand(params["base"], params["cp"])
    if kind not in kinds:
        raise ValueError(f"unknown representation kind {kind!r}")
    return kinds[kind](pres, **params)


def max_residual(reps: Iterable[Representation], p: NCPoly, grid: Sequence[float]) -> float:
    """Largest norm of p itself across representations and grid (p should vanish)."""
    return max(op_norm(r.evaluate(p, t)) for r in reps for t in grid)
