"""Freeness, rank and winding obstructions.

The quotient A/I by the beta-coinvariant ideal is never built; ranks are read
off in a representation on which beta acts trivially (evaluation at fixed
points), which is all the rank comparison consumes.  The winding obstruction
for the circle is an elementary determinant-degree argument standing in for a
K-theory computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Sequence

import numpy as np

from .actions import CyclicAction, action_apply
from .crossed import CrossedPresentation, expand_matrix
from .ncpoly import NCPoly, Presentation
from .oracle import Representation, op_norm

RANK_BAND = 0.1
PROJECTION_TOL = 1e-8


class IllConditionedProjection(ValueError):
    pass


class InsufficientSampling(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# finite-dimensional *-algebras
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class FiniteDimAlgebra:
    """Structure constants e_i e_j = sum_l mult[i, j, l] e_l; star(v) = star_mat @ conj(v)."""

    mult: np.ndarray
    unit: np.ndarray
    star_mat: np.ndarray
    action: np.ndarray
    k: int
    label: str = "algebra"
    tol: float = 1e-9

    def __post_init__(self):
        self.mult = np.asarray(self.mult, dtype=complex)
        self.unit = np.asarray(self.unit, dtype=complex)
        self.star_mat = np.asarray(self.star_mat, dtype=complex)
        self.action = np.asarray(self.action, dtype=complex)
        n = self.dim
        if self.mult.shape != (n, n, n) or self.star_mat.shape != (n, n) or self.action.shape != (n, n):
            raise ValueError("inconsistent structure tensor shapes")
        self._check()

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijl->l", u, v, self.mult)

    def star(self, v: np.ndarray) -> np.ndarray:
        return self.star_mat @ np.conj(v)

    def left_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of v -> u v."""
        return np.einsum("i,ijl->lj", u, self.mult)

    def right_matrix(self, u: np.ndarray) -> np.ndarray:
        return np.einsum("j,ijl->li", u, self.mult)

    def _check(self) -> None:
        m, n, tol = self.mult, self.dim, self.tol
        # (e_i e_j) e_l versus e_i (e_j e_l)
        left = np.einsum("ijp,plq->ijlq", m, m)
        right = np.einsum("jlp,ipq->ijlq", m, m)
        if np.abs(left - right).max() > tol:
            raise ValueError(f"{self.label}: multiplication is not associative")
        eye = np.eye(n)
        if np.abs(self.left_matrix(self.unit) - eye).max() > tol or np.abs(self.right_matrix(self.unit) - eye).max() > tol:
            raise ValueError(f"{self.label}: unit is not a two-sided identity")
        S = self.star_mat
        if np.abs(S @ np.conj(S) - eye).max() > tol:
            raise ValueError(f"{self.label}: star is not an involution")
        lhs = np.einsum("ql,ijl->ijq", S, np.conj(m))
        rhs = np.einsum("aj,bi,abq->ijq", S, S, m)
        if np.abs(lhs - rhs).max() > tol:
            raise ValueError(f"{self.label}: star is not anti-multiplicative")
        A = self.action
        if np.abs(np.linalg.matrix_power(A, self.k) - eye).max() > tol:
            raise ValueError(f"{self.label}: action matrix does not have order dividing {self.k}")
        Am = np.einsum("ql,ijl->ijq", A, m)
        mA = np.einsum("ia,jb,abq->ijq", A.T, A.T, m)
        if np.abs(Am - mA).max() > tol:
            raise ValueError(f"{self.label}: action is not multiplicative")

    # constructors -----------------------------------------------------------
    @classmethod
    def from_matrix_basis(cls, basis: Sequence[np.ndarray], action: Callable[[np.ndarray], np.ndarray],
                          k: int, label: str = "matrix algebra") -> FiniteDimAlgebra:
        """Structure constants of a *-closed span of matrices, by least squares."""
        B = np.array([np.asarray(b, dtype=complex).ravel() for b in basis]).T
        n = B.shape[1]
        coords = lambda m: np.linalg.lstsq(B, np.asarray(m).ravel(), rcond=None)[0]  # noqa: E731
        mult = np.zeros((n, n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                mult[i, j] = coords(basis[i] @ basis[j])
        d = basis[0].shape[0]
        unit = coords(np.eye(d))
        star_cols = [coords(np.asarray(b).conj().T) for b in basis]
        # star(sum v_i b_i) = sum conj(v_i) b_i^*
        star_mat = np.array(star_cols).T
        act = np.array([coords(action(np.asarray(b))) for b in basis]).T
        return cls(mult, unit, star_mat, act, k, label)

    @classmethod
    def functions(cls, npoints: int, perm: Sequence[int], k: int, label: str = "C(X)") -> FiniteDimAlgebra:
        """C(X) on indicator functions; (alpha f)(x) = f(perm^-1 x)."""
        n = npoints
        mult = np.zeros((n, n, n))
        for i in range(n):
            mult[i, i, i] = 1
        act = np.zeros((n, n))
        for x in range(n):
            act[perm[x], x] = 1  # indicator of x goes to indicator of perm(x)
        return cls(mult, np.ones(n), np.eye(n), act, k, label)

    @classmethod
    def from_presentation(cls, pres: Presentation, action: CyclicAction, max_degree: int = 32,
                          label: str | None = None) -> FiniteDimAlgebra:
        """Use irreducible words as a basis; requires finitely many of them."""
        from .ncpoly import NCPoly as _P

        letters = [a for a in pres.alphabet.letters() if pres.is_irreducible((a,))]
        basis: List[tuple] = [()]
        frontier = [()]
        for _ in range(max_degree):
            nxt = []
            for w in frontier:
                for a in letters:
                    v = w + (a,)
                    if pres.is_irreducible(v):
                        nxt.append(v)
            if not nxt:
                break
            basis.extend(nxt)
            frontier = nxt
        else:
            raise ValueError(f"{pres.label}: irreducible words do not stop by degree {max_degree}")
        index = {w: i for i, w in enumerate(basis)}
        n = len(basis)

        def vec(p: _P) -> np.ndarray:
            out = np.zeros(n, dtype=complex)
            for w, c in pres.normal_form(p).terms.items():
                out[index[w]] = complex(c.constant_value())
            return out

        mono = [_P(pres.alphabet, {w: 1}) for w in basis]
        mult = np.array([[vec(a * b) for b in mono] for a in mono])
        unit = vec(pres.one())
        star_mat = np.array([vec(m.star()) for m in mono]).T
        act = np.array([vec(action_apply(action, 1, m)) for m in mono]).T
        return cls(mult, unit, star_mat, act, action.k, label or pres.label)


def _null_space(M: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    u, s, vh = np.linalg.svd(M)
    rank = int((s > tol * max(1.0, s.max() if s.size else 0)).sum())
    return vh[rank:].conj().T


def _span(vectors: Sequence[np.ndarray], tol: float = 1e-9) -> np.ndarray:
    if not vectors:
        return np.zeros((0, 0))
    M = np.array(vectors).T
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    rank = int((s > tol * max(1.0, s.max())).sum())
    return u[:, :rank]


@dataclass
class SaturationEntry:
    gamma: int
    isotypic_dim: int
    product_span_dim: int
    unit_residual: float
    contains_unit: bool
    ideal_is_whole: bool

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "isotypic_dim": self.isotypic_dim,
            "product_span_dim": self.product_span_dim,
            "unit_residual": self.unit_residual,
            "contains_unit": self.contains_unit,
            "ideal_is_whole": self.ideal_is_whole,
        }


@dataclass
class SaturationResult:
    entries: List[SaturationEntry]

    @property
    def free(self) -> bool:
        return all(e.contains_unit for e in self.entries)

    def to_json(self) -> dict:
        return {"free": self.free, "entries": [e.to_json() for e in self.entries]}


def isotypic_basis(A: FiniteDimAlgebra, gamma: int) -> np.ndarray:
    lam = np.exp(2j * np.pi * gamma / A.k)
    return _null_space(A.action - lam * np.eye(A.dim))


def saturation_check(A: FiniteDimAlgebra, tol: float = 1e-9) -> SaturationResult:
    """For each gamma: does span(A_gamma A_gamma^*) contain the unit?"""
    entries = []
    n = A.dim
    for gamma in range(A.k):
        Q = isotypic_basis(A, gamma)
        Qs = A.star_mat @ np.conj(Q)
        prods = np.einsum("ai,bj,abq->ijq", Q, Qs, A.mult).reshape(-1, n)
        span = _span(list(prods), tol)
        if span.size:
            resid = float(np.linalg.norm(A.unit - span @ (span.conj().T @ A.unit)))
            left = np.einsum("ajl,jm->alm", A.mult, span)
            two_sided = np.einsum("alm,lbq->abmq", left, A.mult).reshape(-1, n)
            ideal_dim = _span(list(two_sided), tol).shape[1]
        else:
            resid, ideal_dim = float(np.linalg.norm(A.unit)), 0
        entries.append(SaturationEntry(
            gamma, Q.shape[1], span.shape[1] if span.size else 0, resid,
            bool(resid <= 1e-8 * max(1.0, np.linalg.norm(A.unit))), ideal_dim == n,
        ))
    return SaturationResult(entries)


# ---------------------------------------------------------------------------
# sampled paths and ranks
# ---------------------------------------------------------------------------

@dataclass
class PathSample:
    t_grid: List[float]
    values: list
    kind: str = "projection"  # projection | unitary | hom-image
    lipschitz_bound: float | None = None

    def __post_init__(self):
        if len(self.t_grid) != len(self.values):
            raise ValueError("grid and values differ in length")
        if any(b <= a for a, b in zip(self.t_grid, self.t_grid[1:])):
            raise ValueError("t-grid must be strictly increasing")
        if any(t < 0 or t > 1 for t in self.t_grid):
            raise ValueError("t-grid must lie in [0, 1]")


@dataclass
class RankPathResult:
    ranks: List[int]
    constant: bool
    start_rank: int
    end_rank: int
    min_gap: float
    lipschitz_violations: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lipschitz_violations": list(self.lipschitz_violations),
            "ranks": self.ranks,
            "constant": self.constant,
            "start_rank": self.start_rank,
            "end_rank": self.end_rank,
            "min_gap": self.min_gap,
        }


def projection_rank(P: np.ndarray, tol: float = PROJECTION_TOL) -> tuple:
    P = np.asarray(P, dtype=complex)
    if op_norm(P - P.conj().T) > tol or op_norm(P @ P - P) > tol:
        raise ValueError("matrix is not a projection within tolerance")
    ev = np.linalg.eigvalsh((P + P.conj().T) / 2)
    gap = float(np.min(np.abs(ev - 0.5))) if ev.size else 0.5
    if gap < RANK_BAND:
        raise IllConditionedProjection(f"eigenvalue within {RANK_BAND} of 1/2 (gap {gap:.3g})")
    return int((ev > 0.5).sum()), gap


def projection_rank_path(p: PathSample, tol: float = PROJECTION_TOL) -> RankPathResult:
    if p.kind != "projection":
        raise ValueError("projection_rank_path needs a path of projections")
    ranks, gaps = [], []
    for t, P in zip(p.t_grid, p.values):
        try:
            r, g = projection_rank(P, tol)
        except IllConditionedProjection as exc:
            raise IllConditionedProjection(f"at t={t}: {exc}") from None
        ranks.append(r)
        gaps.append(g)
    violations = []
    if p.lipschitz_bound is not None:
        for i in range(len(p.t_grid) - 1):
            dt = p.t_grid[i + 1] - p.t_grid[i]
            jump = op_norm(np.asarray(p.values[i + 1]) - np.asarray(p.values[i]))
            if jump > p.lipschitz_bound * dt + 1e-9:
                violations.append(f"|P({p.t_grid[i + 1]:.4g}) - P({p.t_grid[i]:.4g})| = {jump:.3g} > {p.lipschitz_bound} * {dt:.3g}")
    return RankPathResult(ranks, len(set(ranks)) == 1, ranks[0], ranks[-1], min(gaps), violations)


def averaging_projection(k: int) -> np.ndarray:
    """T = (1/k) sum_n S^n for the cyclic shift S."""
    from .crossed import shift_matrix

    S = shift_matrix(k)
    return sum(np.linalg.matrix_power(S, n) for n in range(k)) / k


# ---------------------------------------------------------------------------
# order-k unitary paths
# ---------------------------------------------------------------------------

@dataclass
class OrderKVerdict:
    k: int
    phase: str
    rank_path: RankPathResult
    fixed_rep_invariant: bool
    notes: List[str] = field(default_factory=list)

    @property
    def start_rank(self) -> int:
        return self.rank_path.start_rank

    @property
    def end_rank(self) -> int:
        return self.rank_path.end_rank

    @property
    def contradiction(self) -> bool:
        return (self.start_rank - self.end_rank) % self.k != 0

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "u0_phase": self.phase,
            "start_rank": self.start_rank,
            "end_rank": self.end_rank,
            "start_rank_mod_k": self.start_rank % self.k,
            "end_rank_mod_k": self.end_rank % self.k,
            "rank_path": self.rank_path.to_json(),
            "fixed_rep_beta_invariant": self.fixed_rep_invariant,
            "contradiction": self.contradiction,
            "notes": list(self.notes),
        }


def _exact_at(p: NCPoly, t: float) -> NCPoly | None:
    if t in (0, 1):
        return p.at_endpoint(int(t))
    return None


def order_k_obstruction(u: PathSample, cp: CrossedPresentation, fixed_rep: Representation,
                        tol: float = 1e-9) -> OrderKVerdict:
    """Push P_t = (1/k) sum v_t^n through E into a beta-fixed representation and compare ranks."""
    k = cp.k
    full = cp.full
    if u.t_grid[0] != 0:
        raise PreconditionError("path must start at t = 0")
    u0 = full.normal_form(_exact_at(u.values[0], 0))
    words = list(u0.terms)
    if words != [(cp.mu,)]:
        raise PreconditionError(f"u_0 = {u0} is not a scalar multiple of {cp.mu}")
    c = u0.terms[(cp.mu,)].constant_value()
    if c ** k != 1:
        raise PreconditionError(f"u_0 phase {c} is not a k-th root of unity")
    c_inv = c.conj()

    notes = []
    invariant = True
    for g in cp.base.alphabet.names:
        img = action_apply(cp.beta, 1, cp.base.gen(g))
        if op_norm(fixed_rep.evaluate(img) - fixed_rep.evaluate(cp.base.gen(g))) > tol:
            invariant = False
    if not invariant:
        notes.append("fixed representation is not beta-invariant; properness of I is not witnessed")

    projections = []
    for t, ut in zip(u.t_grid, u.values):
        exact = _exact_at(ut, t)
        v = full.normal_form(ut).scale(c_inv)
        if exact is not None:
            if not full.is_zero(exact ** k - 1):
                raise PreconditionError(f"u_t^k != 1 at t={t}")
        P = full.one()
        vn = full.one()
        for _ in range(1, k):
            vn = full.normal_form(vn * v)
            P = P + vn
        P = P.scale(Fraction(1, k))
        M = expand_matrix(cp, P).evaluate(fixed_rep, t)
        Uk = expand_matrix(cp, v).evaluate(fixed_rep, t)
        if op_norm(np.linalg.matrix_power(Uk, k) - np.eye(Uk.shape[0])) > 1e-8:
            raise PreconditionError(f"u_t^k != 1 numerically at t={t}")
        projections.append(M)
    rp = projection_rank_path(PathSample(list(u.t_grid), projections, "projection"))
    if not rp.constant:
        notes.append("rank changes along the sampled path: no continuous projection path joins these samples")
    return OrderKVerdict(k, str(c), rp, invariant, notes)


# ---------------------------------------------------------------------------
# winding numbers
# ---------------------------------------------------------------------------

def winding_number(loop: Sequence[np.ndarray]) -> int:
    """Degree of t -> det(u_t) around a closed sampled loop."""
    dets = [complex(np.linalg.det(np.atleast_2d(np.asarray(u, dtype=complex)))) for u in loop]
    if any(abs(d) < 1e-12 for d in dets):
        raise InsufficientSampling("determinant vanishes on the loop; not a loop of invertibles")
    total = 0.0
    n = len(dets)
    for i in range(n):
        step = math.atan2((dets[(i + 1) % n] / dets[i]).imag, (dets[(i + 1) % n] / dets[i]).real)
        if abs(step) >= math.pi - 1e-9:
            raise InsufficientSampling(f"determinant phase jumps by {step:.3f} between samples {i} and {i + 1}")
        total += step
    return int(round(total / (2 * math.pi)))


def circle_loop_points(n: int = 64) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def point_blocks(M: np.ndarray, k: int, d: int) -> List[np.ndarray]:
    """Split a k*d block matrix over a diagonal d-dim representation into d blocks of size k."""
    return [M[p::d, p::d] for p in range(d)]
