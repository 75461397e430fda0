"""Explicit algebras, join elements and certificates used by the scenarios."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

import numpy as np

from .actions import CyclicAction, antipodal, conjugation, phase_action
from .certificates import Certificate, SampledSegment, SymbolicSegment
from .crossed import CrossedPresentation, MatrixOverAlg, crossed_presentation, expand_matrix
from .homs import GenHom
from .ncpoly import NCPoly, Presentation, circle, clock_shift, clopen_product, free_sphere
from .obstructions import PathSample
from .oracle import Representation, circle_points, clock_shift_defining
from .scalars import I, PathScalar, sqrt2_inverse

T = PathScalar.t()
S = PathScalar.s()


@dataclass(eq=False)
class JoinSetting:
    base: Presentation
    alpha: CyclicAction
    beta: CyclicAction
    cp: CrossedPresentation
    phi: GenHom
    elements: Dict[str, NCPoly]


def real_imag_parts(p: NCPoly) -> tuple:
    """x = (p + p*)/2 and y = (p - p*)/(2i)."""
    half = Fraction(1, 2)
    x = (p + p.star()).scale(half)
    y = (p - p.star()).scale(-I * half)
    return x, y


def circle_join() -> JoinSetting:
    """phi(z) = t z + i s mu in the twisted join of the circle under conjugation."""
    C = circle()
    alpha, beta = antipodal(C), conjugation(C)
    cp = crossed_presentation(C, beta, 2)
    z, mu = cp.full.gen("z"), cp.mu_poly()
    x, y = real_imag_parts(z)
    a_t = x.scale(T)
    b_t = y.scale(T) + mu.scale(S)
    f = a_t + b_t.scale(I)
    phi = GenHom(C, cp.full, {"z": f}, "phi")
    return JoinSetting(C, alpha, beta, cp, phi, {"f": f, "a_t": a_t, "b_t": b_t})


def sphere_join(scale=None) -> JoinSetting:
    """phi(x) = t x + (s/sqrt 2) mu, phi(y) = t y + (s/sqrt 2) mu on the free sphere."""
    F = free_sphere()
    alpha = antipodal(F)
    cp = crossed_presentation(F, alpha, 2)
    c = sqrt2_inverse() if scale is None else scale
    mu = cp.mu_poly()
    a_t = cp.full.gen("x").scale(T) + mu.scale(S * c)
    b_t = cp.full.gen("y").scale(T) + mu.scale(S * c)
    phi = GenHom(F, cp.full, {"x": a_t, "y": b_t}, "phi")
    return JoinSetting(F, alpha, alpha, cp, phi, {"a_t": a_t, "b_t": b_t})


def sphere_to_circle() -> tuple:
    """The quotient FreeSphere -> Circle with antipodal alpha and reflection/conjugation beta."""
    F, C = free_sphere(), circle()
    x, y = real_imag_parts(C.gen("z"))
    phi = GenHom(F, C, {"x": x, "y": y}, "quotient")
    return (phi,
            phase_action(F, 2, {"y": 1}, "reflection"), conjugation(C),
            antipodal(F), antipodal(C))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def strong_sphere_certificate(lipschitz: float = 3.2) -> Certificate:
    """Three segments on the free sphere ending at the point x = y = 1/sqrt 2.

    1. diag(a, R(a)) with R rotating by angle pi tau, using cos = 1 - 2t^2, sin = 2ts.
    2. E(phi_t(a)) along the sphere join, t running from 1 down to 0.
    3. Merge of the two eigenvalues of the shift into one point of the sphere.
    """
    F = free_sphere()
    x, y = F.gen("x"), F.gen("y")
    c2, s2 = 1 - 2 * T * T, 2 * T * S
    seg1 = SymbolicSegment({
        "x": MatrixOverAlg.diag(F, [x, x.scale(c2) + y.scale(s2)]),
        "y": MatrixOverAlg.diag(F, [y, x.scale(-s2) + y.scale(c2)]),
    }, lipschitz, "quarter", "rotation")

    setting = sphere_join()
    seg2 = SymbolicSegment({g: expand_matrix(setting.cp, p) for g, p in setting.phi.images.items()},
                           lipschitz, "quarter_reverse", "join path")

    r = sqrt2_inverse()
    c = (-c2 + s2) * r
    d = (-s2 - c2) * r

    def merge(coef):
        half = Fraction(1, 2)
        return MatrixOverAlg.scalar_matrix(F, [[(r + coef) * half, (r - coef) * half],
                                               [(r - coef) * half, (r + coef) * half]])

    seg3 = SymbolicSegment({"x": merge(c), "y": merge(d)}, lipschitz, "quarter", "two-point merge")
    return Certificate(2, [seg1, seg2, seg3], "strongly_contractible_mod_k", "free sphere, strong mod 2")


def swap_matrix(k: int) -> np.ndarray:
    P = np.zeros((k * k, k * k))
    for i in range(k):
        for j in range(k):
            P[j * k + i, i * k + j] = 1
    return P


def matrix_algebra_certificate(k: int, samples: int = 101) -> tuple:
    """U_t = exp(i pi t P_-) with P_- the antisymmetric projection, conjugating 1 (x) M into M (x) 1."""
    pres = clock_shift(k)
    rep = clock_shift_defining(pres, k)
    swap = swap_matrix(k)
    Pm = (np.eye(k * k) - swap) / 2
    grid = [i / (samples - 1) for i in range(samples)]
    values = []
    for t in grid:
        U = np.eye(k * k) + (np.exp(1j * math.pi * t) - 1) * Pm
        values.append({g: U @ np.kron(np.eye(k), rep.assign[g]) @ U.conj().T for g in pres.alphabet.names})
    seg = SampledSegment(grid, values, 2 * math.pi, 0, "swap rotation")
    return pres, rep, Certificate(k, [seg], "contractible_mod_k", f"M_{k} swap path")


def circle_candidates(k: int, npoints: int = 32) -> tuple:
    """Candidate paths for the circle, each of which must be rejected."""
    C = circle()
    pts = np.exp(2j * np.pi * np.arange(npoints) / npoints)
    rep = circle_points(C, pts)
    z, zs, one = C.gen("z"), C.gen("z*"), C.one()
    zero = C.zero()
    cands = []

    cands.append(Certificate(k, [SymbolicSegment(
        {"z": MatrixOverAlg.diag(C, [z.scale(1 - T) + one.scale(T)] * k)}, 2.0, "linear", "straight line")],
        label="straight line to 1"))

    rows = [[zero] * k for _ in range(k)]
    rows[0][0], rows[0][1] = z.scale(T), one.scale(S)
    rows[1][0], rows[1][1] = one.scale(-S), zs.scale(T)
    for i in range(2, k):
        rows[i][i] = z
    cands.append(Certificate(k, [SymbolicSegment({"z": MatrixOverAlg(C, rows)}, 2.0, "quarter_reverse",
                                                 "twisted rotation")], label="twisted rotation"))

    grid = [i / 20 for i in range(21)]
    Z = rep.assign["z"]
    values = [{"z": np.kron(np.eye(k), Z) if t < 0.5 else np.eye(k * npoints, dtype=complex)} for t in grid]
    cands.append(Certificate(k, [SampledSegment(grid, values, 1.0, 0, "jump")], label="sampled jump"))

    phase = 1 - 2 * T * T + I * 2 * T * S  # exp(i pi tau) under t = sin(pi tau / 2)
    cands.append(Certificate(k, [SymbolicSegment(
        {"z": MatrixOverAlg.diag(C, [z.scale(phase)] * k)}, 3.2, "quarter", "phase slide")],
        label="phase slide"))
    return C, rep, cands


# ---------------------------------------------------------------------------
# the clopen-fixed-set setting
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ClopenSetting:
    pres: Presentation
    alpha: CyclicAction
    beta: CyclicAction
    cp: CrossedPresentation
    fixed_rep: Representation
    endpoints: PathSample


def clopen_setting(k: int) -> ClopenSetting:
    """X = Z/k x ({0} u mu_k); alpha rotates Z/k freely, beta rotates mu_k and fixes 0.

    u_0 = mu and u_1 = u are the endpoints an (alpha, alpha~)-equivariant map
    from C(Z/k) would have to join.
    """
    P = clopen_product(k)
    alpha = phase_action(P, k, {"u": 1}, "alpha")
    beta = phase_action(P, k, {"w": 1}, "beta")
    cp = crossed_presentation(P, beta, k)
    fixed = Representation(P, {"u": np.eye(1), "w": np.zeros((1, 1))}, label="point (u=1, w=0)")
    ends = PathSample([0.0, 1.0], [cp.mu_poly(), cp.lift(P.gen("u"))], "unitary")
    return ClopenSetting(P, alpha, beta, cp, fixed, ends)


def synthetic_rank_jump(n: int = 11) -> List[PathSample]:
    """Two sampled projection paths that change rank; both must be rejected."""
    P0, P1 = np.diag([1.0, 0.0]), np.eye(2)
    grid = [i / (n - 1) for i in range(n)]
    jump = PathSample(grid, [P0 if t < 0.5 else P1 for t in grid], "projection", lipschitz_bound=1.0)
    blend = PathSample(grid, [(1 - t) * P0 + t * P1 for t in grid], "projection")
    return [jump, blend]
