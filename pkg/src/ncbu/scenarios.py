"""Named, reproducible scenarios and the JSON scenario-file interpreter.

Every check declares whether it is expected to pass or fail; a scenario
passes when every observed outcome matches its expectation.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Sequence

import numpy as np

from .actions import (CyclicAction, action_apply, action_validate, actions_commute, antipodal,
                      conjugation, isotypic_project, phase_action, trivial)
from .certificates import certificate_verify
from .constructions import (circle_candidates, circle_join, clopen_setting, matrix_algebra_certificate,
                            sphere_join, sphere_to_circle, strong_sphere_certificate, synthetic_rank_jump)
from .crossed import beta_extended, combined_dual_action, crossed_presentation, dual_action
from .homs import GenHom, evaluate_hom, hom_compose, hom_equivariance_check, hom_validate, identity_hom, rotation
from .join import (JoinElement, boundary_check, induce_join_hom, join_hom_validate, join_map,
                   tilde_action, tilde_action_apply)
from .ncpoly import NCPoly, Presentation, builtin_presentation, circle, clock_shift, free_sphere
from .obstructions import (FiniteDimAlgebra, averaging_projection, order_k_obstruction,
                           point_blocks, projection_rank, projection_rank_path, saturation_check,
                           winding_number)
from .oracle import (Representation, circle_points, crossed_expand, free_sphere_random, op_norm,
                     oracle_compare, random_unitary, rep_builtin, uniform_grid)
from .scalars import PathScalar, root_of_unity
from .validation import ValidationReport

VERSION = "0.1.0"
POLYNOMIAL_PATH_NOTE = "join elements are polynomial paths in (t, s); continuity beyond that class is not modeled"
ORACLE_NOTE = "numeric representations falsify identities; agreement is evidence, not proof"


class ScenarioError(Exception):
    """Unknown scenario, unresolved reference or malformed scenario file."""


@dataclass
class Check:
    name: str
    ok: bool
    expect: bool = True
    detail: dict = field(default_factory=dict)

    @property
    def matches(self) -> bool:
        return self.ok == self.expect

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": "pass" if self.expect else "fail",
            "observed": "pass" if self.ok else "fail",
            "verdict": "match" if self.matches else "MISMATCH",
            "detail": self.detail,
        }


@dataclass
class Report:
    scenario: str
    params: dict
    checks: List[Check] = field(default_factory=list)
    oracle: dict = field(default_factory=dict)
    rewriting: dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    wall_clock: float = 0.0
    version: str = VERSION
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.matches for c in self.checks)

    def check(self, name: str) -> Check | None:
        return next((c for c in self.checks if c.name == name), None)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "version": self.version,
            "params": self.params,
            "passed": self.passed,
            "error": self.error,
            "checks": [c.to_json() for c in self.checks],
            "oracle": self.oracle,
            "rewriting": self.rewriting,
            "notes": list(self.notes),
            "wall_clock": round(self.wall_clock, 6),
        }


class Context:
    """Collects checks and oracle residuals while a scenario body runs."""

    def __init__(self, report: Report, k: int | None, seed: int, grid: int | None):
        self.report = report
        self.k = k
        self.seed = seed
        self.grid = grid
        self._residuals: List[float] = []
        self._oracle_reps = set()
        self._oracle_points = 0
        self._presentations: Dict[str, Presentation] = {}

    def check(self, name: str, ok, /, expect: bool = True, **detail) -> Check:
        c = Check(name, bool(ok), expect, _jsonable(detail))
        self.report.checks.append(c)
        return c

    def uses(self, *presentations: Presentation) -> None:
        for pres in presentations:
            self._presentations.setdefault(pres.label, pres)

    def exact(self, name: str, pres: Presentation, p: NCPoly, expect: bool = True, **detail) -> NCPoly:
        self._presentations.setdefault(pres.label, pres)
        nf = pres.normal_form(p)
        self.check(name, nf.is_zero(), expect, normal_form=str(nf), **detail)
        return nf

    def validation(self, name: str, rep: ValidationReport, expect: bool = True) -> None:
        detail = {"defects": {d.name: str(d.residue) for d in rep.defects}}
        if rep.flags:
            detail["flags"] = dict(rep.flags)
        if not rep.ok:
            detail["witness"] = rep.witness()
        self.check(name, rep.ok, expect, **detail)

    def oracle(self, name: str, reps: Sequence[Representation], polys: Mapping[str, NCPoly],
               grid: Sequence[float], tol: float = 1e-9, vanish: bool = True) -> float:
        """Residual of each polynomial (vanish=True) or of p - nf(p) across reps and grid."""
        worst = 0.0
        for r in reps:
            self._oracle_reps.add(r.label)
            for p in polys.values():
                if vanish:
                    res = max(op_norm(r.evaluate(p, t)) for t in grid)
                else:
                    res = oracle_compare(r, p, grid=grid)
                worst = max(worst, res)
        self._oracle_points += len(reps) * len(grid) * len(polys)
        self._residuals.append(worst)
        self.check(name, worst <= tol, residual=float(f"{worst:.3e}"), tol=tol,
                   representations=len(reps), grid_points=len(grid))
        return worst

    def finish(self) -> None:
        for label in sorted(self._presentations):
            pairs = self._presentations[label].critical_pairs()
            self.report.rewriting[label] = {"confluent": not pairs, "unresolved_critical_pairs": len(pairs)}
        if self._residuals:
            self.report.oracle = {
                "max_residual": float(f"{max(self._residuals):.3e}"),
                "evaluations": self._oracle_points,
                "representations": sorted(self._oracle_reps),
                "note": ORACLE_NOTE,
            }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


# ---------------------------------------------------------------------------
# registered scenarios
# ---------------------------------------------------------------------------

def _circle_reps(seed: int, n: int = 3) -> List[Representation]:
    rng = np.random.default_rng(seed)
    C = circle()
    return [circle_points(C, np.exp(2j * np.pi * rng.uniform(size=4))) for _ in range(n)]


def scenario_thm_3_1(ctx: Context) -> None:
    st = circle_join()
    cp, full = st.cp, st.cp.full
    f, a, b = st.elements["f"], st.elements["a_t"], st.elements["b_t"]
    ctx.exact("a_t^2+b_t^2-1", full, a * a + b * b - 1)
    ctx.exact("f f* - 1", full, f * f.star() - 1)
    ctx.exact("f* f - 1", full, f.star() * f - 1)
    e = JoinElement(f, cp)
    ctx.exact("alpha~(f) + f", full, tilde_action_apply(e, st.alpha).body + f)
    bc = boundary_check(e)
    ctx.check("boundary_check", bc.ok, **bc.to_json())
    ctx.validation("hom_validate", join_hom_validate(st.phi, cp))
    ctx.validation("(alpha, alpha~)-equivariance", hom_equivariance_check(st.phi, st.alpha, tilde_action(cp, st.alpha)))
    ctx.validation("(beta, beta)-equivariance", hom_equivariance_check(st.phi, st.beta, beta_extended(cp)), expect=False)
    ctx.exact("phi(z^2) - f^2", full, st.phi(st.base.gen("z") ** 2) - f * f)

    grid = uniform_grid(ctx.grid or 11)
    reps = [crossed_expand(r, cp) for r in _circle_reps(ctx.seed)]
    ctx.oracle("oracle: unitarity and sum of squares", reps,
               {"ff*-1": f * f.star() - 1, "f*f-1": f.star() * f - 1, "a^2+b^2-1": a * a + b * b - 1}, grid)
    ctx.oracle("oracle: normal forms agree", reps, {"f f*": f * f.star(), "alpha~(f)": tilde_action_apply(e, st.alpha).body},
               grid, vanish=False)
    ctx.report.notes.append(POLYNOMIAL_PATH_NOTE)
    ctx.report.notes.append("phi is not (beta, beta)-equivariant, so it does not induce a map of crossed products along beta")


def _sphere_reps(seed: int, n: int = 5) -> List[Representation]:
    F = free_sphere()
    return [free_sphere_random(F, seed=seed + i) for i in range(n)]


def scenario_thm_3_2(ctx: Context) -> None:
    st = sphere_join()
    cp, full = st.cp, st.cp.full
    a, b = st.elements["a_t"], st.elements["b_t"]
    x, y, mu = full.gen("x"), full.gen("y"), cp.mu_poly()
    ctx.exact("a_t^2+b_t^2-1", full, a * a + b * b - 1)
    ctx.exact("a_t* - a_t", full, a.star() - a)
    ctx.exact("b_t* - b_t", full, b.star() - b)
    ctx.exact("mu x + x mu", full, mu * x + x * mu)
    ctx.exact("mu y + y mu", full, mu * y + y * mu)
    for name, p in (("a_t", a), ("b_t", b)):
        ctx.exact(f"alpha~({name}) + {name}", full, tilde_action_apply(JoinElement(p, cp), st.alpha).body + p)
        bc = boundary_check(JoinElement(p, cp))
        ctx.check(f"boundary_check {name}", bc.ok, **bc.to_json())
    ctx.validation("hom_validate", join_hom_validate(st.phi, cp))
    ctx.validation("(alpha, alpha~)-equivariance", hom_equivariance_check(st.phi, st.alpha, tilde_action(cp, st.alpha)))
    ev = evaluate_hom(st.phi, 1)
    ctx.check("ev_1 . phi is the inclusion",
              all(full.equal(ev.images[g], full.gen(g)) for g in ("x", "y")),
              images={g: str(p) for g, p in ev.images.items()})
    ctx.validation("(beta, beta)-equivariance", hom_equivariance_check(st.phi, st.beta, beta_extended(cp)), expect=False)
    bad = sphere_join(scale=1)
    ba, bb = bad.elements["a_t"], bad.elements["b_t"]
    ctx.exact("a_t^2+b_t^2-1 without the 1/sqrt(2)", bad.cp.full, ba * ba + bb * bb - 1, expect=False)

    grid = uniform_grid(ctx.grid or 11)
    reps = [crossed_expand(r, cp) for r in _sphere_reps(ctx.seed)]
    ctx.oracle("oracle: relations of the images", reps,
               {"a^2+b^2-1": a * a + b * b - 1, "a*-a": a.star() - a, "b*-b": b.star() - b}, grid)
    ctx.oracle("oracle: normal forms agree", reps, {"a b": a * b, "a^3": a * a * a}, grid, vanish=False)
    ctx.report.notes.append(POLYNOMIAL_PATH_NOTE)


def scenario_rotation_family(ctx: Context) -> None:
    F = free_sphere()
    ctx.uses(F)
    T, S = PathScalar.t(), PathScalar.s()
    R = rotation(F, S, T)
    ctx.validation("R_(s,t) is an endomorphism", hom_validate(R))
    comp = hom_compose(rotation(F, S, -T), R)
    ctx.check("R_(s,-t) . R_(s,t) = id", all(F.equal(comp.images[g], F.gen(g)) for g in ("x", "y")),
              images={g: str(p) for g, p in comp.images.items()})
    anti = antipodal(F)
    Rm = rotation(F, -1, 0)
    ctx.check("R_(-1,0) = antipodal", all(F.equal(Rm.images[g], anti.images[g]) for g in ("x", "y")),
              images={g: str(p) for g, p in Rm.images.items()})
    ctx.validation("R_(s,t) commutes with antipodal", hom_equivariance_check(R, anti, anti))
    doubled = rotation(F, 1 - 2 * T * T, 2 * T * S, "R(1-2t^2, 2ts)")
    ctx.validation("angle-doubled rotation path is an endomorphism", hom_validate(doubled))
    start, end = evaluate_hom(doubled, 0), evaluate_hom(doubled, 1)
    ctx.check("angle-doubled path joins id to antipodal",
              all(F.equal(start.images[g], F.gen(g)) and F.equal(end.images[g], anti.images[g]) for g in ("x", "y")))
    ctx.validation("R_(1,1) is an endomorphism", hom_validate(rotation(F, 1, 1)), expect=False)

    grid = uniform_grid(ctx.grid or 11)
    worst = 0.0
    for r in _sphere_reps(ctx.seed):
        for t in grid:
            imgs = {g: r.evaluate(doubled.images[g], t) for g in ("x", "y")}
            worst = max(worst, Representation(F, imgs, tol=math.inf).relation_residual())
    ctx._residuals.append(worst)
    ctx.check("oracle: rotated generators satisfy the relations", worst <= 1e-9, residual=float(f"{worst:.3e}"))


def scenario_lemma_2_1(ctx: Context) -> None:
    phi, betaF, betaC, alphaF, alphaC = sphere_to_circle()
    ctx.validation("quotient FreeSphere -> Circle is a *-homomorphism", hom_validate(phi))
    ctx.validation("quotient is (beta, beta)-equivariant", hom_equivariance_check(phi, betaF, betaC))
    ctx.validation("quotient is (alpha, alpha)-equivariant", hom_equivariance_check(phi, alphaF, alphaC))
    psi, rep, (cpA, cpB) = induce_join_hom(phi, betaF, betaC, alphaF, alphaC)
    ctx.uses(phi.dom, phi.cod, cpA.full, cpB.full)
    ctx.validation("induced crossed-product morphism, (alpha beta^, alpha beta^)-equivariant", rep)
    T, S = PathScalar.t(), PathScalar.s()
    e = JoinElement(cpA.full.gen("x").scale(T) + cpA.mu_poly().scale(S), cpA)
    image = join_map(psi, e, cpB)
    bc = boundary_check(image)
    ctx.check("induced map preserves join boundary conditions", bc.ok, image=str(image), **bc.to_json())

    C = circle()
    try:
        induce_join_hom(identity_hom(C), conjugation(C), trivial(C))
        ctx.check("identity on Circle induces along (conj, trivial)", True, expect=False)
    except ValueError as exc:
        ctx.check("identity on Circle induces along (conj, trivial)", False, expect=False, witness=str(exc))

    reps = [crossed_expand(r, cpB) for r in _circle_reps(ctx.seed)]
    im = psi.images
    raw = {"psi(x) psi(y) psi(mu)": im["x"] * im["y"] * im["mu"], "psi(mu) psi(y) psi(mu)": im["mu"] * im["y"] * im["mu"]}
    ctx.oracle("oracle: products of images agree with normal forms", reps, raw, uniform_grid(ctx.grid or 5), vanish=False)


def scenario_prop_2_5(ctx: Context) -> None:
    ks = [ctx.k] if ctx.k else list(range(2, 9))
    for k in ks:
        r, gap = projection_rank(averaging_projection(k))
        ctx.check(f"T has rank 1 (k={k})", r == 1 and gap > 0.4, rank=r, gap=float(f"{gap:.6f}"))
        st = clopen_setting(k)
        ctx.uses(st.cp.full)
        v = order_k_obstruction(st.endpoints, st.cp, st.fixed_rep)
        ctx.check(f"start projection rank (k={k})", v.start_rank == 1, rank=v.start_rank)
        ctx.check(f"t=1 endpoint rank divisible by k (k={k})", v.end_rank % k == 0, rank=v.end_rank)
        ctx.check(f"endpoint ranks differ mod k (k={k})", v.contradiction, **v.to_json())
    for i, path in enumerate(synthetic_rank_jump()):
        try:
            res = projection_rank_path(path)
            rejected = bool(res.lipschitz_violations) or not res.constant and path.lipschitz_bound is not None
            detail = res.to_json()
        except ValueError as exc:
            rejected, detail = True, {"error": str(exc)}
        ctx.check(f"synthetic rank-jump path {i} rejected", rejected, **detail)
    ctx.report.notes.append("the coinvariant quotient is realized by evaluation at a beta-fixed point")


def scenario_cor_2_6(ctx: Context) -> None:
    k = ctx.k or 3
    st = clopen_setting(k)
    P = st.pres
    ctx.check("alpha and beta commute", actions_commute(st.alpha, st.beta))
    ctx.validation("alpha is an order-k action", action_validate(st.alpha))
    ctx.validation("beta is an order-k action", action_validate(st.beta))
    sat_a = saturation_check(FiniteDimAlgebra.from_presentation(P, st.alpha))
    ctx.check("alpha is free (saturation)", sat_a.free, **sat_a.to_json())
    sat_b = saturation_check(FiniteDimAlgebra.from_presentation(P, st.beta))
    ctx.check("beta is free (saturation)", sat_b.free, expect=False, **sat_b.to_json())
    w = P.gen("w")
    q = 1 - w ** k  # indicator of Fix(beta) = {w = 0}
    ctx.exact("q^2 - q (Fix(beta) clopen)", P, q * q - q)
    ctx.exact("q* - q", P, q.star() - q)
    ctx.exact("beta(q) - q", P, action_apply(st.beta, 1, q) - q)
    ctx.exact("q (Fix(beta) nonempty)", P, q, expect=False)
    v = order_k_obstruction(st.endpoints, st.cp, st.fixed_rep)
    ctx.check("fixed-point representation is beta-invariant", v.fixed_rep_invariant)
    ctx.check("q is 1 at the fixed point", abs(st.fixed_rep.evaluate(q)[0, 0] - 1) < 1e-12)
    ctx.check(f"endpoint ranks 1 and {k} differ mod k", v.contradiction, **v.to_json())
    ctx.report.notes.append(f"X = Z/{k} x ({{0}} u mu_{k}); Fix(beta) = Z/{k} x {{0}}")


def _conj_by_clock(k: int) -> FiniteDimAlgebra:
    V = np.diag(np.exp(2j * np.pi * np.arange(k) / k))
    basis = [np.outer(np.eye(k)[i], np.eye(k)[j]) for i in range(k) for j in range(k)]
    return FiniteDimAlgebra.from_matrix_basis(basis, lambda m: V @ m @ V.conj().T, k, f"M_{k} with Ad V")


def scenario_exam_3_6(ctx: Context) -> None:
    ks = [ctx.k] if ctx.k else [2, 3, 4, 5]
    for k in ks:
        sat = saturation_check(_conj_by_clock(k))
        ctx.check(f"conjugation by V is free on M_{k}", sat.free, **sat.to_json())
        P = clock_shift(k)
        V, W = P.gen("V"), P.gen("W")
        omega = root_of_unity(k, 1)
        ctx.exact(f"V W V* - omega W (k={k})", P, V * W * V.star() - W.scale(omega))
        act = phase_action(P, k, {"W": 1}, "Ad V")
        ctx.validation(f"Ad V is an order-{k} action", action_validate(act))
        sat_p = saturation_check(FiniteDimAlgebra.from_presentation(P, act))
        ctx.check(f"presentation route agrees (k={k})", sat_p.free == sat.free, free=sat_p.free)
        ctx.exact(f"W lies in the omega-isotypic part, exact (k={k})", P, isotypic_project(act, 1, W) - W)
        Vm = np.diag(np.exp(2j * np.pi * np.arange(k) / k))
        Wm = np.roll(np.eye(k), 1, axis=0)
        proj = sum(np.conj(np.exp(2j * np.pi * j / k)) * np.linalg.matrix_power(Vm, j) @ Wm
                   @ np.linalg.matrix_power(Vm, j).conj().T for j in range(k)) / k
        res = op_norm(proj - Wm)
        ctx.check(f"W isotypic projection residual (k={k})", res <= 1e-12, residual=float(f"{res:.3e}"))
        # 1 = (omega^-1 - 1)^-1 (W V - V W)(V W)^*: the commutator ideal is everything
        c = (root_of_unity(k, -1) - 1).inverse()
        ctx.exact(f"no one-dimensional representation (k={k})", P, (W * V - V * W).scale(c) * (V * W).star() - 1)
        pres, rep, cert = matrix_algebra_certificate(k)
        cr = certificate_verify(cert, pres, [rep])
        ctx.check(f"swap-rotation certificate, contractible mod {k}", cr.ok, **cr.to_json())
        cert.target = "strongly_contractible_mod_k"
        cs = certificate_verify(cert, pres, [rep])
        ctx.check(f"same path as a strong certificate (k={k})", cs.ok, expect=False, witness=cs.witness())


def scenario_exam_3_7(ctx: Context) -> None:
    ks = [ctx.k] if ctx.k else [2, 3]
    rng = np.random.default_rng(ctx.seed)
    for k in ks:
        C, rep, cands = circle_candidates(k)
        ctx.uses(C)
        d = rep.dim
        diag = winding_number([np.kron(np.eye(k), b) for b in point_blocks(rep.assign["z"], 1, d)])
        ctx.check(f"diagonal embedding winding = {k}", diag == k, winding=diag)
        ones = []
        for c in np.exp(2j * np.pi * rng.uniform(size=3)):
            ones.append(winding_number([c * np.eye(k)] * d))
        U = random_unitary(rng, k)
        ones.append(winding_number([U] * d))
        ctx.check(f"finite-dimensional representations have winding 0 (k={k})", all(w == 0 for w in ones), windings=ones)
        for cand in cands:
            r = certificate_verify(cand, C, [rep], winding_generator="z")
            wl = r.check("winding")
            ctx.check(f"candidate '{cand.label}' rejected with winding witness (k={k})",
                      (not r.ok) and wl is not None and not wl.ok,
                      witness=r.witness(), winding=wl.detail if wl else None, winding_summary=r.winding)
    ctx.report.notes.append("the determinant winding number is an elementary substitute for a K-theory argument")


def scenario_exam_3_8(ctx: Context) -> None:
    F = free_sphere()
    cert = strong_sphere_certificate()
    ctx.uses(F, sphere_join().cp.full)
    reps = _sphere_reps(ctx.seed)
    r = certificate_verify(cert, F, reps, grid=ctx.grid or 101)
    for line in r.checks:
        ctx.check(line.name, line.ok, detail=line.detail)
    ctx.check("certificate passes strongly_contractible_mod_2", r.ok, witness=r.witness())
    ctx.report.notes.append("segments: rotation diag(a, R(a)); E . phi along the sphere join; two-point merge")


def scenario_saturation_demos(ctx: Context) -> None:
    rng = np.random.default_rng(ctx.seed)
    for k in ([ctx.k] if ctx.k else [2, 3, 4, 5]):
        ctx.check(f"Ad V on M_{k} is free", saturation_check(_conj_by_clock(k)).free)
        F = FiniteDimAlgebra.functions(k, [(i + 1) % k for i in range(k)], k, f"C(Z/{k})")
        ctx.check(f"translation on C(Z/{k}) is free", saturation_check(F).free)
    F = FiniteDimAlgebra.functions(3, [1, 0, 2], 2, "C(3 points), swap")
    ctx.check("swap with a fixed point is free", saturation_check(F).free, expect=False)
    D = np.diag([1, 1j])
    basis = [np.outer(np.eye(2)[i], np.eye(2)[j]) for i in range(2) for j in range(2)]
    A = FiniteDimAlgebra.from_matrix_basis(basis, lambda m: D @ m @ D.conj().T, 4, "M_2 with Ad diag(1, i)")
    sat = saturation_check(A)
    ctx.check("Ad diag(1, i) with k=4 is free", sat.free, expect=False, **sat.to_json())
    ctx.check("ideal criterion alone would accept gamma=1",
              sat.entries[1].ideal_is_whole and not sat.entries[1].contains_unit, **sat.entries[1].to_json())
    for k in ([ctx.k] if ctx.k else [3]):
        U = random_unitary(rng, k)
        V = np.diag(np.exp(2j * np.pi * np.arange(k) / k))
        basis = [np.outer(np.eye(k)[i], np.eye(k)[j]) for i in range(k) for j in range(k)]
        W = U @ V @ U.conj().T
        B = FiniteDimAlgebra.from_matrix_basis(basis, lambda m: W @ m @ W.conj().T, k)
        base = saturation_check(_conj_by_clock(k))
        other = saturation_check(B)
        ctx.check(f"verdict invariant under unitary conjugation (k={k})",
                  base.free == other.free and all(a.isotypic_dim == b.isotypic_dim
                                                  for a, b in zip(base.entries, other.entries)))


@dataclass
class ScenarioSpec:
    name: str
    body: Callable[[Context], None]
    summary: str


SCENARIOS: Dict[str, ScenarioSpec] = {s.name: s for s in [
    ScenarioSpec("thm_3_1", scenario_thm_3_1, "circle: phi(z) = t z + i s mu into the twisted join"),
    ScenarioSpec("thm_3_2", scenario_thm_3_2, "free sphere: a_t, b_t with the 1/sqrt(2) mixing"),
    ScenarioSpec("rotation_family", scenario_rotation_family, "rotations R_(s,t) of the free sphere"),
    ScenarioSpec("lemma_2_1_induction", scenario_lemma_2_1, "crossed-product map induced by FreeSphere -> Circle"),
    ScenarioSpec("prop_2_5_shift", scenario_prop_2_5, "rank obstruction from the averaging projection"),
    ScenarioSpec("cor_2_6_clopen", scenario_cor_2_6, "clopen fixed set: hypotheses and rank mismatch"),
    ScenarioSpec("exam_3_6_matrix", scenario_exam_3_6, "M_k: free action, swap-rotation certificate"),
    ScenarioSpec("exam_3_7_circle", scenario_exam_3_7, "circle: winding obstruction rejects candidates"),
    ScenarioSpec("exam_3_8_strong", scenario_exam_3_8, "free sphere: three-segment strong certificate"),
    ScenarioSpec("saturation_demos", scenario_saturation_demos, "freeness via isotypic saturation"),
]}


def list_scenarios() -> List[str]:
    return list(SCENARIOS)


def run_scenario(name: str | None = None, overrides: Mapping | None = None,
                 file_data: Mapping | None = None) -> Report:
    overrides = dict(overrides or {})
    if file_data is not None:
        params = {**file_data.get("params", {}), **{k: v for k, v in overrides.items() if v is not None}}
        body = lambda ctx: run_file_checks(ctx, file_data)  # noqa: E731
        name = file_data.get("name", "scenario-file")
    else:
        if name not in SCENARIOS:
            raise ScenarioError(f"unknown scenario {name!r}; run 'ncbu list'")
        params = {k: v for k, v in overrides.items() if v is not None}
        body = SCENARIOS[name].body
    params.setdefault("seed", 0)
    report = Report(name, dict(sorted(params.items())))
    ctx = Context(report, params.get("k"), int(params["seed"]), params.get("grid"))
    start = time.perf_counter()
    try:
        body(ctx)
    except ScenarioError:
        raise
    except Exception as exc:  # report stays complete; the runner maps this to exit 2
        report.error = f"{type(exc).__name__}: {exc}"
    ctx.finish()
    report.wall_clock = time.perf_counter() - start
    return report


def emit_report(r: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_json(), indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"scenario {r.scenario}  (ncbu {r.version})  params {json.dumps(r.params)}"]
    width = max((len(c.name) for c in r.checks), default=10)
    for c in r.checks:
        tag = "ok  " if c.matches else "FAIL"
        exp = "" if c.expect else "  [expected fail]"
        lines.append(f"  {tag}  {c.name:<{width}}  {'pass' if c.ok else 'fail'}{exp}")
        for key in ("normal_form", "witness", "residual"):
            if key in c.detail and (not c.ok or key == "residual"):
                lines.append(f"          {key}: {c.detail[key]}")
    if r.oracle:
        lines.append(f"  oracle: max residual {r.oracle['max_residual']} over {r.oracle['evaluations']} evaluations ({r.oracle['note']})")
    for n in r.notes:
        lines.append(f"  note: {n}")
    if r.error:
        lines.append(f"  error: {r.error}")
    matched = sum(c.matches for c in r.checks)
    lines.append(f"verdict: {'PASS' if r.passed else 'FAIL'} ({matched}/{len(r.checks)} checks match expectations, {r.wall_clock:.2f}s)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON scenario files
# ---------------------------------------------------------------------------

class _Registry:
    def __init__(self):
        self.pres: Dict[str, Presentation] = {}
        self.crossed: Dict[str, object] = {}
        self.actions: Dict[str, CyclicAction] = {}
        self.polys: Dict[str, NCPoly] = {}
        self.homs: Dict[str, GenHom] = {}

    def get(self, table: str, key: str):
        try:
            return getattr(self, table)[key]
        except KeyError:
            raise ScenarioError(f"unresolved reference {key!r} in {table}") from None


def _load_presentation(spec) -> Presentation:
    if "builtin" in spec:
        return builtin_presentation(spec["builtin"], **spec.get("params", {}))
    return Presentation.from_json(spec)


def _load_action(spec, reg: _Registry) -> CyclicAction:
    if "crossed" in spec:
        cp = reg.get("crossed", spec["crossed"])
        kind = spec.get("builtin", "dual")
        if kind == "dual":
            return dual_action(cp)
        if kind == "combined":
            return combined_dual_action(cp, reg.get("actions", spec["alpha"]))
        if kind == "beta_extended":
            return beta_extended(cp)
        raise ScenarioError(f"unknown crossed-product action {kind!r}")
    pres = reg.get("pres", spec["on"])
    k = int(spec.get("k", 2))
    kind = spec.get("builtin")
    if kind == "antipodal":
        return antipodal(pres, k)
    if kind == "conjugation":
        return conjugation(pres, k)
    if kind == "trivial":
        return trivial(pres, k)
    if kind == "phase":
        return phase_action(pres, k, spec.get("exponents", {}))
    if kind is not None:
        raise ScenarioError(f"unknown action builtin {kind!r}")
    return CyclicAction.from_json({"k": k, **spec}, pres)


def _poly(spec, pres: Presentation, reg: _Registry) -> NCPoly:
    if isinstance(spec, str):
        p = reg.get("polys", spec)
        return p.over(pres.alphabet)
    if isinstance(spec, list):
        return NCPoly.from_json(spec, pres.alphabet)
    if isinstance(spec, dict) and len(spec) == 1:
        (op, arg), = spec.items()
        if op == "sum":
            out = pres.zero()
            for a in arg:
                out = out + _poly(a, pres, reg)
            return out
        if op == "product":
            out = pres.one()
            for a in arg:
                out = out * _poly(a, pres, reg)
            return out
        if op == "star":
            return _poly(arg, pres, reg).star()
        if op == "neg":
            return -_poly(arg, pres, reg)
        if op == "power":
            return _poly(arg[0], pres, reg) ** int(arg[1])
        if op == "act":
            a = reg.get("actions", arg["action"])
            return action_apply(a, int(arg.get("power", 1)), _poly(arg["poly"], a.pres, reg))
        if op == "apply":
            h = reg.get("homs", arg["hom"])
            return h(_poly(arg["poly"], h.dom, reg))
    raise ScenarioError(f"malformed polynomial {spec!r}")


def _rep(spec, pres: Presentation, reg: _Registry, seed: int) -> Representation:
    spec = dict(spec)
    kind = spec.pop("kind")
    crossed = spec.pop("crossed", None)
    base = reg.get("crossed", crossed).base if crossed else pres
    if kind == "circle_points":
        pts = [complex(*p) if isinstance(p, list) else complex(p) for p in spec.pop("points")]
        r = circle_points(base, pts)
    else:
        if kind == "free_sphere_random":
            spec.setdefault("seed", seed)
        r = rep_builtin(kind, base, **spec)
    return crossed_expand(r, reg.get("crossed", crossed)) if crossed else r


def load_scenario_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from None


def run_file_checks(ctx: Context, data: Mapping) -> None:
    reg = _Registry()
    try:
        for name, spec in data.get("presentations", {}).items():
            reg.pres[name] = _load_presentation(spec)
        for name, spec in data.get("actions", {}).items():
            if "crossed" not in spec:
                reg.actions[name] = _load_action(spec, reg)
        for name, spec in data.get("crossed", {}).items():
            cp = crossed_presentation(reg.get("pres", spec["base"]), reg.get("actions", spec["beta"]),
                                      int(spec.get("k", 2)), spec.get("mu", "mu"))
            reg.crossed[name] = cp
            reg.pres[name] = cp.full
        for name, spec in data.get("actions", {}).items():
            if "crossed" in spec:
                reg.actions[name] = _load_action(spec, reg)
        for name, spec in data.get("polys", {}).items():
            reg.polys[name] = _poly(spec["value"], reg.get("pres", spec["in"]), reg)
        for name, spec in data.get("homs", {}).items():
            dom, cod = reg.get("pres", spec["from"]), reg.get("pres", spec["to"])
            images = {g: _poly(v, cod, reg) for g, v in spec["images"].items()}
            reg.homs[name] = GenHom(dom, cod, images, name)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed scenario file: {exc}") from None

    grid = uniform_grid(ctx.grid or int(data.get("params", {}).get("grid", 11)))
    for i, chk in enumerate(data.get("checks", [])):
        try:
            op = chk["op"]
            name = chk.get("name", f"{op} #{i}")
            expect = chk.get("expect", "pass") == "pass"
            if op == "is_zero":
                pres = reg.get("pres", chk["in"])
                ctx.exact(name, pres, _poly(chk["poly"], pres, reg), expect)
            elif op == "hom_validate":
                ctx.validation(name, hom_validate(reg.get("homs", chk["hom"])), expect)
            elif op == "join_hom_validate":
                ctx.validation(name, join_hom_validate(reg.get("homs", chk["hom"]), reg.get("crossed", chk["crossed"])), expect)
            elif op == "action_validate":
                other = reg.get("actions", chk["other"]) if "other" in chk else None
                ctx.validation(name, action_validate(reg.get("actions", chk["action"]), other=other), expect)
            elif op == "equivariance":
                h = reg.get("homs", chk["hom"])
                ctx.validation(name, hom_equivariance_check(h, reg.get("actions", chk["dom_action"]),
                                                            reg.get("actions", chk["cod_action"])), expect)
            elif op == "boundary_check":
                cp = reg.get("crossed", chk["crossed"])
                b = boundary_check(JoinElement(_poly(chk["poly"], cp.full, reg), cp))
                ctx.check(name, b.ok, expect, **b.to_json())
            elif op == "oracle_compare":
                pres = reg.get("pres", chk["in"])
                reps = [_rep(r, pres, reg, ctx.seed) for r in chk["reps"]]
                p = _poly(chk["poly"], pres, reg)
                ctx.oracle(name, reps, {"p": p}, grid, float(chk.get("tol", 1e-9)), vanish=chk.get("vanish", False))
                ctx.report.checks[-1].expect = expect
            else:
                raise ScenarioError(f"unknown check op {op!r}")
        except KeyError as exc:
            raise ScenarioError(f"malformed check #{i}: missing {exc}") from None
