"""Piecewise path certificates for (strong) contractibility modulo k.

A certificate is a chain of segments, each a family of *-homomorphisms
A -> M_k(A) parametrized by tau in [0, 1].  Symbolic segments carry exact
matrices over the algebra with polynomial coefficients in (t, s) and a
reparametrization tau -> t; sampled segments carry image matrices at grid
points in one fixed representation.  Verification only ever certifies the
sampled evidence plus the declared Lipschitz bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .crossed import MatrixOverAlg
from .ncpoly import Presentation
from .obstructions import InsufficientSampling, point_blocks, winding_number
from .oracle import Representation, norm_at_most, op_norm, uniform_grid

ENDPOINT_TOL = 1e-9
RELATION_TOL = 1e-8
LIPSCHITZ_SLACK = 1e-9
TARGETS = ("contractible_mod_k", "strongly_contractible_mod_k")

# tau -> t, together with the exact t at tau = 0 and tau = 1
PARAMS = {
    "linear": (lambda tau: tau, 0, 1),
    "reverse": (lambda tau: 1.0 - tau, 1, 0),
    "quarter": (lambda tau: math.sin(math.pi * tau / 2), 0, 1),
    "quarter_reverse": (lambda tau: math.cos(math.pi * tau / 2), 1, 0),
}


@dataclass(eq=False)
class SymbolicSegment:
    images: Dict[str, MatrixOverAlg]
    lipschitz: float
    param: str = "linear"
    label: str = "segment"

    def __post_init__(self):
        if self.param not in PARAMS:
            raise ValueError(f"unknown reparametrization {self.param!r}; choose from {sorted(PARAMS)}")

    @property
    def size(self) -> int:
        return next(iter(self.images.values())).size

    def exact_end(self, which: int) -> Dict[str, MatrixOverAlg]:
        t_end = PARAMS[self.param][1 + which]
        return {g: m.at_endpoint(t_end) for g, m in self.images.items()}

    def samples(self, rep: Representation, grid: Sequence[float]):
        fn = PARAMS[self.param][0]
        for tau in grid:
            t = min(1.0, max(0.0, fn(tau)))
            yield tau, {g: m.evaluate(rep, t) for g, m in self.images.items()}

    def to_json(self) -> dict:
        return {
            "type": "symbolic",
            "label": self.label,
            "param": self.param,
            "lipschitz": self.lipschitz,
            "images": {g: m.to_json() for g, m in self.images.items()},
        }


@dataclass(eq=False)
class SampledSegment:
    grid: List[float]
    values: List[Dict[str, np.ndarray]]
    lipschitz: float
    rep_index: int = 0
    label: str = "sampled"

    def __post_init__(self):
        if len(self.grid) != len(self.values) or len(self.grid) < 2:
            raise ValueError("sampled segment needs matching grid and values (at least two)")
        if abs(self.grid[0]) > 0 or abs(self.grid[-1] - 1) > 0:
            raise ValueError("sampled segment grid must run from 0 to 1")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sampled segment grid must be increasing")

    def samples(self, rep=None, grid=None):
        yield from zip(self.grid, self.values)

    def to_json(self) -> dict:
        enc = lambda m: [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]  # noqa: E731
        return {
            "type": "sampled",
            "label": self.label,
            "rep_index": self.rep_index,
            "lipschitz": self.lipschitz,
            "grid": list(self.grid),
            "values": [{g: enc(m) for g, m in v.items()} for v in self.values],
        }


@dataclass(eq=False)
class Certificate:
    k: int
    segments: list
    target: str = "contractible_mod_k"
    label: str = "certificate"

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        if not self.segments:
            raise ValueError("certificate needs at least one segment")

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "target": self.target,
            "segments": [s.to_json() for s in self.segments],
        }

    @classmethod
    def from_json(cls, data, pres: Presentation) -> Certificate:
        segs = []
        for s in data["segments"]:
            if s["type"] == "symbolic":
                images = {g: MatrixOverAlg.from_json(m, pres) for g, m in s["images"].items()}
                segs.append(SymbolicSegment(images, float(s["lipschitz"]), s.get("param", "linear"), s.get("label", "segment")))
            elif s["type"] == "sampled":
                dec = lambda m: np.array([[complex(a, b) for a, b in row] for row in m])  # noqa: E731
                values = [{g: dec(m) for g, m in v.items()} for v in s["values"]]
                segs.append(SampledSegment([float(x) for x in s["grid"]], values, float(s["lipschitz"]),
                                           int(s.get("rep_index", 0)), s.get("label", "sampled")))
            else:
                raise ValueError(f"unknown segment type {s['type']!r}")
        return cls(int(data["k"]), segs, data.get("target", "contractible_mod_k"), data.get("label", "certificate"))


@dataclass
class CheckLine:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class CertificateReport:
    label: str
    checks: List[CheckLine] = field(default_factory=list)
    winding: dict | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def witness(self) -> str:
        bad = [c for c in self.checks if not c.ok]
        return f"{bad[0].name}: {bad[0].detail}" if bad else ""

    def check(self, name: str) -> CheckLine | None:
        return next((c for c in self.checks if c.name == name), None)

    def to_json(self) -> dict:
        out = {"label": self.label, "ok": self.ok, "witness": self.witness(),
               "checks": [c.to_json() for c in self.checks]}
        if self.winding is not None:
            out["winding"] = self.winding
        return out


def _diag_embedding(pres: Presentation, k: int) -> Dict[str, MatrixOverAlg]:
    return {g: MatrixOverAlg.diag(pres, [pres.gen(g)] * k) for g in pres.alphabet.names}


def _exact_equal(a: Dict[str, MatrixOverAlg], b: Dict[str, MatrixOverAlg]) -> str:
    for g in a:
        if not a[g] == b[g]:
            return f"generator {g}: {a[g]} != {b[g]}"
    return ""


def _kron_residual(M: np.ndarray, k: int, d: int) -> tuple:
    """Distance from M to kron(B, I_d) with B the blockwise normalized trace."""
    B = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            B[i, j] = np.trace(M[i * d:(i + 1) * d, j * d:(j + 1) * d]) / d
    return op_norm(M - np.kron(B, np.eye(d))), B


def _segment_reps(seg, reps):
    if isinstance(seg, SampledSegment):
        if seg.rep_index >= len(reps):
            raise IndexError(f"sampled segment refers to representation {seg.rep_index}")
        return [(seg.rep_index, reps[seg.rep_index])]
    return list(enumerate(reps))


def certificate_verify(
    c: Certificate,
    pres: Presentation,
    reps: Sequence[Representation],
    grid: int = 201,
    winding_generator: str | None = None,
    winding_rep: int = 0,
) -> CertificateReport:
    k = c.k
    report = CertificateReport(c.label)
    taus = uniform_grid(grid)
    names = pres.alphabet.names
    line = lambda name, ok, detail="": report.checks.append(CheckLine(name, bool(ok), detail))  # noqa: E731

    # shape
    for i, seg in enumerate(c.segments):
        if isinstance(seg, SymbolicSegment):
            missing = set(names) - set(seg.images)
            bad_size = [g for g, m in seg.images.items() if m.size != k]
        else:
            missing = set(names) - set(seg.values[0])
            d = reps[seg.rep_index].dim
            bad_size = [g for g, m in seg.values[0].items() if np.asarray(m).shape != (k * d, k * d)]
        if missing or bad_size:
            line(f"segment {i} shape", False, f"missing {sorted(missing)}, wrong size {bad_size}")
            return report

    # sample everything once
    sampled: List[Dict[int, list]] = []
    for seg in c.segments:
        per_rep = {}
        for ri, rep in _segment_reps(seg, reps):
            per_rep[ri] = list(seg.samples(rep, taus))
        sampled.append(per_rep)

    # relations along each segment
    for i, per_rep in enumerate(sampled):
        worst, where = 0.0, ""
        for ri, samples in per_rep.items():
            for tau, imgs in samples:
                r = Representation(pres, imgs, tol=math.inf, label="sample").relation_residual()
                if r > worst:
                    worst, where = r, f"rep {ri}, tau={tau:.4g}"
        line(f"segment {i} relations", worst <= RELATION_TOL, f"max residual {worst:.3e} at {where}" if where else "max residual 0")

    # Lipschitz
    for i, (seg, per_rep) in enumerate(zip(c.segments, sampled)):
        worst_excess, detail = -math.inf, ""
        for ri, samples in per_rep.items():
            for (t0, a), (t1, b) in zip(samples, samples[1:]):
                allowed = seg.lipschitz * (t1 - t0)
                if all(norm_at_most(b[g] - a[g], allowed) for g in names):
                    if worst_excess == -math.inf:
                        detail = f"all steps within L = {seg.lipschitz}"
                        worst_excess = -allowed
                    continue
                jump = max(op_norm(b[g] - a[g]) for g in names)
                excess = jump - seg.lipschitz * (t1 - t0)
                if excess > worst_excess:
                    worst_excess = excess
                    detail = f"rep {ri}: |delta| = {jump:.4g} over [{t0:.4g}, {t1:.4g}] vs L = {seg.lipschitz}"
        line(f"segment {i} lipschitz", worst_excess <= LIPSCHITZ_SLACK, detail)

    # start at the diagonal embedding
    first = c.segments[0]
    diag = _diag_embedding(pres, k)
    if isinstance(first, SymbolicSegment):
        msg = _exact_equal(first.exact_end(0), diag)
        line("start is diagonal embedding (exact)", not msg, msg)
    worst = 0.0
    for ri, samples in sampled[0].items():
        rep = reps[ri]
        for g in names:
            worst = max(worst, op_norm(samples[0][1][g] - np.kron(np.eye(k), rep.assign[g])))
    line("start is diagonal embedding", worst <= ENDPOINT_TOL, f"residual {worst:.3e}")

    # consecutive endpoints
    for i in range(len(c.segments) - 1):
        a, b = c.segments[i], c.segments[i + 1]
        if isinstance(a, SymbolicSegment) and isinstance(b, SymbolicSegment):
            msg = _exact_equal(a.exact_end(1), b.exact_end(0))
            line(f"segments {i}->{i + 1} match (exact)", not msg, msg)
        common = set(sampled[i]) & set(sampled[i + 1])
        if not common:
            line(f"segments {i}->{i + 1} match", False, "segments live in disjoint representations")
            continue
        worst = max(op_norm(sampled[i][ri][-1][1][g] - sampled[i + 1][ri][0][1][g]) for ri in common for g in names)
        line(f"segments {i}->{i + 1} match", worst <= ENDPOINT_TOL, f"residual {worst:.3e}")

    # end at a finite-dimensional representation
    last = c.segments[-1]
    strong = c.target == "strongly_contractible_mod_k"
    if isinstance(last, SymbolicSegment):
        end = last.exact_end(1)
        scalar = all(m.is_scalar_valued() for m in end.values())
        detail = "" if scalar else "an image has non-scalar entries"
        if scalar and strong:
            for g, m in end.items():
                c0 = m[0, 0].coefficient(())
                if not m == MatrixOverAlg.identity(pres, k).scale(c0):
                    scalar, detail = False, f"image of {g} is not a multiple of the identity"
                    break
        line("end is a finite-dimensional representation (exact)", scalar, detail)
    worst = 0.0
    for ri, samples in sampled[-1].items():
        d = reps[ri].dim
        for g in names:
            resid, B = _kron_residual(samples[-1][1][g], k, d)
            if strong:
                resid = max(resid, op_norm(B - np.trace(B) / k * np.eye(k)))
            worst = max(worst, resid)
    kind = "one-dimensional" if strong else f"{k}-dimensional"
    line(f"end is a {kind} representation", worst <= ENDPOINT_TOL, f"residual {worst:.3e}")

    if winding_generator is not None:
        _winding_check(c, report, sampled, reps, winding_generator, winding_rep, k)
    return report


def _safe_winding(blocks: List[np.ndarray]):
    try:
        return winding_number(blocks)
    except InsufficientSampling:
        return None


def _winding_check(c, report, sampled, reps, gen, ri, k) -> None:
    """Degree of det along the circle, tracked through every sample of the chain."""
    rep = reps[ri]
    d = rep.dim
    diag_w = _safe_winding([np.kron(np.eye(k), b) for b in point_blocks(rep.assign[gen], 1, d)])
    trail = []
    for i, per_rep in enumerate(sampled):
        if ri not in per_rep:
            report.checks.append(CheckLine("winding", False, f"segment {i} is not sampled in representation {ri}"))
            return
        for tau, imgs in per_rep[ri]:
            trail.append((i, tau, _safe_winding(point_blocks(imgs[gen], k, d))))
    problems = []
    if trail[0][2] != diag_w:
        problems.append(f"start winding {trail[0][2]} differs from diagonal embedding winding {diag_w}")
    for (i0, t0, w0), (i1, t1, w1) in zip(trail, trail[1:]):
        if w0 is None or w1 is None or w0 != w1:
            problems.append(f"winding changes from {w0} (segment {i0}, tau={t0:.4g}) to {w1} (segment {i1}, tau={t1:.4g})")
            break
    if trail[-1][2] != 0:
        problems.append(f"end winding {trail[-1][2]} but every {k}-dimensional representation has winding 0")
    report.winding = {
        "generator": gen,
        "diagonal": diag_w,
        "start": trail[0][2],
        "end": trail[-1][2],
        "distinct": sorted({w for _, _, w in trail if w is not None}),
        "undefined_samples": sum(1 for _, _, w in trail if w is None),
    }
    report.checks.append(CheckLine("winding", not problems, "; ".join(problems)))
