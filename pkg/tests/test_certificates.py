from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from ncbu.certificates import Certificate, SampledSegment, SymbolicSegment, certificate_verify
from ncbu.constructions import (circle_candidates, matrix_algebra_certificate, strong_sphere_certificate)
from ncbu.crossed import MatrixOverAlg
from ncbu.oracle import free_sphere_random


@pytest.fixture(scope="module")
def sphere_reps(sphere_pres):
    return [free_sphere_random(sphere_pres, seed=s) for s in range(3)]


def test_strong_certificate_passes(sphere_pres, sphere_reps):
    r = certificate_verify(strong_sphere_certificate(), sphere_pres, sphere_reps, grid=51)
    assert r.ok, r.witness()
    assert r.check("segments 0->1 match (exact)").ok


def test_tight_lipschitz_is_rejected(sphere_pres, sphere_reps):
    r = certificate_verify(strong_sphere_certificate(lipschitz=0.5), sphere_pres, sphere_reps, grid=51)
    assert not r.ok and "lipschitz" in r.witness()


def test_dropping_a_segment_breaks_the_chain(sphere_pres, sphere_reps):
    cert = strong_sphere_certificate()
    cert.segments = [cert.segments[0], cert.segments[2]]
    r = certificate_verify(cert, sphere_pres, sphere_reps, grid=21)
    assert not r.ok and "match" in r.witness()


def test_perturbed_segment_breaks_relations(sphere_pres, sphere_reps):
    cert = strong_sphere_certificate()
    seg = cert.segments[0]
    x = seg.images["x"]
    bumped = x + MatrixOverAlg.scalar_matrix(sphere_pres, [[0, 0], [0, Fraction(1, 10)]])
    cert.segments[0] = SymbolicSegment({"x": bumped, "y": seg.images["y"]}, seg.lipschitz, seg.param)
    r = certificate_verify(cert, sphere_pres, sphere_reps, grid=21)
    assert not r.check("segment 0 relations").ok


def test_round_trip_through_json(sphere_pres, sphere_reps):
    cert = strong_sphere_certificate()
    back = Certificate.from_json(json.loads(json.dumps(cert.to_json())), sphere_pres)
    r = certificate_verify(back, sphere_pres, sphere_reps, grid=21)
    assert r.ok


@pytest.mark.parametrize("k", [2, 3])
def test_swap_path_is_weak_but_not_strong(k):
    pres, rep, cert = matrix_algebra_certificate(k, samples=41)
    assert certificate_verify(cert, pres, [rep]).ok
    cert.target = "strongly_contractible_mod_k"
    assert not certificate_verify(cert, pres, [rep]).ok


def test_sampled_round_trip():
    pres, rep, cert = matrix_algebra_certificate(2, samples=11)
    back = Certificate.from_json(json.loads(json.dumps(cert.to_json())), pres)
    assert certificate_verify(back, pres, [rep]).ok


def test_circle_candidates_all_rejected():
    C, rep, cands = circle_candidates(2, npoints=16)
    for cand in cands:
        r = certificate_verify(cand, C, [rep], grid=41, winding_generator="z")
        assert not r.ok
        assert not r.check("winding").ok


def test_construction_errors(sphere_pres):
    with pytest.raises(ValueError):
        Certificate(2, [], "contractible_mod_k")
    with pytest.raises(ValueError):
        Certificate(2, [object()], "unknown target")
    with pytest.raises(ValueError):
        SampledSegment([0.0, 0.5], [{}, {}], 1.0)
    with pytest.raises(ValueError):
        SymbolicSegment({"x": MatrixOverAlg.identity(sphere_pres, 2)}, 1.0, "cubic")


def test_wrong_shape_reported(sphere_pres, sphere_reps):
    seg = SampledSegment([0.0, 1.0], [{"x": np.eye(2), "y": np.eye(2)}] * 2, 1.0)
    r = certificate_verify(Certificate(2, [seg]), sphere_pres, sphere_reps)
    assert not r.ok and "shape" in r.witness()
