from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncbu.scalars import (I, ConductorOverflow, Cyclotomic, PathScalar, cyclotomic_polynomial,
                          format_scalar, parse_scalar, root_of_unity, sqrt2_inverse)
from strategies import cyclotomics, path_scalars


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


# frozen values
def test_small_identities():
    assert I * I == -1
    assert root_of_unity(3) + root_of_unity(3, 2) == -1
    assert sqrt2_inverse() * sqrt2_inverse() == Fraction(1, 2)
    assert root_of_unity(8) + root_of_unity(8, 7) == 2 * sqrt2_inverse()
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_rationals_canonicalize_to_conductor_one():
    x = root_of_unity(4) * root_of_unity(4, 3)
    assert x.conductor == 1 and x.as_fraction() == 1


def test_mixed_conductors_lift_to_lcm():
    x = root_of_unity(3) * root_of_unity(4)
    assert x.conductor == 12
    assert close(x, cmath.exp(2j * cmath.pi * (1 / 3 + 1 / 4)))


@settings(max_examples=60, deadline=None)
@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(cyclotomics(), cyclotomics())
def test_complex_embedding_is_a_homomorphism(a, b):
    assert close(a * b, complex(a) * complex(b))
    assert close(a + b, complex(a) + complex(b))
    assert close(a.conj(), complex(a).conjugate())


@settings(max_examples=40, deadline=None)
@given(cyclotomics())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(cyclotomics(), cyclotomics())
def test_conjugation_is_an_involutive_automorphism(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


def test_conductor_bound_from_environment(monkeypatch):
    monkeypatch.setenv("NCBU_CONDUCTOR_MAX", "6")
    root_of_unity(6)
    with pytest.raises(ConductorOverflow):
        root_of_unity(8)
    with pytest.raises(ConductorOverflow):
        root_of_unity(3) * root_of_unity(4)


def test_path_scalar_relation():
    t, s = PathScalar.t(), PathScalar.s()
    assert s * s == 1 - t * t
    assert s.s_degree() == 1 and (s * s).s_degree() == 0
    assert close((t * s).evaluate(0.6), 0.48)
    assert (t * s).at_endpoint(0) == 0 and s.at_endpoint(0) == 1 and s.at_endpoint(1) == 0


@settings(max_examples=50, deadline=None)
@given(path_scalars(), path_scalars(), st.floats(0, 1))
def test_path_evaluation_is_a_homomorphism(p, q, t0):
    assert close((p * q).evaluate(t0), p.evaluate(t0) * q.evaluate(t0), 1e-8)
    assert close((p + q).evaluate(t0), p.evaluate(t0) + q.evaluate(t0), 1e-8)
    assert close(p.conj().evaluate(t0), p.evaluate(t0).conjugate(), 1e-8)


@settings(max_examples=50, deadline=None)
@given(path_scalars())
def test_text_round_trip(p):
    assert parse_scalar(format_scalar(p)) == p


def test_exact_substitution_needs_the_circle():
    t, s = PathScalar.t(), PathScalar.s()
    r = sqrt2_inverse()
    assert (t * t + s * s).substitute(r, r) == 1
    assert (2 * t * s).substitute(r, r) == 1


def test_parse_accepts_shorthand():
    assert parse_scalar("i") == PathScalar.constant(I)
    assert parse_scalar("-1/2 * t^2 * s") == PathScalar.t() ** 2 * PathScalar.s() * Fraction(-1, 2)
    with pytest.raises(ValueError):
        parse_scalar("q * 3")


def test_cyclotomics_are_unhashable():
    with pytest.raises(TypeError):
        hash(Cyclotomic.rational(1))
