from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from ncbu.ncpoly import random_poly
from ncbu.scalars import Cyclotomic, PathScalar, totient

CONDUCTORS = [1, 3, 4, 6, 8, 12]

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    coords = draw(st.lists(fractions, min_size=totient(n), max_size=totient(n)))
    return Cyclotomic(n, coords)


@st.composite
def path_scalars(draw):
    out = PathScalar()
    for _ in range(draw(st.integers(0, 3))):
        c = draw(cyclotomics(conductors=[1, 4, 8]))
        a, b = draw(st.integers(0, 2)), draw(st.integers(0, 1))
        out = out + PathScalar.t() ** a * PathScalar.s() ** b * c
    return out


def polys(pres, path: bool = False, max_degree: int = 5):
    return st.integers(0, 2**32).map(lambda seed: random_poly(pres, random.Random(seed), max_degree, 4, path))


def half() -> Fraction:
    return Fraction(1, 2)
