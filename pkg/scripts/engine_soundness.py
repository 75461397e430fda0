"""Stress the rewriting engine against the numeric oracle.

For each builtin presentation (and two crossed products) draw random
polynomials with path coefficients and record: normal-form idempotence,
compatibility with the involution, and the largest oracle disagreement
on a t-grid.  Also reports critical-pair confluence per presentation.

    python scripts/engine_soundness.py --n 2000 --seed 7
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from ncbu.actions import antipodal, conjugation
from ncbu.crossed import crossed_presentation
from ncbu.ncpoly import circle, clock_shift, clopen_product, cyclic_group, free_sphere, random_poly, theta_sphere
from ncbu.oracle import (Representation, circle_points, clock_shift_defining, crossed_expand, cyclic_shift,
                         free_sphere_random, oracle_compare, theta_sphere_weyl, uniform_grid)

THETA = [[0, "1/4", "1/3"], ["-1/4", 0, "1/6"], ["-1/3", "-1/6", 0]]


def clopen_points(k: int) -> Representation:
    P = clopen_product(k)
    roots = np.exp(2j * np.pi * np.arange(k) / k)
    u = np.kron(np.diag(roots), np.eye(k + 1))
    w = np.kron(np.eye(k), np.diag(np.concatenate([[0], roots])))
    return Representation(P, {"u": u, "w": w}, label="clopen points")


def cases(seed: int):
    F, C = free_sphere(), circle()
    th = theta_sphere(3, THETA)
    rng = np.random.default_rng(seed)
    sphere = [free_sphere_random(F, seed=seed + i, dim=3) for i in range(3)]
    circ = circle_points(C, np.exp(2j * np.pi * rng.uniform(size=5)))
    scp = crossed_presentation(F, antipodal(F), 2)
    ccp = crossed_presentation(C, conjugation(C), 2)
    yield "Circle", C, [circ]
    yield "FreeSphere", F, sphere
    yield "ThetaSphere(3)", th, [theta_sphere_weyl(th, THETA, seed=seed)]
    yield "CyclicGroup(5)", cyclic_group(5), [cyclic_shift(cyclic_group(5), 5)]
    yield "ClockShift(4)", clock_shift(4), [clock_shift_defining(clock_shift(4), 4)]
    yield "ClopenProduct(3)", clopen_product(3), [clopen_points(3)]
    yield "FreeSphere x| Z/2", scp.full, [crossed_expand(r, scp) for r in sphere]
    yield "Circle x| Z/2", ccp.full, [crossed_expand(circ, ccp)]


def main() -> None:
    p = argparse.ArgumentParser(description="random-polynomial soundness sweep")
    p.add_argument("--n", type=int, default=500, help="polynomials per presentation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--grid", type=int, default=5)
    args = p.parse_args()

    rng = random.Random(args.seed)
    grid = uniform_grid(args.grid)
    print(f"{'presentation':<20} {'rules':>5} {'confluent':>9} {'idem':>6} {'star':>6} {'oracle max':>11} {'time':>7}")
    for name, pres, reps in cases(args.seed):
        start = time.perf_counter()
        idem = star = 0
        worst = 0.0
        for _ in range(args.n):
            poly = random_poly(pres, rng, max_degree=args.degree, path=True)
            nf = pres.normal_form(poly)
            idem += pres.normal_form(nf) == nf
            star += pres.normal_form(nf.star()) == pres.normal_form(poly.star())
            worst = max(worst, max(oracle_compare(r, poly, pres, grid) for r in reps))
        confluent = pres.is_confluent()
        print(f"{name:<20} {len(pres.rules):>5} {str(confluent):>9} {idem:>6} {star:>6} {worst:>11.2e} "
              f"{time.perf_counter() - start:>6.2f}s")


if __name__ == "__main__":
    main()
