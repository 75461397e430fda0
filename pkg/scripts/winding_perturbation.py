"""How robust is the winding witness to noise in the sampled images?

Starts from the diagonal embedding of the circle (winding k), adds complex
Gaussian noise of increasing size to every sampled k x k block and reports
how often the determinant winding is still k, for several numbers of
circle points.  Noise comparable to 1 destroys the witness.
"""

from __future__ import annotations

import argparse

import numpy as np

from ncbu.obstructions import InsufficientSampling, point_blocks, winding_number
from ncbu.ncpoly import circle
from ncbu.oracle import circle_points

NOISE = (1e-6, 1e-3, 1e-2, 1e-1, 3e-1, 1.0)


def noisy_winding(Z: np.ndarray, k: int, d: int, eps: float, rng: np.random.Generator):
    M = np.kron(np.eye(k), Z)
    noise = rng.standard_normal(M.shape) + 1j * rng.standard_normal(M.shape)
    M = M + eps * noise / np.sqrt(2)
    try:
        return winding_number(point_blocks(M, k, d))
    except InsufficientSampling:
        return None


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)
    C = circle()
    print(f"k={args.k}: fraction of trials recovering winding {args.k}")
    print(f"{'points':>6} " + " ".join(f"{e:>8.0e}" for e in NOISE))
    for n in (8, 16, 32, 64):
        rep = circle_points(C, np.exp(2j * np.pi * np.arange(n) / n))
        Z = rep.assign["z"]
        row = []
        for eps in NOISE:
            hits = sum(noisy_winding(Z, args.k, n, eps, rng) == args.k for _ in range(args.trials))
            row.append(hits / args.trials)
        print(f"{n:>6} " + " ".join(f"{x:>8.2f}" for x in row))


if __name__ == "__main__":
    main()
