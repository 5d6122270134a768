"""How close do random states get to the dimension-only GME bound?

For each shape, draw Gaussian random states, solve for the maximal product
overlap and report the spread of GME against the bound.  Output is CSV.

    python3 scripts/bound_survey.py --shapes 2x2x2 2x2x4 3x3x3 --samples 50
"""
import argparse
import csv
import sys

import numpy as np

from multigme.bounds import gme_from_sigma, upper_bound
from multigme.solver import SolverConfig, solve
from multigme.tensor_core import StateTensor, normalize


def parse_shape(text):
    return tuple(int(x) for x in text.lower().split("x"))


def survey(shape, samples, cfg, seed):
    gmes = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        t = normalize(StateTensor.from_amplitudes(a))
        gmes.append(gme_from_sigma(solve(t, cfg).sigma))
    return np.array(gmes)


def main(argv=None):
    ap = argparse.ArgumentParser(description="random-state GME versus the dimension bound")
    ap.add_argument("--shapes", nargs="+", type=parse_shape, default=[(2, 2, 2), (2, 2, 4), (3, 3, 3)])
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    cfg = SolverConfig(restarts=args.restarts, seed=args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["shape", "samples", "gme_mean", "gme_max", "bound", "max_over_bound"])
    for shape in args.shapes:
        g = survey(shape, args.samples, cfg, args.seed)
        b = upper_bound(shape)
        out.writerow(["x".join(map(str, shape)), args.samples,
                      f"{g.mean():.4f}", f"{g.max():.4f}", f"{b:.4f}", f"{g.max() / b:.4f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
