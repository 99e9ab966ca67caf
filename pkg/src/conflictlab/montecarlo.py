"""Seeded stochastic simulation of the tree random walk.

Independent cross-check of the exact engine: branch probabilities are
computed in exact rationals, converted to double precision only at the
comparison with a uniform variate.  Generator: numpy default_rng (PCG64),
consumed in a fixed preorder traversal, so results are bit-identical for
a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import trees
from .conflict import DistributionPair, _branch_probs, _require_nonconstant
from .truthtable import TruthTable

GENERATOR_NAME = "numpy PCG64"


@dataclass
class SimResult:
    n_samples: int
    mean: float
    distribution: dict   # r -> empirical Pr[X = r]
    stderr: float
    seed: int
    generator: str = GENERATOR_NAME


def simulate_walk(t: TruthTable, pair: DistributionPair, tree, n_samples: int,
                  seed: int) -> SimResult:
    """Run n_samples independent walks from the root and tally stop depths.

    Walks are advanced node by node: all walks sitting at a node draw
    uniforms together and split into left / right / stop, which is
    distributionally identical to simulating each walk separately."""
    _require_nonconstant(t)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    pair.check_against(t)
    if not trees.validate(tree, t):
        raise ValueError("tree does not compute the function")

    rng = np.random.default_rng(seed)
    counts = {}

    def descend(node, walkers, m0, m1, depth):
        if walkers == 0:
            return
        assert isinstance(node, trees.Node), "walk mass leaked into a leaf"
        assert m0 and m1, "walk mass reached a zero-mass subcube"
        i = node.var
        left, right, _ = _branch_probs(m0, m1, i)
        p_left = float(left)
        p_right = float(right)
        u = rng.random(walkers)
        went_left = int(np.count_nonzero(u < p_left))
        went_right = int(np.count_nonzero((u >= p_left) & (u < p_left + p_right)))
        stopped = walkers - went_left - went_right
        if stopped:
            r = depth + 1
            counts[r] = counts.get(r, 0) + stopped
        descend(node.low, went_left,
                {x: w for x, w in m0.items() if x[i - 1] == "0"},
                {x: w for x, w in m1.items() if x[i - 1] == "0"}, depth + 1)
        descend(node.high, went_right,
                {x: w for x, w in m0.items() if x[i - 1] == "1"},
                {x: w for x, w in m1.items() if x[i - 1] == "1"}, depth + 1)

    m0 = {x: w for x, w in pair.mu0.items() if w > 0}
    m1 = {x: w for x, w in pair.mu1.items() if w > 0}
    descend(tree, n_samples, m0, m1, 0)

    total = sum(counts.values())
    assert total == n_samples
    mean = sum(r * c for r, c in counts.items()) / n_samples
    if n_samples > 1:
        var = sum(c * (r - mean) ** 2 for r, c in counts.items()) / (n_samples - 1)
    else:
        var = 0.0
    stderr = math.sqrt(var / n_samples)
    distribution = {r: c / n_samples for r, c in sorted(counts.items())}
    return SimResult(n_samples, mean, distribution, stderr, seed)
