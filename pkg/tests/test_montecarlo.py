import random
from fractions import Fraction

import pytest

from conflictlab import conflict, montecarlo, trees
from conflictlab.conflict import DistributionPair, walk_stats, witness_pair
from conflictlab.truthtable import TruthTable, parse_spec

from conftest import random_nonconstant_tables

IDENTITY = TruthTable(1, 0b10)
IDENTITY_PAIR = DistributionPair({"0": Fraction(1)}, {"1": Fraction(1)})
IDENTITY_TREE = trees.Node(1, trees.Leaf(0), trees.Leaf(1))


def test_identity_walk_always_stops_at_root():
    sim = montecarlo.simulate_walk(IDENTITY, IDENTITY_PAIR, IDENTITY_TREE, 1000, 0)
    assert sim.mean == 1.0
    assert sim.distribution == {1: 1.0}
    assert sim.stderr == 0.0


def test_seed_reproducibility():
    t = parse_spec("AND:2")
    pair = witness_pair(t)
    tree = conflict.min_expected_conflict(t, pair).tree
    a = montecarlo.simulate_walk(t, pair, tree, 1000, 1)
    b = montecarlo.simulate_walk(t, pair, tree, 1000, 1)
    assert a == b
    c = montecarlo.simulate_walk(t, pair, tree, 1000, 2)
    assert a != c


def test_distribution_sums_to_one_and_mean_consistent():
    t = parse_spec("OR:2")
    pair = witness_pair(t)
    tree = conflict.min_expected_conflict(t, pair).tree
    sim = montecarlo.simulate_walk(t, pair, tree, 50000, 11)
    assert abs(sum(sim.distribution.values()) - 1.0) < 1e-12
    assert abs(sim.mean - sum(r * p for r, p in sim.distribution.items())) < 1e-12


def test_agreement_with_exact_battery():
    """Empirical per-r frequencies within 4 standard errors of the exact walk
    distribution, over a fixed battery of instances."""
    rng = random.Random(42)
    battery = [parse_spec(s) for s in ("OR:2", "AND:2", "XOR:2", "XOR:3", "MAJ:3")]
    battery += random_nonconstant_tables(3, 3, seed=77)
    n_samples = 100000
    for i, t in enumerate(battery):
        pair = witness_pair(t)
        tree = conflict.min_expected_conflict(t, pair).tree
        exact = walk_stats(t, pair, tree)
        sim = montecarlo.simulate_walk(t, pair, tree, n_samples, seed=100 + i)
        assert abs(sim.mean - float(exact.expectation)) <= 4 * max(sim.stderr, 1e-9)
        for r, p in exact.distribution.items():
            p = float(p)
            se = max((p * (1 - p) / n_samples) ** 0.5, 1e-9)
            assert abs(sim.distribution.get(r, 0.0) - p) <= 4 * se


def test_walks_terminate_within_depth():
    for t in random_nonconstant_tables(3, 5, seed=9):
        pair = witness_pair(t)
        tree = conflict.min_expected_conflict(t, pair).tree
        sim = montecarlo.simulate_walk(t, pair, tree, 2000, 3)
        assert max(sim.distribution) <= trees.depth(tree)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        montecarlo.simulate_walk(IDENTITY, IDENTITY_PAIR, IDENTITY_TREE, 0, 0)
    with pytest.raises(conflict.ConstantFunctionError):
        montecarlo.simulate_walk(parse_spec("CONST:2:0"), IDENTITY_PAIR,
                                 IDENTITY_TREE, 10, 0)
    with pytest.raises(ValueError):
        montecarlo.simulate_walk(parse_spec("OR:2"), witness_pair(parse_spec("OR:2")),
                                 trees.Leaf(1), 10, 0)
