"""Conflict-complexity engine.

A distribution pair puts exact rational mass on the 0-preimage and the
1-preimage of a function.  A random walk on a decision tree moves left
with probability min{alpha, beta}, right with probability
1 - max{alpha, beta}, and stops with probability |alpha - beta|, where
alpha and beta are the conditional probabilities (under each side of the
pair, restricted to the node's subcube) that the queried variable is 0.

This module computes exact walk statistics on explicit trees, the exact
minimum over all trees of the expected stopping time (a subcube DP), the
point-mass/uniform witness pair built from a maximum block packing, the
per-node analysis along the witness point's path, and a heuristic search
over pairs.  Everything on the exact path uses Fraction arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import measures, trees
from .truthtable import (
    Subcube,
    TruthTable,
    constant_on,
    evaluate,
    flip,
    index_point,
    point_index,
)

DP_MAX_ARITY = 12
SEARCH_MAX_ARITY = 10

ZERO = Fraction(0)
ONE = Fraction(1)


class ConstantFunctionError(ValueError):
    """Conflict quantities need both preimages nonempty."""


@dataclass(frozen=True)
class DistributionPair:
    """Exact rational distributions mu0 on f^-1(0) and mu1 on f^-1(1)."""

    mu0: dict
    mu1: dict

    def check_against(self, t: TruthTable):
        for side, dist, want in (("mu0", self.mu0, 0), ("mu1", self.mu1, 1)):
            total = ZERO
            for x, w in dist.items():
                if w < 0:
                    raise ValueError(f"{side} has negative mass at {x}")
                if evaluate(t, x) != want:
                    raise ValueError(f"{side} support point {x} has f(x) != {want}")
                total += w
            if total != 1:
                raise ValueError(f"{side} sums to {total}, not 1")


@dataclass(frozen=True)
class ConditionalView:
    """A pair restricted to a subcube and renormalized per side."""

    subcube: Subcube
    mu0: dict
    mu1: dict
    zero_mass_0: bool
    zero_mass_1: bool


@dataclass
class NodeStat:
    path: str          # branch string from the root, '' for the root
    var: int
    reach: Fraction
    stop: Fraction


@dataclass
class WalkStats:
    nodes: list
    distribution: dict     # r -> Pr[X = r], exact
    expectation: Fraction


@dataclass
class ChiBound:
    table: TruthTable
    pair: DistributionPair
    value: Fraction
    tree: object
    provenance: str        # "witness" or "heuristic"


def restrict_to(dist: dict, s: Subcube) -> dict:
    return {x: w for x, w in dist.items() if w > 0 and s.contains(x)}


def _normalized(dist: dict) -> dict:
    total = sum(dist.values(), ZERO)
    return {x: w / total for x, w in dist.items()}


def conditional_view(pair: DistributionPair, s: Subcube) -> ConditionalView:
    m0 = restrict_to(pair.mu0, s)
    m1 = restrict_to(pair.mu1, s)
    return ConditionalView(
        s,
        _normalized(m0) if m0 else {},
        _normalized(m1) if m1 else {},
        zero_mass_0=not m0,
        zero_mass_1=not m1,
    )


def alpha_beta(view: ConditionalView, i: int):
    """(alpha, beta): probability the queried variable equals 0 under each
    renormalized side."""
    if view.zero_mass_0 or view.zero_mass_1:
        raise ValueError("alpha/beta undefined when a side has zero mass")
    if not view.subcube.is_free(i):
        raise ValueError(f"variable {i} is fixed in the subcube")
    alpha = sum((w for x, w in view.mu0.items() if x[i - 1] == "0"), ZERO)
    beta = sum((w for x, w in view.mu1.items() if x[i - 1] == "0"), ZERO)
    return alpha, beta


def _branch_probs(m0: dict, m1: dict, i: int):
    """Left/right/stop probabilities from unnormalized masses."""
    tot0 = sum(m0.values(), ZERO)
    tot1 = sum(m1.values(), ZERO)
    alpha = sum((w for x, w in m0.items() if x[i - 1] == "0"), ZERO) / tot0
    beta = sum((w for x, w in m1.items() if x[i - 1] == "0"), ZERO) / tot1
    left = min(alpha, beta)
    right = 1 - max(alpha, beta)
    stop = abs(alpha - beta)
    return left, right, stop


def _require_nonconstant(t: TruthTable):
    if t.is_constant():
        raise ConstantFunctionError("constant function has an empty preimage")


def walk_stats(t: TruthTable, pair: DistributionPair, tree, check=True) -> WalkStats:
    """Exact reach/stop probabilities per internal node and the stopping-time
    distribution of the walk."""
    _require_nonconstant(t)
    if check:
        pair.check_against(t)
        if not trees.validate(tree, t):
            raise ValueError("tree does not compute the function")
    stats = []
    dist = {}

    def descend(node, path, reach, m0, m1, depth):
        if isinstance(node, trees.Leaf):
            return
        if reach == 0 or not m0 or not m1:
            stats.append(NodeStat(path, node.var, ZERO, ZERO))
            descend(node.low, path + "0", ZERO, {}, {}, depth + 1)
            descend(node.high, path + "1", ZERO, {}, {}, depth + 1)
            return
        i = node.var
        left, right, stop = _branch_probs(m0, m1, i)
        stats.append(NodeStat(path, i, reach, reach * stop))
        if reach * stop:
            r = depth + 1
            dist[r] = dist.get(r, ZERO) + reach * stop
        m0_low = {x: w for x, w in m0.items() if x[i - 1] == "0"}
        m1_low = {x: w for x, w in m1.items() if x[i - 1] == "0"}
        m0_high = {x: w for x, w in m0.items() if x[i - 1] == "1"}
        m1_high = {x: w for x, w in m1.items() if x[i - 1] == "1"}
        descend(node.low, path + "0", reach * left, m0_low, m1_low, depth + 1)
        descend(node.high, path + "1", reach * right, m0_high, m1_high, depth + 1)

    descend(tree, "", ONE, dict(pair.mu0), dict(pair.mu1), 0)
    total = sum(dist.values(), ZERO)
    assert total == 1, f"stop mass {total} != 1"
    expectation = sum((Fraction(r) * p for r, p in dist.items()), ZERO)
    return WalkStats(stats, dict(sorted(dist.items())), expectation)


def _fallback_tree(t: TruthTable, s: Subcube):
    """Any valid reduced tree on a subcube: query free variables, lowest
    index first, stopping at constant subcubes."""
    const = constant_on(t, s)
    if const is not None:
        return trees.Leaf(const)
    i = s.free_vars()[0]
    return trees.Node(i, _fallback_tree(t, s.fix(i, 0)), _fallback_tree(t, s.fix(i, 1)))


def min_expected_conflict(t: TruthTable, pair: DistributionPair) -> ChiBound:
    """Exact min over all decision trees computing t of E[X], with an
    attaining tree.

    DP over subcubes where both conditional sides have positive mass:
      cost(s) = 1 + min_i [ min{a,b} cost(s, i=0) + (1 - max{a,b}) cost(s, i=1) ]
    Subcubes with a zero-mass side cost 0 (the walk cannot reach them)."""
    _require_nonconstant(t)
    if t.n > DP_MAX_ARITY:
        raise ValueError(f"arity {t.n} exceeds cap {DP_MAX_ARITY}")
    pair.check_against(t)
    memo = {}

    def cost(s, m0, m1):
        if not m0 or not m1:
            return ZERO, None
        key = (s.mask, s.fixed)
        if key in memo:
            return memo[key]
        best, best_var = None, None
        for i in s.free_vars():
            left, right, _ = _branch_probs(m0, m1, i)
            value = ONE
            if left:
                m0l = {x: w for x, w in m0.items() if x[i - 1] == "0"}
                m1l = {x: w for x, w in m1.items() if x[i - 1] == "0"}
                value += left * cost(s.fix(i, 0), m0l, m1l)[0]
            if right:
                m0h = {x: w for x, w in m0.items() if x[i - 1] == "1"}
                m1h = {x: w for x, w in m1.items() if x[i - 1] == "1"}
                value += right * cost(s.fix(i, 1), m0h, m1h)[0]
            if best is None or value < best:
                best, best_var = value, i
        memo[key] = (best, best_var)
        return best, best_var

    def build(s, m0, m1):
        if not m0 or not m1:
            return _fallback_tree(t, s)
        _, var = cost(s, m0, m1)
        low = build(s.fix(var, 0),
                    {x: w for x, w in m0.items() if x[var - 1] == "0"},
                    {x: w for x, w in m1.items() if x[var - 1] == "0"})
        high = build(s.fix(var, 1),
                     {x: w for x, w in m0.items() if x[var - 1] == "1"},
                     {x: w for x, w in m1.items() if x[var - 1] == "1"})
        return trees.Node(var, low, high)

    root = Subcube.full(t.n)
    m0 = {x: w for x, w in pair.mu0.items() if w > 0}
    m1 = {x: w for x, w in pair.mu1.items() if w > 0}
    value, _ = cost(root, m0, m1)
    tree = build(root, m0, m1)
    return ChiBound(t, pair, value, tree, "witness")


def witness_pair(t: TruthTable) -> DistributionPair:
    """Point mass on a block-sensitivity maximizing point z, uniform over its
    block flips; sides swapped when f(z) = 1 so supports land on the right
    preimages."""
    _require_nonconstant(t)
    k, z, packing = measures.block_sensitivity(t)
    point_side = {z: ONE}
    uniform_side = {flip(z, b): Fraction(1, k) for b in packing.blocks}
    if evaluate(t, z) == 0:
        return DistributionPair(point_side, uniform_side)
    return DistributionPair(uniform_side, point_side)


@dataclass
class PathNodeReport:
    position: int          # r, 1-based along z's path
    var: int
    active_blocks: tuple   # indices (1-based into the packing) still active
    reach: Fraction        # |A^v| / k
    stop: Fraction         # Pr[X = r], 0 or 1/k


def zpath_analysis(t: TruthTable, tree):
    """Per-node stop/reach probabilities along the witness point's path,
    cross-checked exactly against walk_stats."""
    _require_nonconstant(t)
    if not trees.validate(tree, t):
        raise ValueError("tree does not compute the function")
    k, z, packing = measures.block_sensitivity(t)
    pair = witness_pair(t)
    stats = walk_stats(t, pair, tree, check=False)
    by_path = {s.path: s for s in stats.nodes}

    reports = []
    path_nodes = trees.path_of(tree, z)
    queried = []
    path_key = ""
    for r, node in enumerate(path_nodes, start=1):
        active = tuple(
            j for j, b in enumerate(packing.blocks, start=1)
            if not (b & set(queried))
        )
        union = set()
        for j in active:
            union |= packing.blocks[j - 1]
        reach = Fraction(len(active), k)
        stop = Fraction(1, k) if node.var in union else ZERO
        stat = by_path[path_key]
        assert stat.var == node.var
        assert stat.reach == reach, f"reach mismatch at r={r}"
        assert stat.stop == stop, f"stop mismatch at r={r}"
        reports.append(PathNodeReport(r, node.var, active, reach, stop))
        queried.append(node.var)
        path_key += z[node.var - 1]
    return reports


def chi_lower_bound(t: TruthTable) -> ChiBound:
    """Certified lower bound on the max-min conflict value: the exact
    tree-minimum under the witness pair.  Always at least (bs + 1) / 2."""
    pair = witness_pair(t)
    bound = min_expected_conflict(t, pair)
    k, _, _ = measures.block_sensitivity(t)
    assert bound.value >= Fraction(k + 1, 2), (
        f"witness bound {bound.value} below (bs+1)/2 = {Fraction(k + 1, 2)}"
    )
    return bound


def _random_weights(rng, points):
    return {x: Fraction(rng.randint(1, 64)) for x in points}


def maximize_pairs(t: TruthTable, budget: int = 200, seed: int = 0) -> ChiBound:
    """Heuristic search for a pair maximizing the exact tree-minimum.

    Candidates: the witness pair at every bs-maximizing point, then random
    restarts of coordinate-wise multiplicative perturbation on full-support
    pairs (step halving on rejection, restart on stagnation).  Any candidate
    yields a valid lower bound; budget counts exact DP evaluations in the
    perturbation phase."""
    _require_nonconstant(t)
    if t.n > SEARCH_MAX_ARITY:
        raise ValueError(f"arity {t.n} exceeds cap {SEARCH_MAX_ARITY}")

    best = None

    def consider(pair, provenance):
        nonlocal best
        bound = min_expected_conflict(t, pair)
        if best is None or bound.value > best.value:
            best = ChiBound(t, pair, bound.value, bound.tree, provenance)

    # (a) witness pairs at every maximizing point
    k_max, _, _ = measures.block_sensitivity(t)
    for idx in range(t.size):
        x = index_point(idx, t.n)
        k, packing = measures.block_sensitivity_at(t, x)
        if k != k_max:
            continue
        point_side = {x: ONE}
        uniform_side = {flip(x, b): Fraction(1, k) for b in packing.blocks}
        if evaluate(t, x) == 0:
            consider(DistributionPair(point_side, uniform_side), "witness")
        else:
            consider(DistributionPair(uniform_side, point_side), "witness")

    # (b) random restarts over full-support pairs
    rng = random.Random(seed)
    zeros = [index_point(i, t.n) for i in range(t.size) if t.value_at_index(i) == 0]
    ones = [index_point(i, t.n) for i in range(t.size) if t.value_at_index(i) == 1]
    evaluations = 0
    while evaluations < budget:
        w0 = _random_weights(rng, zeros)
        w1 = _random_weights(rng, ones)
        pair = DistributionPair(_normalized(w0), _normalized(w1))
        current = min_expected_conflict(t, pair).value
        evaluations += 1
        consider(pair, "heuristic")
        step = Fraction(1, 2)
        stagnant = 0
        while evaluations < budget and stagnant < 8:
            side = rng.choice((0, 1))
            weights = w0 if side == 0 else w1
            x = rng.choice(sorted(weights))
            factor = 1 + step if rng.random() < 0.5 else 1 / (1 + step)
            trial = dict(weights)
            trial[x] = trial[x] * factor
            trial_pair = (
                DistributionPair(_normalized(trial), _normalized(w1))
                if side == 0
                else DistributionPair(_normalized(w0), _normalized(trial))
            )
            value = min_expected_conflict(t, trial_pair).value
            evaluations += 1
            if value > current:
                current = value
                if side == 0:
                    w0 = trial
                else:
                    w1 = trial
                consider(trial_pair, "heuristic")
                stagnant = 0
            else:
                stagnant += 1
                step = step / 2 if step > Fraction(1, 64) else step
    return best
