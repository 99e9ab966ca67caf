"""Exact complexity measures: block sensitivity, certificates, sensitivity,
and optimal decision-tree depth via a memoized subcube DP.

All witnesses are deterministic: lowest point index among maximizers,
lexicographically least index sets, lowest variable index in DP argmins.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import trees
from .truthtable import Subcube, TruthTable, constant_on, evaluate, flip, index_point

MEASURE_MAX_ARITY = 12
SENSITIVITY_MAX_ARITY = 16


def _check_arity(t: TruthTable, cap: int):
    if t.n > cap:
        raise ValueError(f"arity {t.n} exceeds cap {cap}")


@dataclass(frozen=True)
class BlockPacking:
    point: str
    blocks: tuple  # tuple of frozensets of 1-based indices, pairwise disjoint


@dataclass(frozen=True)
class Certificate:
    point: str
    indices: frozenset
    value: int


def minimal_sensitive_blocks(t: TruthTable, x: str):
    """Inclusion-minimal B with f(x^B) != f(x), sorted by size then
    lexicographically."""
    _check_arity(t, MEASURE_MAX_ARITY)
    base = evaluate(t, x)
    found = []
    masks = []
    for size in range(1, t.n + 1):
        for block in combinations(range(1, t.n + 1), size):
            mask = 0
            for i in block:
                mask |= 1 << (i - 1)
            if any(m & mask == m for m in masks):
                continue
            if evaluate(t, flip(x, block)) != base:
                found.append(frozenset(block))
                masks.append(mask)
    return found


def block_sensitivity_at(t: TruthTable, x: str):
    """Maximum number of pairwise disjoint sensitive blocks at x, with a
    witness packing over minimal blocks (a maximal packing always shrinks
    to one over minimal blocks)."""
    blocks = minimal_sensitive_blocks(t, x)
    masks = []
    for b in blocks:
        mask = 0
        for i in b:
            mask |= 1 << (i - 1)
        masks.append(mask)

    best = {"count": 0, "picked": ()}

    def search(pos, used, picked):
        if len(picked) > best["count"]:
            best["count"] = len(picked)
            best["picked"] = tuple(picked)
        if pos == len(blocks) or len(picked) + (len(blocks) - pos) <= best["count"]:
            return
        if not masks[pos] & used:
            picked.append(pos)
            search(pos + 1, used | masks[pos], picked)
            picked.pop()
        search(pos + 1, used, picked)

    search(0, 0, [])
    packing = BlockPacking(x, tuple(blocks[i] for i in best["picked"]))
    return best["count"], packing


def block_sensitivity(t: TruthTable):
    """bs(f) with the lowest-index maximizing point as witness."""
    _check_arity(t, MEASURE_MAX_ARITY)
    best_k, best_packing = -1, None
    for idx in range(t.size):
        x = index_point(idx, t.n)
        k, packing = block_sensitivity_at(t, x)
        if k > best_k:
            best_k, best_packing = k, packing
    return best_k, best_packing.point, best_packing


def certificate_at(t: TruthTable, x: str):
    """Minimal certificate size at x with the lexicographically least
    minimum-size witness set."""
    _check_arity(t, MEASURE_MAX_ARITY)
    value = evaluate(t, x)
    for size in range(t.n + 1):
        for block in combinations(range(1, t.n + 1), size):
            s = Subcube.full(t.n)
            for i in block:
                s = s.fix(i, int(x[i - 1]))
            if constant_on(t, s) == value:
                return size, Certificate(x, frozenset(block), value)
    raise AssertionError("full assignment always certifies")


def certificate(t: TruthTable) -> int:
    return max(certificate_at(t, index_point(idx, t.n))[0] for idx in range(t.size))


def sensitivity(t: TruthTable) -> int:
    """Max over x of the number of sensitive single bits."""
    _check_arity(t, SENSITIVITY_MAX_ARITY)
    best = 0
    for idx in range(t.size):
        v = t.value_at_index(idx)
        count = sum(1 for b in range(t.n) if t.value_at_index(idx ^ (1 << b)) != v)
        best = max(best, count)
    return best


def decision_tree_depth(t: TruthTable):
    """Exact D(f) and one optimal tree, by DP over subcubes:
    D(s) = 0 if f constant on s, else 1 + min_i max(D(s_i0), D(s_i1))."""
    _check_arity(t, MEASURE_MAX_ARITY)
    memo = {}

    def solve(s: Subcube):
        key = (s.mask, s.fixed)
        if key in memo:
            return memo[key]
        const = constant_on(t, s)
        if const is not None:
            result = (0, None)
        else:
            best_depth, best_var = None, None
            for i in s.free_vars():
                d = 1 + max(solve(s.fix(i, 0))[0], solve(s.fix(i, 1))[0])
                if best_depth is None or d < best_depth:
                    best_depth, best_var = d, i
            result = (best_depth, best_var)
        memo[key] = result
        return result

    def build(s: Subcube):
        d, var = solve(s)
        if var is None:
            return trees.Leaf(constant_on(t, s))
        return trees.Node(var, build(s.fix(var, 0)), build(s.fix(var, 1)))

    root = Subcube.full(t.n)
    d, _ = solve(root)
    return d, build(root)
