"""Explicit decision trees: validation, paths, enumeration, text format.

Text grammar: a leaf is ``0`` or ``1``; an internal node is
``(x<i> <child for x_i=0> <child for x_i=1>)``, e.g. ``(x1 (x2 0 1) 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .truthtable import Subcube, TruthTable, all_points, constant_on

ENUMERATION_MAX_ARITY = 3


@dataclass(frozen=True)
class Leaf:
    value: int


@dataclass(frozen=True)
class Node:
    var: int       # 1-based queried variable
    low: "Node | Leaf"   # child taken when the variable is 0
    high: "Node | Leaf"  # child taken when the variable is 1


def depth(tree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(depth(tree.low), depth(tree.high))


def internal_nodes(tree):
    if isinstance(tree, Node):
        yield tree
        yield from internal_nodes(tree.low)
        yield from internal_nodes(tree.high)


def check_well_formed(tree, n: int, _seen: frozenset = frozenset()):
    """Raise if a variable is out of range or repeats on a path."""
    if isinstance(tree, Leaf):
        if tree.value not in (0, 1):
            raise ValueError(f"bad leaf value {tree.value}")
        return
    if not 1 <= tree.var <= n:
        raise ValueError(f"variable x{tree.var} out of range for arity {n}")
    if tree.var in _seen:
        raise ValueError(f"variable x{tree.var} repeats on a path")
    seen = _seen | {tree.var}
    check_well_formed(tree.low, n, seen)
    check_well_formed(tree.high, n, seen)


def evaluate_tree(tree, x: str) -> int:
    while isinstance(tree, Node):
        tree = tree.high if x[tree.var - 1] == "1" else tree.low
    return tree.value


def validate(tree, t: TruthTable) -> bool:
    """True iff every input reaches a leaf labeled with its function value."""
    check_well_formed(tree, t.n)
    for idx, x in enumerate(all_points(t.n)):
        if evaluate_tree(tree, x) != t.value_at_index(idx):
            return False
    return True


def path_of(tree, x: str):
    """Internal nodes visited by x, root first."""
    path = []
    while isinstance(tree, Node):
        path.append(tree)
        tree = tree.high if x[tree.var - 1] == "1" else tree.low
    return path


def enumerate_trees(t: TruthTable):
    """Every reduced decision tree computing t, in deterministic order.

    Reduced means no query inside a constant subcube and no variable
    repeating on a path.  Order: root variable ascending, then recursively
    over the 0-child and 1-child."""
    if t.n > ENUMERATION_MAX_ARITY:
        raise ValueError(f"enumeration capped at arity {ENUMERATION_MAX_ARITY}")
    yield from _enumerate(t, Subcube.full(t.n))


def _enumerate(t, s):
    const = constant_on(t, s)
    if const is not None:
        yield Leaf(const)
        return
    for i in s.free_vars():
        lows = list(_enumerate(t, s.fix(i, 0)))
        highs = list(_enumerate(t, s.fix(i, 1)))
        for low in lows:
            for high in highs:
                yield Node(i, low, high)


def to_text(tree) -> str:
    if isinstance(tree, Leaf):
        return str(tree.value)
    return f"(x{tree.var} {to_text(tree.low)} {to_text(tree.high)})"


def parse_tree(text: str):
    tree, rest = _parse(text.strip())
    if rest.strip():
        raise ValueError(f"trailing text after tree: {rest!r}")
    return tree


def _parse(text: str):
    text = text.lstrip()
    if not text:
        raise ValueError("empty tree text")
    if text[0] in "01":
        return Leaf(int(text[0])), text[1:]
    if text[0] != "(":
        raise ValueError(f"expected leaf or '(' at {text[:10]!r}")
    body = text[1:].lstrip()
    if not body.startswith("x"):
        raise ValueError("internal node must start with a variable 'x<i>'")
    pos = 1
    while pos < len(body) and body[pos].isdigit():
        pos += 1
    if pos == 1:
        raise ValueError("missing variable index")
    var = int(body[1:pos])
    low, rest = _parse(body[pos:])
    high, rest = _parse(rest)
    rest = rest.lstrip()
    if not rest.startswith(")"):
        raise ValueError("missing ')'")
    return Node(var, low, high), rest[1:]
