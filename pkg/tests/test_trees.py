import pytest

from conflictlab import measures, trees
from conflictlab.trees import Leaf, Node
from conflictlab.truthtable import TruthTable, all_points, parse_spec

from conftest import all_nonconstant_tables

AND2_TREE = Node(1, Leaf(0), Node(2, Leaf(0), Leaf(1)))
OR2_TREE = Node(1, Node(2, Leaf(0), Leaf(1)), Leaf(1))


def test_validate_examples():
    assert trees.validate(AND2_TREE, parse_spec("AND:2"))
    assert not trees.validate(Leaf(0), parse_spec("AND:2"))
    assert trees.validate(Leaf(1), parse_spec("CONST:3:1"))


def test_validate_rejects_bad_variables():
    with pytest.raises(ValueError):
        trees.validate(Node(3, Leaf(0), Leaf(1)), parse_spec("AND:2"))
    repeated = Node(1, Node(1, Leaf(0), Leaf(0)), Leaf(1))
    with pytest.raises(ValueError):
        trees.validate(repeated, parse_spec("OR:2"))


def test_path_of():
    path = trees.path_of(OR2_TREE, "00")
    assert [n.var for n in path] == [1, 2]
    assert [n.var for n in trees.path_of(OR2_TREE, "10")] == [1]
    assert trees.path_of(Leaf(1), "000") == []


def test_enumeration_base_cases():
    identity = TruthTable(1, 0b10)
    assert list(trees.enumerate_trees(identity)) == [Node(1, Leaf(0), Leaf(1))]
    assert list(trees.enumerate_trees(TruthTable(1, 0))) == [Leaf(0)]


def test_enumeration_or2():
    # frozen from direct recursive enumeration: both query orders, one tree each
    found = list(trees.enumerate_trees(parse_spec("OR:2")))
    assert len(found) == 2
    assert {tree.var for tree in found} == {1, 2}


def test_enumeration_is_valid_and_attains_depth():
    for n in (1, 2, 3):
        for t in all_nonconstant_tables(n):
            d = measures.decision_tree_depth(t)[0]
            depths = []
            for tree in trees.enumerate_trees(t):
                assert trees.validate(tree, t)
                depths.append(trees.depth(tree))
            assert min(depths) == d
            assert all(depth >= d for depth in depths)


def test_enumeration_distinct_and_deterministic():
    for t in all_nonconstant_tables(2) + [parse_spec("XOR:3"), parse_spec("MAJ:3")]:
        first = list(trees.enumerate_trees(t))
        assert len(set(first)) == len(first)
        assert first == list(trees.enumerate_trees(t))


def test_enumeration_cap():
    with pytest.raises(ValueError):
        next(trees.enumerate_trees(parse_spec("AND:4")))


def test_path_length_at_least_block_sensitivity():
    for n in (1, 2, 3):
        for t in all_nonconstant_tables(n):
            for tree in trees.enumerate_trees(t):
                for z in all_points(n):
                    k, _ = measures.block_sensitivity_at(t, z)
                    assert len(trees.path_of(tree, z)) >= k


def test_text_roundtrip():
    for tree in [AND2_TREE, OR2_TREE, Leaf(0), Leaf(1),
                 Node(2, Node(1, Leaf(1), Leaf(0)), Node(3, Leaf(0), Leaf(1)))]:
        text = trees.to_text(tree)
        assert trees.parse_tree(text) == tree
    assert trees.to_text(Node(1, Node(2, Leaf(0), Leaf(1)), Leaf(1))) == "(x1 (x2 0 1) 1)"


@pytest.mark.parametrize("bad", ["", "(x1 0)", "(x1 0 1", "2", "(y1 0 1)", "(x 0 1)", "0 1"])
def test_text_parse_rejects(bad):
    with pytest.raises(ValueError):
        trees.parse_tree(bad)
