import pytest

from conflictlab.truthtable import (
    SpecError,
    Subcube,
    TruthTable,
    all_points,
    compose,
    constant_on,
    evaluate,
    parse_spec,
    point_index,
    serialize,
)


def test_parse_named_families():
    assert parse_spec("AND:2").bits == 8
    assert parse_spec("2:08").bits == 8
    assert parse_spec("CONST:3:0").bits == 0
    assert parse_spec("OR:2").bits == 0b1110


def test_serialize_canonical():
    assert serialize(parse_spec("AND:2")) == "2:8"
    assert serialize(parse_spec("CONST:1:1")) == "1:3"
    assert serialize(parse_spec("OR:2")) == "2:e"


@pytest.mark.parametrize("bad", [
    "AND", "AND:0", "AND:21", "MAJ:4", "CONST:2:2", "2:zz", "1:abc",
    "COMPOSE(AND:2)", "FOO:3", "2:100",
])
def test_parse_rejects(bad):
    with pytest.raises(SpecError):
        parse_spec(bad)


def test_eval_examples():
    assert evaluate(parse_spec("AND:2"), "11") == 1
    assert evaluate(parse_spec("AND:2"), "10") == 0
    assert evaluate(parse_spec("XOR:3"), "101") == 0


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        evaluate(parse_spec("AND:2"), "111")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_families_match_definitions(n):
    and_t = parse_spec(f"AND:{n}")
    or_t = parse_spec(f"OR:{n}")
    xor_t = parse_spec(f"XOR:{n}")
    for x in all_points(n):
        ones = x.count("1")
        assert evaluate(and_t, x) == (ones == n)
        assert evaluate(or_t, x) == (ones > 0)
        assert evaluate(xor_t, x) == ones % 2
    if n % 2 == 1:
        maj_t = parse_spec(f"MAJ:{n}")
        for x in all_points(n):
            assert evaluate(maj_t, x) == (x.count("1") > n // 2)


def test_roundtrip_families():
    for spec in ["AND:12", "OR:12", "XOR:10", "MAJ:11", "CONST:12:1", "3:a5"]:
        t = parse_spec(spec)
        assert parse_spec(serialize(t)) == t


def test_roundtrip_all_small_tables():
    for n in (1, 2, 3):
        for bits in range(1 << (1 << n)):
            t = TruthTable(n, bits)
            assert parse_spec(serialize(t)) == t


def test_subcube_basics():
    s = Subcube.full(3)
    assert s.member_count == 8 and s.fixed_count == 0
    s01 = s.fix(1, 0).fix(2, 1)
    assert s01.member_count == 2
    assert s01.contains("010") and s01.contains("011")
    assert not s01.contains("110")
    with pytest.raises(ValueError):
        s01.fix(1, 1)


def test_constant_on():
    and2 = parse_spec("AND:2")
    assert constant_on(and2, Subcube.full(2)) is None
    assert constant_on(and2, Subcube.full(2).fix(1, 0)) == 0
    const = parse_spec("CONST:3:1")
    assert constant_on(const, Subcube.full(3).fix(2, 1)) == 1


def test_compose_examples():
    and2 = parse_spec("AND:2")
    or2 = parse_spec("OR:2")
    assert compose(and2, and2) == parse_spec("AND:4")
    xor2 = parse_spec("XOR:2")
    assert compose(xor2, xor2) == parse_spec("XOR:4")
    # blocks (1,1)(0,0): OR of second block is 0, forcing the AND to 0
    assert evaluate(compose(and2, or2), "1100") == 0


def test_compose_identity():
    identity = TruthTable(1, 0b10)
    for spec in ["AND:3", "XOR:4", "MAJ:3"]:
        t = parse_spec(spec)
        assert compose(t, identity) == t


def test_compose_block_order():
    # f = x2 on two inputs; inner = AND:2; result selects the second block
    second = TruthTable(2, 0)
    for x in all_points(2):
        if x[1] == "1":
            second = TruthTable(2, second.bits | (1 << point_index(x)))
    composed = compose(second, parse_spec("AND:2"))
    for x in all_points(4):
        assert evaluate(composed, x) == (x[2] == "1" and x[3] == "1")


def test_compose_arity_overflow():
    with pytest.raises(SpecError):
        compose(parse_spec("AND:5"), parse_spec("AND:5"))


def test_parse_compose_spec():
    t = parse_spec("COMPOSE(AND:2,OR:2)")
    assert t.n == 4
    nested = parse_spec("COMPOSE(COMPOSE(AND:2,OR:2),XOR:1)")
    assert nested == t
