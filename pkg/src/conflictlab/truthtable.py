"""Truth tables of total Boolean functions, subcubes, and the spec grammar.

A function f on n variables is stored bit-packed: bit number
idx(x) = sum_i x_i * 2^(i-1) of the ``bits`` integer holds f(x), so x_1 is
the least significant position.  Points are strings over {0,1} written
x_1 x_2 ... x_n left to right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MAX_ARITY = 20

_FAMILIES = ("AND", "OR", "XOR", "MAJ", "CONST")


class SpecError(ValueError):
    """Malformed function spec string or arity out of range."""


@dataclass(frozen=True)
class TruthTable:
    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ARITY:
            raise SpecError(f"arity {self.n} outside [1, {MAX_ARITY}]")
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise SpecError(f"table value does not fit in 2^{self.n} bits")

    @property
    def size(self) -> int:
        return 1 << self.n

    def value_at_index(self, idx: int) -> int:
        return (self.bits >> idx) & 1

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1


def point_index(x: str) -> int:
    """idx(x) with x_1 least significant."""
    return int(x[::-1], 2)


def index_point(idx: int, n: int) -> str:
    return format(idx, f"0{n}b")[::-1]


def all_points(n: int):
    for idx in range(1 << n):
        yield index_point(idx, n)


def flip(x: str, block) -> str:
    """Flip the bits of x at the 1-based indices in block."""
    chars = list(x)
    for i in block:
        chars[i - 1] = "1" if chars[i - 1] == "0" else "0"
    return "".join(chars)


def evaluate(t: TruthTable, x: str) -> int:
    if len(x) != t.n:
        raise ValueError(f"point length {len(x)} != arity {t.n}")
    return t.value_at_index(point_index(x))


@dataclass(frozen=True)
class Subcube:
    """Partial assignment: variable i is fixed iff bit i-1 of mask is set,
    in which case its value is bit i-1 of fixed."""

    n: int
    mask: int = 0
    fixed: int = 0

    def __post_init__(self):
        if self.fixed & ~self.mask:
            raise ValueError("fixed values outside the mask")

    @classmethod
    def full(cls, n: int) -> "Subcube":
        return cls(n, 0, 0)

    def is_free(self, i: int) -> bool:
        return not (self.mask >> (i - 1)) & 1

    def free_vars(self):
        return [i for i in range(1, self.n + 1) if self.is_free(i)]

    @property
    def fixed_count(self) -> int:
        return bin(self.mask).count("1")

    @property
    def member_count(self) -> int:
        return 1 << (self.n - self.fixed_count)

    def fix(self, i: int, value: int) -> "Subcube":
        if not self.is_free(i):
            raise ValueError(f"variable {i} already fixed")
        bit = 1 << (i - 1)
        return Subcube(self.n, self.mask | bit, self.fixed | (bit if value else 0))

    def contains_index(self, idx: int) -> bool:
        return (idx & self.mask) == self.fixed

    def contains(self, x: str) -> bool:
        return self.contains_index(point_index(x))

    def member_indices(self):
        free = [b for b in range(self.n) if not (self.mask >> b) & 1]
        for combo in range(1 << len(free)):
            idx = self.fixed
            for j, b in enumerate(free):
                if (combo >> j) & 1:
                    idx |= 1 << b
            yield idx


def constant_on(t: TruthTable, s: Subcube):
    """Return 0 or 1 if f is constant on s, else None."""
    if s.n != t.n:
        raise ValueError("subcube arity mismatch")
    it = s.member_indices()
    first = t.value_at_index(next(it))
    for idx in it:
        if t.value_at_index(idx) != first:
            return None
    return first


def compose(f: TruthTable, g: TruthTable) -> TruthTable:
    """Table of f(g(block_1), ..., g(block_n)); block_i is the i-th group of
    m consecutive inputs, x_1..x_m first."""
    n, m = f.n, g.n
    if n * m > MAX_ARITY:
        raise SpecError(f"composed arity {n * m} exceeds {MAX_ARITY}")
    inner_mask = (1 << m) - 1
    bits = 0
    for idx in range(1 << (n * m)):
        outer = 0
        for i in range(n):
            block = (idx >> (i * m)) & inner_mask
            outer |= g.value_at_index(block) << i
        bits |= f.value_at_index(outer) << idx
    return TruthTable(n * m, bits)


def _family_table(name: str, n: int, const_bit: int | None = None) -> TruthTable:
    size = 1 << n
    if name == "AND":
        bits = 1 << (size - 1)
    elif name == "OR":
        bits = ((1 << size) - 1) & ~1
    elif name == "XOR":
        bits = sum((bin(idx).count("1") & 1) << idx for idx in range(size))
    elif name == "MAJ":
        if n % 2 == 0:
            raise SpecError("MAJ requires odd arity")
        bits = sum((bin(idx).count("1") > n // 2) << idx for idx in range(size))
    elif name == "CONST":
        bits = (1 << size) - 1 if const_bit else 0
    else:
        raise SpecError(f"unknown family {name!r}")
    return TruthTable(n, bits)


def _split_compose_args(body: str):
    depth = 0
    for pos, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:pos], body[pos + 1:]
    raise SpecError("COMPOSE needs two comma-separated specs")


def parse_spec(text: str) -> TruthTable:
    """Parse 'AND:n', 'OR:n', 'XOR:n', 'MAJ:n', 'CONST:n:b', 'n:HEX' or
    'COMPOSE(spec,spec)'."""
    text = text.strip()
    if text.upper().startswith("COMPOSE"):
        body = text[len("COMPOSE"):].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise SpecError("COMPOSE requires parenthesized arguments")
        left, right = _split_compose_args(body[1:-1])
        return compose(parse_spec(left), parse_spec(right))

    parts = text.split(":")
    head = parts[0].strip().upper()
    if head in _FAMILIES:
        if head == "CONST":
            if len(parts) != 3 or parts[2].strip() not in ("0", "1"):
                raise SpecError("CONST spec must be CONST:n:b with b in {0,1}")
            n = _parse_arity(parts[1])
            return _family_table(head, n, int(parts[2]))
        if len(parts) != 2:
            raise SpecError(f"{head} spec must be {head}:n")
        return _family_table(head, _parse_arity(parts[1]))

    if len(parts) == 2:
        n = _parse_arity(parts[0])
        hexpart = parts[1].strip().lower()
        if not re.fullmatch(r"[0-9a-f]+", hexpart):
            raise SpecError(f"malformed hex {parts[1]!r}")
        bits = int(hexpart, 16)
        if bits >= (1 << (1 << n)):
            raise SpecError(f"hex value needs more than 2^{n} bits")
        return TruthTable(n, bits)
    raise SpecError(f"cannot parse spec {text!r}")


def _parse_arity(token: str) -> int:
    token = token.strip()
    if not token.isdigit():
        raise SpecError(f"bad arity {token!r}")
    n = int(token)
    if not 1 <= n <= MAX_ARITY:
        raise SpecError(f"arity {n} outside [1, {MAX_ARITY}]")
    return n


def serialize(t: TruthTable) -> str:
    """Canonical 'n:HEX' form, lowercase, minimal digits."""
    return f"{t.n}:{t.bits:x}"
