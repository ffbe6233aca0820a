"""Label species: finite sets of block decorations with relabeling and restriction.

A label is a pair ``(tag, payload)``.  Payloads are tuples whose layout each
species documents; for group-valued labels the payload lists group element
indices aligned with the sorted atoms of the block.
"""
from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from itertools import permutations, product
from math import factorial
from typing import NamedTuple, Sequence

from .foundation import Bijection, GroundSet


class FiniteGroup:
    """A finite group given by a multiplication table; index 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("table must be square and nonempty")
        elems = range(n)
        if any(not 0 <= v < n for row in self.table for v in row):
            raise ValueError("table entries out of range")
        if any(self.table[0][a] != a or self.table[a][0] != a for a in elems):
            raise ValueError("index 0 must be the identity")
        for a in elems:
            for b in elems:
                ab = self.table[a][b]
                for c in elems:
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")
        inv = []
        for a in elems:
            cands = [b for b in elems if self.table[a][b] == 0]
            if len(cands) != 1 or self.table[cands[0]][a] != 0:
                raise ValueError("table has no two-sided inverses")
            inv.append(cands[0])
        self.inverses = tuple(inv)
        self.name = name or f"G{n}"

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name})"


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def make_signed_group(group: FiniteGroup) -> FiniteGroup:
    """G × S₂ with +g stored as g and -g stored as |G| + g."""
    n = group.order

    def mul(a: int, b: int) -> int:
        sa, ga = divmod(a, n)
        sb, gb = divmod(b, n)
        return ((sa + sb) % 2) * n + group.mul(ga, gb)

    table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return FiniteGroup(table, name=f"{group.name}xS2")


def signed_part(group: FiniteGroup, element: int) -> tuple[int, int]:
    """Split an element of a signed group into (sign, underlying element)."""
    half = group.order // 2
    s, g = divmod(element, half)
    return (-1 if s else 1), g


class Label(NamedTuple):
    tag: str
    payload: tuple


class LabelSpecies(ABC):
    """A finite set species Q with restriction maps making it a comonoid."""

    tag: str = "abstract"
    cocommutative: bool = True

    def __init__(self):
        self._cache: dict[GroundSet, tuple[Label, ...]] = {}
        self._lock = threading.Lock()

    @property
    def is_trivial(self) -> bool:
        return False

    def enumerate(self, block: Sequence[int]) -> tuple[Label, ...]:
        """All labels on a nonempty block, in a fixed order."""
        block = GroundSet(block)
        if not block:
            raise ValueError("labels live on nonempty blocks only")
        with self._lock:
            hit = self._cache.get(block)
        if hit is None:
            hit = tuple(sorted(Label(self.tag, p) for p in self._payloads(block)))
            with self._lock:
                self._cache[block] = hit
        return hit

    def count(self, size: int) -> int:
        return len(self.enumerate(GroundSet.interval(size)))

    @abstractmethod
    def _payloads(self, block: GroundSet) -> list[tuple]:
        ...

    @abstractmethod
    def relabel(self, sigma: Bijection, label: Label) -> Label:
        """Transport a label on ``sigma.domain`` to ``sigma.codomain``."""

    @abstractmethod
    def restrict(self, label: Label, block: GroundSet, sub: GroundSet) -> Label:
        """Restrict a label on ``block`` to a nonempty subset."""

    @abstractmethod
    def encode(self, label: Label) -> str:
        ...

    @abstractmethod
    def decode(self, text: str, block: GroundSet) -> Label:
        ...

    def _check(self, label: Label) -> None:
        if label.tag != self.tag:
            raise ValueError(f"label {label} does not belong to species {self.tag}")

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.tag == other.tag

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.tag})"


class TrivialLabel(LabelSpecies):
    """One label per block; the free monoid on it is the set partition species."""

    tag = "trivial"

    @property
    def is_trivial(self) -> bool:
        return True

    def _payloads(self, block):
        return [()]

    def relabel(self, sigma, label):
        self._check(label)
        return label

    def restrict(self, label, block, sub):
        self._check(label)
        return label

    def encode(self, label):
        return "·"

    def decode(self, text, block):
        if text not in ("", "·"):
            raise ValueError(f"trivial labels carry no data, got {text!r}")
        return Label(self.tag, ())


def _parse_indices(text: str, size: int, order: int) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed group label {text!r}") from exc
    if len(values) != size or any(not 0 <= v < order for v in values):
        raise ValueError(f"group label {text!r} does not fit a block of size {size}")
    return values


class MapLabel(LabelSpecies):
    """Arbitrary functions B → G; relabeling sends f to f∘σ⁻¹."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.tag = f"map:{group.name}"
        super().__init__()

    def _payloads(self, block):
        return list(product(range(self.group.order), repeat=len(block)))

    def relabel(self, sigma, label):
        self._check(label)
        moved = {sigma(a): v for a, v in zip(sigma.domain, label.payload)}
        return Label(self.tag, tuple(moved[b] for b in sorted(moved)))

    def restrict(self, label, block, sub):
        self._check(label)
        values = dict(zip(block, label.payload))
        return Label(self.tag, tuple(values[a] for a in sub))

    def encode(self, label):
        return ",".join(map(str, label.payload))

    def decode(self, text, block):
        return Label(self.tag, _parse_indices(text, len(block), self.group.order))


class OrbitLabel(LabelSpecies):
    """Functions B → G modulo left multiplication.

    The stored representative takes the identity at the minimum atom.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.tag = f"orbit:{group.name}"
        super().__init__()

    def _canonical(self, values: Sequence[int]) -> tuple[int, ...]:
        shift = self.group.inv(values[0])
        return tuple(self.group.mul(shift, v) for v in values)

    def _payloads(self, block):
        return [(0,) + rest for rest in product(range(self.group.order), repeat=len(block) - 1)]

    def relabel(self, sigma, label):
        self._check(label)
        moved = {sigma(a): v for a, v in zip(sigma.domain, label.payload)}
        return Label(self.tag, self._canonical([moved[b] for b in sorted(moved)]))

    def restrict(self, label, block, sub):
        self._check(label)
        values = dict(zip(block, label.payload))
        return Label(self.tag, self._canonical([values[a] for a in sub]))

    def encode(self, label):
        return ",".join(map(str, label.payload))

    def decode(self, text, block):
        values = _parse_indices(text, len(block), self.group.order)
        return Label(self.tag, self._canonical(values))


class CyclicOrderLabel(LabelSpecies):
    """Cyclic orders on a block, written as the word starting at the minimum.

    Restriction keeps the induced cyclic order (the first-return map), so the
    free monoid on this species models permutations as sets of cycles.
    """

    tag = "cyclic"

    @staticmethod
    def _rotate(word: Sequence[int]) -> tuple[int, ...]:
        k = word.index(min(word))
        return tuple(word[k:]) + tuple(word[:k])

    def _payloads(self, block):
        first, rest = block[0], block[1:]
        return [(first,) + p for p in permutations(rest)]

    def relabel(self, sigma, label):
        self._check(label)
        return Label(self.tag, self._rotate([sigma(a) for a in label.payload]))

    def restrict(self, label, block, sub):
        self._check(label)
        keep = set(sub)
        return Label(self.tag, self._rotate([a for a in label.payload if a in keep]))

    def encode(self, label):
        return "(" + " ".join(map(str, label.payload)) + ")"

    def decode(self, text, block):
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"cyclic order must be parenthesized, got {text!r}")
        try:
            word = [int(a) for a in body[1:-1].replace(",", " ").split()]
        except ValueError as exc:
            raise ValueError(f"malformed cyclic order {text!r}") from exc
        if sorted(word) != list(block):
            raise ValueError(f"cyclic order {text!r} is not on block {block!r}")
        return Label(self.tag, self._rotate(word))


class ConnectedSumLabel(LabelSpecies):
    """Disjoint union of two label species; payload is (summand, inner label)."""

    def __init__(self, first: LabelSpecies, second: LabelSpecies):
        self.summands = (first, second)
        self.tag = f"sum({first.tag},{second.tag})"
        self.cocommutative = first.cocommutative and second.cocommutative
        super().__init__()

    def _payloads(self, block):
        return [(i, inner) for i, q in enumerate(self.summands) for inner in q.enumerate(block)]

    def relabel(self, sigma, label):
        self._check(label)
        i, inner = label.payload
        return Label(self.tag, (i, self.summands[i].relabel(sigma, inner)))

    def restrict(self, label, block, sub):
        self._check(label)
        i, inner = label.payload
        return Label(self.tag, (i, self.summands[i].restrict(inner, block, sub)))

    def encode(self, label):
        i, inner = label.payload
        return ("L:" if i == 0 else "R:") + self.summands[i].encode(inner)

    def decode(self, text, block):
        head, _, rest = text.partition(":")
        if head not in ("L", "R"):
            raise ValueError(f"connected-sum label must start with L: or R:, got {text!r}")
        i = 0 if head == "L" else 1
        return Label(self.tag, (i, self.summands[i].decode(rest, block)))


def cyclic_order_count(size: int) -> int:
    return factorial(size - 1)
