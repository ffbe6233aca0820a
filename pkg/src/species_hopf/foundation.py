"""Finite sets, set partitions, integer partitions and finite posets.

Everything here is exact and immutable.  Scalars are ``fractions.Fraction``.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from itertools import permutations
from math import factorial, prod
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Ground sets and bijections


class GroundSet(tuple):
    """A finite set of nonzero integer atoms, stored strictly increasing."""

    __slots__ = ()

    def __new__(cls, atoms: Iterable[int] = ()):
        items = sorted(atoms)
        for a in items:
            if not isinstance(a, int) or isinstance(a, bool) or a == 0:
                raise ValueError(f"atoms must be nonzero integers, got {a!r}")
        for a, b in zip(items, items[1:]):
            if a == b:
                raise ValueError(f"duplicate atom {a}")
        return tuple.__new__(cls, items)

    @classmethod
    def _trusted(cls, atoms: Sequence[int]) -> "GroundSet":
        return tuple.__new__(cls, atoms)

    @classmethod
    def interval(cls, n: int) -> "GroundSet":
        """The set [n] = {1, ..., n}."""
        return tuple.__new__(cls, range(1, n + 1))

    @classmethod
    def signed_interval(cls, n: int) -> "GroundSet":
        """The set [±n] = {-n, ..., -1, 1, ..., n}."""
        return tuple.__new__(cls, [*range(-n, 0), *range(1, n + 1)])

    def union(self, *others: Iterable[int]) -> "GroundSet":
        merged = set(self)
        for o in others:
            merged.update(o)
        return GroundSet._trusted(sorted(merged))

    def intersection(self, other: Iterable[int]) -> "GroundSet":
        keep = set(other)
        return GroundSet._trusted([a for a in self if a in keep])

    def difference(self, other: Iterable[int]) -> "GroundSet":
        drop = set(other)
        return GroundSet._trusted([a for a in self if a not in drop])

    def issubset(self, other: Iterable[int]) -> bool:
        return set(self).issubset(other)

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self).isdisjoint(other)

    def subsets(self) -> Iterator["GroundSet"]:
        """All subsets, in order of the bitmask over the sorted atoms."""
        n = len(self)
        for mask in range(1 << n):
            yield GroundSet._trusted([self[i] for i in range(n) if mask >> i & 1])

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


class Bijection:
    """A bijection between two ground sets of equal size."""

    __slots__ = ("domain", "codomain", "_map")

    def __init__(self, mapping: dict[int, int]):
        image = set(mapping.values())
        if len(image) != len(mapping):
            raise ValueError("mapping is not injective")
        self._map = dict(mapping)
        self.domain = GroundSet(mapping)
        self.codomain = GroundSet(image)

    @classmethod
    def identity(cls, ground: Iterable[int]) -> "Bijection":
        return cls({a: a for a in ground})

    @classmethod
    def order_preserving(cls, source: Sequence[int], target: Sequence[int]) -> "Bijection":
        source, target = GroundSet(source), GroundSet(target)
        if len(source) != len(target):
            raise ValueError("sets of different sizes")
        return cls(dict(zip(source, target)))

    @classmethod
    def standardize(cls, source: Sequence[int]) -> "Bijection":
        """Order-preserving bijection from ``source`` onto [n]."""
        return cls.order_preserving(source, GroundSet.interval(len(source)))

    def __call__(self, atom: int) -> int:
        return self._map[atom]

    def image(self, atoms: Iterable[int]) -> GroundSet:
        return GroundSet(self._map[a] for a in atoms)

    def restrict(self, sub: Iterable[int]) -> "Bijection":
        return Bijection({a: self._map[a] for a in sub})

    def inverse(self) -> "Bijection":
        return Bijection({b: a for a, b in self._map.items()})

    def compose(self, first: "Bijection") -> "Bijection":
        """``self ∘ first``."""
        return Bijection({a: self._map[b] for a, b in first._map.items()})

    def items(self):
        return self._map.items()

    def __eq__(self, other) -> bool:
        return isinstance(other, Bijection) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self._map.items()))
        return f"Bijection({body})"


def bijections(source: Sequence[int], target: Sequence[int]) -> Iterator[Bijection]:
    source = tuple(source)
    for image in permutations(target):
        yield Bijection(dict(zip(source, image)))


# ---------------------------------------------------------------------------
# Set partitions


class SetPartition:
    """A partition of a ground set into nonempty blocks, ordered by minimum."""

    __slots__ = ("ground", "blocks", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], ground: Iterable[int] | None = None):
        bs = [GroundSet(b) for b in blocks]
        if any(len(b) == 0 for b in bs):
            raise ValueError("blocks must be nonempty")
        seen: set[int] = set()
        for b in bs:
            if not seen.isdisjoint(b):
                raise ValueError("blocks overlap")
            seen.update(b)
        full = GroundSet(seen)
        if ground is not None and GroundSet(ground) != full:
            raise ValueError("blocks do not cover the ground set")
        bs.sort(key=lambda b: b[0])
        self.ground = full
        self.blocks = tuple(bs)
        self._hash = hash(self.blocks)

    @classmethod
    def _trusted(cls, blocks: Sequence[GroundSet], ground: GroundSet) -> "SetPartition":
        obj = object.__new__(cls)
        obj.blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        obj.ground = ground
        obj._hash = hash(obj.blocks)
        return obj

    @classmethod
    def from_encoding(cls, text: str) -> "SetPartition":
        """Parse the canonical text form, e.g. ``"1 3|2"``; empty text is the empty partition."""
        text = text.strip()
        if text in ("", "∅"):
            return cls([])
        try:
            blocks = [[int(a) for a in part.split()] for part in text.split("|")]
        except ValueError as exc:
            raise ValueError(f"malformed set partition {text!r}") from exc
        return cls(blocks)

    def encode(self) -> str:
        return "|".join(" ".join(map(str, b)) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, atom: int) -> GroundSet:
        for b in self.blocks:
            if atom in b:
                return b
        raise KeyError(atom)

    def type(self) -> "IntegerPartition":
        return IntegerPartition(len(b) for b in self.blocks)

    def relabel(self, sigma: Bijection) -> "SetPartition":
        return SetPartition(sigma.image(b) for b in self.blocks)

    def meet(self, other: "SetPartition") -> "SetPartition":
        """Common refinement: nonempty pairwise intersections of blocks."""
        out = []
        for b in self.blocks:
            for c in other.blocks:
                inter = b.intersection(c)
                if inter:
                    out.append(inter)
        return SetPartition(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SetPartition") -> bool:
        return self.blocks < other.blocks

    def __repr__(self) -> str:
        return f"SetPartition({self.encode()!r})"


def refines(x: SetPartition, y: SetPartition) -> bool:
    """True iff every block of ``x`` lies inside a block of ``y``."""
    if x.ground != y.ground:
        raise ValueError("partitions of different ground sets")
    owner = {a: i for i, b in enumerate(y.blocks) for a in b}
    return all(len({owner[a] for a in b}) == 1 for b in x.blocks)


def _restricted_growth(n: int) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    word = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield list(word)
            return
        for v in range(top + 2):
            word[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def enumerate_partitions(ground: Iterable[int]) -> list[SetPartition]:
    """All set partitions of ``ground``, sorted by canonical encoding."""
    ground = GroundSet(ground)
    out = []
    for word in _restricted_growth(len(ground)):
        groups: dict[int, list[int]] = {}
        for atom, tag in zip(ground, word):
            groups.setdefault(tag, []).append(atom)
        out.append(SetPartition._trusted([GroundSet._trusted(g) for g in groups.values()], ground))
    out.sort()
    return out


def bell_number(n: int) -> int:
    """Bell number via the Bell triangle (independent of enumeration)."""
    if n < 0:
        raise ValueError("negative size")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


# ---------------------------------------------------------------------------
# Integer partitions


class IntegerPartition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        items = sorted(parts, reverse=True)
        if any(not isinstance(p, int) or p <= 0 for p in items):
            raise ValueError("parts must be positive integers")
        return tuple.__new__(cls, items)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def __add__(self, other) -> "IntegerPartition":
        return IntegerPartition(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def integer_partitions(n: int) -> list[IntegerPartition]:
    """Partitions of n in reverse lexicographic order: (n), (n-1,1), ..."""

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    return [IntegerPartition(p) for p in rec(n, n)]


class PartitionStats(NamedTuple):
    factorial_product: int      # λ! = ∏ λ_i!
    multiplicity_product: int   # λ^! = ∏ m_i!
    centralizer_order: int      # z_λ
    sign: int                   # (-1)^(n - ℓ)


def partition_stats(lam: Iterable[int]) -> PartitionStats:
    lam = IntegerPartition(lam)
    fact = prod(factorial(p) for p in lam)
    mult = prod(factorial(m) for m in lam.multiplicities().values())
    z = mult * prod(lam)
    sign = -1 if (lam.weight - lam.length) % 2 else 1
    return PartitionStats(fact, mult, z, sign)


def count_partitions_of_type(n: int, lam: Iterable[int]) -> int:
    """Number of set partitions of [n] whose block sizes form ``lam``."""
    lam = IntegerPartition(lam)
    if lam.weight != n:
        raise ValueError(f"partition {lam} does not have weight {n}")
    st = partition_stats(lam)
    return factorial(n) // (st.multiplicity_product * st.factorial_product)


# ---------------------------------------------------------------------------
# Finite posets


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite partial order given by its elements and a comparison.

    Down-sets and up-sets are kept as integer bitmasks.  Möbius values are
    memoized behind a lock so a poset may be shared between threads.
    """

    def __init__(
        self,
        elements: Sequence,
        leq: Callable | None = None,
        *,
        down_sets: Sequence[Iterable] | None = None,
        validate: bool = True,
    ):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("repeated poset elements")
        n = len(self.elements)
        down = [0] * n
        if down_sets is not None:
            for j, below in enumerate(down_sets):
                for x in below:
                    down[j] |= 1 << self.index[x]
        elif leq is not None:
            for j, y in enumerate(self.elements):
                for i, x in enumerate(self.elements):
                    if leq(x, y):
                        down[j] |= 1 << i
        else:
            raise ValueError("need leq or down_sets")
        up = [0] * n
        for j in range(n):
            for i in _bits(down[j]):
                up[i] |= 1 << j
        self._down = down
        self._up = up
        self._rank = [bin(m).count("1") for m in down]
        self._mobius: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()
        if validate:
            self._validate()

    def _validate(self) -> None:
        for i in range(len(self.elements)):
            if not self._down[i] >> i & 1:
                raise ValueError("relation is not reflexive")
            for j in _bits(self._down[i]):
                if j != i and self._down[j] >> i & 1:
                    raise ValueError("relation is not antisymmetric")
                if self._down[j] & ~self._down[i]:
                    raise ValueError("relation is not transitive")

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return bool(self._down[self.index[y]] >> self.index[x] & 1)

    def below(self, y) -> list:
        return [self.elements[i] for i in _bits(self._down[self.index[y]])]

    def above(self, x) -> list:
        return [self.elements[i] for i in _bits(self._up[self.index[x]])]

    def interval(self, x, y) -> list:
        mask = self._up[self.index[x]] & self._down[self.index[y]]
        return [self.elements[i] for i in _bits(mask)]

    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        n = len(self.elements)
        return tuple(tuple(bool(self._down[j] >> i & 1) for j in range(n)) for i in range(n))

    def minimal_elements(self) -> list:
        return [self.elements[i] for i in range(len(self)) if self._down[i] == 1 << i]

    def maximal_elements(self) -> list:
        return [self.elements[i] for i in range(len(self)) if self._up[i] == 1 << i]

    def mobius(self, x, y) -> int:
        """μ(x, y) from the recurrence Σ_{x≤z≤y} μ(x, z) = [x = y]."""
        i, j = self.index[x], self.index[y]
        key = (i, j)
        with self._lock:
            hit = self._mobius.get(key)
            if hit is not None:
                return hit
        if not self._down[j] >> i & 1:
            value = 0
        else:
            members = sorted(_bits(self._up[i] & self._down[j]), key=self._rank.__getitem__)
            local: dict[int, int] = {}
            for z in members:
                if z == i:
                    local[z] = 1
                    continue
                below_z = self._down[z]
                local[z] = -sum(v for w, v in local.items() if below_z >> w & 1)
            value = local[j]
            with self._lock:
                for z, v in local.items():
                    self._mobius.setdefault((i, z), v)
        with self._lock:
            self._mobius.setdefault(key, value)
        return value

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges as index pairs (lower, upper), sorted."""
        edges = []
        for j in range(len(self.elements)):
            strict = self._down[j] & ~(1 << j)
            covered = strict
            for z in _bits(strict):
                covered &= ~(self._down[z] & ~(1 << z))
            edges.extend((i, j) for i in _bits(covered))
        edges.sort()
        return edges


def mobius(poset: FinitePoset, x, y) -> int:
    return poset.mobius(x, y)


def is_order_isomorphism(f: Callable, source: FinitePoset, target: FinitePoset) -> bool:
    """Check that ``f`` is a bijection preserving and reflecting the order."""
    images = [f(x) for x in source.elements]
    if len(set(images)) != len(images) or set(images) != set(target.elements):
        return False
    for x, fx in zip(source.elements, images):
        for y, fy in zip(source.elements, images):
            if source.leq(x, y) != target.leq(fx, fy):
                return False
    return True


# ---------------------------------------------------------------------------
# Exact linear algebra


def invert_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a square matrix over the rationals."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        scale = aug[col][col]
        aug[col] = [v / scale for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def prune(terms: dict) -> dict:
    """Drop zero coefficients, returning a new dict."""
    return {k: v for k, v in terms.items() if v != 0}
