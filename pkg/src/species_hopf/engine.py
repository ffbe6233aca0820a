"""The free commutative Hopf monoid on a label species.

Natural basis elements are labeled set partitions.  The product is disjoint
union and the coproduct splits every block along a decomposition, restricting
its label.  On each component the natural basis is partially ordered (a
partition lies below any partition obtained from it by merging compatible
blocks), and Möbius inversion over that order gives the m, p, e and h bases.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .foundation import (
    Bijection,
    FinitePoset,
    GroundSet,
    SetPartition,
    as_rational,
    enumerate_partitions,
    format_rational,
)
from .labels import Label, LabelSpecies, TrivialLabel
from .report import Report

BASES = ("natural", "m", "p", "e", "h")


class SizeGuardError(ValueError):
    """Raised when a component is too large for exhaustive poset work."""


class LabeledSetPartition:
    """A set partition whose blocks carry labels; blocks sorted by minimum atom."""

    __slots__ = ("blocks", "ground", "_hash")

    def __init__(self, blocks: Iterable[tuple[Iterable[int], Label]] = ()):
        items = [(GroundSet(b), lab) for b, lab in blocks]
        seen: set[int] = set()
        for b, _ in items:
            if not b:
                raise ValueError("blocks must be nonempty")
            if not seen.isdisjoint(b):
                raise ValueError("blocks overlap")
            seen.update(b)
        items.sort(key=lambda t: t[0][0])
        self.blocks = tuple(items)
        self.ground = GroundSet._trusted(sorted(seen))
        self._hash = hash(self.blocks)

    @classmethod
    def _trusted(cls, items: list[tuple[GroundSet, Label]]) -> "LabeledSetPartition":
        obj = object.__new__(cls)
        items.sort(key=lambda t: t[0][0])
        obj.blocks = tuple(items)
        obj.ground = GroundSet._trusted(sorted(a for b, _ in items for a in b))
        obj._hash = hash(obj.blocks)
        return obj

    @classmethod
    def from_partition(cls, partition: SetPartition, species: LabelSpecies) -> "LabeledSetPartition":
        """Attach the unique label to each block (only for one-label species)."""
        items = []
        for b in partition.blocks:
            labels = species.enumerate(b)
            if len(labels) != 1:
                raise ValueError("a labeling must be given for species with several labels")
            items.append((b, labels[0]))
        return cls._trusted(items)

    def shape(self) -> SetPartition:
        return SetPartition._trusted([b for b, _ in self.blocks], self.ground)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def union(self, other: "LabeledSetPartition") -> "LabeledSetPartition":
        if not self.ground.isdisjoint(other.ground):
            raise ValueError("ground sets overlap")
        return LabeledSetPartition._trusted(list(self.blocks + other.blocks))

    def relabel(self, sigma: Bijection, species: LabelSpecies) -> "LabeledSetPartition":
        items = []
        for b, lab in self.blocks:
            local = sigma.restrict(b)
            items.append((local.codomain, species.relabel(local, lab)))
        return LabeledSetPartition._trusted(items)

    def sort_key(self):
        return (tuple(b for b, _ in self.blocks), tuple(lab for _, lab in self.blocks))

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledSetPartition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LabeledSetPartition") -> bool:
        return self.sort_key() < other.sort_key()

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        parts = []
        for b, lab in self.blocks:
            atoms = " ".join(map(str, b))
            parts.append(atoms if not lab.payload else f"{atoms}:{lab.payload}")
        return "LSP(" + "|".join(parts) + ")"


LSP = LabeledSetPartition
EMPTY = LabeledSetPartition()


def encode_lsp(x: LabeledSetPartition, species: LabelSpecies) -> str:
    """Text form "1 2:0,1|3:0"; trivial labels are omitted."""
    if species.is_trivial:
        return "|".join(" ".join(map(str, b)) for b, _ in x.blocks)
    return "|".join(" ".join(map(str, b)) + ":" + species.encode(lab) for b, lab in x.blocks)


def decode_lsp(text: str, species: LabelSpecies) -> LabeledSetPartition:
    text = text.strip()
    if text in ("", "∅"):
        return EMPTY
    items = []
    for chunk in text.split("|"):
        atoms_text, sep, label_text = chunk.partition(":")
        try:
            block = GroundSet(int(a) for a in atoms_text.split())
        except ValueError as exc:
            raise ValueError(f"malformed block {chunk!r}") from exc
        if not block:
            raise ValueError(f"empty block in {text!r}")
        if sep:
            items.append((block, species.decode(label_text, block)))
        else:
            labels = species.enumerate(block)
            if len(labels) != 1:
                raise ValueError(f"block {chunk!r} needs an explicit label")
            items.append((block, labels[0]))
    return LabeledSetPartition(items)


def _clean(terms: Mapping, ) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


def _accumulate(target: dict, key, value: Fraction) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


@dataclass(frozen=True, eq=False)
class Element:
    """A vector in one component, expanded in one of the five bases."""

    monoid: "SpeciesHopfMonoid"
    component: GroundSet
    basis: str
    terms: Mapping[LabeledSetPartition, Fraction]

    def in_basis(self, basis: str) -> "Element":
        return self.monoid.convert(self, basis)

    def coefficient(self, index: LabeledSetPartition) -> Fraction:
        return self.terms.get(index, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def _aligned(self, other: "Element") -> tuple["Element", "Element"]:
        if other.monoid is not self.monoid or other.component != self.component:
            raise ValueError("elements live in different components")
        if self.basis == other.basis:
            return self, other
        return self.in_basis("natural"), other.in_basis("natural")

    def __add__(self, other: "Element") -> "Element":
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for k, v in b.terms.items():
            _accumulate(terms, k, v)
        return Element(self.monoid, self.component, a.basis, terms)

    def __neg__(self) -> "Element":
        return Element(self.monoid, self.component, self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.monoid.nabla(self, other)
        c = as_rational(other)
        return Element(self.monoid, self.component, self.basis, _clean({k: c * v for k, v in self.terms.items()}))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if other.monoid is not self.monoid or other.component != self.component:
            return False
        if self.basis != other.basis:
            other = other.in_basis(self.basis)
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        raise TypeError("Element is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.basis}]"
        species = self.monoid.labels
        tag = "" if self.basis == "natural" else self.basis
        return " + ".join(f"{v}*{tag}{{{encode_lsp(k, species)}}}" for k, v in self.items())


@dataclass(frozen=True, eq=False)
class Tensor:
    """A sparse vector in a tensor product of components, one basis per factor."""

    monoid: "SpeciesHopfMonoid"
    components: tuple[GroundSet, ...]
    basis: str
    terms: Mapping[tuple[LabeledSetPartition, ...], Fraction]

    def in_basis(self, basis: str) -> "Tensor":
        return self.monoid.convert_tensor(self, basis)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: [x.sort_key() for x in kv[0]])

    def permute(self, order: Sequence[int]) -> "Tensor":
        """Reorder tensor factors: new factor i is old factor ``order[i]``."""
        return Tensor(
            self.monoid,
            tuple(self.components[i] for i in order),
            self.basis,
            {tuple(key[i] for i in order): v for key, v in self.terms.items()},
        )

    def __add__(self, other: "Tensor") -> "Tensor":
        if other.components != self.components:
            raise ValueError("tensors over different components")
        a, b = (self, other) if self.basis == other.basis else (self.in_basis("natural"), other.in_basis("natural"))
        terms = dict(a.terms)
        for k, v in b.terms.items():
            _accumulate(terms, k, v)
        return Tensor(self.monoid, self.components, a.basis, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.components != self.components or other.monoid is not self.monoid:
            return False
        if other.basis != self.basis:
            other = other.in_basis(self.basis)
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        raise TypeError("Tensor is not hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.basis}⊗...]"
        species = self.monoid.labels
        return " + ".join(
            f"{v}*" + "⊗".join("{" + encode_lsp(x, species) + "}" for x in key) for key, v in self.items()
        )


class _Component:
    """Poset and basis-change data for one ground set."""

    def __init__(self, monoid: "SpeciesHopfMonoid", ground: GroundSet):
        self.monoid = monoid
        self.ground = ground
        self.elements = monoid.basis(ground)
        downs = [monoid.lower_set(y) for y in self.elements]
        self.poset = FinitePoset(self.elements, down_sets=downs)
        self._lock = threading.Lock()
        self._tables: dict[tuple[str, str], dict] = {}
        self._mu_bottom: dict[LabeledSetPartition, int] = {}

    def mu_bottom(self, lam: LabeledSetPartition) -> int:
        hit = self._mu_bottom.get(lam)
        if hit is None:
            hit = self.poset.mobius(self.monoid.empty_below(lam), lam)
            self._mu_bottom[lam] = hit
        return hit

    # Primitive changes of basis, each a map index -> {index: coefficient}.
    def _primitive(self, kind: str, lam: LabeledSetPartition) -> dict:
        P = self.poset
        if kind == "p>natural":
            return {x: Fraction(P.mobius(x, lam)) for x in P.below(lam)}
        if kind == "natural>p":
            return {x: Fraction(1) for x in P.below(lam)}
        if kind == "m>p":
            return _clean({y: Fraction(P.mobius(lam, y)) for y in P.above(lam)})
        if kind == "p>m":
            return {y: Fraction(1) for y in P.above(lam)}
        if kind in ("e>p", "h>p"):
            signed = kind == "e>p"
            return {x: Fraction(self.mu_bottom(x) if signed else abs(self.mu_bottom(x))) for x in P.below(lam)}
        if kind in ("p>e", "p>h"):
            scale = self.mu_bottom(lam) if kind == "p>e" else abs(self.mu_bottom(lam))
            return _clean({x: Fraction(P.mobius(x, lam), scale) for x in P.below(lam)})
        raise KeyError(kind)

    def table(self, source: str, target: str, lam: LabeledSetPartition) -> dict:
        """Expansion of ``source``-basis element ``lam`` in the ``target`` basis."""
        key = (source, target)
        with self._lock:
            cache = self._tables.setdefault(key, {})
            hit = cache.get(lam)
        if hit is not None:
            return hit
        if source == target:
            out = {lam: Fraction(1)}
        elif source == "p" or target == "p":
            out = self._primitive(f"{source}>{target}", lam)
        else:
            out = {}
            for mid, c in self.table(source, "p", lam).items():
                for tgt, d in self.table("p", target, mid).items():
                    _accumulate(out, tgt, c * d)
        with self._lock:
            cache[lam] = out
        return out


class SpeciesHopfMonoid:
    """The free commutative Hopf monoid S(Q) on a label species Q."""

    def __init__(self, labels: LabelSpecies, max_size: int | None = None):
        if max_size is not None and max_size < 0:
            raise ValueError("size guard must be nonnegative")
        self.labels = labels
        self.max_size = max_size if max_size is not None else (6 if labels.is_trivial else 5)
        self._lock = threading.RLock()
        self._bases: dict[GroundSet, tuple[LabeledSetPartition, ...]] = {}
        self._components: dict[GroundSet, _Component] = {}

    def __repr__(self) -> str:
        return f"SpeciesHopfMonoid({self.labels.tag})"

    # -- enumeration --------------------------------------------------------
    def basis(self, ground: Iterable[int]) -> tuple[LabeledSetPartition, ...]:
        """Every labeled set partition of ``ground``, sorted."""
        ground = GroundSet(ground)
        with self._lock:
            hit = self._bases.get(ground)
        if hit is not None:
            return hit
        out = []
        for shape in enumerate_partitions(ground):
            choices = [self.labels.enumerate(b) for b in shape.blocks]
            for labs in product(*choices):
                out.append(LabeledSetPartition._trusted(list(zip(shape.blocks, labs))))
        out.sort(key=LabeledSetPartition.sort_key)
        result = tuple(out)
        with self._lock:
            self._bases[ground] = result
        return result

    def guard(self, ground: GroundSet) -> None:
        if len(ground) > self.max_size:
            raise SizeGuardError(
                f"component of size {len(ground)} exceeds the size guard {self.max_size}"
            )

    def component(self, ground: Iterable[int]) -> _Component:
        ground = GroundSet(ground)
        self.guard(ground)
        with self._lock:
            hit = self._components.get(ground)
            if hit is None:
                hit = _Component(self, ground)
                self._components[ground] = hit
            return hit

    # -- elements -----------------------------------------------------------
    def element(self, terms: Mapping | Iterable, basis: str = "natural", component=None) -> Element:
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[LabeledSetPartition, Fraction] = {}
        ground = None if component is None else GroundSet(component)
        for key, coeff in pairs:
            if not isinstance(key, LabeledSetPartition):
                raise TypeError("indices must be labeled set partitions")
            if ground is None:
                ground = key.ground
            elif key.ground != ground:
                raise ValueError("indices on different ground sets")
            for b, lab in key.blocks:
                if lab.tag != self.labels.tag:
                    raise ValueError(f"label {lab} is not from species {self.labels.tag}")
            _accumulate(out, key, as_rational(coeff))
        if ground is None:
            raise ValueError("the component of an empty element must be given")
        return Element(self, ground, basis, out)

    def basis_element(self, index: LabeledSetPartition, basis: str = "natural") -> Element:
        return self.element({index: 1}, basis)

    def zero(self, component: Iterable[int], basis: str = "natural") -> Element:
        return Element(self, GroundSet(component), basis, {})

    def unit(self) -> Element:
        return Element(self, GroundSet(), "natural", {EMPTY: Fraction(1)})

    def zero_tensor(self, components: Sequence[Iterable[int]], basis: str = "natural") -> Tensor:
        return Tensor(self, tuple(GroundSet(c) for c in components), basis, {})

    def pure_tensor(self, factors: Sequence[Element]) -> Tensor:
        """Tensor product of elements; all factors are brought to one basis."""
        bases = {f.basis for f in factors}
        basis = bases.pop() if len(bases) == 1 else "natural"
        factors = [f.in_basis(basis) for f in factors]
        terms: dict = {(): Fraction(1)}
        for f in factors:
            nxt: dict = {}
            for key, c in terms.items():
                for x, d in f.terms.items():
                    nxt[key + (x,)] = c * d
            terms = nxt
        return Tensor(self, tuple(f.component for f in factors), basis, _clean(terms))

    # -- structure maps on the natural basis -------------------------------
    def split(self, x: LabeledSetPartition, parts: Sequence[GroundSet]) -> tuple[LabeledSetPartition, ...]:
        """Δ on a natural basis element: restrict every block to every part."""
        owner = {}
        for i, part in enumerate(parts):
            for a in part:
                owner[a] = i
        pieces: list[list] = [[] for _ in parts]
        restrict = self.labels.restrict
        for block, lab in x.blocks:
            groups: dict[int, list[int]] = {}
            for a in block:
                groups.setdefault(owner[a], []).append(a)
            if len(groups) == 1:
                (i,) = groups
                pieces[i].append((block, lab))
                continue
            for i, atoms in groups.items():
                sub = GroundSet._trusted(atoms)
                pieces[i].append((sub, restrict(lab, block, sub)))
        return tuple(LabeledSetPartition._trusted(p) for p in pieces)

    def join_split(self, x: LabeledSetPartition, parts: Sequence[GroundSet]) -> LabeledSetPartition:
        """∇∘Δ along ``parts``: the refinement of x cut by the parts."""
        items = []
        for piece in self.split(x, parts):
            items.extend(piece.blocks)
        return LabeledSetPartition._trusted(items)

    def empty_below(self, x: LabeledSetPartition) -> LabeledSetPartition:
        """The minimum of the lower interval of x (all blocks cut to singletons)."""
        return self.join_split(x, [GroundSet._trusted((a,)) for a in x.ground])

    def order_leq(self, x: LabeledSetPartition, y: LabeledSetPartition) -> bool:
        """x ⪯ y: every block of y is a union of blocks of x carrying restricted labels."""
        if x.ground != y.ground:
            raise ValueError("order comparison across different components")
        owner = {}
        for block, lab in y.blocks:
            for a in block:
                owner[a] = (block, lab)
        for block, lab in x.blocks:
            big, big_lab = owner[block[0]]
            if any(owner[a][0] is not big for a in block):
                return False
            if self.labels.restrict(big_lab, big, block) != lab:
                return False
        return True

    def lower_set(self, y: LabeledSetPartition) -> list[LabeledSetPartition]:
        """Every x ⪯ y, built blockwise from partitions of the blocks of y."""
        options = []
        for block, lab in y.blocks:
            opts = []
            for sub in enumerate_partitions(block):
                if len(sub) == 1:
                    opts.append([(block, lab)])
                else:
                    opts.append([(b, self.labels.restrict(lab, block, b)) for b in sub.blocks])
            options.append(opts)
        out = []
        for choice in product(*options):
            items = [item for group in choice for item in group]
            out.append(LabeledSetPartition._trusted(items))
        return out

    def component_poset(self, ground: Iterable[int]) -> FinitePoset:
        return self.component(ground).poset

    def mobius_bottom(self, x: LabeledSetPartition) -> int:
        """μ(∅_x, x) computed by the Möbius recurrence in the component poset."""
        return self.component(x.ground).mu_bottom(x)

    # -- products and coproducts on elements -------------------------------
    def nabla(self, x: Element, y: Element) -> Element:
        self._own(x, y)
        if not x.component.isdisjoint(y.component):
            raise ValueError("product of elements on overlapping ground sets")
        target = x.basis if x.basis == y.basis else "natural"
        xn, yn = x.in_basis("natural"), y.in_basis("natural")
        terms: dict = {}
        for a, c in xn.terms.items():
            for b, d in yn.terms.items():
                _accumulate(terms, a.union(b), c * d)
        out = Element(self, x.component.union(y.component), "natural", terms)
        return out.in_basis(target)

    def nabla_multi(self, factors: Sequence[Element]) -> Element:
        if not factors:
            return self.unit()
        out = factors[0]
        for f in factors[1:]:
            out = self.nabla(out, f)
        return out

    def delta(self, z: Element, S: Iterable[int], T: Iterable[int]) -> Tensor:
        return self.delta_multi(z, (S, T))

    def delta_multi(self, z: Element, parts: Sequence[Iterable[int]]) -> Tensor:
        self._own(z)
        parts = tuple(GroundSet(p) for p in parts)
        self._check_decomposition(z.component, parts)
        zn = z.in_basis("natural")
        terms: dict = {}
        for x, c in zn.terms.items():
            _accumulate(terms, self.split(x, parts), c)
        out = Tensor(self, parts, "natural", terms)
        return out if z.basis == "natural" else self.convert_tensor(out, z.basis)

    @staticmethod
    def _check_decomposition(ground: GroundSet, parts: Sequence[GroundSet]) -> None:
        seen: set[int] = set()
        for p in parts:
            if not seen.isdisjoint(p):
                raise ValueError("decomposition parts overlap")
            seen.update(p)
        if GroundSet(seen) != ground:
            raise ValueError("decomposition does not cover the component")

    def _own(self, *elements: Element) -> None:
        for e in elements:
            if e.monoid is not self:
                raise ValueError("element belongs to a different Hopf monoid")

    # -- change of basis ----------------------------------------------------
    def convert(self, x: Element, basis: str) -> Element:
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if x.basis == basis:
            return x
        if len(x.component) <= 1 and set(x.terms) <= {EMPTY} | set(self.basis(x.component)):
            # all five bases coincide on components of size at most one
            return Element(self, x.component, basis, dict(x.terms))
        comp = self.component(x.component)
        terms: dict = {}
        for lam, c in x.terms.items():
            for mu, d in comp.table(x.basis, basis, lam).items():
                _accumulate(terms, mu, c * d)
        return Element(self, x.component, basis, terms)

    def convert_tensor(self, t: Tensor, basis: str) -> Tensor:
        if t.basis == basis:
            return t
        comps = [None if len(c) <= 1 else self.component(c) for c in t.components]
        terms: dict = {}
        for key, c in t.terms.items():
            partial: dict = {(): c}
            for comp, x in zip(comps, key):
                row = {x: Fraction(1)} if comp is None else comp.table(t.basis, basis, x)
                partial = {k + (y,): v * d for k, v in partial.items() for y, d in row.items()}
            for k, v in partial.items():
                _accumulate(terms, k, v)
        return Tensor(self, t.components, basis, terms)

    # -- closed-form structure rules in the four derived bases -------------
    def structure_in_basis(self, basis: str, op: str, indices: Sequence):
        """Product or coproduct of basis elements via the closed-form rules.

        ``op == "product"``: ``indices = (alpha, beta)`` on disjoint sets.
        ``op == "coproduct"``: ``indices = (lam, S, T)``.
        """
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        if op == "product":
            alpha, beta = indices
            ground = alpha.ground.union(beta.ground)
            if len(ground) != len(alpha.ground) + len(beta.ground):
                raise ValueError("product indices on overlapping ground sets")
            if basis != "m":
                return self.element({alpha.union(beta): 1}, basis)
            parts = (alpha.ground, beta.ground)
            self.guard(ground)
            hits = {g: 1 for g in self.basis(ground) if self.split(g, parts) == (alpha, beta)}
            return self.element(hits, "m", component=ground)
        if op == "coproduct":
            lam, S, T = indices
            S, T = GroundSet(S), GroundSet(T)
            self._check_decomposition(lam.ground, (S, T))
            if basis in ("m", "p") and not all(b.issubset(S) or b.issubset(T) for b, _ in lam.blocks):
                return Tensor(self, (S, T), basis, {})
            return Tensor(self, (S, T), basis, {self.split(lam, (S, T)): Fraction(1)})
        raise ValueError(f"unknown operation {op!r}")

    def sign_twist(self, x: Element) -> Element:
        """The involution p_λ ↦ sgn(λ)·p_λ with sgn = (-1)^(|I| - #blocks)."""
        xp = x.in_basis("p")
        n = len(x.component)
        terms = {k: (v if (n - k.num_blocks) % 2 == 0 else -v) for k, v in xp.terms.items()}
        return Element(self, x.component, "p", terms)


def mobius_closed_form(x: LabeledSetPartition) -> int:
    """∏ over blocks of (-1)^(|B|-1)·(|B|-1)!."""
    value = 1
    for block, _ in x.blocks:
        k = len(block)
        value *= (-1) ** (k - 1) * factorial(k - 1)
    return value


# Module-level conveniences mirroring the monoid methods.

def nabla(x: Element, y: Element) -> Element:
    return x.monoid.nabla(x, y)


def delta(z: Element, S: Iterable[int], T: Iterable[int]) -> Tensor:
    return z.monoid.delta(z, S, T)


def nabla_multi(factors: Sequence[Element]) -> Element:
    if not factors:
        raise ValueError("need at least one factor")
    return factors[0].monoid.nabla_multi(factors)


def delta_multi(z: Element, parts: Sequence[Iterable[int]]) -> Tensor:
    return z.monoid.delta_multi(z, parts)


def ordered_decompositions(ground: GroundSet, k: int) -> Iterator[tuple[GroundSet, ...]]:
    """All ways to write ``ground`` as an ordered disjoint union of k (possibly empty) parts."""
    for word in product(range(k), repeat=len(ground)):
        yield tuple(GroundSet._trusted([a for a, w in zip(ground, word) if w == i]) for i in range(k))


def element_to_json(x: Element) -> dict:
    species = x.monoid.labels
    return {
        "component": list(x.component),
        "basis": x.basis,
        "terms": [
            {
                "blocks": [{"atoms": list(b), "label": species.encode(lab)} for b, lab in key.blocks],
                "coeff": format_rational(c),
            }
            for key, c in x.items()
        ],
    }


def tensor_to_json(t: Tensor) -> dict:
    species = t.monoid.labels
    return {
        "components": [list(c) for c in t.components],
        "basis": t.basis,
        "terms": [
            {
                "factors": [
                    [{"atoms": list(b), "label": species.encode(lab)} for b, lab in x.blocks] for x in key
                ],
                "coeff": format_rational(c),
            }
            for key, c in t.items()
        ],
    }


# ---------------------------------------------------------------------------
# Axiom verification


def _tensor_apply_delta(h: SpeciesHopfMonoid, t: Tensor, factor: int, parts: Sequence[GroundSet]) -> Tensor:
    """Apply the coproduct along ``parts`` to one natural-basis tensor factor."""
    terms: dict = {}
    for key, c in t.terms.items():
        pieces = h.split(key[factor], parts)
        _accumulate(terms, key[:factor] + pieces + key[factor + 1:], c)
    comps = t.components[:factor] + tuple(parts) + t.components[factor + 1:]
    return Tensor(h, comps, "natural", terms)


def verify_hopf_axioms(
    h: SpeciesHopfMonoid,
    ground: Iterable[int],
    samples: int | None = None,
    seed: int = 0,
) -> Report:
    """Check the Hopf monoid axioms on the natural basis of one component.

    With ``samples=None`` every decomposition and every basis tuple is tried;
    otherwise that many random instances per identity are drawn.
    """
    I = GroundSet(ground)
    report = Report(f"hopf-axioms[{h.labels.tag}, {I!r}]")
    rng = random.Random(seed)
    nat = h.basis_element

    def pick(seq):
        seq = list(seq)
        if samples is None or len(seq) <= samples:
            return seq
        return rng.sample(seq, samples)

    pairs = list(ordered_decompositions(I, 2))
    triples = list(ordered_decompositions(I, 3))
    unit = h.unit()

    for z in pick(h.basis(I)):
        x = nat(z)
        report.check(h.nabla(unit, x) == x and h.nabla(x, unit) == x, f"unit law at {z}")
        report.check(
            h.delta(x, I, ()) == h.pure_tensor([x, unit]) and h.delta(x, (), I) == h.pure_tensor([unit, x]),
            f"counit law at {z}",
        )

    for S, T in pick(pairs):
        for z in pick(h.basis(I)):
            x = nat(z)
            report.check(h.delta(x, S, T).permute((1, 0)) == h.delta(x, T, S), f"cocommutativity at {z}, {S}|{T}")
        for a in pick(h.basis(S)):
            for b in pick(h.basis(T)):
                xa, xb = nat(a), nat(b)
                prod_ab = h.nabla(xa, xb)
                report.check(prod_ab == h.nabla(xb, xa), f"commutativity at {a}, {b}")
                report.check(h.delta(prod_ab, S, T) == h.pure_tensor([xa, xb]), f"delta after nabla at {a}, {b}")

    for R, S, T in pick(triples):
        for a in pick(h.basis(R)):
            for b in pick(h.basis(S)):
                for c in pick(h.basis(T)):
                    xa, xb, xc = nat(a), nat(b), nat(c)
                    report.check(
                        h.nabla(h.nabla(xa, xb), xc) == h.nabla(xa, h.nabla(xb, xc)),
                        f"associativity at {a}, {b}, {c}",
                    )
        for z in pick(h.basis(I)):
            x = nat(z)
            left = _tensor_apply_delta(h, h.delta(x, R.union(S), T), 0, (R, S))
            right = _tensor_apply_delta(h, h.delta(x, R, S.union(T)), 1, (S, T))
            report.check(left == right, f"coassociativity at {z}, {R}|{S}|{T}")
            report.check(left == h.delta_multi(x, (R, S, T)), f"iterated coproduct at {z}, {R}|{S}|{T}")

    for R, R2 in pick(pairs):
        for S, S2 in pick(pairs):
            A, B = R.intersection(S), R.intersection(S2)
            A2, B2 = R2.intersection(S), R2.intersection(S2)
            for a in pick(h.basis(R)):
                for b in pick(h.basis(R2)):
                    lhs = h.delta(h.nabla(nat(a), nat(b)), S, S2)
                    terms: dict = {}
                    for (a1, a2), c1 in h.delta(nat(a), A, B).terms.items():
                        for (b1, b2), c2 in h.delta(nat(b), A2, B2).terms.items():
                            _accumulate(terms, (a1.union(b1), a2.union(b2)), c1 * c2)
                    rhs = Tensor(h, (S, S2), "natural", terms)
                    report.check(lhs == rhs, f"compatibility at {a}, {b}, {S}|{S2}")
    return report


def transitive_merge_closure(h: SpeciesHopfMonoid, ground: Iterable[int]) -> dict:
    """For each y, the set reachable by repeated two-part splits ∇∘Δ_{S,T}.

    Serves as an independent oracle for :meth:`SpeciesHopfMonoid.order_leq`.
    """
    I = GroundSet(ground)
    pairs = list(ordered_decompositions(I, 2))
    step = {y: {h.join_split(y, p) for p in pairs} for y in h.basis(I)}
    closure = {}
    for y in h.basis(I):
        seen = {y}
        frontier = [y]
        while frontier:
            nxt = []
            for w in frontier:
                for v in step[w]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        closure[y] = seen
    return closure


def trivial_monoid(max_size: int | None = None) -> SpeciesHopfMonoid:
    return SpeciesHopfMonoid(TrivialLabel(), max_size=max_size)
