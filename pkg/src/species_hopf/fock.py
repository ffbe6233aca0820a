"""Graded Hopf algebras obtained from a Hopf monoid by the Fock functors.

``K`` keeps the components ``[n]`` themselves; ``Kbar`` passes to
S_n-coinvariants, represented by canonical orbit representatives.  Graded
indices are labeled set partitions on ``[n]``; the degree is the size of the
ground set.
"""
from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .engine import (
    EMPTY,
    LabeledSetPartition,
    SpeciesHopfMonoid,
    _accumulate,
    encode_lsp,
)
from .foundation import Bijection, GroundSet, as_rational, format_rational
from .report import Report

FLAVORS = ("K", "Kbar")


def orbit_key(x: LabeledSetPartition):
    """Total order used to pick orbit representatives.

    Atoms are read block by block with a separator after each atom that is 0
    inside a block and 1 at a block boundary, so "1 2|3" sorts before "1|2 3"
    as in the textual encoding; labels break ties.
    """
    word: list[int] = []
    for block, _ in x.blocks:
        for a in block:
            word.append(a)
            word.append(0)
        word[-1] = 1
    return (tuple(word), tuple(lab for _, lab in x.blocks))


@dataclass(frozen=True, eq=False)
class GradedElement:
    algebra: "GradedHopfAlgebra"
    basis: str
    terms: Mapping[LabeledSetPartition, Fraction]

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0].ground), kv[0].sort_key()))

    def degrees(self) -> list[int]:
        return sorted({len(k.ground) for k in self.terms})

    def homogeneous(self, n: int) -> "GradedElement":
        return GradedElement(self.algebra, self.basis, {k: v for k, v in self.terms.items() if len(k.ground) == n})

    def in_basis(self, basis: str) -> "GradedElement":
        return self.algebra.convert(self, basis)

    def coefficient(self, index: LabeledSetPartition) -> Fraction:
        return self.terms.get(self.algebra.canonical(index), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def _aligned(self, other: "GradedElement"):
        if other.algebra is not self.algebra:
            raise ValueError("elements of different graded algebras")
        if other.basis == self.basis:
            return self, other
        return self.in_basis("natural"), other.in_basis("natural")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for k, v in b.terms.items():
            _accumulate(terms, k, v)
        return GradedElement(self.algebra, a.basis, terms)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.algebra, self.basis, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.algebra.product(self, other)
        c = as_rational(other)
        return GradedElement(self.algebra, self.basis, {k: c * v for k, v in self.terms.items() if c * v})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        if other.algebra is not self.algebra:
            return False
        if other.basis != self.basis:
            other = other.in_basis(self.basis)
        return dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.basis}]"
        species = self.algebra.source.labels
        tag = "" if self.basis == "natural" else self.basis
        return " + ".join(f"{v}*{tag}{{{encode_lsp(k, species) or '∅'}}}" for k, v in self.items())


@dataclass(frozen=True, eq=False)
class GradedTensor:
    algebra: "GradedHopfAlgebra"
    basis: str
    terms: Mapping[tuple[LabeledSetPartition, ...], Fraction]

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: [(len(x.ground), x.sort_key()) for x in kv[0]])

    def permute(self, order: Sequence[int]) -> "GradedTensor":
        return GradedTensor(self.algebra, self.basis, {tuple(k[i] for i in order): v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedTensor):
            return NotImplemented
        if other.basis != self.basis:
            raise ValueError("compare graded tensors in a common basis")
        return other.algebra is self.algebra and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        species = self.algebra.source.labels
        return " + ".join(
            f"{v}*" + "⊗".join("{" + (encode_lsp(x, species) or "∅") + "}" for x in key) for key, v in self.items()
        ) or "0"


class GradedHopfAlgebra:
    """K(h) or Kbar(h) for a Hopf monoid h over the components [n]."""

    def __init__(self, source: SpeciesHopfMonoid, flavor: str = "K", method: str = "closed"):
        """``method`` picks how coproducts are computed: the closed-form basis
        rules ("closed") or splitting in the natural basis ("convert")."""
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        if method not in ("closed", "convert"):
            raise ValueError("method must be 'closed' or 'convert'")
        self.source = source
        self.flavor = flavor
        self.method = method
        self._lock = threading.Lock()
        self._reps: dict[LabeledSetPartition, LabeledSetPartition] = {}
        self._orbits: dict[int, tuple[LabeledSetPartition, ...]] = {}
        self._products: dict = {}
        self._coproducts: dict = {}

    @property
    def is_kbar(self) -> bool:
        return self.flavor == "Kbar"

    def __repr__(self) -> str:
        return f"{self.flavor}({self.source.labels.tag})"

    # -- indices -------------------------------------------------------------
    def canonical(self, x: LabeledSetPartition) -> LabeledSetPartition:
        if x.ground != GroundSet.interval(len(x.ground)):
            raise ValueError(f"graded index {x} is not on [n]")
        if not self.is_kbar:
            return x
        with self._lock:
            hit = self._reps.get(x)
        if hit is not None:
            return hit
        species = self.source.labels
        ground = x.ground
        orbit = {x.relabel(Bijection(dict(zip(ground, img))), species) for img in permutations(ground)}
        rep = min(orbit, key=orbit_key)
        with self._lock:
            for y in orbit:
                self._reps[y] = rep
        return rep

    def indices(self, n: int) -> tuple[LabeledSetPartition, ...]:
        """Basis indices of the degree-n piece."""
        everything = self.source.basis(GroundSet.interval(n))
        if not self.is_kbar:
            return everything
        with self._lock:
            hit = self._orbits.get(n)
        if hit is None:
            hit = tuple(sorted({self.canonical(x) for x in everything}, key=orbit_key))
            with self._lock:
                self._orbits[n] = hit
        return hit

    def dimension(self, n: int) -> int:
        return len(self.indices(n))

    # -- elements ------------------------------------------------------------
    def element(self, terms: Mapping | Iterable, basis: str = "natural") -> GradedElement:
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        for key, coeff in pairs:
            _accumulate(out, self.canonical(key), as_rational(coeff))
        return GradedElement(self, basis, out)

    def basis_element(self, index: LabeledSetPartition, basis: str = "natural") -> GradedElement:
        return self.element({index: 1}, basis)

    def unit(self, basis: str = "natural") -> GradedElement:
        return GradedElement(self, basis, {EMPTY: Fraction(1)})

    def counit(self, a: GradedElement) -> Fraction:
        return a.terms.get(EMPTY, Fraction(0))

    def _engine_element(self, index: LabeledSetPartition, basis: str):
        return self.source.element({index: 1}, basis)

    def convert(self, a: GradedElement, basis: str) -> GradedElement:
        if a.basis == basis:
            return a
        out: dict = {}
        for key, c in a.terms.items():
            image = self.source.convert(self._engine_element(key, a.basis), basis)
            for y, d in image.terms.items():
                _accumulate(out, self.canonical(y), c * d)
        return GradedElement(self, basis, out)

    # -- structure maps ------------------------------------------------------
    def _basis_product(self, basis: str, alpha: LabeledSetPartition, beta: LabeledSetPartition) -> dict:
        key = (basis, alpha, beta)
        with self._lock:
            hit = self._products.get(key)
        if hit is not None:
            return hit
        m = len(alpha.ground)
        shift = Bijection({a: a + m for a in beta.ground})
        moved = beta.relabel(shift, self.source.labels)
        if self.method == "closed":
            prod = self.source.structure_in_basis(basis, "product", (alpha, moved))
        else:
            prod = self.source.nabla(self._engine_element(alpha, basis), self._engine_element(moved, basis))
        out: dict = {}
        for g, c in prod.terms.items():
            _accumulate(out, self.canonical(g), c)
        with self._lock:
            self._products[key] = out
        return out

    def product(self, a: GradedElement, b: GradedElement) -> GradedElement:
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements of a different graded algebra")
        if a.basis != b.basis:
            a, b = a.in_basis("natural"), b.in_basis("natural")
        out: dict = {}
        for alpha, c in a.terms.items():
            for beta, d in b.terms.items():
                for g, e in self._basis_product(a.basis, alpha, beta).items():
                    _accumulate(out, g, c * d * e)
        return GradedElement(self, a.basis, out)

    def _basis_coproduct(self, basis: str, lam: LabeledSetPartition) -> dict:
        key = (basis, lam)
        with self._lock:
            hit = self._coproducts.get(key)
        if hit is not None:
            return hit
        src = self.source
        species = src.labels
        ground = lam.ground
        if self.method == "closed":
            out = {}
            for S in ground.subsets():
                T = ground.difference(S)
                st_S, st_T = Bijection.standardize(S), Bijection.standardize(T)
                for (left, right), c in src.structure_in_basis(basis, "coproduct", (lam, S, T)).terms.items():
                    pair = (self.canonical(left.relabel(st_S, species)), self.canonical(right.relabel(st_T, species)))
                    _accumulate(out, pair, c)
            with self._lock:
                self._coproducts[key] = out
            return out
        natural = src.convert(self._engine_element(lam, basis), "natural")
        split_terms: dict = {}
        for S in ground.subsets():
            T = ground.difference(S)
            st_S, st_T = Bijection.standardize(S), Bijection.standardize(T)
            for x, c in natural.terms.items():
                left, right = src.split(x, (S, T))
                pair = (left.relabel(st_S, species), right.relabel(st_T, species))
                _accumulate(split_terms, pair, c)
        out: dict = {}
        for (left, right), c in split_terms.items():
            lrow = src.convert(self._engine_element(left, "natural"), basis).terms
            rrow = src.convert(self._engine_element(right, "natural"), basis).terms
            for y, d in lrow.items():
                for z, e in rrow.items():
                    _accumulate(out, (self.canonical(y), self.canonical(z)), c * d * e)
        with self._lock:
            self._coproducts[key] = out
        return out

    def coproduct(self, a: GradedElement) -> GradedTensor:
        if a.algebra is not self:
            raise ValueError("element of a different graded algebra")
        out: dict = {}
        for lam, c in a.terms.items():
            for pair, d in self._basis_coproduct(a.basis, lam).items():
                _accumulate(out, pair, c * d)
        return GradedTensor(self, a.basis, out)


def k_product(a: GradedElement, b: GradedElement) -> GradedElement:
    return a.algebra.product(a, b)


def k_coproduct(a: GradedElement) -> GradedTensor:
    return a.algebra.coproduct(a)


def canonicalize_orbit(x: LabeledSetPartition, algebra: GradedHopfAlgebra) -> LabeledSetPartition:
    if not algebra.is_kbar:
        raise ValueError("orbit canonicalization needs a Kbar algebra")
    return algebra.canonical(x)


def project_to_kbar(a: GradedElement, target: GradedHopfAlgebra) -> GradedElement:
    if a.algebra.is_kbar or not target.is_kbar or a.algebra.source is not target.source:
        raise ValueError("projection goes from K(h) to Kbar(h) of the same monoid")
    return target.element(a.terms, a.basis)


def project_tensor(t: GradedTensor, target: GradedHopfAlgebra) -> GradedTensor:
    out: dict = {}
    for key, c in t.terms.items():
        _accumulate(out, tuple(target.canonical(x) for x in key), c)
    return GradedTensor(target, t.basis, out)


# ---------------------------------------------------------------------------
# Structure constants


@dataclass(frozen=True)
class StructureTable:
    """Sparse structure constants: entries[(row, column)] for row/column index keys."""

    algebra: GradedHopfAlgebra
    basis: str
    op: str
    rows: tuple
    columns: tuple
    entries: Mapping

    def _label(self, key) -> str:
        species = self.algebra.source.labels
        keys = key if isinstance(key, tuple) else (key,)
        return " ⊗ ".join(encode_lsp(x, species) or "∅" for x in keys)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"{self.op}[{self.basis}]"] + [self._label(c) for c in self.columns])
        for r in self.rows:
            writer.writerow(
                [self._label(r)] + [format_rational(self.entries.get((r, c), Fraction(0))) for c in self.columns]
            )
        return buf.getvalue()


def structure_constants(alg: GradedHopfAlgebra, basis: str, m: int, n: int, op: str = "product") -> StructureTable:
    """Product table (degrees m × n → m+n) or coproduct table (degree m+n → m ⊗ n)."""
    if op == "product":
        rows = tuple((a, b) for a in alg.indices(m) for b in alg.indices(n))
        columns = alg.indices(m + n)
        entries = {}
        for a, b in rows:
            for g, c in alg._basis_product(basis, a, b).items():
                entries[((a, b), g)] = c
        return StructureTable(alg, basis, op, rows, columns, entries)
    if op == "coproduct":
        rows = alg.indices(m + n)
        columns = tuple((a, b) for a in alg.indices(m) for b in alg.indices(n))
        wanted = set(columns)
        entries = {}
        for lam in rows:
            for pair, c in alg._basis_coproduct(basis, lam).items():
                if pair in wanted:
                    entries[(lam, pair)] = c
        return StructureTable(alg, basis, op, rows, columns, entries)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Graded axioms


def _tensor_product_in(alg: GradedHopfAlgebra, s: GradedTensor, t: GradedTensor) -> dict:
    out: dict = {}
    for (a1, a2), c in s.terms.items():
        for (b1, b2), d in t.terms.items():
            left = alg._basis_product(s.basis, a1, b1)
            right = alg._basis_product(s.basis, a2, b2)
            for x, e in left.items():
                for y, f in right.items():
                    _accumulate(out, (x, y), c * d * e * f)
    return out


def verify_graded_hopf(alg: GradedHopfAlgebra, basis: str, max_degree: int) -> Report:
    """Exhaustive graded Hopf axioms for total degree ≤ max_degree."""
    report = Report(f"graded-hopf[{alg!r}, {basis}, ≤{max_degree}]")
    idx = {n: alg.indices(n) for n in range(max_degree + 1)}
    one = alg.unit(basis)
    for n in range(max_degree + 1):
        for lam in idx[n]:
            x = alg.basis_element(lam, basis)
            report.check(one * x == x and x * one == x, f"unit at {lam}")
            cop = alg.coproduct(x)
            left_counit: dict = {}
            right_counit: dict = {}
            for (y, z), c in cop.terms.items():
                if y == EMPTY:
                    _accumulate(left_counit, z, c)
                if z == EMPTY:
                    _accumulate(right_counit, y, c)
            report.check(left_counit == dict(x.terms) == right_counit, f"counit at {lam}")
            report.check(cop.permute((1, 0)) == cop, f"cocommutativity at {lam}")
            # coassociativity
            left3: dict = {}
            right3: dict = {}
            for (y, z), c in cop.terms.items():
                for (y1, y2), d in alg.coproduct(alg.basis_element(y, basis)).terms.items():
                    _accumulate(left3, (y1, y2, z), c * d)
                for (z1, z2), d in alg.coproduct(alg.basis_element(z, basis)).terms.items():
                    _accumulate(right3, (y, z1, z2), c * d)
            report.check(left3 == right3, f"coassociativity at {lam}")
    for m in range(1, max_degree):
        for n in range(1, max_degree - m + 1):
            for a in idx[m]:
                for b in idx[n]:
                    xa, xb = alg.basis_element(a, basis), alg.basis_element(b, basis)
                    ab = xa * xb
                    if alg.is_kbar:
                        report.check(ab == xb * xa, f"commutativity at {a}, {b}")
                    report.check(
                        dict(alg.coproduct(ab).terms) == _tensor_product_in(alg, alg.coproduct(xa), alg.coproduct(xb)),
                        f"compatibility at {a}, {b}",
                    )
                    for k in range(1, max_degree - m - n + 1):
                        for c in idx[k]:
                            xc = alg.basis_element(c, basis)
                            report.check((ab) * xc == xa * (xb * xc), f"associativity at {a}, {b}, {c}")
    return report
