"""Combinatorial models of the superclass function Hopf algebras.

Three monoids built from orbit species:

* ``pi_G``: blocks carry maps to G modulo left multiplication (unitriangular
  groups of type A, G = F^×);
* ``pi_prime``: the same over the signed group G × S₂ (type D/orthogonal);
* ``pi_double_prime``: the connected sum of the signed orbit species with
  plain maps to G (type C/symplectic).

Their natural bases are matched with arc-labeled (symmetric) set partitions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .engine import LabeledSetPartition, SpeciesHopfMonoid
from .fock import GradedHopfAlgebra
from .foundation import Bijection, GroundSet, SetPartition, bell_number, enumerate_partitions
from .labels import (
    ConnectedSumLabel,
    FiniteGroup,
    Label,
    LabelSpecies,
    MapLabel,
    OrbitLabel,
    cyclic_group,
    make_signed_group,
    signed_part,
)
from .report import Report

MODELS = ("USL", "UO", "USp")


def pi_G(group: FiniteGroup, max_size: int | None = None) -> SpeciesHopfMonoid:
    return SpeciesHopfMonoid(OrbitLabel(group), max_size=max_size)


def pi_prime(group: FiniteGroup, max_size: int | None = None) -> SpeciesHopfMonoid:
    return SpeciesHopfMonoid(OrbitLabel(make_signed_group(group)), max_size=max_size)


def pi_double_prime(group: FiniteGroup, max_size: int | None = None) -> SpeciesHopfMonoid:
    species = ConnectedSumLabel(OrbitLabel(make_signed_group(group)), MapLabel(group))
    return SpeciesHopfMonoid(species, max_size=max_size)


def units_group(q: int, model: str = "USL") -> FiniteGroup:
    """F^× for a field with q elements, modeled by its order only (cyclic)."""
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    if q < 2:
        raise ValueError("a finite field has at least two elements")
    if model != "USL" and q % 2 == 0:
        raise ValueError("orthogonal and symplectic models need q odd")
    return cyclic_group(q - 1)


# ---------------------------------------------------------------------------
# Arcs


def arcs(partition: SetPartition) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, consecutive inside a block; works on signed atoms."""
    out = []
    for block in partition.blocks:
        out.extend(zip(block, block[1:]))
    return sorted(out)


@dataclass(frozen=True)
class ArcLabeledPartition:
    partition: SetPartition
    labels: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        if tuple(a for a, _ in self.labels) != tuple(arcs(self.partition)):
            raise ValueError("every arc needs exactly one label")

    @classmethod
    def build(cls, partition: SetPartition, labels: Mapping[tuple[int, int], int]) -> "ArcLabeledPartition":
        return cls(partition, tuple(sorted(labels.items())))

    def label_map(self) -> dict:
        return dict(self.labels)

    def encode(self) -> str:
        body = self.partition.encode()
        arcs_txt = ",".join(f"{i}-{j}:{g}" for (i, j), g in self.labels)
        return f"{body} [{arcs_txt}]"


@dataclass(frozen=True)
class SymmetricArcLabeledPartition(ArcLabeledPartition):
    def __post_init__(self):
        super().__post_init__()
        blocks = set(self.partition.blocks)
        if {tuple(sorted(-a for a in b)) for b in blocks} != blocks:
            raise ValueError("partition is not symmetric")
        lab = self.label_map()
        for (i, j), g in lab.items():
            if lab.get((-j, -i)) != g:
                raise ValueError("mirrored arcs must share their label")

    def avoids_zero_sum(self) -> bool:
        return all(i + j != 0 for (i, j), _ in self.labels)


# ---------------------------------------------------------------------------
# The bijection for the type A model


def phi(x: LabeledSetPartition, group: FiniteGroup) -> ArcLabeledPartition:
    """Arc (i, j) of a block with orbit f gets the label f(i)⁻¹ f(j)."""
    labels = {}
    for block, lab in x.blocks:
        f = dict(zip(block, lab.payload))
        for i, j in zip(block, block[1:]):
            labels[(i, j)] = group.mul(group.inv(f[i]), f[j])
    return ArcLabeledPartition.build(x.shape(), labels)


def phi_inverse(y: ArcLabeledPartition, group: FiniteGroup) -> LabeledSetPartition:
    species = OrbitLabel(group)
    lab = y.label_map()
    items = []
    for block in y.partition.blocks:
        values = [0]
        for i, j in zip(block, block[1:]):
            values.append(group.mul(values[-1], lab[(i, j)]))
        items.append((GroundSet(block), Label(species.tag, tuple(values))))
    return LabeledSetPartition(items)


# ---------------------------------------------------------------------------
# The bijection for the signed models


def _as_partition(blocks: Iterable[Iterable[int]]) -> SetPartition:
    blocks = [sorted(b) for b in blocks]
    ground = sorted(a for b in blocks for a in b)
    return SetPartition(blocks, GroundSet(ground))


def phi_pm(x: LabeledSetPartition, group: FiniteGroup) -> SymmetricArcLabeledPartition:
    """Send a labeled partition of the symplectic model to [±n].

    Blocks with a signed orbit become a mirrored pair C, −C; blocks with a
    plain map become one self-mirrored block.  Labels of ``pi_prime`` are the
    signed orbits directly.
    """
    signed = make_signed_group(group)
    blocks: list[list[int]] = []
    labels: dict = {}
    for block, lab in x.blocks:
        kind, inner = _split_label(lab)
        if kind == 0:
            f = dict(zip(block, inner.payload))
            base = signed.inv(f[block[0]])
            side = []
            for b in block:
                sign, _ = signed_part(signed, signed.mul(base, f[b]))
                side.append(sign * b)
            mirror = [-a for a in side]
            for part in (sorted(side), sorted(mirror)):
                blocks.append(part)
                for i, j in zip(part, part[1:]):
                    lo, hi = sorted((abs(i), abs(j)))
                    _, g = signed_part(signed, signed.mul(signed.inv(f[lo]), f[hi]))
                    labels[(i, j)] = g
        else:
            f = dict(zip(block, inner.payload))
            whole = sorted([-b for b in block] + list(block))
            blocks.append(whole)
            for i, j in zip(whole, whole[1:]):
                positive = j if j > 0 else -i
                labels[(i, j)] = f[positive]
    return SymmetricArcLabeledPartition.build(_as_partition(blocks), labels)


def _split_label(lab: Label) -> tuple[int, Label]:
    """(0, signed orbit) or (1, plain map)."""
    if lab.tag.startswith("sum("):
        return lab.payload
    return 0, lab


def phi_pm_inverse(
    y: SymmetricArcLabeledPartition, group: FiniteGroup, species: LabelSpecies | None = None
) -> LabeledSetPartition:
    """Inverse of phi_pm; ``species`` picks the target (defaults to the symplectic model)."""
    signed = make_signed_group(group)
    orbit = OrbitLabel(signed)
    species = species or ConnectedSumLabel(orbit, MapLabel(group))
    wrap = isinstance(species, ConnectedSumLabel)
    lab = y.label_map()
    n = group.order
    items = []
    for block in y.partition.blocks:
        mirror = tuple(sorted(-a for a in block))
        if mirror == block:
            if not wrap:
                raise ValueError("self-mirrored blocks need the symplectic model")
            f = {}
            for i, j in zip(block, block[1:]):
                f[j if j > 0 else -i] = lab[(i, j)]
            support = sorted(f)
            inner = Label(f"map:{group.name}", tuple(f[b] for b in support))
            items.append((GroundSet(support), Label(species.tag, (1, inner))))
            continue
        support = sorted(abs(a) for a in block)
        if support[0] not in block:
            continue  # the mirror image carries the same data
        sign = {abs(a): (0 if a > 0 else 1) for a in block}
        gpart = {support[0]: 0}
        edges = [(abs(i), abs(j), lab[(i, j)]) for i, j in zip(block, block[1:])]
        while len(gpart) < len(support):
            for a, b, g in edges:
                lo, hi = sorted((a, b))
                if lo in gpart and hi not in gpart:
                    gpart[hi] = group.mul(gpart[lo], g)
                elif hi in gpart and lo not in gpart:
                    gpart[lo] = group.mul(gpart[hi], group.inv(g))
        inner = Label(orbit.tag, tuple(sign[b] * n + gpart[b] for b in support))
        items.append((GroundSet(support), Label(species.tag, (0, inner)) if wrap else inner))
    return LabeledSetPartition(items)


# ---------------------------------------------------------------------------
# Enumeration and dimensions


def enumerate_arc_labeled(n: int, group: FiniteGroup) -> list[ArcLabeledPartition]:
    out = []
    for shape in enumerate_partitions(GroundSet.interval(n)):
        keys = arcs(shape)
        for values in _words(group.order, len(keys)):
            out.append(ArcLabeledPartition.build(shape, dict(zip(keys, values))))
    return out


def _words(size: int, length: int) -> Iterable[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for head in range(size):
        for tail in _words(size, length - 1):
            yield (head,) + tail


def symmetric_partitions(n: int) -> list[SetPartition]:
    """Set partitions of [±n] invariant under negation."""
    out = []
    for shape in enumerate_partitions(GroundSet.signed_interval(n)):
        blocks = set(shape.blocks)
        if all(tuple(sorted(-a for a in b)) in blocks for b in blocks):
            out.append(shape)
    return out


def _mirror_classes(shape: SetPartition) -> list[tuple[tuple[int, int], ...]]:
    classes: dict = {}
    for i, j in arcs(shape):
        key = min((i, j), (-j, -i))
        classes.setdefault(key, set()).update({(i, j), (-j, -i)})
    return [tuple(sorted(v)) for _, v in sorted(classes.items())]


def enumerate_symmetric_arc_labeled(n: int, group: FiniteGroup, strict: bool = False):
    """Symmetric partitions of [±n] with mirror-invariant arc labels.

    ``strict`` keeps only those without an arc (i, −i).
    """
    out = []
    for shape in symmetric_partitions(n):
        if strict and any(i + j == 0 for i, j in arcs(shape)):
            continue
        classes = _mirror_classes(shape)
        for values in _words(group.order, len(classes)):
            labels = {a: g for cls, g in zip(classes, values) for a in cls}
            out.append(SymmetricArcLabeledPartition.build(shape, labels))
    return out


def count_symmetric_arc_labeled(n: int, labels: int, strict: bool = False) -> int:
    total = 0
    for shape in symmetric_partitions(n):
        if strict and any(i + j == 0 for i, j in arcs(shape)):
            continue
        total += labels ** len(_mirror_classes(shape))
    return total


def _blockwise_sum(n: int, weight) -> int:
    total = 0
    for shape in enumerate_partitions(GroundSet.interval(n)):
        value = 1
        for b in shape.blocks:
            value *= weight(len(b))
        total += value
    return total


def sc_dimension(model: str, n: int, q: int, method: str = "formula") -> int:
    """Dimension of the degree n superclass model over a field with q elements.

    ``formula`` sums blockwise label counts over Π[n]; ``enumerate`` counts the
    arc-labeled objects directly; ``monoid`` counts natural basis elements.
    """
    group = units_group(q, model)
    g = group.order
    if method == "formula":
        if model == "USL":
            return _blockwise_sum(n, lambda k: g ** (k - 1))
        if model == "UO":
            return _blockwise_sum(n, lambda k: (2 * g) ** (k - 1))
        return _blockwise_sum(n, lambda k: (2 * g) ** (k - 1) + g**k)
    if method == "enumerate":
        if model == "USL":
            return sum(g ** len(arcs(shape)) for shape in enumerate_partitions(GroundSet.interval(n)))
        return count_symmetric_arc_labeled(n, g, strict=(model == "UO"))
    if method == "monoid":
        build = {"USL": pi_G, "UO": pi_prime, "USp": pi_double_prime}[model]
        return len(build(group, max_size=max(n, 1)).basis(GroundSet.interval(n)))
    raise ValueError("method must be 'formula', 'enumerate' or 'monoid'")


def dimension_sequence(monoid: SpeciesHopfMonoid, n_max: int) -> list[int]:
    return [len(monoid.basis(GroundSet.interval(n))) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# Isomorphism test at the level of the Fock functor


def index_pairing(a: LabelSpecies, b: LabelSpecies, n_max: int) -> dict[int, dict[Label, Label]]:
    """Per block size, match the labels on [m] by their canonical enumeration order."""
    out = {}
    for m in range(1, n_max + 1):
        la = a.enumerate(GroundSet.interval(m))
        lb = b.enumerate(GroundSet.interval(m))
        out[m] = dict(zip(la, lb)) if len(la) == len(lb) else {}
    return out


def _transport(x: LabeledSetPartition, source: LabelSpecies, target: LabelSpecies, pairing) -> LabeledSetPartition | None:
    items = []
    for block, lab in x.blocks:
        st = Bijection.standardize(block)
        table = pairing.get(len(block), {})
        local = source.relabel(st, lab)
        if local not in table:
            return None
        items.append((block, target.relabel(st.inverse(), table[local])))
    return LabeledSetPartition(items)


def hopf_monoid_iso_test(
    A: SpeciesHopfMonoid,
    B: SpeciesHopfMonoid,
    pairing: Mapping[int, Mapping[Label, Label]] | None,
    n_max: int,
    basis: str = "p",
) -> Report:
    """Does a blockwise label bijection intertwine the K-level structure maps?

    The basis bijection acts blockwise through the standardized labels; products
    and coproducts on components of size ≤ n_max are computed on each side by
    conversion through the natural basis and compared.
    """
    pairing = pairing if pairing is not None else index_pairing(A.labels, B.labels, n_max)
    report = Report(f"hopf-iso[{A.labels.tag} ~ {B.labels.tag}, n≤{n_max}, {basis}]")
    KA = GradedHopfAlgebra(A, "K", method="convert")
    KB = GradedHopfAlgebra(B, "K", method="convert")
    for m, table in sorted(pairing.items()):
        if m > n_max:
            continue
        la = A.labels.enumerate(GroundSet.interval(m))
        lb = B.labels.enumerate(GroundSet.interval(m))
        report.check(
            sorted(table) == sorted(la) and sorted(table.values()) == sorted(lb) and len(la) == len(lb),
            f"pairing is a bijection on blocks of size {m}",
        )
    if not report.ok:
        return report

    def move(x):
        y = _transport(x, A.labels, B.labels, pairing)
        if y is None:
            raise ValueError("pairing is incomplete")
        return y

    def move_terms(terms):
        return {tuple(move(k) for k in key) if isinstance(key, tuple) else move(key): c for key, c in terms.items()}

    for n in range(n_max + 1):
        report.check(KA.dimension(n) == KB.dimension(n), f"dimension in degree {n}")
        images = {move(x) for x in KA.indices(n)}
        report.check(images == set(KB.indices(n)), f"basis bijection in degree {n}")
        for x in KA.indices(n):
            cop_a = KA.coproduct(KA.basis_element(x, basis))
            cop_b = KB.coproduct(KB.basis_element(move(x), basis))
            report.check(move_terms(cop_a.terms) == dict(cop_b.terms), f"coproduct at {x}")
        for m in range(n + 1):
            if m == 0 or m == n:
                continue
            for x in KA.indices(m):
                for y in KA.indices(n - m):
                    prod_a = KA.basis_element(x, basis) * KA.basis_element(y, basis)
                    prod_b = KB.basis_element(move(x), basis) * KB.basis_element(move(y), basis)
                    report.check(move_terms(prod_a.terms) == dict(prod_b.terms), f"product at {x}, {y}")
    return report


def verify_superclass(n_max: int = 3, bijection_groups: Sequence[int] = (1, 2), q_max_bell: int = 6) -> Report:
    """Round trips of phi and phi_pm, the dimension identities and the K-level isomorphism."""
    report = Report(f"superclass[n≤{n_max}]")
    for size in bijection_groups:
        group = cyclic_group(size)
        for n in range(n_max + 1):
            I = GroundSet.interval(n)
            monoid = pi_G(group, max_size=max(n, 1))
            basis = monoid.basis(I)
            images = [phi(x, group) for x in basis]
            report.check(all(phi_inverse(y, group) == x for x, y in zip(basis, images)), f"phi⁻¹∘phi |G|={size} n={n}")
            targets = enumerate_arc_labeled(n, group)
            report.check(
                sorted(images, key=ArcLabeledPartition.encode) == sorted(targets, key=ArcLabeledPartition.encode),
                f"phi onto |G|={size} n={n}",
            )
            for model, strict, build in (("UO", True, pi_prime), ("USp", False, pi_double_prime)):
                monoid = build(group, max_size=max(n, 1))
                basis = monoid.basis(I)
                images = [phi_pm(x, group) for x in basis]
                report.check(
                    all(phi_pm_inverse(y, group, monoid.labels) == x for x, y in zip(basis, images)),
                    f"phi_pm⁻¹∘phi_pm {model} |G|={size} n={n}",
                )
                targets = enumerate_symmetric_arc_labeled(n, group, strict=strict)
                report.check(
                    sorted(map(ArcLabeledPartition.encode, images)) == sorted(map(ArcLabeledPartition.encode, targets)),
                    f"phi_pm onto {model} |G|={size} n={n}",
                )
                report.check(
                    all(phi_pm(phi_pm_inverse(y, group, monoid.labels), group) == y for y in targets),
                    f"phi_pm∘phi_pm⁻¹ {model} |G|={size} n={n}",
                )
    for n in range(q_max_bell + 1):
        report.check(sc_dimension("USL", n, 2, method="monoid") == bell_number(n), f"USL q=2 dimension is Bell({n})")
    for q in (3, 5):
        for n in range(n_max + 1):
            for model in MODELS:
                values = {sc_dimension(model, n, q, method=m) for m in ("formula", "enumerate", "monoid")}
                report.check(len(values) == 1, f"{model} dimension methods agree q={q} n={n}")
    return report


def verify_size_isomorphism(n_max: int = 3) -> Report:
    """K(Π_G) ≅ K(Π′_{G′}) when |G| = 2|G′|, and dimension disagreement otherwise."""
    report = Report(f"size-isomorphism[n≤{n_max}]")
    for big, small in ((2, 1), (4, 2)):
        A = pi_G(cyclic_group(big), max_size=n_max)
        B = pi_prime(cyclic_group(small), max_size=n_max)
        report.absorb(hopf_monoid_iso_test(A, B, None, n_max, basis="p"))
    for big, small in ((2, 2), (3, 1), (4, 1), (1, 1)):
        A = pi_G(cyclic_group(big), max_size=n_max)
        B = pi_prime(cyclic_group(small), max_size=n_max)
        differs = dimension_sequence(A, n_max) != dimension_sequence(B, n_max)
        report.check(differs, f"dimensions differ for |G|={big}, |G′|={small}")
    control = hopf_monoid_iso_test(
        pi_G(cyclic_group(3), max_size=n_max), pi_prime(cyclic_group(1), max_size=n_max), None, min(n_max, 2)
    )
    report.check(not control.ok, "wrong-size pairing is rejected")
    return report
