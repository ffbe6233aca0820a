import pytest
from hypothesis import given, settings, strategies as st

from species_hopf.engine import decode_lsp
from species_hopf.foundation import GroundSet, SetPartition, bell_number, enumerate_partitions
from species_hopf.labels import OrbitLabel, cyclic_group, make_signed_group
from species_hopf.engine import SpeciesHopfMonoid
from species_hopf.superclass import (
    MODELS,
    ArcLabeledPartition,
    SymmetricArcLabeledPartition,
    arcs,
    count_symmetric_arc_labeled,
    dimension_sequence,
    enumerate_arc_labeled,
    enumerate_symmetric_arc_labeled,
    hopf_monoid_iso_test,
    index_pairing,
    phi,
    phi_inverse,
    phi_pm,
    phi_pm_inverse,
    pi_double_prime,
    pi_G,
    pi_prime,
    sc_dimension,
    symmetric_partitions,
)

sp = SetPartition.from_encoding


def brute_arcs(partition):
    out = []
    for b in partition.blocks:
        s = sorted(b)
        out += list(zip(s, s[1:]))
    return sorted(out)


def brute_symmetric(n):
    return [x for x in enumerate_partitions(GroundSet.signed_interval(n))
            if {tuple(sorted(-a for a in b)) for b in x.blocks} == set(x.blocks)]


def test_arcs():
    assert arcs(sp("1|2|3")) == []
    assert arcs(sp("1 3 4 7|2 6|5")) == brute_arcs(sp("1 3 4 7|2 6|5"))


def test_arc_label_validation():
    with pytest.raises(ValueError):
        ArcLabeledPartition.build(sp("1 2"), {})
    with pytest.raises(ValueError):
        SymmetricArcLabeledPartition.build(SetPartition([[-1, 2], [-2, 1]]), {(-1, 2): 0, (-2, 1): 1})


def test_phi_examples():
    G = cyclic_group(2)
    h = pi_G(G)
    assert phi(decode_lsp("1|2|3", h.labels), G).labels == ()
    y = phi(decode_lsp("1 2:0,1", h.labels), G)
    assert y.label_map() == {(1, 2): 1}


@pytest.mark.parametrize("order", [1, 2, 3])
def test_phi_round_trip(order):
    G = cyclic_group(order)
    h = pi_G(G)
    for n in range(4):
        images = set()
        for x in h.basis(GroundSet.interval(n)):
            y = phi(x, G)
            assert phi_inverse(y, G) == x
            images.add(y)
        assert images == set(enumerate_arc_labeled(n, G))


def test_phi_pm_examples():
    G = cyclic_group(2)
    h = pi_double_prime(G)
    out = {}
    for x in h.basis(GroundSet.interval(1)):
        out[x] = phi_pm(x, G)
    shapes = sorted(y.partition.encode() for y in out.values())
    assert shapes == ["-1 1", "-1 1", "-1|1"]
    labels = sorted(y.labels for y in out.values() if y.labels)
    assert labels == [(((-1, 1), 0),), (((-1, 1), 1),)]


@pytest.mark.parametrize("order", [1, 2])
def test_phi_pm_bijective(order):
    G = cyclic_group(order)
    h = pi_double_prime(G)
    for n in range(4):
        basis = h.basis(GroundSet.interval(n))
        images = {phi_pm(x, G) for x in basis}
        assert len(images) == len(basis) == count_symmetric_arc_labeled(n, order)
        for x in basis:
            assert phi_pm_inverse(phi_pm(x, G), G, h.labels) == x


@pytest.mark.parametrize("n", range(4))
def test_symmetric_partitions_against_filter(n):
    assert sorted(symmetric_partitions(n)) == sorted(brute_symmetric(n))


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("g", [1, 2, 3])
def test_symmetric_count_against_orbit_formula(n, g):
    """Mirrored arc pairs share a label, so each partition contributes g^(#arc orbits)."""
    total = strict = 0
    for x in brute_symmetric(n):
        orbits = {frozenset({(i, j), (-j, -i)}) for i, j in brute_arcs(x)}
        total += g ** len(orbits)
        if all(i + j != 0 for i, j in brute_arcs(x)):
            strict += g ** len(orbits)
    assert count_symmetric_arc_labeled(n, g) == total
    assert count_symmetric_arc_labeled(n, g, strict=True) == strict
    assert len(enumerate_symmetric_arc_labeled(n, cyclic_group(g))) == total


def test_dimension_examples():
    assert [sc_dimension("USL", n, 2) for n in range(6)] == [bell_number(n) for n in range(6)]
    assert sc_dimension("USL", 2, 3) == 3
    for n in range(5):
        for q in (3, 5, 7):
            assert sc_dimension("USp", n, q) >= sc_dimension("UO", n, q)
    with pytest.raises(ValueError):
        sc_dimension("UO", 2, 4)


@pytest.mark.parametrize("model", MODELS)
def test_dimension_methods_agree(model):
    for q in ((2, 3, 4, 5) if model == "USL" else (3, 5)):
        for n in range(4):
            values = {sc_dimension(model, n, q, method) for method in ("formula", "enumerate", "monoid")}
            assert len(values) == 1


def test_model_dimensions_match_monoids():
    G = cyclic_group(2)
    for monoid in (pi_G(G), pi_prime(G), pi_double_prime(G)):
        seq = dimension_sequence(monoid, 3)
        assert seq == [len(monoid.basis(GroundSet.interval(n))) for n in range(4)]


def test_iso_positive_and_negative():
    a = SpeciesHopfMonoid(OrbitLabel(cyclic_group(2)))
    assert hopf_monoid_iso_test(a, a, None, 3).ok
    b = SpeciesHopfMonoid(OrbitLabel(make_signed_group(cyclic_group(1))))
    assert hopf_monoid_iso_test(a, b, index_pairing(a.labels, b.labels, 3), 3).ok
    c = SpeciesHopfMonoid(OrbitLabel(cyclic_group(3)))
    assert not hopf_monoid_iso_test(c, b, None, 2).ok


def test_dimension_sequences_separate_sizes():
    signed = pi_prime(cyclic_group(1))
    assert dimension_sequence(pi_G(cyclic_group(2)), 4) == dimension_sequence(signed, 4)
    assert dimension_sequence(pi_G(cyclic_group(3)), 4) != dimension_sequence(signed, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.data())
def test_phi_inverse_of_random_labels(order, n, data):
    G = cyclic_group(order)
    parts = enumerate_partitions(GroundSet.interval(n))
    shape = data.draw(st.sampled_from(parts))
    labels = {a: data.draw(st.integers(0, order - 1)) for a in arcs(shape)}
    y = ArcLabeledPartition.build(shape, labels)
    assert phi(phi_inverse(y, G), G) == y
