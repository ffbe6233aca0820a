from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from species_hopf.foundation import (
    Bijection,
    FinitePoset,
    GroundSet,
    IntegerPartition,
    SetPartition,
    bell_number,
    count_partitions_of_type,
    enumerate_partitions,
    format_rational,
    integer_partitions,
    invert_matrix,
    mobius,
    partition_stats,
    refines,
)


def brute_partitions(atoms):
    """Every partition as a frozenset of frozensets, by assigning block ids."""
    atoms = list(atoms)
    seen = set()
    for ids in product(range(len(atoms)), repeat=len(atoms)):
        blocks = {}
        for a, i in zip(atoms, ids):
            blocks.setdefault(i, set()).add(a)
        seen.add(frozenset(frozenset(b) for b in blocks.values()))
    return seen


def sp(text):
    return SetPartition.from_encoding(text)


def test_refines_examples():
    assert refines(sp("1|2"), sp("1 2"))
    assert not refines(sp("1 2"), sp("1|2"))
    assert refines(sp("1 3|2"), sp("1 2 3"))


def test_enumerate_small():
    assert enumerate_partitions(GroundSet()) == [SetPartition([])]
    assert len(enumerate_partitions(GroundSet.interval(2))) == 2
    assert len(enumerate_partitions(GroundSet.interval(3))) == 5


@pytest.mark.parametrize("n", range(7))
def test_enumeration_matches_brute_force(n):
    ours = {frozenset(frozenset(b) for b in x.blocks) for x in enumerate_partitions(GroundSet.interval(n))}
    assert ours == (brute_partitions(range(1, n + 1)) if n else {frozenset()})


def test_bell_triangle_oracle():
    for n in range(9):
        assert len(enumerate_partitions(GroundSet.interval(n))) == bell_number(n)
    assert [bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_enumeration_is_sorted_and_distinct():
    parts = enumerate_partitions(GroundSet.interval(5))
    assert parts == sorted(parts)
    assert len(set(parts)) == len(parts)


@pytest.mark.parametrize("n", range(6))
def test_refinement_is_partial_order(n):
    parts = enumerate_partitions(GroundSet.interval(min(n, 4)))
    for x in parts:
        assert refines(x, x)
        for y in parts:
            if refines(x, y) and refines(y, x):
                assert x == y
            for z in parts:
                if refines(x, y) and refines(y, z):
                    assert refines(x, z)


def test_mobius_examples():
    chain = FinitePoset(["a", "b"], lambda x, y: x == y or (x, y) == ("a", "b"))
    assert mobius(chain, "a", "b") == -1
    lattice = FinitePoset(enumerate_partitions(GroundSet.interval(3)), refines)
    assert mobius(lattice, sp("1|2|3"), sp("1 2 3")) == 2
    assert all(mobius(lattice, x, x) == 1 for x in lattice.elements)


@pytest.mark.parametrize("n", range(5))
def test_mobius_recurrence(n):
    lattice = FinitePoset(enumerate_partitions(GroundSet.interval(n)), refines)
    for x in lattice.elements:
        for y in lattice.elements:
            if lattice.leq(x, y):
                total = sum(lattice.mobius(x, z) for z in lattice.interval(x, y))
                assert total == (1 if x == y else 0)


def test_partition_type():
    assert sp("1 3 4 7|2 6|5").type() == IntegerPartition((4, 2, 1))
    assert SetPartition([]).type() == IntegerPartition(())
    assert sp("1|2|3").type() == IntegerPartition((1, 1, 1))


def test_partition_stats_examples():
    s = partition_stats((2, 1))
    assert (s.factorial_product, s.multiplicity_product, s.centralizer_order, s.sign) == (2, 1, 2, -1)
    assert tuple(partition_stats(())) == (1, 1, 1, 1)
    s = partition_stats((1, 1))
    assert (s.factorial_product, s.multiplicity_product, s.centralizer_order, s.sign) == (1, 2, 2, 1)


def test_count_partitions_of_type():
    assert count_partitions_of_type(3, (2, 1)) == 3
    assert count_partitions_of_type(3, (3,)) == 1
    assert count_partitions_of_type(4, (2, 2)) == 3
    for n in range(9):
        assert sum(count_partitions_of_type(n, lam) for lam in integer_partitions(n)) == bell_number(n)


def _cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, k = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out.append(k)
    return IntegerPartition(out)


@pytest.mark.parametrize("n", range(7))
def test_centralizer_matches_class_size(n):
    sizes = {}
    for p in permutations(range(n)):
        lam = _cycle_type(p)
        sizes[lam] = sizes.get(lam, 0) + 1
    for lam in integer_partitions(n):
        assert factorial(n) // partition_stats(lam).centralizer_order == sizes[lam]


def test_integer_partitions_order_and_count():
    assert integer_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(integer_partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_ground_set_rejects_zero_and_sorts():
    assert GroundSet([3, 1, 2]) == (1, 2, 3)
    with pytest.raises(ValueError):
        GroundSet([0, 1])
    assert GroundSet.signed_interval(2) == (-2, -1, 1, 2)


def test_bijection_standardize_and_compose():
    st_ = Bijection.standardize([2, 5, 9])
    assert [st_(a) for a in (2, 5, 9)] == [1, 2, 3]
    assert st_.inverse().compose(st_) == Bijection.identity([2, 5, 9])


def test_encoding_round_trip():
    x = sp("1 4|2 3|5")
    assert SetPartition.from_encoding(x.encode()) == x
    assert x.encode() == "1 4|2 3|5"


def test_invert_matrix_and_format():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = invert_matrix(m)
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(ValueError):
        invert_matrix([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4)) == "4/1"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.data())
def test_meet_is_greatest_lower_bound(n, data):
    parts = enumerate_partitions(GroundSet.interval(n))
    x = data.draw(st.sampled_from(parts))
    y = data.draw(st.sampled_from(parts))
    m = x.meet(y)
    assert refines(m, x) and refines(m, y)
    for z in parts:
        if refines(z, x) and refines(z, y):
            assert refines(z, m)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=6))
def test_partition_stats_identities(parts):
    lam = IntegerPartition(parts)
    s = partition_stats(lam)
    prod_parts = 1
    for p in lam:
        prod_parts *= p
    assert s.centralizer_order == prod_parts * s.multiplicity_product
    assert s.sign == (-1) ** (lam.weight - lam.length)
