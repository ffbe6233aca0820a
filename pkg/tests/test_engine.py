from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from species_hopf.engine import (
    BASES,
    EMPTY,
    LabeledSetPartition,
    SpeciesHopfMonoid,
    decode_lsp,
    mobius_closed_form,
    ordered_decompositions,
    transitive_merge_closure,
    verify_hopf_axioms,
)
from species_hopf.foundation import GroundSet, SetPartition, bell_number, enumerate_partitions, refines
from species_hopf.labels import CyclicOrderLabel, OrbitLabel, TrivialLabel, cyclic_group

PI = SpeciesHopfMonoid(TrivialLabel())
CYC = SpeciesHopfMonoid(CyclicOrderLabel())
Z2 = SpeciesHopfMonoid(OrbitLabel(cyclic_group(2)))


def lsp(h, text):
    return decode_lsp(text, h.labels)


def vec(h, text, basis="natural"):
    return h.basis_element(lsp(h, text), basis)


# -- products and coproducts on the natural basis ---------------------------

def test_unit_laws():
    y = vec(PI, "1 3|2")
    assert PI.nabla(PI.unit(), y) == y
    t = PI.delta(y, [1, 2, 3], [])
    assert t.terms == {(y.items()[0][0], EMPTY): 1}


def test_product_is_disjoint_union():
    assert PI.nabla(vec(PI, "1"), vec(PI, "2")) == vec(PI, "1|2")


def test_coproduct_splits_blocks():
    t = PI.delta(vec(PI, "1 2"), [1], [2])
    assert t.terms == {(lsp(PI, "1"), lsp(PI, "2")): 1}


def test_cyclic_coproduct_first_return():
    t = CYC.delta(vec(CYC, "1 2 3 4:(1 4 2 3)"), [1, 2, 3], [4])
    assert t.terms == {(lsp(CYC, "1 2 3:(1 2 3)"), lsp(CYC, "4:(4)")): 1}


def test_multi_split_with_one_part_is_identity():
    x = vec(Z2, "1 2:0,1|3:0")
    assert Z2.delta_multi(x, [[1, 2, 3]]).terms == {(lsp(Z2, "1 2:0,1|3:0"),): 1}
    assert Z2.nabla_multi([x]) == x


def test_empty_element_needs_component():
    with pytest.raises(ValueError):
        PI.element({})


# -- order -----------------------------------------------------------------

def test_order_examples():
    x = lsp(CYC, "1 2:(1 2)|3 4:(3 4)")
    assert CYC.order_leq(x, x)
    assert CYC.order_leq(x, lsp(CYC, "1 2 3 4:(1 3 2 4)"))
    assert not CYC.order_leq(lsp(CYC, "1 2 3 4:(1 3 2 4)"), x)


def test_shuffle_count_for_cycles():
    x = lsp(CYC, "1 2:(1 2)|3 4:(3 4)")
    above = [y for y in CYC.basis(GroundSet.interval(4)) if y.num_blocks == 1 and CYC.order_leq(x, y)]
    # every 4-cycle restricts to the unique 2-cycle on each pair, so all 3!=6 cycles lie above
    assert len(above) == 6


def test_poset_examples():
    assert len(PI.component_poset(GroundSet.interval(3)).elements) == 5
    assert len(PI.component_poset(GroundSet()).elements) == 1
    assert len(Z2.component_poset(GroundSet.interval(2)).elements) == 3


@pytest.mark.parametrize("n", range(5))
def test_trivial_order_is_refinement(n):
    I = GroundSet.interval(n)
    for x in PI.basis(I):
        for y in PI.basis(I):
            assert PI.order_leq(x, y) == refines(x.shape(), y.shape())


@pytest.mark.parametrize("h", [PI, CYC, Z2], ids=["trivial", "cyclic", "orbit"])
def test_order_matches_merge_closure(h):
    for n in range(4):
        I = GroundSet.interval(n)
        closure = transitive_merge_closure(h, I)
        poset = h.component_poset(I)
        for y in h.basis(I):
            assert set(poset.below(y)) == closure[y]


# -- Möbius ----------------------------------------------------------------

def test_mobius_closed_form_examples():
    assert mobius_closed_form(lsp(PI, "1|2|3")) == 1
    assert mobius_closed_form(lsp(PI, "1 2 3")) == 2
    assert mobius_closed_form(lsp(PI, "1 2|3 4")) == 1
    assert PI.mobius_bottom(lsp(PI, "1 2|3 4")) == 1


@pytest.mark.parametrize("h", [PI, CYC, Z2], ids=["trivial", "cyclic", "orbit"])
def test_mobius_recursive_equals_closed_form(h):
    for n in range(5 if h is not Z2 else 4):
        for x in h.basis(GroundSet.interval(n)):
            assert h.mobius_bottom(x) == mobius_closed_form(x)


# -- bases: classical formulas on set partitions as the oracle ---------------

def _meet_factorial(x: SetPartition, y: SetPartition) -> int:
    out = 1
    for b in x.meet(y).blocks:
        out *= factorial(len(b))
    return out


def _oracle_in_m(basis, lam: SetPartition, parts):
    bottom = lambda x: all(len(b) == 1 for b in x.meet(lam).blocks)
    if basis == "m":
        return {lam: 1}
    if basis == "p":
        return {x: 1 for x in parts if refines(lam, x)}
    if basis == "e":
        return {x: 1 for x in parts if bottom(x)}
    if basis == "h":
        return {x: _meet_factorial(x, lam) for x in parts}
    raise AssertionError


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("basis", ["p", "e", "h"])
def test_bases_against_classical_formulas(n, basis):
    I = GroundSet.interval(n)
    parts = enumerate_partitions(I)
    for x in PI.basis(I):
        got = {k.shape(): v for k, v in PI.basis_element(x, basis).in_basis("m").terms.items()}
        assert got == _oracle_in_m(basis, x.shape(), parts)


def test_singleton_component_bases_agree():
    x = lsp(PI, "1")
    for b in BASES:
        assert PI.basis_element(x, b).in_basis("natural").terms == {x: 1}


@pytest.mark.parametrize("basis", BASES)
def test_conversion_round_trip(basis):
    for n in range(4):
        for x in Z2.basis(GroundSet.interval(n)):
            e = Z2.basis_element(x, basis)
            for other in BASES:
                assert e.in_basis(other).in_basis(basis).terms == e.terms


def test_closed_form_rules_examples():
    a, b = lsp(PI, "1 3"), lsp(PI, "2")
    assert PI.structure_in_basis("p", "product", (a, b)).terms == {lsp(PI, "1 3|2"): 1}
    assert PI.structure_in_basis("m", "coproduct", (lsp(PI, "1 2"), [1], [2])).is_zero()
    m = PI.structure_in_basis("m", "product", (lsp(PI, "1"), lsp(PI, "2")))
    assert m.terms == {lsp(PI, "1|2"): 1, lsp(PI, "1 2"): 1}


@pytest.mark.parametrize("h", [PI, CYC, Z2], ids=["trivial", "cyclic", "orbit"])
def test_closed_form_rules_match_definitions(h):
    I = GroundSet.interval(3)
    for basis in BASES[1:]:
        for S, T in ordered_decompositions(I, 2):
            for a in h.basis(S):
                for b in h.basis(T):
                    direct = h.nabla(h.basis_element(a, basis), h.basis_element(b, basis))
                    assert h.structure_in_basis(basis, "product", (a, b)) == direct
            for lam in h.basis(I):
                direct = h.delta(h.basis_element(lam, basis), S, T)
                assert h.structure_in_basis(basis, "coproduct", (lam, S, T)) == direct


def test_sign_twist_exchanges_e_and_h():
    for x in CYC.basis(GroundSet.interval(3)):
        e, hh = CYC.basis_element(x, "e"), CYC.basis_element(x, "h")
        assert CYC.sign_twist(e) == hh
        assert CYC.sign_twist(hh) == e


def test_hopf_axioms_small():
    for n in range(4):
        assert verify_hopf_axioms(PI, GroundSet.interval(n)).ok
    assert verify_hopf_axioms(CYC, GroundSet.interval(3)).ok


def test_basis_dimensions_are_bell_for_trivial():
    for n in range(7):
        assert len(PI.basis(GroundSet.interval(n))) == bell_number(n)


def test_lsp_validation():
    with pytest.raises(ValueError):
        LabeledSetPartition([((1, 2), TrivialLabel().enumerate(GroundSet([1, 2]))[0]),
                             ((2,), TrivialLabel().enumerate(GroundSet([2]))[0])])
    with pytest.raises(ValueError):
        decode_lsp("1 2", Z2.labels)


# -- property tests ------------------------------------------------------------

@st.composite
def elements(draw, h, ground):
    basis = draw(st.sampled_from(BASES))
    idx = h.basis(ground)
    terms = draw(st.dictionaries(st.sampled_from(idx), st.integers(-3, 3), max_size=4))
    return h.element(terms, basis, component=ground)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_product_commutative_and_associative(data):
    a = data.draw(elements(Z2, GroundSet([1, 4])))
    b = data.draw(elements(Z2, GroundSet([2])))
    c = data.draw(elements(Z2, GroundSet([3])))
    assert Z2.nabla(a, b) == Z2.nabla(b, a)
    assert Z2.nabla(Z2.nabla(a, b), c) == Z2.nabla(a, Z2.nabla(b, c))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_coproduct_cocommutative(data):
    I = GroundSet.interval(3)
    z = data.draw(elements(CYC, I))
    S = GroundSet(data.draw(st.sets(st.sampled_from(list(I)))))
    T = GroundSet(a for a in I if a not in S)
    assert CYC.delta(z, S, T).permute((1, 0)) == CYC.delta(z, T, S)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bimonoid_compatibility(data):
    a = data.draw(elements(PI, GroundSet([1, 3])))
    b = data.draw(elements(PI, GroundSet([2, 4])))
    S = GroundSet(data.draw(st.sets(st.sampled_from([1, 2, 3, 4]))))
    T = GroundSet(x for x in (1, 2, 3, 4) if x not in S)
    lhs = PI.delta(PI.nabla(a, b), S, T)
    A, B = a.component, b.component
    da = PI.delta(a, S.intersection(A), T.intersection(A))
    db = PI.delta(b, S.intersection(B), T.intersection(B))
    terms = {}
    for (x1, x2), u in da.in_basis("natural").terms.items():
        for (y1, y2), v in db.in_basis("natural").terms.items():
            key = (x1.union(y1), x2.union(y2))
            terms[key] = terms.get(key, 0) + u * v
    assert dict(lhs.in_basis("natural").terms) == {k: Fraction(v) for k, v in terms.items() if v}
