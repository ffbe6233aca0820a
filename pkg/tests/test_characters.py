from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from species_hopf.characters import Character, terminal_psi, verify_terminal, zeta_component, zeta_pi
from species_hopf.classfun import SymmetricGroupModels, all_permutations, permutation_to_lsp
from species_hopf.engine import LabeledSetPartition, SpeciesHopfMonoid, decode_lsp
from species_hopf.foundation import GroundSet, SetPartition, enumerate_partitions
from species_hopf.labels import CyclicOrderLabel, OrbitLabel, TrivialLabel, cyclic_group

PI = SpeciesHopfMonoid(TrivialLabel())
CYC = SpeciesHopfMonoid(CyclicOrderLabel())


def test_zeta_pi_values():
    for n in range(5):
        for x in PI.basis(GroundSet.interval(n)):
            assert zeta_pi(PI.basis_element(x, "p")) == 1
            assert zeta_pi(PI.basis_element(x, "m")) == (1 if x.num_blocks <= 1 else 0)
    assert zeta_pi(PI.zero([1, 2])) == 0


def test_zeta_pi_rejects_labeled_hosts():
    with pytest.raises(ValueError):
        zeta_pi(CYC.basis_element(decode_lsp("1:(1)", CYC.labels)))


def test_block_character_on_one_block():
    zeta = Character(CYC)
    I = GroundSet.interval(3)
    whole = SetPartition([list(I)])
    for x in CYC.basis(I):
        e = CYC.basis_element(x, "h")
        assert zeta_component(zeta, whole, e) == zeta(e)


def test_block_character_vanishes_off_image():
    zeta = Character(PI)
    x = PI.basis_element(decode_lsp("1 2|3", PI.labels), "p")
    singletons = SetPartition([[1], [2], [3]])
    # p_Λ splits to zero unless every block of Λ lies in a part
    coarse = PI.basis_element(decode_lsp("1 2 3", PI.labels), "m")
    assert zeta_component(zeta, singletons, coarse) == 0
    assert zeta_component(zeta, SetPartition([[1, 2], [3]]), x) == 1


def test_block_character_independent_of_block_order():
    zeta = Character(CYC)
    for x in CYC.basis(GroundSet.interval(3)):
        e = CYC.basis_element(x, "e")
        a = zeta_component(zeta, SetPartition([[1, 3], [2]]), e)
        b = zeta_component(zeta, SetPartition([[2], [1, 3]]), e)
        assert a == b


def test_psi_of_unit():
    image = terminal_psi(Character(CYC), CYC.unit(), PI)
    assert image == PI.unit()


@pytest.mark.parametrize("n", range(4))
def test_psi_on_set_partitions_is_identity(n):
    for x in PI.basis(GroundSet.interval(n)):
        for basis in ("natural", "m", "p"):
            e = PI.basis_element(x, basis)
            image = terminal_psi(Character(PI), e, PI)
            assert image == e


@pytest.mark.parametrize("n", range(5))
def test_psi_of_permutation_p_basis_is_cycle_shape(n):
    models = SymmetricGroupModels(max_size=4)
    for sigma in all_permutations(n):
        x = permutation_to_lsp(sigma)
        image = models.psi(x, "p").in_basis("p")
        assert dict(image.terms) == {LabeledSetPartition.from_partition(x.shape(), TrivialLabel()): 1}


@pytest.mark.parametrize("host", [PI, CYC, SpeciesHopfMonoid(OrbitLabel(cyclic_group(2)))], ids=["trivial", "cyclic", "orbit"])
def test_verify_terminal(host):
    report = verify_terminal(Character(host), 3)
    assert report.ok, report.summary()


def test_character_is_multiplicative():
    assert Character(CYC).check_multiplicative(3).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_pullback_of_zeta(n, data):
    zeta = Character(CYC)
    x = data.draw(st.sampled_from(CYC.basis(GroundSet.interval(n))))
    basis = data.draw(st.sampled_from(["natural", "m", "p", "e", "h"]))
    e = CYC.basis_element(x, basis)
    assert zeta_pi(terminal_psi(zeta, e, PI)) == zeta(e)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_second_morphism_agrees(data):
    """Any character-preserving Hopf morphism to Π is Ψ: compare against the blockwise formula."""
    zeta = Character(CYC)
    x = data.draw(st.sampled_from(CYC.basis(GroundSet.interval(3))))
    e = CYC.basis_element(x, "natural")
    direct = {}
    for shape in enumerate_partitions(e.component):
        value = Fraction(1)
        for piece in CYC.split(x, shape.blocks):
            value *= zeta(CYC.basis_element(piece))
        if value:
            direct[LabeledSetPartition.from_partition(shape, PI.labels)] = value
    assert dict(terminal_psi(zeta, e, PI).terms) == direct
