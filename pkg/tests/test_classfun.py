from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from species_hopf.classfun import (
    ClassFunction,
    FunElement,
    GroupFunction,
    Permutation,
    SymmetricGroupModels,
    all_permutations,
    average_conjugation,
    average_to_class,
    class_representative,
    class_to_fun,
    classfun_coproduct,
    classfun_product,
    conjugacy_classes,
    frobenius,
    frobenius_inverse,
    fun_coproduct,
    fun_prefix_restriction,
    fun_product,
    induce,
    induce_from_subgroup,
    iso_f,
    iso_fbar,
    lift_rho_tilde,
    lsp_to_permutation,
    permutation_to_lsp,
    restrict_first_return,
    restrict_fun,
    sym_change_basis,
    young_induced,
    young_subgroup_member,
)
from species_hopf.foundation import IntegerPartition, integer_partitions, partition_stats
from species_hopf.symfun import sym_element, sym_image_function

MODELS = SymmetricGroupModels(max_size=5)


def perm(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def brute_induce(n, member, f):
    """Ind(f)(x) = |H|⁻¹ Σ_{g ∈ S_n, gxg⁻¹ ∈ H} f(gxg⁻¹)."""
    group = all_permutations(n)
    order = sum(1 for g in group if member(g))
    vals = []
    for x in group:
        total = Fraction(0)
        for g in group:
            y = x.conjugate(g)
            if member(y):
                total += Fraction(f(y))
        vals.append(total / order)
    return tuple(vals)


def brute_frobenius(f: ClassFunction):
    return {lam: v / partition_stats(lam).centralizer_order for lam, v in f.terms.items() if v}


def clean(terms):
    return {k: v for k, v in terms.items() if v}


# -- permutations -----------------------------------------------------------

def test_permutation_basics():
    s = perm(3, (1, 2, 3))
    assert s(1) == 2 and s(3) == 1
    assert s.compose(s.inverse()) == Permutation.identity(3)
    assert s.cycle_type() == (3,)
    assert s.sign() == 1 and perm(2, (1, 2)).sign() == -1
    assert perm(1).cross(perm(2, (1, 2))) == perm(3, (2, 3))
    assert perm(3, (2, 3)).split(1) == (perm(1), perm(2, (1, 2)))
    assert perm(3, (1, 2)).split(1) is None


def test_lsp_round_trip():
    for n in range(5):
        for s in all_permutations(n):
            assert lsp_to_permutation(permutation_to_lsp(s)) == s


def test_first_return():
    assert restrict_first_return({1: 4, 4: 2, 2: 3, 3: 1}, {1, 2, 3}) == {1: 2, 2: 3, 3: 1}


def test_class_sizes():
    for n in range(6):
        classes = conjugacy_classes(n)
        for lam, members in classes.items():
            assert len(members) * partition_stats(lam).centralizer_order == factorial(n)
            assert class_representative(lam) in members


# -- induction and restriction --------------------------------------------

def test_induction_of_indicators():
    for a in integer_partitions(2):
        for b in integer_partitions(1):
            lam = IntegerPartition(tuple(a) + tuple(b))
            got = induce(GroupFunction.indicator(class_representative(a)), GroupFunction.indicator(class_representative(b)))
            assert got(class_representative(lam)) != 0
            total = ClassFunction.indicator(a) * ClassFunction.indicator(b)
            assert total.terms[lam] == Fraction(partition_stats(lam).centralizer_order,
                                                partition_stats(a).centralizer_order * partition_stats(b).centralizer_order)


def test_induce_trivial_on_full_group():
    got = induce_from_subgroup(2, lambda y: True, lambda y: 1)
    assert got.values == (1, 1)


@pytest.mark.parametrize("n", range(1, 4))
def test_induction_against_brute_force(n):
    for lam in integer_partitions(n):
        member = young_subgroup_member(lam)
        for f in (lambda y: 1, Permutation.sign, lambda y: int(y == Permutation.identity(n))):
            assert induce_from_subgroup(n, member, f).values == brute_induce(n, member, f)


def test_restriction_examples():
    f = GroupFunction.indicator(perm(2, (1, 2)))
    assert clean(restrict_fun(f, 1, 1)) == {}
    res = clean(restrict_fun(GroupFunction.trivial(3), 1, 2))
    assert len(res) == 2 and set(res.values()) == {1}
    # restriction of a class function stays constant on classes of the subgroup
    chi = GroupFunction.from_callable(4, lambda y: y.cycle_type().length)
    for (x, y), v in restrict_fun(chi, 2, 2).items():
        assert v == x.cycle_type().length + y.cycle_type().length


def test_average_conjugation_examples():
    assert average_conjugation(GroupFunction.indicator(Permutation.identity(2))).values == (2, 0)
    assert average_conjugation(GroupFunction.indicator(perm(2, (1, 2)))).values == (0, 2)
    f = GroupFunction.sign(3)
    assert average_conjugation(f).values == (f * 6).values


@pytest.mark.parametrize("n", range(4))
def test_average_conjugation_against_brute_force(n):
    group = all_permutations(n)
    for s in group:
        f = GroupFunction.indicator(s)
        expected = tuple(sum(f(x.conjugate(g)) for g in group) for x in group)
        assert average_conjugation(f).values == expected


# -- Hopf algebras of functions ---------------------------------------------

def test_fun_structure():
    s = perm(2, (1, 2))
    a = FunElement({s: Fraction(1)})
    assert fun_product(a, FunElement({perm(1): Fraction(1)})).terms == {perm(3, (1, 2)): 1}
    assert clean(fun_coproduct(a)) == {(perm(0), s): 1, (s, perm(0)): 1}


def test_prefix_restriction_is_not_cocommutative():
    cop = clean(fun_prefix_restriction(FunElement({perm(3, (2, 3)): Fraction(1)})))
    assert cop != {(y, x): c for (x, y), c in cop.items()}


def test_classfun_coproduct_terms():
    cop = clean(classfun_coproduct(ClassFunction.indicator((2,))))
    assert cop == {(IntegerPartition(()), IntegerPartition((2,))): 1, (IntegerPartition((2,)), IntegerPartition(())): 1}


def test_young_induced_is_permutation_character():
    chi = young_induced((2, 1))
    assert chi(class_representative((1, 1, 1))) == 3
    assert chi(class_representative((2, 1))) == 1
    assert chi(class_representative((3,))) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_classfun_product_associative_commutative(a, b, c, data):
    pick = lambda n: ClassFunction.indicator(data.draw(st.sampled_from(integer_partitions(n))))
    x, y, z = pick(a), pick(b), pick(c)
    assert clean(classfun_product(x, y).terms) == clean(classfun_product(y, x).terms)
    assert clean(((x * y) * z).terms) == clean((x * (y * z)).terms)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2), st.data())
def test_averaging_is_multiplicative(m, n, data):
    s = data.draw(st.sampled_from(all_permutations(m)))
    t = data.draw(st.sampled_from(all_permutations(n)))
    a, b = FunElement({s: Fraction(1)}), FunElement({t: Fraction(1)})
    lhs = average_to_class(a * b)
    rhs = average_to_class(a) * average_to_class(b)
    assert clean(lhs.terms) == clean(rhs.terms)


# -- f, f̄ and the Frobenius map -------------------------------------------

def test_iso_examples():
    s = perm(2, (1, 2))
    x = permutation_to_lsp(s)
    assert iso_f(MODELS.K_perm.basis_element(x, "p")).terms == {s: 1}
    kb = MODELS.Kbar_perm
    assert clean(iso_fbar(kb.basis_element(kb.canonical(x), "p")).terms) == {IntegerPartition((2,)): 2}


@pytest.mark.parametrize("n", range(1, 5))
def test_e_of_long_cycle_is_scaled_sign(n):
    kb = MODELS.Kbar_perm
    x = kb.canonical(permutation_to_lsp(perm(n, tuple(range(1, n + 1)))))
    got = clean(iso_fbar(kb.basis_element(x, "e")).terms)
    assert got == clean((ClassFunction.sign(n) * factorial(n)).terms)


@pytest.mark.parametrize("n", range(1, 5))
def test_h_is_scaled_young_character(n):
    kb = MODELS.Kbar_perm
    for lam in integer_partitions(n):
        x = kb.canonical(permutation_to_lsp(class_representative(lam)))
        got = clean(iso_fbar(kb.basis_element(x, "h")).terms)
        expected = young_induced(lam) * partition_stats(lam).factorial_product
        assert got == clean(expected.terms)


def test_frobenius_examples():
    z2 = ClassFunction.indicator((2,)) * 2
    assert clean(frobenius(z2, MODELS).terms) == {IntegerPartition((2,)): 1}
    triv = frobenius(ClassFunction.trivial(2), MODELS)
    assert clean(triv.terms) == {IntegerPartition((2,)): Fraction(1, 2), IntegerPartition((1, 1)): Fraction(1, 2)}
    assert clean(sym_change_basis(triv, "h", MODELS).terms) == {IntegerPartition((2,)): 1}
    sgn = frobenius(ClassFunction.sign(2), MODELS)
    assert clean(sym_change_basis(sgn, "e", MODELS).terms) == {IntegerPartition((2,)): 1}


@pytest.mark.parametrize("n", range(6))
def test_frobenius_against_classical_formula(n):
    for lam in integer_partitions(n):
        for f in (ClassFunction.indicator(lam), ClassFunction.sign(n), ClassFunction.trivial(n)):
            got = frobenius(f, MODELS)
            assert got.basis == "p"
            assert clean(got.terms) == brute_frobenius(f)
            assert clean(frobenius_inverse(got, MODELS).terms) == clean(f.terms)


def test_frobenius_is_multiplicative():
    for a in integer_partitions(2):
        for b in integer_partitions(2):
            x, y = ClassFunction.indicator(a), ClassFunction.indicator(b)
            lhs = frobenius(classfun_product(x, y), MODELS)
            fx, fy = frobenius(x, MODELS), frobenius(y, MODELS)
            rhs = {}
            for la, u in fx.terms.items():
                for lb, v in fy.terms.items():
                    key = IntegerPartition(tuple(la) + tuple(lb))
                    rhs[key] = rhs.get(key, 0) + u * v
            assert clean(lhs.terms) == clean(rhs)


def test_lifting_examples():
    lifted = lift_rho_tilde(sym_element("p", (2,)), MODELS)
    assert {k.shape().encode(): v for k, v in clean(lifted.in_basis("p").terms).items()} == {"1 2": 2}
    m1 = lift_rho_tilde(sym_element("m", (1,)), MODELS)
    assert {k.shape().encode(): v for k, v in clean(m1.in_basis("m").terms).items()} == {"1": 1}


@pytest.mark.parametrize("basis", ["m", "p", "e", "h"])
def test_lift_then_project_is_factorial(basis):
    for n in range(5):
        for lam in integer_partitions(n):
            s = sym_element(basis, lam)
            lifted = lift_rho_tilde(s, MODELS)
            image = sym_image_function(lifted)
            target = sym_change_basis(s, image.basis, MODELS)
            assert clean(image.terms) == clean({k: v * factorial(n) for k, v in target.terms.items()})


def test_class_to_fun_round_trip():
    for n in range(4):
        for lam in integer_partitions(n):
            f = ClassFunction.indicator(lam)
            assert clean(average_to_class(class_to_fun(f)).terms) == clean((f * factorial(n)).terms)
