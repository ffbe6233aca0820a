"""Verification suites, one per acceptance criterion.

Each suite returns a :class:`Report`.  ``species`` narrows a suite to one label
species and ``n`` overrides its size bound; the defaults are the acceptance
settings.
"""
from __future__ import annotations

import os
import subprocess
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .characters import Character, verify_terminal
from .classfun import (
    SymmetricGroupModels,
    all_permutations,
    permutation_to_lsp,
    verify_class_functions,
    verify_frobenius,
    verify_group_algebras,
    verify_lifting,
)
from .engine import (
    BASES,
    LabeledSetPartition,
    SpeciesHopfMonoid,
    mobius_closed_form,
    ordered_decompositions,
    transitive_merge_closure,
    verify_hopf_axioms,
)
from .foundation import FinitePoset, GroundSet, bell_number, enumerate_partitions, integer_partitions, is_order_isomorphism, refines
from .labels import (
    ConnectedSumLabel,
    CyclicOrderLabel,
    LabelSpecies,
    OrbitLabel,
    TrivialLabel,
    cyclic_group,
    make_signed_group,
)
from .report import Report
from .superclass import verify_size_isomorphism, verify_superclass
from .symfun import verify_f_iso


def bundled_species() -> list[LabelSpecies]:
    return [
        TrivialLabel(),
        OrbitLabel(cyclic_group(2)),
        OrbitLabel(cyclic_group(3)),
        OrbitLabel(make_signed_group(cyclic_group(1))),
        ConnectedSumLabel(TrivialLabel(), OrbitLabel(cyclic_group(2))),
        CyclicOrderLabel(),
    ]


def _default_bound(species: LabelSpecies, n: int | None, base: int = 4) -> int:
    if n is not None:
        return n
    group = getattr(species, "group", None)
    if group is not None and group.order >= 3:
        return base - 1
    return base


def _targets(species: Sequence[LabelSpecies] | None) -> list[LabelSpecies]:
    return list(species) if species else bundled_species()


def hopf_axioms(species=None, n=None) -> Report:
    report = Report("hopf-axioms")
    for sp in _targets(species):
        h = SpeciesHopfMonoid(sp)
        for size in range(_default_bound(sp, n) + 1):
            sub = verify_hopf_axioms(h, GroundSet.interval(size))
            report.absorb(sub)
    return report


def mobius_closed_form_suite(species=None, n=None) -> Report:
    report = Report("mobius-closed-form")
    for sp in _targets(species):
        h = SpeciesHopfMonoid(sp)
        for size in range(_default_bound(sp, n) + 1):
            for x in h.basis(GroundSet.interval(size)):
                report.check(h.mobius_bottom(x) == mobius_closed_form(x), f"μ(∅, x) at {sp.tag} {x}")
    return report


def poset_isomorphism(species=None, n=None) -> Report:
    report = Report("poset-isomorphism")
    for sp in _targets(species):
        h = SpeciesHopfMonoid(sp)
        for size in range(1, _default_bound(sp, n) + 1):
            I = GroundSet.interval(size)
            closure = transitive_merge_closure(h, I)
            poset = h.component_poset(I)
            for y in h.basis(I):
                below = set(poset.below(y))
                report.check(below == closure[y], f"order matches the split-merge closure at {sp.tag} {y}")
                if y.num_blocks != 1:
                    continue
                report.check(len(below) == bell_number(size), f"Bell({size}) elements below {sp.tag} {y}")
                lower = FinitePoset(sorted(below), h.order_leq)
                lattice = FinitePoset(enumerate_partitions(I), refines)
                report.check(
                    is_order_isomorphism(LabeledSetPartition.shape, lower, lattice),
                    f"shape is an order isomorphism at {sp.tag} {y}",
                )
    return report


def basis_rules(species=None, n=None) -> Report:
    report = Report("basis-rules")
    for sp in _targets(species):
        h = SpeciesHopfMonoid(sp)
        bound = _default_bound(sp, n)
        for size in range(bound + 1):
            I = GroundSet.interval(size)
            for basis in BASES[1:]:
                for S, T in ordered_decompositions(I, 2):
                    for a in h.basis(S):
                        for b in h.basis(T):
                            closed = h.structure_in_basis(basis, "product", (a, b))
                            direct = h.nabla(h.basis_element(a, basis), h.basis_element(b, basis))
                            report.check(closed == direct, f"{basis} product at {sp.tag} {a}, {b}")
                    for lam in h.basis(I):
                        closed = h.structure_in_basis(basis, "coproduct", (lam, S, T))
                        direct = h.delta(h.basis_element(lam, basis), S, T)
                        report.check(closed == direct, f"{basis} coproduct at {sp.tag} {lam}, {S}|{T}")
            for lam in h.basis(I):
                e, hh = h.basis_element(lam, "e"), h.basis_element(lam, "h")
                report.check(h.sign_twist(e) == hh and h.sign_twist(hh) == e, f"twist exchanges e, h at {sp.tag} {lam}")
                x = h.basis_element(lam, "natural")
                report.check(h.sign_twist(h.sign_twist(x)) == x, f"twist is an involution at {sp.tag} {lam}")
    return report


def ncsym_sym(species=None, n=None, k: int = 5) -> Report:
    return verify_f_iso(4 if n is None else n, max(k, 4 if n is None else n))


def class_functions(species=None, n=None) -> Report:
    bound = 5 if n is None else n
    models = SymmetricGroupModels(max_size=max(bound, 6))
    report = Report("class-functions")
    report.absorb(verify_group_algebras(min(bound, 4)))
    report.absorb(verify_class_functions(bound, models))
    report.absorb(verify_frobenius(bound, models))
    return report


def lifting(species=None, n=None) -> Report:
    return verify_lifting(4 if n is None else n, SymmetricGroupModels(max_size=6))


def superclass(species=None, n=None) -> Report:
    bound = 3 if n is None else n
    report = Report("superclass")
    report.absorb(verify_superclass(bound))
    report.absorb(verify_size_isomorphism(bound))
    return report


def terminal(species=None, n=None) -> Report:
    bound = 4 if n is None else n
    report = Report("terminal")
    hosts = list(species) if species else [TrivialLabel(), CyclicOrderLabel(), OrbitLabel(cyclic_group(2))]
    for sp in hosts:
        host = SpeciesHopfMonoid(sp)
        report.absorb(verify_terminal(Character(host), bound))
    models = SymmetricGroupModels(max_size=6)
    for size in range(bound + 1):
        for sigma in all_permutations(size):
            x = permutation_to_lsp(sigma)
            shape = LabeledSetPartition.from_partition(x.shape(), models.partitions.labels)
            expected = models.partitions.basis_element(shape, "p")
            report.check(models.psi(x, "p") == expected, f"Ψ(p_σ) = p_sh(σ) at {sigma!r}")
    for size in range(7):
        count = len(integer_partitions(size))
        report.check(models.Kbar_perm.dimension(size) == count, f"Kbar(permutations) dimension {size}")
        report.check(models.Kbar_part.dimension(size) == count, f"Kbar(partitions) dimension {size}")
        try:
            models.kbar_psi_matrix(size)
            invertible = True
        except ValueError:
            invertible = False
        report.check(invertible, f"Kbar(Ψ) invertible in degree {size}")
    return report


#: command lines whose output must be byte-stable across interpreter runs
DETERMINISM_COMMANDS = (
    ["compute", "product p[1 3] p[2]"],
    ["compute", "convert h[1 2|3] m"],
    ["compute", "coproduct m[1 2:0,1|3:0]", "--species", "orbit:Z2"],
    ["compute", "psi p[1 2 3:(1 3 2)]", "--species", "cyclic"],
    ["compute", "frobenius z(2)*ind(2) + 1/2*triv(1,1)"],
    ["compute", "rho-tilde h(2,1)"],
    ["export", "poset-dot", "--n", "3"],
    ["export", "poset-dot", "--n", "3", "--species", "sum:trivial+orbit:Z2"],
    ["export", "structure-csv", "--degrees", "2", "1", "--basis", "m", "--flavor", "Kbar"],
    ["export", "structure-csv", "--degrees", "1", "2", "--op", "coproduct", "--species", "cyclic"],
    ["export", "dimensions", "--model", "USp", "--q", "3", "--n", "4", "--format", "json"],
)


def determinism(species=None, n=None, runs: int = 2) -> Report:
    report = Report("determinism")
    for args in DETERMINISM_COMMANDS:
        outputs = []
        for seed in range(runs):
            env = dict(os.environ, PYTHONHASHSEED=str(seed))
            proc = subprocess.run(
                [sys.executable, "-m", "species_hopf", *args], capture_output=True, env=env, check=False
            )
            outputs.append((proc.returncode, proc.stdout))
        codes = {c for c, _ in outputs}
        report.check(codes == {0}, f"exit code 0 for {' '.join(args)}")
        report.check(len({o for _, o in outputs}) == 1 and outputs[0][1], f"byte-identical output for {' '.join(args)}")
    return report


@dataclass(frozen=True)
class Suite:
    criterion: int
    name: str
    description: str
    run: Callable[..., Report]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite(1, "hopf-axioms", "Hopf monoid axioms on every bundled species", hopf_axioms),
        Suite(2, "mobius-closed-form", "recursive Möbius value equals the blockwise product", mobius_closed_form_suite),
        Suite(3, "poset-isomorphism", "lower intervals of one-block elements are refinement lattices", poset_isomorphism),
        Suite(4, "basis-rules", "closed-form structure rules in m, p, e, h", basis_rules),
        Suite(5, "ncsym-sym", "realization as symmetric functions in (non)commuting variables", ncsym_sym),
        Suite(6, "class-functions", "symmetric group function algebras and the Frobenius map", class_functions),
        Suite(7, "lifting", "the lifting map and its composite with commutative projection", lifting),
        Suite(8, "superclass", "arc-labeled models and the size isomorphism", superclass),
        Suite(9, "terminal", "the terminal morphism to set partitions", terminal),
        Suite(10, "determinism", "byte-stable command line output", determinism),
    )
}


def run_suite(name: str, species=None, n=None) -> Report:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name].run(species, n)
