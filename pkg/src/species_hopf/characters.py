"""Characters on Hopf monoids and the canonical morphism into set partitions.

A character is given by its values on the p-basis.  For a cocommutative host
with character ζ, the map Ψ(x) = Σ_Λ ζ_Λ(x)·m_Λ lands in the set partition
monoid and carries ζ to the character that is 1 on every p_Λ.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable

from .engine import (
    Element,
    LabeledSetPartition,
    SpeciesHopfMonoid,
    _accumulate,
    ordered_decompositions,
    trivial_monoid,
)
from .foundation import GroundSet, SetPartition, enumerate_partitions
from .report import Report


def _one(_: LabeledSetPartition) -> Fraction:
    return Fraction(1)


class Character:
    """A linear functional on a Hopf monoid, specified on p-basis indices."""

    def __init__(self, host: SpeciesHopfMonoid, values: Callable[[LabeledSetPartition], Fraction] | None = None):
        self.host = host
        self._values = values or _one
        self._natural: dict[LabeledSetPartition, Fraction] = {}
        self._lock = threading.Lock()

    def on_p(self, x: LabeledSetPartition) -> Fraction:
        return Fraction(self._values(x))

    def on_natural(self, x: LabeledSetPartition) -> Fraction:
        """Value on a natural basis element, which is the sum of p over its lower set."""
        with self._lock:
            hit = self._natural.get(x)
        if hit is None:
            hit = sum((self.on_p(y) for y in self.host.lower_set(x)), Fraction(0))
            with self._lock:
                self._natural[x] = hit
        return hit

    def __call__(self, x: Element) -> Fraction:
        if x.monoid is not self.host:
            raise ValueError("element of a different Hopf monoid")
        if x.basis == "natural":
            return sum((c * self.on_natural(k) for k, c in x.terms.items()), Fraction(0))
        xp = x.in_basis("p")
        return sum((c * self.on_p(k) for k, c in xp.terms.items()), Fraction(0))

    def check_multiplicative(self, n_max: int) -> Report:
        h = self.host
        report = Report(f"character-multiplicative[{h.labels.tag}, ≤{n_max}]")
        report.check(self(h.unit()) == 1, "value on the unit")
        for n in range(n_max + 1):
            I = GroundSet.interval(n)
            for S, T in ordered_decompositions(I, 2):
                for a in h.basis(S):
                    for b in h.basis(T):
                        xa, xb = h.basis_element(a), h.basis_element(b)
                        report.check(self(h.nabla(xa, xb)) == self(xa) * self(xb), f"multiplicative at {a}, {b}")
        return report


def zeta_pi(x: Element) -> Fraction:
    """The character of the set partition monoid equal to 1 on every p_Λ."""
    if not x.monoid.labels.is_trivial:
        raise ValueError("zeta_pi is defined on the set partition monoid")
    return Character(x.monoid)(x)


def zeta_component(zeta: Character, blocks: SetPartition, x: Element) -> Fraction:
    """ζ_Λ(x): split x along the blocks of Λ and multiply the values of ζ."""
    host = zeta.host
    if not host.labels.cocommutative:
        raise ValueError("block characters need a cocommutative host")
    if blocks.ground != x.component:
        raise ValueError("Λ must partition the component of x")
    parts = blocks.blocks
    xn = x.in_basis("natural")
    total = Fraction(0)
    for lam, c in xn.terms.items():
        value = c
        for piece in host.split(lam, parts):
            value *= zeta.on_natural(piece)
            if not value:
                break
        total += value
    return total


def terminal_psi(zeta: Character, x: Element, target: SpeciesHopfMonoid | None = None) -> Element:
    """Ψ(x) = Σ over set partitions Λ of the component of ζ_Λ(x)·m_Λ."""
    target = target or trivial_monoid()
    if not target.labels.is_trivial:
        raise ValueError("the target must be the set partition monoid")
    terms: dict = {}
    for shape in enumerate_partitions(x.component):
        value = zeta_component(zeta, shape, x)
        if value:
            _accumulate(terms, LabeledSetPartition.from_partition(shape, target.labels), value)
    return Element(target, x.component, "m", terms)


def fock_psi(zeta: Character, a, target_algebra, basis: str = "p"):
    """K(Ψ) or Kbar(Ψ): apply Ψ degreewise and read off in ``target_algebra``."""
    out: dict = {}
    for key, c in a.terms.items():
        image = terminal_psi(zeta, a.algebra.source.element({key: 1}, a.basis), target_algebra.source)
        for y, d in image.in_basis(basis).terms.items():
            _accumulate(out, target_algebra.canonical(y), c * d)
    return target_algebra.element(out, basis)


def verify_terminal(zeta: Character, n_max: int, target: SpeciesHopfMonoid | None = None) -> Report:
    """Ψ commutes with products and coproducts and pulls ζ_Π back to ζ."""
    h = zeta.host
    target = target or trivial_monoid()
    zeta_target = Character(target)
    report = Report(f"terminal-morphism[{h.labels.tag}, ≤{n_max}]")
    psi_cache: dict = {}

    def psi(x: LabeledSetPartition) -> Element:
        hit = psi_cache.get(x)
        if hit is None:
            hit = terminal_psi(zeta, h.basis_element(x), target).in_basis("natural")
            psi_cache[x] = hit
        return hit

    def psi_tensor(t) -> dict:
        out: dict = {}
        for (a, b), c in t.terms.items():
            for ya, d in psi(a).terms.items():
                for yb, e in psi(b).terms.items():
                    _accumulate(out, (ya, yb), c * d * e)
        return out

    report.check(terminal_psi(zeta, h.unit(), target) == target.unit(), "unit")
    for n in range(n_max + 1):
        I = GroundSet.interval(n)
        for lam in h.basis(I):
            x = h.basis_element(lam)
            report.check(zeta_target(psi(lam)) == zeta(x), f"ζ_Π∘Ψ = ζ at {lam}")
            for S, T in ordered_decompositions(I, 2):
                report.check(
                    dict(target.delta(psi(lam), S, T).terms) == psi_tensor(h.delta(x, S, T)),
                    f"coproduct at {lam}, {S}|{T}",
                )
        for S, T in ordered_decompositions(I, 2):
            for a in h.basis(S):
                for b in h.basis(T):
                    lhs = psi(a.union(b))
                    rhs = target.nabla(psi(a), psi(b))
                    report.check(lhs == rhs, f"product at {a}, {b}")
    return report
