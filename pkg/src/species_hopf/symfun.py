"""Truncated polynomial models of NCSym and Sym.

Noncommutative symmetric functions in set-partition bases are expanded over
words in k letters; classical symmetric functions over exponent vectors in k
commuting variables.  The coproduct is realized by doubling the alphabet
(letters 2i-1 play x_i, letters 2i play y_i) and separating the two classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial, prod
from typing import Mapping

from .engine import SpeciesHopfMonoid, _accumulate, trivial_monoid
from .foundation import (
    GroundSet,
    IntegerPartition,
    SetPartition,
    as_rational,
    enumerate_partitions,
    partition_stats,
    refines,
)
from .labels import TrivialLabel
from .report import Report

SYM_BASES = ("m", "p", "e", "h")


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True, eq=False)
class WordPolynomial:
    """Sparse noncommutative polynomial: words over {1..k} to coefficients."""

    k: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __add__(self, other: "WordPolynomial") -> "WordPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return WordPolynomial(max(self.k, other.k), out)

    def __neg__(self):
        return WordPolynomial(self.k, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WordPolynomial):
            out: dict = {}
            for u, c in self.terms.items():
                for v, d in other.terms.items():
                    _accumulate(out, u + v, c * d)
            return WordPolynomial(max(self.k, other.k), out)
        s = as_rational(other)
        return WordPolynomial(self.k, {w: s * c for w, c in self.terms.items() if s * c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, WordPolynomial) and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            word = " ".join(f"x{i}" for i in w) or "1"
            parts.append(word if c == 1 else f"{c}*{word}")
        return " + ".join(parts)

    __repr__ = pretty


@dataclass(frozen=True, eq=False)
class MonomialPolynomial:
    """Sparse commutative polynomial: exponent vectors of length k to coefficients."""

    k: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __add__(self, other: "MonomialPolynomial") -> "MonomialPolynomial":
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _accumulate(out, e, c)
        return MonomialPolynomial(self.k, out)

    def _same(self, other):
        if other.k != self.k:
            raise ValueError("polynomials in different numbers of variables")

    def __neg__(self):
        return MonomialPolynomial(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MonomialPolynomial):
            self._same(other)
            out: dict = {}
            for u, c in self.terms.items():
                for v, d in other.terms.items():
                    _accumulate(out, tuple(a + b for a, b in zip(u, v)), c * d)
            return MonomialPolynomial(self.k, out)
        s = as_rational(other)
        return MonomialPolynomial(self.k, {e: s * c for e, c in self.terms.items() if s * c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialPolynomial) and self.k == other.k and dict(self.terms) == dict(other.terms)

    __hash__ = None

    @classmethod
    def one(cls, k: int) -> "MonomialPolynomial":
        return cls(k, {(0,) * k: Fraction(1)})

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0]))):
            mono = " ".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a) or "1"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = pretty


def rho(w: WordPolynomial) -> MonomialPolynomial:
    """Let the variables commute."""
    out: dict = {}
    for word, c in w.terms.items():
        exps = [0] * w.k
        for letter in word:
            exps[letter - 1] += 1
        _accumulate(out, tuple(exps), c)
    return MonomialPolynomial(w.k, out)


# ---------------------------------------------------------------------------
# NCSym expansions


def _kernel_coefficient(basis: str, lam: SetPartition, kernel: SetPartition) -> int:
    """Coefficient of any word whose equal-letter partition is ``kernel``."""
    if basis == "m":
        return int(kernel == lam)
    if basis == "p":
        return int(refines(lam, kernel))
    meet = lam.meet(kernel)
    if basis == "e":
        return int(len(meet) == len(lam.ground))
    if basis == "h":
        return prod(factorial(len(b)) for b in meet.blocks)
    raise ValueError(f"unknown basis {basis!r}")


def expand_ncsym(basis: str, lam: SetPartition, k: int) -> WordPolynomial:
    """Degree-n expansion of m/p/e/h indexed by a set partition of [n] in k letters."""
    if k < 1:
        raise ValueError("alphabet size must be positive")
    n = len(lam.ground)
    if lam.ground != GroundSet.interval(n):
        raise ValueError("NCSym indices are set partitions of [n]")
    out: dict = {}
    for kernel in enumerate_partitions(lam.ground):
        if len(kernel) > k:
            continue
        c = _kernel_coefficient(basis, lam, kernel)
        if not c:
            continue
        for letters in permutations(range(1, k + 1), len(kernel)):
            word = [0] * n
            for block, letter in zip(kernel.blocks, letters):
                for a in block:
                    word[a - 1] = letter
            out[tuple(word)] = Fraction(c)
    return WordPolynomial(k, out)


def double_alphabet(w: WordPolynomial) -> dict:
    """Read a word in 2k letters as a pair (x-word, y-word)."""
    out: dict = {}
    for word, c in w.terms.items():
        xs = tuple((a + 1) // 2 for a in word if a % 2 == 1)
        ys = tuple(a // 2 for a in word if a % 2 == 0)
        _accumulate(out, (xs, ys), c)
    return out


def double_variables(p: MonomialPolynomial) -> dict:
    out: dict = {}
    for e, c in p.terms.items():
        _accumulate(out, (e[0::2], e[1::2]), c)
    return out


def ncsym_coproduct(basis: str, lam: SetPartition, k: int) -> dict:
    """Δ of an NCSym basis element as a sparse map over pairs of words in k letters."""
    return double_alphabet(expand_ncsym(basis, lam, 2 * k))


# ---------------------------------------------------------------------------
# Sym expansions


def _power_sum(r: int, k: int) -> MonomialPolynomial:
    out = {}
    for i in range(k):
        e = [0] * k
        e[i] = r
        out[tuple(e)] = Fraction(1)
    return MonomialPolynomial(k, out)


def _elementary(r: int, k: int) -> MonomialPolynomial:
    out = {}
    for combo in combinations(range(k), r):
        e = [0] * k
        for i in combo:
            e[i] = 1
        out[tuple(e)] = Fraction(1)
    return MonomialPolynomial(k, out)


def _complete(r: int, k: int) -> MonomialPolynomial:
    out = {}
    for combo in combinations_with_replacement(range(k), r):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out[tuple(e)] = Fraction(1)
    return MonomialPolynomial(k, out)


def expand_sym(basis: str, lam, k: int) -> MonomialPolynomial:
    """Truncated expansion of m_λ, p_λ, e_λ or h_λ in k commuting variables.

    m_λ with more parts than variables truncates to zero.
    """
    lam = IntegerPartition(lam)
    if k < 1:
        raise ValueError("need at least one variable")
    if basis == "m":
        if len(lam) > k:
            return MonomialPolynomial(k, {})
        padded = tuple(lam) + (0,) * (k - len(lam))
        return MonomialPolynomial(k, {e: Fraction(1) for e in set(permutations(padded))})
    factor = {"p": _power_sum, "e": _elementary, "h": _complete}.get(basis)
    if factor is None:
        raise ValueError(f"unknown basis {basis!r}")
    out = MonomialPolynomial.one(k)
    for part in lam:
        out = out * factor(part, k)
    return out


def sym_scalar(basis: str, lam) -> int:
    """Scalar relating the image of an orbit basis element to the classical one."""
    st = partition_stats(lam)
    return {"m": st.multiplicity_product, "p": 1, "e": st.factorial_product, "h": st.factorial_product}[basis]


@dataclass(frozen=True, eq=False)
class SymFunction:
    """A symmetric function in one classical basis, keyed by integer partitions."""

    basis: str
    terms: Mapping[IntegerPartition, Fraction]

    def __post_init__(self):
        if self.basis not in SYM_BASES:
            raise ValueError(f"unknown basis {self.basis!r}")

    def expand(self, k: int) -> MonomialPolynomial:
        out = MonomialPolynomial(k, {})
        for lam, c in self.terms.items():
            out = out + c * expand_sym(self.basis, lam, k)
        return out

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-p for p in kv[0])))

    def __add__(self, other: "SymFunction") -> "SymFunction":
        if other.basis != self.basis:
            raise ValueError("add symmetric functions in a common basis")
        out = dict(self.terms)
        for lam, c in other.terms.items():
            _accumulate(out, lam, c)
        return SymFunction(self.basis, out)

    def __mul__(self, other):
        s = as_rational(other)
        return SymFunction(self.basis, {k: s * v for k, v in self.terms.items() if s * v})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SymFunction) and self.basis == other.basis and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.basis}{lam!r}" for lam, c in self.items())


def sym_element(basis: str, lam, coeff=1) -> SymFunction:
    return SymFunction(basis, {IntegerPartition(lam): as_rational(coeff)})


# ---------------------------------------------------------------------------
# The realization maps from K(Π) and Kbar(Π)


def lsp_to_partition(x) -> SetPartition:
    return x.shape()


def ncsym_image(a, k: int) -> WordPolynomial:
    """f: K(Π) → NCSym, identity on each of the four bases, expanded in k letters."""
    out = WordPolynomial(k, {})
    basis = a.basis if a.basis != "natural" else "p"
    a = a.in_basis(basis)
    for x, c in a.terms.items():
        out = out + c * expand_ncsym(basis, x.shape(), k)
    return out


def sym_image(a, k: int) -> MonomialPolynomial:
    """f̄: Kbar(Π) → Sym, applying the scalar dictionary per basis."""
    basis = a.basis if a.basis != "natural" else "p"
    a = a.in_basis(basis)
    out = MonomialPolynomial(k, {})
    for x, c in a.terms.items():
        lam = x.shape().type()
        out = out + (c * sym_scalar(basis, lam)) * expand_sym(basis, lam, k)
    return out


def sym_image_function(a) -> SymFunction:
    basis = a.basis if a.basis != "natural" else "p"
    a = a.in_basis(basis)
    out: dict = {}
    for x, c in a.terms.items():
        lam = x.shape().type()
        _accumulate(out, lam, c * sym_scalar(basis, lam))
    return SymFunction(basis, out)


def _word_tensor(left: WordPolynomial, right: WordPolynomial) -> dict:
    return {(u, v): c * d for u, c in left.terms.items() for v, d in right.terms.items()}


def _mono_tensor(left: MonomialPolynomial, right: MonomialPolynomial) -> dict:
    return {(u, v): c * d for u, c in left.terms.items() for v, d in right.terms.items()}


def _sum_into(target: dict, source: dict, scale: Fraction = Fraction(1)) -> None:
    for key, v in source.items():
        _accumulate(target, key, scale * v)


def verify_f_iso(n_max: int, k: int, monoid: SpeciesHopfMonoid | None = None) -> Report:
    """Check that K(Π) and Kbar(Π) match NCSym and Sym through the expansions."""
    from .fock import GradedHopfAlgebra, project_to_kbar

    if k < n_max:
        raise ValueError("alphabet too small for a faithful truncation")
    h = monoid or trivial_monoid()
    if not isinstance(h.labels, TrivialLabel):
        raise ValueError("the realization is for the set partition monoid")
    K = GradedHopfAlgebra(h, "K")
    Kb = GradedHopfAlgebra(h, "Kbar")
    report = Report(f"ncsym-sym[n≤{n_max}, k={k}]")
    for basis in SYM_BASES:
        # products, total degree ≤ n_max
        for a_deg in range(n_max + 1):
            for b_deg in range(n_max + 1 - a_deg):
                for alpha in K.indices(a_deg):
                    for beta in K.indices(b_deg):
                        xa, xb = K.basis_element(alpha, basis), K.basis_element(beta, basis)
                        report.check(
                            ncsym_image(xa * xb, k) == ncsym_image(xa, k) * ncsym_image(xb, k),
                            f"K product {basis} {alpha}·{beta}",
                        )
                for alpha in Kb.indices(a_deg):
                    for beta in Kb.indices(b_deg):
                        xa, xb = Kb.basis_element(alpha, basis), Kb.basis_element(beta, basis)
                        report.check(
                            sym_image(xa * xb, k) == sym_image(xa, k) * sym_image(xb, k),
                            f"Kbar product {basis} {alpha}·{beta}",
                        )
        # coproducts and the commuting square with ρ
        for n in range(n_max + 1):
            for lam in K.indices(n):
                x = K.basis_element(lam, basis)
                expected: dict = {}
                for (y, z), c in K.coproduct(x).terms.items():
                    _sum_into(
                        expected,
                        _word_tensor(expand_ncsym(basis, y.shape(), k), expand_ncsym(basis, z.shape(), k)),
                        c,
                    )
                report.check(
                    expected == ncsym_coproduct(basis, lam.shape(), k), f"K coproduct {basis} {lam}"
                )
                report.check(
                    rho(ncsym_image(x, k)) == sym_image(project_to_kbar(x, Kb), k),
                    f"rho square {basis} {lam}",
                )
            for lam in Kb.indices(n):
                x = Kb.basis_element(lam, basis)
                expected = {}
                for (y, z), c in Kb.coproduct(x).terms.items():
                    _sum_into(
                        expected,
                        _mono_tensor(
                            sym_scalar(basis, y.shape().type()) * expand_sym(basis, y.shape().type(), k),
                            sym_scalar(basis, z.shape().type()) * expand_sym(basis, z.shape().type(), k),
                        ),
                        c,
                    )
                lam_type = lam.shape().type()
                image = sym_scalar(basis, lam_type) * expand_sym(basis, lam_type, 2 * k)
                report.check(expected == double_variables(image), f"Kbar coproduct {basis} {lam}")
    return report
