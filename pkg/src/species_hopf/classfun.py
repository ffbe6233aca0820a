"""Functions and class functions on the symmetric groups.

Permutations are modeled inside the free monoid on cyclic orders: a
permutation is its set of cycles.  Group functions are dense over S_n; class
functions are sparse over cycle types (indicator basis 1_λ).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Callable, Iterable, Mapping

from .characters import Character, terminal_psi
from .engine import LabeledSetPartition, SpeciesHopfMonoid, _accumulate, trivial_monoid
from .fock import GradedElement, GradedHopfAlgebra
from .foundation import (
    GroundSet,
    IntegerPartition,
    as_rational,
    format_rational,
    integer_partitions,
    invert_matrix,
    partition_stats,
)
from .labels import CyclicOrderLabel, Label
from .report import Report
from .symfun import SymFunction, sym_scalar


class Permutation(tuple):
    """A permutation of [n] given by the images of 1..n."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of [n]: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return tuple.__new__(cls, range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self ∘ other."""
        return tuple.__new__(Permutation, (self[o - 1] for o in other))

    def inverse(self) -> "Permutation":
        out = [0] * len(self)
        for i, v in enumerate(self, start=1):
            out[v - 1] = i
        return tuple.__new__(Permutation, out)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g ∘ self ∘ g⁻¹."""
        return g.compose(self).compose(g.inverse())

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self) + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self[start - 1]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self[nxt - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> IntegerPartition:
        return IntegerPartition(len(c) for c in self.cycles())

    def sign(self) -> int:
        return partition_stats(self.cycle_type()).sign

    def __mul__(self, other):
        raise TypeError("use compose() or cross()")

    def cross(self, other: "Permutation") -> "Permutation":
        """σ × τ in S_{m+n}, τ acting on [m+1, m+n]."""
        m = len(self)
        return tuple.__new__(Permutation, tuple(self) + tuple(v + m for v in other))

    def split(self, m: int) -> tuple["Permutation", "Permutation"] | None:
        """Inverse of cross when σ preserves [m]."""
        if any(v > m for v in self[:m]):
            return None
        return tuple.__new__(Permutation, self[:m]), tuple.__new__(Permutation, (v - m for v in self[m:]))

    def __repr__(self) -> str:
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1)
        return f"Permutation[{len(self)}]{body or '()'}"


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(tuple.__new__(Permutation, p) for p in permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def _perm_index(n: int) -> dict:
    return {p: i for i, p in enumerate(all_permutations(n))}


def class_representative(lam) -> Permutation:
    """A permutation of cycle type λ with cycles on consecutive intervals."""
    lam = IntegerPartition(lam)
    cycles, start = [], 1
    for part in lam:
        cycles.append(range(start, start + part))
        start += part
    return Permutation.from_cycles(lam.weight, cycles)


def permutation_to_lsp(sigma: Permutation, species: CyclicOrderLabel | None = None) -> LabeledSetPartition:
    species = species or CyclicOrderLabel()
    items = [(GroundSet(c), Label(species.tag, tuple(c))) for c in sigma.cycles()]
    return LabeledSetPartition(items)


def lsp_to_permutation(x: LabeledSetPartition) -> Permutation:
    n = len(x.ground)
    if x.ground != GroundSet.interval(n):
        raise ValueError("permutations live on [n]")
    return Permutation.from_cycles(n, (lab.payload for _, lab in x.blocks))


def restrict_first_return(mapping: Mapping[int, int], sub: Iterable[int]) -> dict[int, int]:
    """First-return restriction of a permutation of a finite set to a subset."""
    sub = set(sub)
    out = {}
    for a in sub:
        b = mapping[a]
        while b not in sub:
            b = mapping[b]
        out[a] = b
    return out


# ---------------------------------------------------------------------------
# Dense group functions


@dataclass(frozen=True, eq=False)
class GroupFunction:
    degree: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != factorial(self.degree):
            raise ValueError("a group function needs one value per permutation")

    @classmethod
    def from_callable(cls, n: int, f: Callable[[Permutation], object]) -> "GroupFunction":
        return cls(n, tuple(as_rational(f(p)) for p in all_permutations(n)))

    @classmethod
    def indicator(cls, sigma: Permutation) -> "GroupFunction":
        return cls.from_callable(len(sigma), lambda p: int(p == sigma))

    @classmethod
    def trivial(cls, n: int) -> "GroupFunction":
        return cls.from_callable(n, lambda p: 1)

    @classmethod
    def sign(cls, n: int) -> "GroupFunction":
        return cls.from_callable(n, Permutation.sign)

    def __call__(self, sigma: Permutation) -> Fraction:
        return self.values[_perm_index(self.degree)[sigma]]

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        return GroupFunction(self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        s = as_rational(other)
        return GroupFunction(self.degree, tuple(s * v for v in self.values))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupFunction) and self.degree == other.degree and self.values == other.values

    __hash__ = None

    def is_class_function(self) -> bool:
        seen: dict = {}
        for p, v in zip(all_permutations(self.degree), self.values):
            if seen.setdefault(p.cycle_type(), v) != v:
                return False
        return True

    def to_class_function(self) -> "ClassFunction":
        if not self.is_class_function():
            raise ValueError("function is not constant on conjugacy classes")
        return ClassFunction({lam: self(class_representative(lam)) for lam in integer_partitions(self.degree)})


@lru_cache(maxsize=None)
def conjugacy_classes(n: int) -> dict[IntegerPartition, tuple[Permutation, ...]]:
    classes: dict = {}
    for p in all_permutations(n):
        classes.setdefault(p.cycle_type(), []).append(p)
    return {lam: tuple(members) for lam, members in classes.items()}


def _class_sums(n: int, weight: Callable[[Permutation], Fraction]) -> GroupFunction:
    """x ↦ Σ_g weight(g x g⁻¹), summed by orbit-stabilizer as z_λ·Σ_{y ~ x} weight(y)."""
    per_class = {}
    for lam, members in conjugacy_classes(n).items():
        total = sum((weight(y) for y in members), Fraction(0))
        per_class[lam] = total * partition_stats(lam).centralizer_order
    return GroupFunction(n, tuple(per_class[p.cycle_type()] for p in all_permutations(n)))


def induce_from_subgroup(
    n: int, member: Callable[[Permutation], bool], f: Callable[[Permutation], Fraction]
) -> GroupFunction:
    """Ind_H^{S_n}(f)(x) = (1/|H|) Σ over g with g x g⁻¹ in H of f(g x g⁻¹)."""
    order = sum(1 for g in all_permutations(n) if member(g))
    summed = _class_sums(n, lambda y: f(y) if member(y) else Fraction(0))
    return GroupFunction(n, tuple(v / order for v in summed.values))


def induce(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """Induction of f × g from S_m × S_n to S_{m+n}."""
    m = f.degree

    def value(y: Permutation) -> Fraction:
        a, b = y.split(m)
        return f(a) * g(b)

    return induce_from_subgroup(m + g.degree, lambda y: y.split(m) is not None, value)


def induce_tensor(m: int, n: int, terms: Mapping[tuple[Permutation, Permutation], Fraction]) -> GroupFunction:
    """Induction of a function on S_m × S_n given in the indicator basis."""

    def value(y: Permutation) -> Fraction:
        return Fraction(terms.get(y.split(m), 0))

    return induce_from_subgroup(m + n, lambda y: y.split(m) is not None, value)


def restrict_fun(f: GroupFunction, m: int, n: int) -> dict:
    """Restriction to S_m × S_n in the indicator basis 1_σ ⊗ 1_τ."""
    if f.degree != m + n:
        raise ValueError("degree mismatch")
    out = {}
    for a in all_permutations(m):
        for b in all_permutations(n):
            v = f(a.cross(b))
            if v:
                out[(a, b)] = v
    return out


def average_conjugation(f: GroupFunction) -> GroupFunction:
    """x ↦ Σ_σ f(σ x σ⁻¹)."""
    return _class_sums(f.degree, f)


def young_subgroup_member(lam) -> Callable[[Permutation], bool]:
    """Membership in S_λ = S_{λ1} × S_{λ2} × ... on consecutive intervals."""
    lam = IntegerPartition(lam)
    owner = []
    for i, part in enumerate(lam):
        owner.extend([i] * part)

    def member(p: Permutation) -> bool:
        return all(owner[v - 1] == owner[i] for i, v in enumerate(p))

    return member


def young_induced(lam, character: str = "trivial") -> "ClassFunction":
    """Ind from the Young subgroup S_λ of the trivial or sign character."""
    lam = IntegerPartition(lam)
    if character == "trivial":
        f = lambda p: Fraction(1)  # noqa: E731
    elif character == "sign":
        f = lambda p: Fraction(p.sign())  # noqa: E731
    else:
        raise ValueError("character must be 'trivial' or 'sign'")
    return induce_from_subgroup(lam.weight, young_subgroup_member(lam), f).to_class_function()


# ---------------------------------------------------------------------------
# The graded algebras Fun(S) and ClassFun(S), sparse in indicator bases


@dataclass(frozen=True, eq=False)
class FunElement:
    """Graded function on the symmetric groups, Σ c_σ·1_σ."""

    terms: Mapping[Permutation, Fraction]

    def __add__(self, other: "FunElement") -> "FunElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return FunElement(out)

    def __mul__(self, other):
        if isinstance(other, FunElement):
            return fun_product(self, other)
        s = as_rational(other)
        return FunElement({k: s * v for k, v in self.terms.items() if s * v})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FunElement) and dict(self.terms) == dict(other.terms)

    __hash__ = None

    @classmethod
    def from_group_function(cls, f: GroupFunction) -> "FunElement":
        return cls({p: v for p, v in zip(all_permutations(f.degree), f.values) if v})

    def __repr__(self) -> str:
        return " + ".join(f"{v}*1{p!r}" for p, v in sorted(self.terms.items())) or "0"


def fun_product(a: FunElement, b: FunElement) -> FunElement:
    """Extension by zero of f × g from S_m × S_n: 1_σ · 1_τ = 1_{σ×τ}."""
    out: dict = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            _accumulate(out, s.cross(t), c * d)
    return FunElement(out)


def fun_coproduct(a: FunElement) -> dict:
    """Restriction to every subgroup S_S × S_T with S ⊔ T = [n], standardized.

    A summand 1_σ contributes exactly when σ maps S onto itself.
    """
    out: dict = {}
    for sigma, c in a.terms.items():
        n = len(sigma)
        ground = GroundSet.interval(n)
        for S in ground.subsets():
            if any(sigma(i) not in S for i in S):
                continue
            T = ground.difference(S)
            left = _standardize_restriction(sigma, S)
            right = _standardize_restriction(sigma, T)
            _accumulate(out, (left, right), c)
    return out


def fun_prefix_restriction(a: FunElement) -> dict:
    """Σ_k Res to S_k × S_{n-k} only (the standard embeddings)."""
    out: dict = {}
    for sigma, c in a.terms.items():
        for k in range(len(sigma) + 1):
            pieces = sigma.split(k)
            if pieces is not None:
                _accumulate(out, pieces, c)
    return out


def _standardize_restriction(sigma: Permutation, S: GroundSet) -> Permutation:
    pos = {a: i for i, a in enumerate(S, start=1)}
    return tuple.__new__(Permutation, (pos[sigma(a)] for a in S))


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Graded class function Σ c_λ·1_λ; the degree of 1_λ is |λ|."""

    terms: Mapping[IntegerPartition, Fraction]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return ClassFunction(out)

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return classfun_product(self, other)
        s = as_rational(other)
        return ClassFunction({k: s * v for k, v in self.terms.items() if s * v})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassFunction) and dict(self.terms) == dict(other.terms)

    __hash__ = None

    def __call__(self, sigma: Permutation) -> Fraction:
        return self.terms.get(sigma.cycle_type(), Fraction(0))

    @classmethod
    def indicator(cls, lam) -> "ClassFunction":
        return cls({IntegerPartition(lam): Fraction(1)})

    @classmethod
    def trivial(cls, n: int) -> "ClassFunction":
        return cls({lam: Fraction(1) for lam in integer_partitions(n)})

    @classmethod
    def sign(cls, n: int) -> "ClassFunction":
        return cls({lam: Fraction(partition_stats(lam).sign) for lam in integer_partitions(n)})

    def homogeneous(self, n: int) -> "ClassFunction":
        return ClassFunction({k: v for k, v in self.terms.items() if k.weight == n})

    def degrees(self) -> list[int]:
        return sorted({k.weight for k in self.terms})

    def to_group_function(self, n: int) -> GroupFunction:
        return GroupFunction.from_callable(n, lambda p: self.terms.get(p.cycle_type(), 0) if len(p) == n else 0)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, tuple(-p for p in kv[0])))

    def to_json(self) -> list:
        return [{"cycle_type": list(lam), "value": format_rational(v)} for lam, v in self.items()]

    def __repr__(self) -> str:
        return " + ".join(f"{v}*1{lam!r}" for lam, v in self.items()) or "0"


_class_product_cache: dict = {}
_class_product_lock = threading.Lock()


def _induced_indicator(alpha: IntegerPartition, beta: IntegerPartition) -> dict:
    key = (alpha, beta)
    with _class_product_lock:
        hit = _class_product_cache.get(key)
    if hit is None:
        fa = ClassFunction.indicator(alpha).to_group_function(alpha.weight)
        fb = ClassFunction.indicator(beta).to_group_function(beta.weight)
        hit = dict(induce(fa, fb).to_class_function().terms)
        hit = {k: v for k, v in hit.items() if v}
        with _class_product_lock:
            _class_product_cache[key] = hit
    return hit


def classfun_product(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    """Induction product from S_m × S_n."""
    out: dict = {}
    for alpha, c in a.terms.items():
        for beta, d in b.terms.items():
            for lam, e in _induced_indicator(alpha, beta).items():
                _accumulate(out, lam, c * d * e)
    return ClassFunction(out)


def classfun_coproduct(a: ClassFunction) -> dict:
    """Σ_k of the restriction to S_k × S_{n-k}, in the basis 1_α ⊗ 1_β."""
    out: dict = {}
    for lam, c in a.terms.items():
        n = lam.weight
        for k in range(n + 1):
            for alpha in integer_partitions(k):
                for beta in integer_partitions(n - k):
                    x = class_representative(alpha).cross(class_representative(beta))
                    value = c * int(x.cycle_type() == lam)
                    if value:
                        _accumulate(out, (alpha, beta), value)
    return out


def average_to_class(a: FunElement) -> ClassFunction:
    """The conjugation-averaging map Fun → ClassFun, degree by degree."""
    out = ClassFunction({})
    for sigma, c in a.terms.items():
        avg = average_conjugation(GroupFunction.indicator(sigma)).to_class_function()
        out = out + c * avg
    return out


def class_to_fun(a: ClassFunction) -> FunElement:
    """Inclusion of class functions among all functions."""
    out: dict = {}
    for lam, c in a.terms.items():
        for sigma in all_permutations(lam.weight):
            if sigma.cycle_type() == lam:
                _accumulate(out, sigma, c)
    return FunElement(out)


# ---------------------------------------------------------------------------
# The permutation monoid and the isomorphisms


class SymmetricGroupModels:
    """Shared context: the permutation monoid, the set partition monoid, their
    Fock algebras, the two characters and cached matrices of Kbar(Ψ)."""

    def __init__(self, max_size: int = 6):
        self.perms = SpeciesHopfMonoid(CyclicOrderLabel(), max_size=max_size)
        self.partitions = trivial_monoid(max_size=max_size)
        self.K_perm = GradedHopfAlgebra(self.perms, "K")
        self.Kbar_perm = GradedHopfAlgebra(self.perms, "Kbar")
        self.K_part = GradedHopfAlgebra(self.partitions, "K")
        self.Kbar_part = GradedHopfAlgebra(self.partitions, "Kbar")
        self.zeta_perm = Character(self.perms)
        self.zeta_part = Character(self.partitions)
        self._lock = threading.Lock()
        self._kbar_psi: dict[int, tuple] = {}

    def psi(self, x: LabeledSetPartition, basis: str = "p"):
        """Ψ of the p-basis element of a permutation, read in ``basis``."""
        return terminal_psi(self.zeta_perm, self.perms.basis_element(x, "p"), self.partitions).in_basis(basis)

    def kbar_psi_matrix(self, n: int):
        """Kbar(Ψ) on degree n in p-bases: (source reps, target reps, matrix, inverse)."""
        with self._lock:
            hit = self._kbar_psi.get(n)
        if hit is not None:
            return hit
        src = self.Kbar_perm.indices(n)
        tgt = self.Kbar_part.indices(n)
        if len(src) != len(tgt):
            raise ValueError("Kbar(Ψ) is not square in this degree")
        col = {y: j for j, y in enumerate(tgt)}
        matrix = [[Fraction(0)] * len(src) for _ in tgt]
        for i, x in enumerate(src):
            for y, c in self.psi(x, "p").terms.items():
                matrix[col[self.Kbar_part.canonical(y)]][i] += c
        inverse = invert_matrix(matrix)
        hit = (src, tgt, matrix, inverse)
        with self._lock:
            self._kbar_psi[n] = hit
        return hit


def iso_f(a: GradedElement) -> FunElement:
    """K(permutations) → Fun: p_σ ↦ 1_σ."""
    a = a.in_basis("p")
    return FunElement({lsp_to_permutation(x): c for x, c in a.terms.items()})


def iso_f_inverse(f: FunElement, algebra: GradedHopfAlgebra) -> GradedElement:
    species = algebra.source.labels
    return algebra.element({permutation_to_lsp(s, species): c for s, c in f.terms.items()}, "p")


def iso_fbar(a: GradedElement) -> ClassFunction:
    """Kbar(permutations) → ClassFun: p_σ ↦ z_λ·1_λ."""
    a = a.in_basis("p")
    out: dict = {}
    for x, c in a.terms.items():
        lam = lsp_to_permutation(x).cycle_type()
        _accumulate(out, lam, c * partition_stats(lam).centralizer_order)
    return ClassFunction(out)


def iso_fbar_inverse(f: ClassFunction, algebra: GradedHopfAlgebra) -> GradedElement:
    species = algebra.source.labels
    terms: dict = {}
    for lam, c in f.terms.items():
        rep = permutation_to_lsp(class_representative(lam), species)
        _accumulate(terms, algebra.canonical(rep), c / partition_stats(lam).centralizer_order)
    return algebra.element(terms, "p")


def frobenius(fcls: ClassFunction, models: SymmetricGroupModels | None = None) -> SymFunction:
    """ClassFun → Sym as the composite f̄_Sym ∘ Kbar(Ψ) ∘ f̄⁻¹, in the p-basis."""
    models = models or SymmetricGroupModels()
    a = iso_fbar_inverse(fcls, models.Kbar_perm)
    out: dict = {}
    for x, c in a.terms.items():
        for y, d in models.psi(x, "p").terms.items():
            lam = y.shape().type()
            _accumulate(out, lam, c * d * sym_scalar("p", lam))
    return SymFunction("p", out)


def sym_to_kbar(s: SymFunction, models: SymmetricGroupModels) -> GradedElement:
    """Inverse of the Sym dictionary: x_λ ↦ [x_Λ] / scalar for any Λ of type λ."""
    alg = models.Kbar_part
    terms: dict = {}
    for lam, c in s.terms.items():
        rep = _partition_of_type(lam, alg.source)
        _accumulate(terms, alg.canonical(rep), c / sym_scalar(s.basis, lam))
    return alg.element(terms, s.basis)


def _partition_of_type(lam, monoid: SpeciesHopfMonoid) -> LabeledSetPartition:
    lam = IntegerPartition(lam)
    blocks, start = [], 1
    for part in lam:
        blocks.append((GroundSet(range(start, start + part)), monoid.labels.enumerate([start])[0]))
        start += part
    return LabeledSetPartition(blocks)


def sym_change_basis(s: SymFunction, basis: str, models: SymmetricGroupModels | None = None) -> SymFunction:
    """Rewrite a symmetric function in another classical basis through Kbar(Π)."""
    from .symfun import sym_image_function

    models = models or SymmetricGroupModels()
    return sym_image_function(sym_to_kbar(s, models).in_basis(basis))


def frobenius_inverse(s: SymFunction, models: SymmetricGroupModels | None = None) -> ClassFunction:
    """Inverse composite, using the inverted matrix of Kbar(Ψ) degree by degree."""
    models = models or SymmetricGroupModels()
    a = sym_to_kbar(s, models).in_basis("p")
    by_degree: dict[int, dict] = {}
    for y, c in a.terms.items():
        by_degree.setdefault(len(y.ground), {})[y] = c
    perm_terms: dict = {}
    for n, part in by_degree.items():
        src, tgt, _, inverse = models.kbar_psi_matrix(n)
        for j, y in enumerate(tgt):
            c = part.get(y)
            if not c:
                continue
            for i, x in enumerate(src):
                if inverse[i][j]:
                    _accumulate(perm_terms, x, c * inverse[i][j])
    return iso_fbar(models.Kbar_perm.element(perm_terms, "p"))


def lift_rho_tilde(s: SymFunction, models: SymmetricGroupModels | None = None) -> GradedElement:
    """ρ̃: Sym → NCSym along Kbar(Π) ← Kbar(perm) → ClassFun ⊂ Fun → K(perm) → K(Π).

    The result is an element of K(Π) in the p-basis (NCSym via the identity
    dictionary on set partition bases).
    """
    models = models or SymmetricGroupModels()
    cls = frobenius_inverse(s, models)
    fun = class_to_fun(cls)
    perm_element = iso_f_inverse(fun, models.K_perm)
    out: dict = {}
    for x, c in perm_element.terms.items():
        for y, d in models.psi(x, "p").terms.items():
            _accumulate(out, y, c * d)
    return models.K_part.element(out, "p")


def verify_class_functions(n_max: int, models: SymmetricGroupModels | None = None) -> Report:
    """f and f̄ are Hopf morphisms and the stated images of p, e, h hold."""
    models = models or SymmetricGroupModels()
    K, Kb = models.K_perm, models.Kbar_perm
    report = Report(f"class-functions[n≤{n_max}]")
    for basis in ("p", "e", "h", "m", "natural"):
        for m in range(n_max + 1):
            for n in range(n_max + 1 - m):
                for alpha in K.indices(m):
                    for beta in K.indices(n):
                        xa, xb = K.basis_element(alpha, basis), K.basis_element(beta, basis)
                        report.check(iso_f(xa * xb) == iso_f(xa) * iso_f(xb), f"f product {basis} {alpha}, {beta}")
                for alpha in Kb.indices(m):
                    for beta in Kb.indices(n):
                        xa, xb = Kb.basis_element(alpha, basis), Kb.basis_element(beta, basis)
                        report.check(
                            iso_fbar(xa * xb) == iso_fbar(xa) * iso_fbar(xb), f"f̄ product {basis} {alpha}, {beta}"
                        )
        for n in range(n_max + 1):
            for lam in K.indices(n):
                x = K.basis_element(lam, basis)
                image: dict = {}
                for (y, z), c in _coproduct_p(K, x).items():
                    _accumulate(image, (lsp_to_permutation(y), lsp_to_permutation(z)), c)
                report.check(image == fun_coproduct(iso_f(x)), f"f coproduct {basis} {lam}")
            for lam in Kb.indices(n):
                x = Kb.basis_element(lam, basis)
                image = {}
                for (y, z), c in _coproduct_p(Kb, x).items():
                    zy = partition_stats(y.shape().type()).centralizer_order
                    zz = partition_stats(z.shape().type()).centralizer_order
                    _accumulate(image, (y.shape().type(), z.shape().type()), c * zy * zz)
                report.check(image == classfun_coproduct(iso_fbar(x)), f"f̄ coproduct {basis} {lam}")
    for n in range(n_max + 1):
        for lam in Kb.indices(n):
            typ = lsp_to_permutation(lam).cycle_type()
            st = partition_stats(typ)
            report.check(
                iso_fbar(Kb.basis_element(lam, "p")) == ClassFunction({typ: Fraction(st.centralizer_order)}),
                f"f̄(p) at {typ}",
            )
            report.check(
                iso_fbar(Kb.basis_element(lam, "e")) == st.factorial_product * young_induced(typ, "sign"),
                f"f̄(e) at {typ}",
            )
            report.check(
                iso_fbar(Kb.basis_element(lam, "h")) == st.factorial_product * young_induced(typ, "trivial"),
                f"f̄(h) at {typ}",
            )
        if n >= 1:
            cycle = Kb.canonical(permutation_to_lsp(class_representative((n,))))
            report.check(
                iso_fbar(Kb.basis_element(cycle, "e")) == factorial(n) * ClassFunction.sign(n),
                f"f̄(e) of the {n}-cycle",
            )
        # the square with averaging and projection
        for lam in K.indices(n):
            x = K.basis_element(lam, "p")
            report.check(
                average_to_class(iso_f(x)) == iso_fbar(Kb.element(x.terms, "p")), f"averaging square at {lam}"
            )
    return report


def _coproduct_p(alg: GradedHopfAlgebra, x: GradedElement) -> dict:
    """Coproduct of x re-expanded in the p-basis on both sides."""
    cop = alg.coproduct(x)
    if cop.basis == "p":
        return dict(cop.terms)
    out: dict = {}
    for (y, z), c in cop.terms.items():
        py = alg.basis_element(y, cop.basis).in_basis("p")
        pz = alg.basis_element(z, cop.basis).in_basis("p")
        for a, d in py.terms.items():
            for b, e in pz.terms.items():
                _accumulate(out, (a, b), c * d * e)
    return out


def verify_frobenius(n_max: int, models: SymmetricGroupModels | None = None) -> Report:
    """z_λ·1_λ ↦ p_λ, Ind(triv) ↦ h_λ, Ind(sgn) ↦ e_λ, and the inverse round-trips."""
    models = models or SymmetricGroupModels()
    report = Report(f"frobenius[n≤{n_max}]")
    for n in range(n_max + 1):
        lams = integer_partitions(n)
        images = []
        for lam in lams:
            z = partition_stats(lam).centralizer_order
            image = frobenius(ClassFunction({lam: Fraction(z)}), models)
            images.append(image)
            report.check(image == SymFunction("p", {lam: Fraction(1)}), f"z·1 ↦ p at {lam}")
            for char, basis in (("trivial", "h"), ("sign", "e")):
                got = frobenius(young_induced(lam, char), models)
                report.check(
                    sym_change_basis(got, basis, models) == SymFunction(basis, {lam: Fraction(1)}),
                    f"Ind({char}) ↦ {basis} at {lam}",
                )
            back = frobenius_inverse(image, models)
            report.check(back == ClassFunction({lam: Fraction(z)}), f"inverse round trip at {lam}")
        report.check(len({tuple(sorted(i.terms)) for i in images}) == len(lams), f"bijective in degree {n}")
    return report


def _fun_basis(n_max: int) -> list[FunElement]:
    return [FunElement({p: Fraction(1)}) for n in range(n_max + 1) for p in all_permutations(n)]


def _class_basis(n_max: int) -> list[ClassFunction]:
    return [ClassFunction.indicator(lam) for n in range(n_max + 1) for lam in integer_partitions(n)]


def _tensor_product(s: dict, t: dict, product: Callable) -> dict:
    out: dict = {}
    for (a, b), c in s.items():
        for (x, y), d in t.items():
            left, right = product(a, x), product(b, y)
            for u, e in left.items():
                for v, f in right.items():
                    _accumulate(out, (u, v), c * d * e * f)
    return out


def verify_group_algebras(n_max: int) -> Report:
    """Graded Hopf axioms for Fun and ClassFun, and averaging as a Hopf morphism."""
    report = Report(f"group-function-algebras[n≤{n_max}]")
    for name, basis, product, coproduct, unit_key, deg in (
        ("Fun", _fun_basis, fun_product, fun_coproduct, Permutation.identity(0), len),
        ("ClassFun", _class_basis, classfun_product, classfun_coproduct, IntegerPartition(()), lambda k: k.weight),
    ):
        cls = FunElement if name == "Fun" else ClassFunction

        def mult(a, b):
            return dict(product(cls({a: Fraction(1)}), cls({b: Fraction(1)})).terms)

        one = cls({unit_key: Fraction(1)})
        elements = basis(n_max)
        for x in elements:
            (key,) = x.terms
            report.check(one * x == x and x * one == x, f"{name} unit at {key}")
            cop = coproduct(x)
            report.check(cop.get((unit_key, key)) == 1 and cop.get((key, unit_key)) == 1, f"{name} counit at {key}")
            report.check(cop == {(b, a): c for (a, b), c in cop.items()}, f"{name} cocommutative at {key}")
            left: dict = {}
            right: dict = {}
            for (a, b), c in cop.items():
                for (u, v), d in coproduct(cls({a: Fraction(1)})).items():
                    _accumulate(left, (u, v, b), c * d)
                for (u, v), d in coproduct(cls({b: Fraction(1)})).items():
                    _accumulate(right, (a, u, v), c * d)
            report.check(left == right, f"{name} coassociative at {key}")
        for x in elements:
            for y in elements:
                (a,) = x.terms
                (b,) = y.terms
                if deg(a) + deg(b) > n_max:
                    continue
                xy = x * y
                if name == "ClassFun":
                    report.check(xy == y * x, f"{name} commutative at {a}, {b}")
                report.check(
                    coproduct(xy) == _tensor_product(coproduct(x), coproduct(y), mult),
                    f"{name} compatibility at {a}, {b}",
                )
                for z in elements:
                    (c,) = z.terms
                    if deg(a) + deg(b) + deg(c) <= n_max:
                        report.check((xy) * z == x * (y * z), f"{name} associative at {a}, {b}, {c}")
    for x in _fun_basis(n_max):
        (sigma,) = x.terms
        avg = average_to_class(x)
        image: dict = {}
        for (a, b), c in fun_coproduct(x).items():
            for u, d in average_to_class(FunElement({a: Fraction(1)})).terms.items():
                for v, e in average_to_class(FunElement({b: Fraction(1)})).terms.items():
                    _accumulate(image, (u, v), c * d * e)
        report.check(classfun_coproduct(avg) == image, f"averaging coproduct at {sigma!r}")
        for y in _fun_basis(n_max - len(sigma)):
            report.check(
                average_to_class(x * y) == avg * average_to_class(y), f"averaging product at {sigma!r}, {next(iter(y.terms))!r}"
            )
    # the prefix-only restriction is not cocommutative on Fun once n ≥ 2
    if n_max >= 2:
        sample = FunElement({Permutation((2, 1, 3)) if n_max >= 3 else Permutation((1, 2)): Fraction(1)})
        pre = fun_prefix_restriction(sample)
        report.note(
            "prefix-only restriction cocommutative on the sample: "
            + str(pre == {(b, a): c for (a, b), c in pre.items()})
        )
    return report


def verify_lifting(n_max: int, models: SymmetricGroupModels | None = None) -> Report:
    """ρ∘ρ̃ = n!·id on each basis of Sym, and the image formulas of ρ̃."""
    from .fock import project_to_kbar
    from .symfun import sym_image_function

    models = models or SymmetricGroupModels()
    report = Report(f"lifting[n≤{n_max}]")
    coefficient = {
        "m": lambda st: st.factorial_product,
        "p": lambda st: st.factorial_product * st.multiplicity_product,
        "e": lambda st: st.multiplicity_product,
        "h": lambda st: st.multiplicity_product,
    }
    for n in range(n_max + 1):
        shapes = models.K_part.indices(n)
        for basis in ("m", "p", "e", "h"):
            for lam in integer_partitions(n):
                s = SymFunction(basis, {lam: Fraction(1)})
                lifted = lift_rho_tilde(s, models)
                back = sym_image_function(project_to_kbar(lifted, models.Kbar_part).in_basis(basis))
                report.check(back == factorial(n) * s, f"ρ∘ρ̃ = n! on {basis}{lam!r}")
                scale = coefficient[basis](partition_stats(lam))
                expected = models.K_part.element(
                    {x: Fraction(scale) for x in shapes if x.shape().type() == lam}, basis
                )
                report.check(lifted.in_basis(basis) == expected, f"ρ̃ image formula on {basis}{lam!r}")
    return report
