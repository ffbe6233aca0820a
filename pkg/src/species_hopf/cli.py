"""Command line front end: verify suites, compute expressions, export tables.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import Character, terminal_psi
from .classfun import (
    ClassFunction,
    SymmetricGroupModels,
    frobenius,
    frobenius_inverse,
    lift_rho_tilde,
    young_induced,
)
from .engine import (
    BASES,
    Element,
    LabeledSetPartition,
    SizeGuardError,
    SpeciesHopfMonoid,
    decode_lsp,
    element_to_json,
    encode_lsp,
    tensor_to_json,
    trivial_monoid,
)
from .fock import GradedElement, GradedHopfAlgebra, GradedTensor, project_to_kbar, structure_constants
from .foundation import GroundSet, IntegerPartition, format_rational, partition_stats
from .labels import (
    ConnectedSumLabel,
    CyclicOrderLabel,
    FiniteGroup,
    LabelSpecies,
    MapLabel,
    OrbitLabel,
    TrivialLabel,
    cyclic_group,
    make_signed_group,
)
from .superclass import MODELS, sc_dimension
from .suites import SUITES, run_suite
from .symfun import SymFunction, expand_ncsym, sym_image_function


class UsageError(Exception):
    """Bad flags or a malformed expression (exit code 2)."""


# ---------------------------------------------------------------------------
# Configuration


@dataclass(frozen=True)
class Config:
    species: LabelSpecies
    max_size: int | None
    n: int | None
    k: int
    basis: str | None
    fmt: str | None


def _group(text: str | None, default_order: int | None) -> FiniteGroup:
    if text:
        m = re.fullmatch(r"Z?(\d+)", text.strip())
        if not m:
            raise UsageError(f"unknown group {text!r}; use Zn or n")
        order = int(m.group(1))
    elif default_order is not None:
        order = default_order
    else:
        raise UsageError("a group is required: write e.g. orbit:Z2 or pass --group-order")
    if order < 1:
        raise UsageError("group order must be positive")
    return cyclic_group(order)


def parse_species(text: str, group_order: int | None = None) -> LabelSpecies:
    """trivial | cyclic | orbit[:G] | signed-orbit[:G] | map[:G] | sum:A+B."""
    text = text.strip()
    if text.startswith("sum:"):
        parts = text[4:].split("+")
        if len(parts) != 2:
            raise UsageError("a connected sum needs exactly two summands, sum:A+B")
        return ConnectedSumLabel(*(parse_species(p, group_order) for p in parts))
    head, _, arg = text.partition(":")
    if head == "trivial":
        return TrivialLabel()
    if head == "cyclic":
        return CyclicOrderLabel()
    if head == "orbit":
        return OrbitLabel(_group(arg, group_order))
    if head == "signed-orbit":
        return OrbitLabel(make_signed_group(_group(arg, group_order)))
    if head == "map":
        return MapLabel(_group(arg, group_order))
    raise UsageError(f"unknown species {text!r}")


def make_config(args: argparse.Namespace) -> Config:
    species = parse_species(args.species, args.group_order)
    if args.max_size is not None and args.max_size < 1:
        raise UsageError("--max-size must be positive")
    if args.n is not None and args.n < 0:
        raise UsageError("--n must be nonnegative")
    if args.k < 1:
        raise UsageError("--k must be positive")
    return Config(species, args.max_size, args.n, args.k, args.basis, args.format)


# ---------------------------------------------------------------------------
# Expression parsing


_INDEX = re.compile(r"\s*(?:(?P<coef>[-+]?\d+(?:/\d+)?)\s*\*\s*)?(?P<basis>natural|m|p|e|h)?\[(?P<body>[^\]]*)\]\s*")
_PART = re.compile(r"\s*(?:(?P<coef>[-+]?\d+(?:/\d+)?)\s*\*\s*)?(?P<basis>[mpeh])\((?P<parts>[\d,\s]*)\)\s*")


def _split_terms(text: str) -> list[str]:
    """Split on top-level '+' (outside brackets and parentheses)."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "+" and depth == 0 and text[:i].strip():
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return [t for t in out if t.strip()]


def _partition(text: str) -> IntegerPartition:
    parts = [int(p) for p in text.replace(",", " ").split()]
    if any(p <= 0 for p in parts):
        raise UsageError(f"partition parts must be positive: {text!r}")
    return IntegerPartition(parts)


def parse_element(text: str, monoid: SpeciesHopfMonoid, default_basis: str = "natural") -> Element:
    """``[c*]basis[blocks] + ...`` on a common ground set."""
    terms: dict = {}
    basis = None
    ground = None
    for chunk in _split_terms(text):
        m = _INDEX.fullmatch(chunk)
        if not m:
            raise UsageError(f"malformed index literal {chunk.strip()!r}")
        b = m.group("basis") or default_basis
        if basis not in (None, b):
            raise UsageError("all terms of an expression must use one basis")
        basis = b
        try:
            x = decode_lsp(m.group("body"), monoid.labels)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if ground not in (None, x.ground):
            raise UsageError("all terms of an expression must live on one ground set")
        ground = x.ground
        coef = Fraction(m.group("coef") or 1)
        terms[x] = terms.get(x, 0) + coef
    if basis is None:
        raise UsageError("empty expression")
    try:
        return monoid.element({k: v for k, v in terms.items() if v}, basis, component=ground)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_sym(text: str) -> SymFunction:
    terms: dict = {}
    basis = None
    for chunk in _split_terms(text):
        m = _PART.fullmatch(chunk)
        if not m:
            raise UsageError(f"malformed symmetric function term {chunk.strip()!r}")
        if basis not in (None, m.group("basis")):
            raise UsageError("all terms of a symmetric function must use one basis")
        basis = m.group("basis")
        lam = _partition(m.group("parts"))
        terms[lam] = terms.get(lam, 0) + Fraction(m.group("coef") or 1)
    if basis is None:
        raise UsageError("empty expression")
    return SymFunction(basis, {k: v for k, v in terms.items() if v})


_FACTOR = re.compile(r"(?P<name>z|ind|triv|sgn)\((?P<parts>[\d,\s]*)\)|(?P<num>[-+]?\d+(?:/\d+)?)")


def parse_class_function(text: str) -> ClassFunction:
    """Terms are products of numbers, z(λ), and one of ind(λ) = 1_λ, triv(λ), sgn(λ)."""
    total = ClassFunction({})
    for chunk in _split_terms(text):
        scalar = Fraction(1)
        function = None
        for factor in chunk.split("*"):
            factor = factor.strip()
            m = _FACTOR.fullmatch(factor)
            if not m:
                raise UsageError(f"malformed factor {factor!r}")
            if m.group("num"):
                scalar *= Fraction(m.group("num"))
                continue
            lam = _partition(m.group("parts"))
            name = m.group("name")
            if name == "z":
                scalar *= partition_stats(lam).centralizer_order
                continue
            if function is not None:
                raise UsageError("each term takes exactly one class function factor")
            if name == "ind":
                function = ClassFunction.indicator(lam)
            else:
                function = young_induced(lam, "trivial" if name == "triv" else "sign")
        if function is None:
            raise UsageError(f"term {chunk.strip()!r} has no class function factor")
        total = total + scalar * function
    return total


def _single_index(x: Element) -> LabeledSetPartition:
    if len(x.terms) != 1:
        raise UsageError("this command takes a single basis index")
    (key,) = x.terms
    return key


def _atoms(text: str) -> GroundSet:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise UsageError("a subset is written {1 3}")
    try:
        return GroundSet(int(a) for a in body[1:-1].replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"malformed subset {text!r}") from exc


# ---------------------------------------------------------------------------
# JSON views


def graded_to_json(a: GradedElement) -> dict:
    species = a.algebra.source.labels
    return {
        "algebra": f"{a.algebra.flavor}({species.tag})",
        "basis": a.basis,
        "terms": [
            {"degree": len(x.ground), "index": encode_lsp(x, species) or "∅", "coeff": format_rational(c)} for x, c in a.items()
        ],
    }


def graded_tensor_to_json(t: GradedTensor) -> dict:
    species = t.algebra.source.labels
    return {
        "algebra": f"{t.algebra.flavor}({species.tag})",
        "basis": t.basis,
        "terms": [
            {"factors": [encode_lsp(x, species) or "∅" for x in key], "coeff": format_rational(c)} for key, c in t.items()
        ],
    }


def sym_to_json(s: SymFunction) -> dict:
    return {"basis": s.basis, "terms": [{"partition": list(lam), "coeff": format_rational(c)} for lam, c in s.items()]}


def _poly_to_json(poly, kind: str) -> dict:
    key = "word" if kind == "ncsym" else "exponents"
    return {
        "kind": kind,
        "letters": poly.k,
        "terms": [{key: list(w), "coeff": format_rational(c)} for w, c in sorted(poly.terms.items())],
    }


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# compute


def _monoid(cfg: Config) -> SpeciesHopfMonoid:
    return SpeciesHopfMonoid(cfg.species, max_size=cfg.max_size)


def _models(cfg: Config) -> SymmetricGroupModels:
    return SymmetricGroupModels(max_size=cfg.max_size or 6)


def _args(rest: str, count: int, usage: str) -> list[str]:
    """Split the remainder into top-level arguments separated by whitespace."""
    out, depth, buf = [], 0, ""
    for ch in rest.strip():
        if ch in "[({":
            depth += 1
        elif ch in "])}":
            depth -= 1
        if ch.isspace() and depth == 0:
            if buf:
                out.append(buf)
                buf = ""
            continue
        buf += ch
    if buf:
        out.append(buf)
    if len(out) != count:
        raise UsageError(f"usage: {usage}")
    return out


def cmd_compute(expression: str, cfg: Config) -> dict:
    command, _, rest = expression.strip().partition(" ")
    if command == "product":
        a, b = _args(rest, 2, "product X Y")
        h = _monoid(cfg)
        x, y = parse_element(a, h), parse_element(b, h)
        if not x.component.isdisjoint(y.component):
            raise UsageError("product needs disjoint ground sets; use k-product for the graded product")
        return element_to_json(h.nabla(x, y))
    if command in ("k-product", "kbar-product"):
        a, b = _args(rest, 2, f"{command} X Y")
        h = _monoid(cfg)
        alg = GradedHopfAlgebra(h, "K" if command == "k-product" else "Kbar")
        x, y = parse_element(a, h), parse_element(b, h)
        gx = alg.element({alg.canonical(k): c for k, c in x.terms.items()}, x.basis)
        gy = alg.element({alg.canonical(k): c for k, c in y.terms.items()}, y.basis)
        return graded_to_json(gx * gy)
    if command in ("coproduct", "kbar-coproduct"):
        (a,) = _args(rest, 1, f"{command} X")
        h = _monoid(cfg)
        alg = GradedHopfAlgebra(h, "K" if command == "coproduct" else "Kbar")
        x = parse_element(a, h)
        if x.component != GroundSet.interval(len(x.component)):
            raise UsageError("graded coproducts take indices on [n]")
        gx = alg.element({alg.canonical(k): c for k, c in x.terms.items()}, x.basis)
        return graded_tensor_to_json(alg.coproduct(gx))
    if command == "split":
        a, s = _args(rest, 2, "split X {S}")
        h = _monoid(cfg)
        x = parse_element(a, h)
        S = _atoms(s)
        if not S.issubset(x.component):
            raise UsageError("the subset must lie in the ground set")
        return tensor_to_json(h.delta(x, S, x.component.difference(S)))
    if command == "convert":
        a, basis = _args(rest, 2, "convert X BASIS")
        if basis not in BASES:
            raise UsageError(f"basis must be one of {BASES}")
        h = _monoid(cfg)
        return element_to_json(parse_element(a, h).in_basis(basis))
    if command == "order":
        a, b = _args(rest, 2, "order X Y")
        h = _monoid(cfg)
        x, y = (_single_index(parse_element(t, h)) for t in (a, b))
        return {"leq": h.order_leq(x, y)}
    if command == "lower":
        (a,) = _args(rest, 1, "lower X")
        h = _monoid(cfg)
        key = _single_index(parse_element(a, h))
        return {"lower_set": sorted((encode_lsp(x, h.labels) for x in h.lower_set(key)))}
    if command == "mobius":
        (a,) = _args(rest, 1, "mobius X")
        h = _monoid(cfg)
        key = _single_index(parse_element(a, h))
        return {"mobius_bottom": h.mobius_bottom(key)}
    if command == "psi":
        (a,) = _args(rest, 1, "psi X")
        h = _monoid(cfg)
        x = parse_element(a, h)
        target = trivial_monoid(max_size=cfg.max_size)
        return element_to_json(terminal_psi(Character(h), x, target).in_basis(cfg.basis or "m"))
    if command == "frobenius":
        return sym_to_json(frobenius(parse_class_function(rest), _models(cfg)))
    if command == "frobenius-inverse":
        cls = frobenius_inverse(parse_sym(rest), _models(cfg))
        return {"class_function": cls.to_json()}
    if command == "rho":
        h = trivial_monoid(max_size=cfg.max_size)
        x = parse_element(rest, h)
        K, Kb = GradedHopfAlgebra(h, "K"), GradedHopfAlgebra(h, "Kbar")
        gx = K.element(dict(x.terms), x.basis)
        return sym_to_json(sym_image_function(project_to_kbar(gx, Kb)))
    if command == "rho-tilde":
        lifted = lift_rho_tilde(parse_sym(rest), _models(cfg))
        return graded_to_json(lifted.in_basis(cfg.basis or "p"))
    if command == "expand":
        kind, _, body = rest.strip().partition(" ")
        if kind == "ncsym":
            h = trivial_monoid(max_size=cfg.max_size)
            x = parse_element(body, h)
            basis = x.basis if x.basis != "natural" else "p"
            poly = None
            for key, c in x.in_basis(basis).terms.items():
                term = c * expand_ncsym(basis, key.shape(), cfg.k)
                poly = term if poly is None else poly + term
            return _poly_to_json(poly, "ncsym")
        if kind == "sym":
            s = parse_sym(body)
            return _poly_to_json(s.expand(cfg.k), "sym")
        raise UsageError("usage: expand ncsym X | expand sym F")
    raise UsageError(f"unknown command {command!r}")


# ---------------------------------------------------------------------------
# export


def _node_label(x: LabeledSetPartition, species: LabelSpecies) -> str:
    return encode_lsp(x, species) or "∅"


def poset_dot(cfg: Config) -> str:
    n = 3 if cfg.n is None else cfg.n
    h = _monoid(cfg)
    poset = h.component_poset(GroundSet.interval(n))
    nodes = sorted(poset.elements, key=lambda x: (x.num_blocks * -1, x.sort_key()))
    ids = {x: f"n{i}" for i, x in enumerate(nodes)}
    lines = [f'digraph "{h.labels.tag} [{n}]" {{', "  rankdir=BT;"]
    for x in nodes:
        label = _node_label(x, h.labels).replace('"', '\\"')
        lines.append(f'  {ids[x]} [label="{label}"];')
    order = {x: i for i, x in enumerate(nodes)}
    edges = [(poset.elements[i], poset.elements[j]) for i, j in poset.covers()]
    for lo, hi in sorted(edges, key=lambda e: (order[e[0]], order[e[1]])):
        lines.append(f"  {ids[lo]} -> {ids[hi]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dimension_rows(cfg: Config, model: str | None, q: int | None) -> list[dict]:
    n_max = 5 if cfg.n is None else cfg.n
    rows = []
    if model:
        if q is None:
            raise UsageError("--q is required with --model")
        for n in range(n_max + 1):
            try:
                rows.append({"model": model, "n": n, "q": q, "dimension": sc_dimension(model, n, q)})
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        return rows
    h = _monoid(cfg)
    K, Kb = GradedHopfAlgebra(h, "K"), GradedHopfAlgebra(h, "Kbar")
    for n in range(n_max + 1):
        rows.append({"species": h.labels.tag, "n": n, "K": K.dimension(n), "Kbar": Kb.dimension(n)})
    return rows


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_export(kind: str, cfg: Config, args: argparse.Namespace) -> str:
    if kind == "poset-dot":
        if cfg.fmt not in (None, "dot"):
            raise UsageError("poset-dot emits DOT only")
        return poset_dot(cfg)
    if kind == "structure-csv":
        if cfg.fmt not in (None, "csv"):
            raise UsageError("structure-csv emits CSV only")
        m, n = args.degrees or (1, 1)
        if m < 0 or n < 0:
            raise UsageError("degrees must be nonnegative")
        alg = GradedHopfAlgebra(_monoid(cfg), args.flavor)
        try:
            return structure_constants(alg, cfg.basis or "p", m, n, args.op).to_csv()
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if kind == "dimensions":
        rows = dimension_rows(cfg, args.model, args.q)
        return dumps(rows) if cfg.fmt == "json" else _csv(rows)
    raise UsageError(f"unknown export kind {kind!r}")


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--species", default="trivial", help="trivial|orbit:G|signed-orbit:G|sum:A+B|cyclic|map:G")
    common.add_argument("--group-order", type=int, default=None, help="order of G when the species omits it")
    common.add_argument("--n", type=int, default=None, help="size bound")
    common.add_argument("--k", type=int, default=5, help="alphabet size for expansions")
    common.add_argument("--basis", choices=BASES, default=None)
    common.add_argument("--format", choices=("json", "csv", "dot", "text"), default=None)
    common.add_argument("--max-size", type=int, default=None, help="size guard for components")

    parser = argparse.ArgumentParser(prog="species-hopf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", help="suite name or 'all'; see 'verify list'")

    compute = sub.add_parser("compute", parents=[common], help="evaluate an expression")
    compute.add_argument("expression")

    export = sub.add_parser("export", parents=[common], help="write DOT, CSV or dimension tables")
    export.add_argument("kind", choices=("poset-dot", "structure-csv", "dimensions"))
    export.add_argument("--degrees", type=int, nargs=2, metavar=("M", "N"))
    export.add_argument("--op", choices=("product", "coproduct"), default="product")
    export.add_argument("--flavor", choices=("K", "Kbar"), default="K")
    export.add_argument("--model", choices=MODELS, default=None)
    export.add_argument("--q", type=int, default=None)
    export.add_argument("--output", default=None, help="write to a file instead of stdout")
    return parser


def _verify(name: str, cfg: Config, species_given: bool) -> tuple[int, str]:
    if name == "list":
        lines = [f"{s.criterion:>2} {s.name}: {s.description}" for s in SUITES.values()]
        return 0, "\n".join(lines) + "\n"
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; try 'verify list'")
    species = [cfg.species] if species_given else None
    reports = [run_suite(s, species, cfg.n) for s in names]
    ok = all(r.ok for r in reports)
    if cfg.fmt == "json":
        payload = [
            {"suite": r.name, "ok": r.ok, "checks": r.checks, "violations": r.violations, "notes": r.notes}
            for r in reports
        ]
        return (0 if ok else 1), dumps(payload)
    text = "\n".join(line for r in reports for line in r.lines()) + "\n"
    return (0 if ok else 1), text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = make_config(args)
        if args.command == "verify":
            species_given = any(a == "--species" or a.startswith("--species=") for a in (argv or sys.argv[1:]))
            code, text = _verify(args.suite, cfg, species_given)
            sys.stdout.write(text)
            return code
        if args.command == "compute":
            if cfg.fmt not in (None, "json"):
                raise UsageError("compute emits JSON only")
            sys.stdout.write(dumps(cmd_compute(args.expression, cfg)))
            return 0
        text = cmd_export(args.kind, cfg, args)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except (UsageError, SizeGuardError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        sys.stdout.write(dumps({"error": str(message), "kind": type(exc).__name__}))
        return 2
    except ValueError as exc:
        sys.stdout.write(dumps({"error": str(exc), "kind": "ValueError"}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
