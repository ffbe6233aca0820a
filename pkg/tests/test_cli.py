import json
import subprocess
import sys

import pytest

from species_hopf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def blocks_of(term):
    return [b["atoms"] for b in term["blocks"]]


def test_product_of_p_indices_is_union(capsys):
    code, data = run_json(capsys, "compute", "product p[1 3] p[2]")
    assert code == 0
    assert data["basis"] == "p"
    assert [(blocks_of(t), t["coeff"]) for t in data["terms"]] == [([[1, 3], [2]], "1/1")]


def test_frobenius_query(capsys):
    code, data = run_json(capsys, "compute", "frobenius z(2)*ind(2)")
    assert code == 0
    assert data["terms"] == [{"coeff": "1/1", "partition": [2]}]
    code, data = run_json(capsys, "compute", "frobenius triv(2)")
    assert sorted((t["partition"], t["coeff"]) for t in data["terms"]) == [([1, 1], "1/2"), ([2], "1/2")]


def test_frobenius_inverse_of_h_is_trivial_character(capsys):
    code, data = run_json(capsys, "compute", "frobenius-inverse h(2)")
    assert code == 0
    assert {tuple(e["cycle_type"]): e["value"] for e in data["class_function"]} == {(2,): "1/1", (1, 1): "1/1"}


def test_rho_tilde(capsys):
    _, data = run_json(capsys, "compute", "rho-tilde p(2)")
    assert data["terms"] == [{"coeff": "2/1", "degree": 2, "index": "1 2"}]


def test_coproduct_in_p_basis(capsys):
    _, data = run_json(capsys, "compute", "coproduct p[1 2]")
    assert sorted(tuple(t["factors"]) for t in data["terms"]) == [("1 2", "∅"), ("∅", "1 2")]


def test_order_and_mobius(capsys):
    assert run_json(capsys, "compute", "order p[1|2] p[1 2]")[1] == {"leq": True}
    assert run_json(capsys, "compute", "mobius [1 2 3]")[1] == {"mobius_bottom": 2}
    assert run_json(capsys, "compute", "mobius [1 2|3 4]")[1] == {"mobius_bottom": 1}


def test_psi_on_cycle(capsys):
    code, data = run_json(capsys, "compute", "psi p[1 2 3:(1 3 2)]", "--species", "cyclic")
    assert code == 0
    assert [blocks_of(t) for t in data["terms"]] == [[[1, 2, 3]]]


def test_expand_sym(capsys):
    _, data = run_json(capsys, "compute", "expand sym e(2)", "--k", "3")
    assert sorted(tuple(t["exponents"]) for t in data["terms"]) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize(
    "argv",
    [
        ("compute", "product p[1 3]"),
        ("compute", "product p[1 3 p[2]"),
        ("compute", "frobenius zz(2)"),
        ("compute", "product p[1] p[1]"),
        ("compute", "coproduct m[1 2]", "--species", "orbit:Z2"),
        ("compute", "product p[1] p[2]", "--species", "bogus"),
        ("verify", "unknown-suite"),
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    err = json.loads(out)
    assert set(err) == {"error", "kind"}


def test_verify_list_and_suites(capsys):
    code, out = run(capsys, "verify", "list")
    assert code == 0 and len(out.strip().splitlines()) == 10
    code, out = run(capsys, "verify", "hopf-axioms", "--species", "trivial", "--n", "3")
    assert code == 0 and out.startswith("PASS hopf-axioms")
    code, out = run(capsys, "verify", "mobius-closed-form", "--species", "cyclic", "--n", "4")
    assert code == 0 and out.startswith("PASS")


def test_poset_dot_has_bell_many_nodes(capsys):
    code, out = run(capsys, "export", "poset-dot", "--n", "3")
    assert code == 0
    nodes = [line for line in out.splitlines() if "[label=" in line]
    edges = [line for line in out.splitlines() if "->" in line]
    assert len(nodes) == 5
    # covers of the refinement lattice on three atoms: 0̂ to three, three to 1̂
    assert len(edges) == 6


def test_dimensions_usl_q2_are_bell(capsys):
    code, data = run_json(capsys, "export", "dimensions", "--model", "USL", "--q", "2", "--n", "5", "--format", "json")
    assert code == 0
    assert [row["dimension"] for row in data] == [1, 1, 2, 5, 15, 52]


def test_structure_csv_single_row(capsys):
    code, out = run(capsys, "export", "structure-csv", "--degrees", "1", "1", "--basis", "p", "--flavor", "Kbar")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["product[p],1 2,1|2", "1 ⊗ 1,0/1,1/1"]


def test_output_file(tmp_path, capsys):
    target = tmp_path / "dims.csv"
    code, _ = run(capsys, "export", "dimensions", "--model", "UO", "--q", "3", "--n", "3", "--format", "csv", "--output", str(target))
    assert code == 0
    assert target.read_text().splitlines() == ["model,n,q,dimension", "UO,0,3,1", "UO,1,3,1", "UO,2,3,5", "UO,3,3,29"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "species_hopf", "verify", "list"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "determinism" in proc.stdout
