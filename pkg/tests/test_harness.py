import numpy as np
import pytest

from repdim.harness import cli
from repdim.harness.corpus import ENTRIES, data_path, load_algebra, run_corpus
from repdim.harness.formats import (
    ParseError,
    format_algebra,
    format_module,
    parse_algebra_file,
    parse_algebra_text,
    parse_module_text,
    parse_pair_file,
)
from repdim.harness.randmod import random_soc_annihilated
from repdim.harness.report import RunReport
from repdim.harness.search import SearchError, candidate_indecomposables, search_generator
from repdim.pathalg import algebra_socle
from repdim.repmod import annihilated_by, is_indecomposable, is_isomorphic

HEAD = "repdim-algebra 1\nfield: GF(5)\nvertices: 1\narrow: x 1 1\n"


def test_malformed_relation_reports_position():
    with pytest.raises(ParseError) as err:
        parse_algebra_text(HEAD + "relation: x*\n")
    assert ":5:" in str(err.value)


@pytest.mark.parametrize("body, msg", [
    ("field: GF(4)\n", "not prime"),
    ("field: RR\n", "unknown field"),
    ("frobnicate: 1\n", "unknown key"),
    ("arrow: y 1 9\n", "unknown vertex"),
])
def test_algebra_parse_errors(body, msg):
    with pytest.raises(ParseError, match=msg):
        parse_algebra_text(HEAD + body)


def test_missing_header():
    with pytest.raises(ParseError, match="header"):
        parse_algebra_text("field: GF(5)\n")


def test_relation_syntax_sugar():
    a = parse_algebra_text(HEAD + "relation: x^3\n").build()
    b = parse_algebra_text(HEAD + "relation: x*x*x\n").build()
    assert a.dim == b.dim == 3


def test_algebra_round_trip():
    spec = parse_algebra_file(data_path("a51.alg"))
    again = parse_algebra_text(format_algebra(spec))
    assert again.build().dim == spec.build().dim


def test_module_round_trip(a51):
    X = random_soc_annihilated(a51, np.random.default_rng(0))
    Y = parse_module_text(format_module(X)).build(a51)
    assert all(np.array_equal(m, n) for m, n in zip(X.arrow_mats, Y.arrow_mats))


def test_module_violating_relation_names_it(kx3):
    with pytest.raises(Exception, match="x\\*x\\*x|relation"):
        parse_module_text("repdim-module 1\ndims: 3\nmatrix: x = 0 1 0; 0 0 1; 1 0 0\n").build(kx3)


def test_pair_file():
    spec = parse_pair_file(data_path("p51.pair"))
    assert spec.iso == "identity" and spec.generator.name == "n51.mod"


def test_corpus_files_build():
    for f in sorted(data_path("").glob("*.alg")):
        assert parse_algebra_file(f).build().dim > 0


def test_report_is_reproducible():
    a = run_corpus("5.3", seed=0).render()
    b = run_corpus("5.3", seed=0).render()
    assert a == b
    assert a.startswith("repdim-report 1\n")


def test_report_records_and_statuses():
    rep = RunReport("t", 0)
    rep.add("ok", True, 1, 1, "trivial")
    rep.add("bad", False, 1, 2)
    rep.add("note", None, "x")
    rep.add("capped", True, ">=13", ">=13", warn=True)
    assert rep.counts() == {"pass": 1, "fail": 1, "warn": 1, "info": 1}
    assert not rep.ok
    text = rep.render()
    assert "[check] bad\nstatus: fail\ncomputed: 1\nexpected: 2\n" in text
    assert "elapsed" not in text and "elapsed" in rep.render(timings=True)


def test_unknown_corpus_entry():
    with pytest.raises(KeyError):
        run_corpus("9.9")


@pytest.mark.parametrize("entry", ["x2", "x3", "x3q"])
def test_rep_finite_entries_pass(entry):
    assert run_corpus(entry).ok


def test_example_entries_record_known_failures():
    rep = run_corpus("5.1")
    failed = sorted(r.name for r in rep.failures)
    assert failed == sorted(["A/soc A = A*", "A'/soc A' = A*", "lemma vertex 1: p'j'phi = psi pj"])
    assert set(ENTRIES) == {"x2", "x3", "x3q", "5.1", "5.2", "5.3", "5.5"}


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_cli_exit_codes(capsys, tmp_path):
    d = data_path("")
    code, out = run_cli(capsys, "build", "--algebra", str(d / "a53_l1.alg"))
    assert code == 0 and "computed: 4" in out.out
    code, _ = run_cli(capsys, "socle-equiv", "--pair", str(d / "p53_l2.pair"))
    assert code == 1  # the square of isomorphisms does not commute
    code, out = run_cli(capsys, "build", "--algebra", str(tmp_path / "missing.alg"))
    assert code == 2 and "no such file" in out.err
    bad = tmp_path / "bad.alg"
    bad.write_text(HEAD + "relation: x*\n")
    code, out = run_cli(capsys, "selfinjective", "--algebra", str(bad))
    assert code == 2


def test_cli_transfer_and_report_file(capsys, tmp_path):
    d = data_path("")
    out_file = tmp_path / "r.txt"
    code, out = run_cli(capsys, "transfer", "--pair", str(d / "p53_l3.pair"), "--report", str(out_file))
    assert code == 0 and "computed: 3 vs 3" in out.out
    assert out_file.read_text() == out.out


def test_cli_gldim_and_resolve(capsys):
    d = data_path("")
    code, out = run_cli(capsys, "gldim", "--algebra", str(d / "a53_l1.alg"), "--generator", str(d / "n53.mod"))
    assert code == 0 and "computed: 3" in out.out
    code, out = run_cli(capsys, "resolve", "--algebra", str(d / "a51.alg"), "--generator", str(d / "n51.mod"),
                        "--target", str(d / "n51.mod"))
    assert code == 0 and "computed: 0" in out.out


def test_cli_explicit_iso(capsys):
    d = data_path("")
    code, out = run_cli(capsys, "socle-equiv", "--algebra", str(d / "a53_l2.alg"), "--algebra-b",
                        str(d / "a53_l2.alg"), "--iso", "1 0 0; 0 1 0; 0 0 1")
    assert code == 0


def test_search_rep_finite():
    A = parse_algebra_text(HEAD + "relation: x^3\n").build()
    res = search_generator(A, dim_cap=3)
    assert res.value == 2
    assert sorted(X.dim for X in res.summands) == [1, 2]


def test_search_semisimple_rejected():
    with pytest.raises(SearchError, match="repdim undefined for semisimple"):
        search_generator(load_algebra("semisimple.alg"))


def test_candidates_are_soc_annihilated_indecomposables(a53):
    A = a53[1]
    cands = candidate_indecomposables(A, 3)
    soc = algebra_socle(A)
    for i, X in enumerate(cands):
        assert annihilated_by(X, soc) and is_indecomposable(X)
        assert not any(is_isomorphic(X, Y) for Y in cands[:i])
    # A/soc A has radical square zero with two loops, so these are Kronecker
    # modules: one simple, p + 1 of dimension 2, two of dimension 3
    assert [sum(1 for X in cands if X.dim == k) for k in (1, 2, 3)] == [1, 6, 2]
