import csv
import io
import json

import pytest

from epsforge.cli import main
from epsforge.kernel import check
from epsforge.proofs import calculus_hint, parse_proof, walk
from epsforge.syntax import alpha_eq
from helpers import CORPUS, corpus_proofs, load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_valid(capsys):
    code, out, _ = run(capsys, "check", "corpus/ex2_lk_drinker.prf", "--calculus", "lk")
    assert code == 0 and "valid in lk" in out


def test_check_loop_violation(capsys):
    code, out, _ = run(capsys, "check", "corpus/ex5_loop.prf", "--calculus", "lkplus")
    assert code == 1 and "side variable condition" in out


def test_check_empty_file(capsys, tmp_path):
    empty = tmp_path / "empty.prf"
    empty.write_text("")
    code, _, err = run(capsys, "check", str(empty))
    assert code == 2 and "parse error" in err


def test_check_missing_file(capsys):
    code, _, _ = run(capsys, "check", "no/such/file.prf")
    assert code == 2


def test_check_json_is_deterministic(capsys):
    args = ("check", "ex4_lkplus_drinker.prf", "ex5_regularity.prf", "--json")
    code, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert code == 1 and first == second
    data = json.loads(first)
    assert [d["valid"] for d in data] == [True, False]
    assert data[1]["violations"][0]["condition"] == "weak regularity"


def test_calculus_from_header(capsys):
    code, out, _ = run(capsys, "check", "ex2_leps_short.prf")
    assert code == 0 and "valid in leps" in out


def test_translate_modes(capsys, tmp_path):
    code, out, _ = run(capsys, "translate", "drinker.fo", "--mode", "to-eps")
    assert code == 0
    assert out.strip() == "A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))"
    code, out, _ = run(capsys, "translate", "example1_term_equation.eps", "--mode", "from-eps")
    assert code == 1 and out.strip() == "UNDEFINED"
    atom = tmp_path / "atom.fo"
    atom.write_text("P(c)\n")
    code, out, _ = run(capsys, "translate", str(atom), "--mode", "to-eps")
    assert code == 0 and out.strip() == "P(c)"
    code, out, _ = run(capsys, "translate", "drinker.fo", "--mode", "skolemize")
    assert out.strip() == "ex y. (A(y) -> A(sk1(y)))"
    code, out, _ = run(capsys, "translate", "drinker.fo", "--mode", "matrix")
    assert out.strip() == "A(v1) -> A(v2)"


def test_translate_from_eps_roundtrip(capsys, tmp_path):
    f = tmp_path / "t.eps"
    f.write_text("A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))\n")
    code, out, _ = run(capsys, "translate", str(f), "--mode", "from-eps")
    assert code == 0 and out.strip() == "ex y. (A(y) -> all x. A(x))"


def test_transform_matches_corpus_translation(capsys, tmp_path):
    target = tmp_path / "out.prf"
    trace = tmp_path / "trace.json"
    code, _, _ = run(capsys, "transform", "ex2_lk_drinker.prf", "--pass", "lk-to-leps",
                     "-o", str(target), "--emit-trace", str(trace))
    assert code == 0
    got = parse_proof(target.read_text())
    want = load("ex2_leps_translation.prf")
    pairs = list(zip(walk(got), walk(want)))
    assert len(pairs) == len(list(walk(want)))
    for (_, m), (_, n) in pairs:
        assert m.rule == n.rule
        assert all(alpha_eq(a, b) for a, b in zip(m.conclusion.formulas(), n.conclusion.formulas()))
    data = json.loads(trace.read_text())
    assert data["output_metrics"]["length"] == 7
    assert calculus_hint(target.read_text()) == "leps"


def test_transform_eliminate(capsys):
    code, out, _ = run(capsys, "transform", "ex4_lkplus_drinker.prf", "--pass", "eliminate-unsound")
    assert code == 0
    p = parse_proof(out)
    assert check(p, "lk").valid
    assert sum(1 for _, n in walk(p) if n.rule == "cut") == 1


def test_transform_identity_is_byte_identical(capsys):
    code, out, _ = run(capsys, "transform", "propositional.prf", "--pass", "universalize-cuts")
    assert code == 0
    body = [ln for ln in (CORPUS / "propositional.prf").read_text().splitlines(True) if not ln.startswith(";")]
    assert out == "; calculus: leps\n" + "".join(body)


def test_transform_source_violation(capsys):
    code, _, err = run(capsys, "transform", "ex4_lkplus_drinker.prf", "--pass", "lk-to-leps")
    assert code == 1 and "InvalidInput" in err


def test_transform_critical_form_trace(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, _, _ = run(capsys, "transform", "ex2_leps_short.prf", "--pass", "critical-form",
                     "--emit-trace", str(trace))
    assert code == 0
    data = json.loads(trace.read_text())
    assert len(data["critical_formulas"]) == 1 and data["tautology"]


def test_measure_csv(capsys):
    code, out, _ = run(capsys, "measure", "ex2_lk_drinker.prf", "ex2_leps_short.prf", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["file", "calculus", "length", "sequent_count", "symbol_size"]
    assert rows[1][1:4] == ["lk", "8", "9"] and rows[2][1:4] == ["leps", "2", "3"]


def test_measure_single_axiom(capsys, tmp_path):
    f = tmp_path / "ax.prf"
    f.write_text('(ax "P(c) |- P(c)")\n')
    code, out, _ = run(capsys, "measure", str(f), "--csv")
    assert code == 0 and out.splitlines()[1].endswith(",lk,0,1,4")


def test_measure_corpus_batch(capsys):
    names = [p.name for p in corpus_proofs()]
    _, first, _ = run(capsys, "measure", *names, "--csv")
    _, second, _ = run(capsys, "measure", *names, "--csv")
    assert first == second
    assert [r[0] for r in list(csv.reader(io.StringIO(first)))[1:]] == names


def test_epsilon_theorem_command(capsys):
    code, out, _ = run(capsys, "epsilon-theorem", "skolem_drinker_leps.prf", "--goal", "skolem_drinker.fo")
    assert code == 0
    assert "instance: (c)" in out and "instance: (sk1(c))" in out and "certified: yes" in out


def test_epsilon_theorem_json(capsys):
    code, out, _ = run(capsys, "epsilon-theorem", "skolem_drinker_leps.prf",
                       "--goal", "skolem_drinker.fo", "--json")
    assert code == 0
    assert json.loads(out)["instances"] == [["c"], ["sk1(c)"]]


def test_epsilon_theorem_zero_quantifiers(capsys, tmp_path):
    goal = tmp_path / "g.fo"
    goal.write_text("P & Q -> Q & P\n")
    code, out, _ = run(capsys, "epsilon-theorem", "propositional.prf", "--goal", str(goal))
    assert code == 0 and "instance: ()" in out


def test_epsilon_theorem_rejects_cut(capsys, tmp_path):
    p = tmp_path / "cut.prf"
    p.write_text('(impr "|- P(c) -> P(c)" (cut "P(c) |- P(c)" :origin "P(c)" '
                 '(ax "P(c) |- P(c)") (ax "P(c) |- P(c)")))\n')
    goal = tmp_path / "g.fo"
    goal.write_text("P(c) -> P(c)\n")
    code, _, err = run(capsys, "epsilon-theorem", str(p), "--goal", str(goal))
    assert code == 1 and "UnsupportedCut" in err


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "ex2_lk_drinker.prf" in out.split()


@pytest.mark.parametrize("argv", [[], ["check"], ["frobnicate"], ["check", "x.prf", "--calculus", "nk"]])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2
