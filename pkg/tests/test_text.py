import pytest
from hypothesis import given, settings

from epsforge.proofs import MalformedTree, format_proof, parse_proof
from epsforge.syntax import All, Atom, Eps, Ex, Imp, Neg, Var
from epsforge.text import ParseError, parse_formula, parse_sequent, parse_term, show, show_sequent
from helpers import corpus_proofs, formulas, terms

P = lambda t: Atom("P", (t,))


def test_precedence_and_associativity():
    f = parse_formula("~P(x) & Q | R -> S -> T")
    assert show(f) == "~P(x) & Q | R -> S -> T"
    assert isinstance(f, Imp) and isinstance(f.right, Imp)


def test_binder_extends_right():
    f = parse_formula("all x. P(x) -> P(c)")
    assert isinstance(f, All) and isinstance(f.body, Imp)
    g = parse_formula("(all x. P(x)) -> P(c)")
    assert isinstance(g, Imp)


def test_unicode_input():
    assert parse_formula("∀x ¬P(x) ∨ ∃y P(y)") == parse_formula("all x. ~P(x) | ex y. P(y)")


def test_epsilon_terms_and_equality():
    t = parse_term("eps x. ~A(x)")
    assert t == Eps("x", Neg(Atom("A", (Var("x"),))))
    f = parse_formula("(eps v. v = (eps x. ~x = x)) = (eps x. ~x = x)")
    assert f.pred == "=" and show(parse_formula(show(f))) == show(f)


def test_drinker_translation_prints_as_expected():
    src = "A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))"
    assert show(parse_formula(src)) == src


def test_sequent_parsing():
    s = parse_sequent("P(a), Q |- ex x. P(x), R")
    assert len(s.ante) == 2 and len(s.succ) == 2
    assert show_sequent(s) == "P(a), Q |- ex x. P(x), R"
    assert parse_sequent("|- P").ante == ()


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_formula("P(x) &\n  & Q")
    assert info.value.line == 2 and info.value.column == 3


@pytest.mark.parametrize("bad", ["", "P(", "all . P", "P(x) Q", "x = ", "|- |-"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_sequent(bad)


def test_reserved_names_rejected_only_when_strict():
    assert parse_sequent("|- P(sk1)").succ
    with pytest.raises(ParseError):
        parse_sequent("|- P(sk1)", strict=True)


@given(formulas(3, eps=True))
@settings(max_examples=300, deadline=None)
def test_print_parse_roundtrip(f):
    assert parse_formula(show(f)) == f


@given(terms(2))
@settings(max_examples=200, deadline=None)
def test_term_roundtrip(t):
    assert parse_term(show(t)) == t


@pytest.mark.parametrize("path", corpus_proofs(), ids=lambda p: p.name)
def test_corpus_script_roundtrip(path):
    p = parse_proof(path.read_text())
    assert parse_proof(format_proof(p)) == p
    assert format_proof(parse_proof(format_proof(p))) == format_proof(p)


def test_script_payloads_and_comments():
    src = """; a comment
    (exr "|- ex x. P(x)" :witness "c" ; trailing
      (ax "P(c) |- P(c)"))"""
    p = parse_proof(src)
    assert p.rule == "exr" and p.witness == Var("c")
    assert p.premises[0].conclusion.ante == (P(Var("c")),)


def test_script_errors():
    with pytest.raises(ParseError):
        parse_proof('(exr "|- P" (ax "P |- P")')
    with pytest.raises(ParseError):
        parse_proof('(bogus "|- P")')
    with pytest.raises(ParseError) as info:
        parse_proof('(ax\n "P |- &")\n')
    assert info.value.line == 2
    with pytest.raises(MalformedTree):
        parse_proof('(allr "|- all x. P(x)" (ax "P(a) |- P(a)"))').validate_shape()


def test_ex_formula_show():
    assert show(Ex("x", P(Var("x")))) == "ex x. P(x)"
