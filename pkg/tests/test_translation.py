import pytest
from hypothesis import given, settings

from epsforge.syntax import alpha_eq, free_vars, has_epsilon
from epsforge.text import parse_formula as F, show
from epsforge.translation import (
    SearchBoundExceeded, from_epsilon, from_epsilon_all, skolemize_formula, strong_positions, to_epsilon,
)
from helpers import CORPUS, corpus_proofs, formulas, load


def test_drinker_to_epsilon():
    out = to_epsilon(F("ex y. (A(y) -> all x. A(x))"))
    assert show(out) == "A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))"


def test_atom_unchanged():
    assert to_epsilon(F("P(c)")) == F("P(c)")


def test_nested_quantifiers_translate_inside_out():
    out = to_epsilon(F("all y. ex x. A(x, y)"))
    inner = "eps x. A(x, eps y. ~A(eps x. A(x, y), y))"
    assert alpha_eq(out, F(f"A({inner}, eps y. ~A(eps x. A(x, y), y))"))


def test_drinker_inverse():
    e = to_epsilon(F("ex y. (A(y) -> all x. A(x))"))
    assert alpha_eq(from_epsilon(e), F("ex y. (A(y) -> all x. A(x))"))


def test_term_equation_has_no_preimage():
    f = F((CORPUS / "example1_term_equation.eps").read_text())
    assert from_epsilon(f) is None


def test_quantifier_free_inverse_is_identity():
    f = F("P(c) & ~Q(c, d)")
    assert from_epsilon(f) == f


def test_search_bound_exceeded(monkeypatch):
    f = to_epsilon(F("ex x. ex y. ex z. Q(x, g(y, z))"))
    with pytest.raises(SearchBoundExceeded):
        from_epsilon(f, bound=1)
    monkeypatch.setenv("EPSFORGE_SEARCH_BOUND", "1")
    with pytest.raises(SearchBoundExceeded):
        from_epsilon(f)


def test_all_preimages_translate_back():
    f = to_epsilon(F("ex x. P(x) | all y. Q(y, c)"))
    found = list(from_epsilon_all(f))
    assert found
    assert all(alpha_eq(to_epsilon(g), f) for g in found)


@given(formulas(2, eps=False))
@settings(max_examples=200, deadline=None)
def test_translation_is_quantifier_free_and_invertible(f):
    e = to_epsilon(f)
    assert strong_positions(e, True) == [] and free_vars(e) == free_vars(f)
    g = from_epsilon(e, bound=12)
    assert g is not None and alpha_eq(to_epsilon(g), e)


def test_corpus_first_order_formulas_invert():
    seen = []
    for path in corpus_proofs():
        p = load(path.name)
        from epsforge.proofs import walk

        for _, n in walk(p):
            for f in n.conclusion.formulas():
                if not has_epsilon(f):
                    seen.append(f)
    seen += [F((CORPUS / "drinker.fo").read_text()), F((CORPUS / "skolem_drinker.fo").read_text())]
    for f in seen:
        g = from_epsilon(to_epsilon(f))
        assert g is not None and alpha_eq(to_epsilon(g), to_epsilon(f))


def test_skolemize_drinker():
    out = skolemize_formula(F("ex y. (A(y) -> all x. A(x))"))
    assert show(out) == "ex y. (A(y) -> A(sk1(y)))"


def test_skolemize_negative_polarity():
    out = skolemize_formula(F("all x. ex y. B(x, y)"), "negative")
    assert show(out) == "all x. B(x, sk1(x))"


def test_skolem_arguments_outermost_first():
    out = skolemize_formula(F("ex u. ex w. all z. Q(z, g(u, w))"))
    assert show(out) == "ex u. ex w. Q(sk1(u, w), g(u, w))"


def test_skolem_symbols_numbered_in_order():
    out = skolemize_formula(F("(all x. P(x)) & all y. ex z. all w. Q(z, g(w, y))"))
    assert show(out) == "P(sk1) & ex z. Q(z, g(sk3(z), sk2))"


def test_skolem_names_avoid_existing():
    out = skolemize_formula(F("P(sk1) -> all x. P(x)"))
    assert "sk2" in show(out)
