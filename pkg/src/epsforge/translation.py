"""Epsilon translation, its partial inverse, and formula Skolemization."""
from __future__ import annotations

import os
from typing import Iterator

from .syntax import (
    All, App, Atom, Eps, Ex, Formula, Imp, Neg, Term, Var,
    alpha_eq, all_names, children, epsilon_subterms, free_vars, fresh_name,
    fresh_names, has_epsilon, rebuild, substitute, substitute_many,
)

DEFAULT_SEARCH_BOUND = 8


class SearchBoundExceeded(RuntimeError):
    pass


def to_epsilon(f: Formula) -> Formula:
    """Replace every quantifier by its epsilon witness, outermost first."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Ex):
        body = to_epsilon(f.body)
        return substitute(body, f.var, Eps(f.var, body))
    if isinstance(f, All):
        body = to_epsilon(f.body)
        return substitute(body, f.var, Eps(f.var, Neg(body)))
    return rebuild(f, tuple(to_epsilon(k) for k in children(f)))


# --------------------------------------------------------------------------
# inverse


def search_bound() -> int:
    raw = os.environ.get("EPSFORGE_SEARCH_BOUND")
    return int(raw) if raw else DEFAULT_SEARCH_BOUND


def from_epsilon(f: Formula, bound: int | None = None) -> Formula | None:
    """Some first-order ``g`` with ``to_epsilon(g)`` alpha-equal to ``f``.

    Returns None when no preimage exists. Raises SearchBoundExceeded when the
    search was cut off by the nesting bound before finding one.
    """
    for g in from_epsilon_all(f, bound):
        return g
    return None


def from_epsilon_all(f: Formula, bound: int | None = None) -> Iterator[Formula]:
    """All preimages found by the search, canonical one first.

    Vacuous quantifiers are invisible after translation and never rebuilt.
    """
    bound = search_bound() if bound is None else bound
    state = {"hit": False}
    found = False
    for g in _inverse(f, 0, bound, state):
        found = True
        yield g
    if not found and state["hit"]:
        raise SearchBoundExceeded(f"epsilon nesting exceeds search bound {bound}")


def _inverse(f: Formula, depth: int, bound: int, state: dict) -> Iterator[Formula]:
    if not has_epsilon(f):
        yield f
        return
    for e in epsilon_subterms(f):
        for kind, var, body in _quantifier_readings(e, f):
            if depth >= bound:
                state["hit"] = True
                continue
            for inner in _inverse(body, depth + 1, bound, state):
                yield kind(var, inner)
    if isinstance(f, Atom):
        return
    kids = children(f)
    yield from _combine(f, kids, depth, bound, state)


def _combine(f: Formula, kids, depth: int, bound: int, state: dict) -> Iterator[Formula]:
    if len(kids) == 1:
        for a in _inverse(kids[0], depth, bound, state):
            yield Neg(a)
        return
    lefts = list(_inverse(kids[0], depth, bound, state))
    if not lefts:
        return
    for b in _inverse(kids[1], depth, bound, state):
        for a in lefts:
            yield type(f)(a, b)


def _quantifier_readings(e: Eps, f: Formula):
    """Ways ``f`` can be the translation of a formula quantifying over ``e``'s
    variable: yields (quantifier, variable, translated body with it free)."""
    var, body = e.var, e.body
    if var in free_vars(f):
        new = fresh_name(free_vars(f) | all_names(body))
        body = substitute(body, var, Var(new))
        var = new
    if alpha_eq(substitute(body, var, e), f):
        yield Ex, var, body
    if isinstance(body, Neg) and alpha_eq(substitute(body.sub, var, e), f):
        yield All, var, body.sub


# --------------------------------------------------------------------------
# Skolemization


def _polarity(p) -> bool:
    if isinstance(p, bool):
        return p
    if p in ("positive", "pos", "+"):
        return True
    if p in ("negative", "neg", "-"):
        return False
    raise ValueError(f"unknown polarity {p!r}")


def is_strong(f: Formula, positive: bool) -> bool:
    return (isinstance(f, All) and positive) or (isinstance(f, Ex) and not positive)


def child_polarity(f: Formula, i: int, positive: bool) -> bool:
    if isinstance(f, Neg) or (isinstance(f, Imp) and i == 0):
        return not positive
    return positive


def strong_positions(f: Formula, positive: bool, path: tuple = ()) -> list[tuple]:
    out = []
    if is_strong(f, positive):
        out.append(path)
    for i, k in enumerate(children(f) if not isinstance(f, Atom) else ()):
        out.extend(strong_positions(k, child_polarity(f, i, positive), path + (i,)))
    return out


def assign_symbols(items: list[tuple[Formula, bool]], avoid: set[str]) -> list[dict]:
    """One Skolem symbol per strong-quantifier position, ``sk1, sk2, ...``."""
    names = fresh_names(avoid, "sk")
    return [{pos: next(names) for pos in strong_positions(f, pol)} for f, pol in items]


def skolem_term(symbol: str, args: list[Term]) -> Term:
    return App(symbol, tuple(args)) if args else Var(symbol)


def skolem_instance(f: Formula, positive: bool, env: dict[str, Term], weak: list[Term],
                    path: tuple, symbols: dict) -> Formula:
    """Skolemized form of the subformula ``f`` found at ``path`` of an
    end-sequent formula, with the bound variables above it mapped by ``env``
    and the weak-quantifier terms in scope listed in ``weak``."""
    if isinstance(f, Atom):
        return substitute_many(f, env)
    if isinstance(f, (All, Ex)):
        if is_strong(f, positive):
            env2 = dict(env)
            env2[f.var] = skolem_term(symbols[path], weak)
            return skolem_instance(f.body, positive, env2, weak, path + (0,), symbols)
        incoming = set().union(*(free_vars(t) for t in env.values())) if env else set()
        var = f.var
        if var in incoming:
            var = fresh_name(incoming | all_names(f))
        env2 = dict(env)
        env2[f.var] = Var(var)
        body = skolem_instance(f.body, positive, env2, weak + [Var(var)], path + (0,), symbols)
        return type(f)(var, body)
    kids = children(f)
    return rebuild(f, tuple(
        skolem_instance(k, child_polarity(f, i, positive), env, weak, path + (i,), symbols)
        for i, k in enumerate(kids)))


def skolemize_formula(f: Formula, polarity="positive", avoid: set[str] | None = None) -> Formula:
    """Remove the strong quantifiers of ``f`` (all in positive, ex in negative
    position), instantiating each with a fresh Skolem function of the weakly
    bound variables in whose scope it stands, outermost first."""
    positive = _polarity(polarity)
    avoid = all_names(f) | (avoid or set())
    (symbols,) = assign_symbols([(f, positive)], avoid)
    return skolem_instance(f, positive, {}, [], (), symbols)
