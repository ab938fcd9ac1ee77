"""Terms and formulas with epsilon binders.

All nodes are immutable. Equality of the dataclasses is *syntactic*; use
:func:`alpha_eq` / :func:`alpha_key` whenever bound-variable names must not
matter (which is almost everywhere outside the parser).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...]


@dataclass(frozen=True)
class Eps:
    var: str
    body: "Formula"


Term = Union[Var, App, Eps]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Neg:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class All:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Ex:
    var: str
    body: "Formula"


Formula = Union[Atom, Neg, And, Or, Imp, All, Ex]
Expr = Union[Term, Formula]

BINARY = (And, Or, Imp)
QUANTIFIERS = (All, Ex)
BINDERS = (All, Ex, Eps)

EQ = "="


def const(name: str) -> Var:
    # Constants and free variables share one syntactic category.
    return Var(name)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (App, Atom)):
        return e.args
    if isinstance(e, Neg):
        return (e.sub,)
    if isinstance(e, BINARY):
        return (e.left, e.right)
    if isinstance(e, BINDERS):
        return (e.body,)
    return ()


def rebuild(e: Expr, kids: tuple) -> Expr:
    if isinstance(e, App):
        return App(e.fn, tuple(kids))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(kids))
    if isinstance(e, Neg):
        return Neg(kids[0])
    if isinstance(e, BINARY):
        return type(e)(kids[0], kids[1])
    if isinstance(e, BINDERS):
        return type(e)(e.var, kids[0])
    return e


# --------------------------------------------------------------------------
# variables


@lru_cache(maxsize=None)
def free_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, BINDERS):
        return free_vars(e.body) - {e.var}
    out: frozenset[str] = frozenset()
    for k in children(e):
        out |= free_vars(k)
    return out


def all_names(e: Expr) -> set[str]:
    """Every identifier used as a variable, bound or free, or as a symbol."""
    names: set[str] = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            names.add(x.name)
        elif isinstance(x, App):
            names.add(x.fn)
        elif isinstance(x, Atom):
            names.add(x.pred)
        elif isinstance(x, BINDERS):
            names.add(x.var)
        stack.extend(children(x))
    return names


def fresh_names(avoid: Iterable[str], prefix: str = "v") -> Iterator[str]:
    """``v1, v2, ...`` skipping anything in *avoid*."""
    avoid = set(avoid)
    for i in itertools.count(1):
        name = f"{prefix}{i}"
        if name not in avoid:
            yield name


def fresh_name(avoid: Iterable[str], prefix: str = "v") -> str:
    return next(fresh_names(avoid, prefix))


RESERVED = re.compile(r"^(sk|v)\d+$")


# --------------------------------------------------------------------------
# substitution


def substitute(e: Expr, x: str, t: Term) -> Expr:
    """Capture-avoiding replacement of free ``x`` by ``t``."""
    return substitute_many(e, {x: t})


def substitute_many(e: Expr, sub: dict[str, Term]) -> Expr:
    sub = {k: v for k, v in sub.items() if k in free_vars(e)}
    if not sub:
        return e
    return _subst(e, sub)


def _subst(e: Expr, sub: dict[str, Term]) -> Expr:
    if isinstance(e, Var):
        return sub.get(e.name, e)
    if isinstance(e, BINDERS):
        inner = {k: v for k, v in sub.items() if k != e.var and k in free_vars(e.body)}
        if not inner:
            return e
        incoming = frozenset().union(*(free_vars(t) for t in inner.values()))
        var, body = e.var, e.body
        if var in incoming:
            new = fresh_name(incoming | free_vars(body) | set(inner) | all_names(body))
            body = _subst(body, {var: Var(new)})
            var = new
        return type(e)(var, _subst(body, inner))
    kids = children(e)
    if not kids:
        return e
    return rebuild(e, tuple(_subst(k, sub) for k in kids))


# --------------------------------------------------------------------------
# alpha equivalence


def alpha_key(e: Expr):
    """A hashable key; two expressions are alpha-equivalent iff keys are equal."""
    return _key(e, ())


@lru_cache(maxsize=None)
def _key(e: Expr, env: tuple[str, ...]):
    if isinstance(e, Var):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == e.name:
                return ("#", len(env) - 1 - i)
        return ("v", e.name)
    if isinstance(e, BINDERS):
        return (type(e).__name__, _key(e.body, env + (e.var,)))
    if isinstance(e, App):
        return ("f", e.fn, tuple(_key(a, env) for a in e.args))
    if isinstance(e, Atom):
        return ("p", e.pred, tuple(_key(a, env) for a in e.args))
    return (type(e).__name__,) + tuple(_key(k, env) for k in children(e))


def alpha_eq(a: Expr, b: Expr) -> bool:
    if a is b:
        return True
    return alpha_key(a) == alpha_key(b)


# --------------------------------------------------------------------------
# traversal helpers


def is_quantifier_free(f: Expr) -> bool:
    """No all/ex anywhere, including inside epsilon bodies."""
    if isinstance(f, QUANTIFIERS):
        return False
    return all(is_quantifier_free(k) for k in children(f))


def has_epsilon(e: Expr) -> bool:
    if isinstance(e, Eps):
        return True
    return any(has_epsilon(k) for k in children(e))


def epsilon_subterms(e: Expr) -> list[Eps]:
    """Epsilon subterms whose free variables are not captured by an enclosing
    binder of ``e``; outermost-leftmost first, duplicates (up to alpha) dropped."""
    out: list[Eps] = []
    seen = set()

    def walk(x: Expr, bound: frozenset[str]) -> None:
        if isinstance(x, Eps) and not (free_vars(x) & bound):
            k = alpha_key(x)
            if k not in seen:
                seen.add(k)
                out.append(x)
        inner = bound | {x.var} if isinstance(x, BINDERS) else bound
        for k in children(x):
            walk(k, inner)

    walk(e, frozenset())
    return out


def replace_term(e: Expr, old: Term, new: Term) -> Expr:
    """Replace every occurrence of ``old`` (up to alpha) by ``new``."""
    old_key = alpha_key(old)
    old_fv = free_vars(old)
    new_fv = free_vars(new)

    def walk(x: Expr) -> Expr:
        if not isinstance(x, (Atom, Neg, And, Or, Imp, All, Ex)) and alpha_key(x) == old_key:
            return new
        if isinstance(x, BINDERS):
            if x.var in old_fv:
                return x
            var, body = x.var, x.body
            if var in new_fv:
                nv = fresh_name(new_fv | all_names(body) | old_fv)
                body = substitute(body, var, Var(nv))
                var = nv
            return type(x)(var, walk(body))
        kids = children(x)
        if not kids:
            return x
        return rebuild(x, tuple(walk(k) for k in kids))

    return walk(e)


def match(pattern: Expr, target: Expr, holes: Iterable[str]) -> dict[str, Term] | None:
    """First-order matching: find terms for the free ``holes`` of ``pattern``
    so that the instance is alpha-equal to ``target``. Holes that do not occur
    are left out of the result."""
    holes = frozenset(holes)
    found: dict[str, Term] = {}

    def go(p: Expr, t: Expr, penv: tuple[str, ...], tenv: tuple[str, ...]) -> bool:
        if isinstance(p, Var) and p.name in holes and p.name not in penv:
            if free_vars(t) & set(tenv):
                return False
            if p.name in found:
                return alpha_eq(found[p.name], t)
            found[p.name] = t
            return True
        if type(p) is not type(t):
            return False
        if isinstance(p, Var):
            return _key(p, penv) == _key(t, tenv)
        if isinstance(p, App) and (p.fn != t.fn or len(p.args) != len(t.args)):
            return False
        if isinstance(p, Atom) and (p.pred != t.pred or len(p.args) != len(t.args)):
            return False
        if isinstance(p, BINDERS):
            return go(p.body, t.body, penv + (p.var,), tenv + (t.var,))
        return all(go(a, b, penv, tenv) for a, b in zip(children(p), children(t)))

    return found if go(pattern, target, (), ()) else None


def size(e: Expr) -> int:
    """Symbol occurrences; a binder counts its operator and its variable."""
    own = 2 if isinstance(e, BINDERS) else 1
    return own + sum(size(k) for k in children(e))


def quantifier_count(f: Expr) -> int:
    own = 1 if isinstance(f, QUANTIFIERS) else 0
    return own + sum(quantifier_count(k) for k in children(f))


# --------------------------------------------------------------------------
# matrix


class MatrixUndefined(ValueError):
    pass


def matrix_with_vars(f: Formula) -> tuple[Formula, list[str]]:
    """Strip all quantifiers, naming each bound variable by a fresh ``v<n>``.

    Names are handed out in pre-order (outer quantifiers first); the list of
    fresh names is returned in that order.
    """
    if has_epsilon(f):
        raise MatrixUndefined("matrix is defined for first-order formulas only")
    names = fresh_names(all_names(f))
    order: list[str] = []

    def go(g: Formula) -> Formula:
        if isinstance(g, QUANTIFIERS):
            v = next(names)
            order.append(v)
            return go(substitute(g.body, g.var, Var(v)))
        kids = children(g)
        if not kids or isinstance(g, Atom):
            return g
        return rebuild(g, tuple(go(k) for k in kids))

    return go(f), order


def matrix(f: Formula) -> Formula:
    return matrix_with_vars(f)[0]


# --------------------------------------------------------------------------
# signatures


class ArityError(ValueError):
    pass


@dataclass
class Signature:
    preds: dict[str, int]
    fns: dict[str, int]

    def __init__(self) -> None:
        self.preds = {}
        self.fns = {}

    def add(self, e: Expr) -> None:
        stack = [e]
        while stack:
            x = stack.pop()
            if isinstance(x, Atom):
                self._note(self.preds, x.pred, len(x.args), "predicate")
            elif isinstance(x, App):
                self._note(self.fns, x.fn, len(x.args), "function")
            stack.extend(children(x))

    @staticmethod
    def _note(table: dict[str, int], name: str, n: int, kind: str) -> None:
        seen = table.setdefault(name, n)
        if seen != n:
            raise ArityError(f"{kind} {name} used with arity {n} and {seen}")
