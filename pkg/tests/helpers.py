"""Strategies and independent reference implementations used by the tests."""
from __future__ import annotations

import itertools
from pathlib import Path

from hypothesis import strategies as st

from epsforge.proofs import parse_proof
from epsforge.syntax import All, And, App, Atom, Eps, Ex, Imp, Neg, Or, Var

CORPUS = Path(__file__).resolve().parents[1] / "src" / "epsforge" / "corpus"

NAMES = ["x", "y", "z", "a", "b", "c"]


def load(name: str):
    return parse_proof((CORPUS / name).read_text())


def corpus_proofs():
    return sorted(CORPUS.glob("*.prf"))


# --------------------------------------------------------------------------
# strategies


def terms(depth: int = 2, eps: bool = True):
    base = st.sampled_from(NAMES).map(Var)
    if depth == 0:
        return base
    sub = terms(depth - 1, eps)
    options = [
        base,
        st.builds(lambda t: App("f", (t,)), sub),
        st.builds(lambda s, t: App("g", (s, t)), sub, sub),
    ]
    if eps:
        options.append(st.builds(Eps, st.sampled_from(NAMES), formulas(depth - 1, eps=True)))
    return st.one_of(*options)


def atoms(depth: int, eps: bool):
    t = terms(depth, eps)
    return st.one_of(
        st.just(Atom("R", ())),
        st.builds(lambda s: Atom("P", (s,)), t),
        st.builds(lambda s, u: Atom("Q", (s, u)), t, t),
        st.builds(lambda s, u: Atom("=", (s, u)), t, t),
    )


def formulas(depth: int = 2, eps: bool = False, quantifiers: bool = True):
    leaf = atoms(max(depth - 1, 0), eps)
    if depth == 0:
        return leaf
    sub = formulas(depth - 1, eps, quantifiers)
    options = [
        leaf,
        st.builds(Neg, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Imp, sub, sub),
    ]
    if quantifiers:
        options += [st.builds(All, st.sampled_from(NAMES), sub), st.builds(Ex, st.sampled_from(NAMES), sub)]
    return st.one_of(*options)


# --------------------------------------------------------------------------
# oracles


def debruijn(e, env=()):
    """Nameless form: bound variables become their binder depth."""
    if isinstance(e, Var):
        return ("bound", env.index(e.name)) if e.name in env else ("free", e.name)
    if isinstance(e, App):
        return ("app", e.fn, tuple(debruijn(a, env) for a in e.args))
    if isinstance(e, Atom):
        return ("atom", e.pred, tuple(debruijn(a, env) for a in e.args))
    if isinstance(e, (Eps, All, Ex)):
        return (type(e).__name__, debruijn(e.body, (e.var,) + env))
    if isinstance(e, Neg):
        return ("neg", debruijn(e.sub, env))
    return (type(e).__name__, debruijn(e.left, env), debruijn(e.right, env))


def naive_free(e, bound=frozenset()):
    if isinstance(e, Var):
        return set() if e.name in bound else {e.name}
    if isinstance(e, (App, Atom)):
        return set().union(*(naive_free(a, bound) for a in e.args)) if e.args else set()
    if isinstance(e, (Eps, All, Ex)):
        return naive_free(e.body, bound | {e.var})
    if isinstance(e, Neg):
        return naive_free(e.sub, bound)
    return naive_free(e.left, bound) | naive_free(e.right, bound)


def rename_bound_apart(e, counter=None, env=None):
    """Give every binder a globally unique name ``_bN``."""
    counter = counter if counter is not None else itertools.count()
    env = env or {}
    if isinstance(e, Var):
        return Var(env.get(e.name, e.name))
    if isinstance(e, App):
        return App(e.fn, tuple(rename_bound_apart(a, counter, env) for a in e.args))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(rename_bound_apart(a, counter, env) for a in e.args))
    if isinstance(e, (Eps, All, Ex)):
        new = f"_b{next(counter)}"
        return type(e)(new, rename_bound_apart(e.body, counter, {**env, e.var: new}))
    if isinstance(e, Neg):
        return Neg(rename_bound_apart(e.sub, counter, env))
    return type(e)(rename_bound_apart(e.left, counter, env), rename_bound_apart(e.right, counter, env))


def naive_subst(e, x, t):
    """Textual replacement; only correct when no binder can capture."""
    if isinstance(e, Var):
        return t if e.name == x else e
    if isinstance(e, App):
        return App(e.fn, tuple(naive_subst(a, x, t) for a in e.args))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(naive_subst(a, x, t) for a in e.args))
    if isinstance(e, (Eps, All, Ex)):
        return e if e.var == x else type(e)(e.var, naive_subst(e.body, x, t))
    if isinstance(e, Neg):
        return Neg(naive_subst(e.sub, x, t))
    return type(e)(naive_subst(e.left, x, t), naive_subst(e.right, x, t))


def truth_table_tautology(f) -> bool:
    """Enumerate assignments one by one; atoms keyed by nameless form."""
    keys = []

    def collect(g):
        if isinstance(g, Atom):
            k = debruijn(g)
            if k not in keys:
                keys.append(k)
        elif isinstance(g, Neg):
            collect(g.sub)
        else:
            collect(g.left)
            collect(g.right)

    def value(g, v):
        if isinstance(g, Atom):
            return v[debruijn(g)]
        if isinstance(g, Neg):
            return not value(g.sub, v)
        a, b = value(g.left, v), value(g.right, v)
        if isinstance(g, And):
            return a and b
        if isinstance(g, Or):
            return a or b
        return (not a) or b

    collect(f)
    for bits in itertools.product([False, True], repeat=len(keys)):
        if not value(f, dict(zip(keys, bits))):
            return False
    return True


def topo_order(nodes, edges):
    """Kahn's algorithm; None when the graph has a cycle."""
    indeg = {n: 0 for n in nodes}
    for a, b in edges:
        indeg.setdefault(a, 0)
        indeg[b] = indeg.get(b, 0) + 1
    ready = [n for n, d in indeg.items() if d == 0]
    out = []
    while ready:
        n = ready.pop()
        out.append(n)
        for a, b in edges:
            if a == n:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    return out if len(out) == len(indeg) else None


# --------------------------------------------------------------------------
# random LK proofs with cuts

CUT_POOL = [
    "P(c)",
    "P(c) & Q(c, d)",
    "ex x. P(x)",
    "all x. P(x)",
    "ex x. all y. Q(x, y)",
    "all x. (P(x) -> ex y. Q(x, y))",
    "ex x. (P(x) | ~R)",
    "~(all x. ex y. Q(y, x))",
]


def random_cut_proof(rng, n_cuts: int):
    """An LK proof with exactly ``n_cuts`` cuts on formulas from CUT_POOL,
    with a single succedent formula."""
    from epsforge import build as B
    from epsforge.kernel import expand_axiom
    from epsforge.syntax import Neg
    from epsforge.text import parse_formula

    proof, goal = None, None
    for _ in range(n_cuts):
        if proof is not None and rng.random() < 0.25:
            # another cut on the current succedent formula
            proof = B.cut(proof, expand_axiom(goal), goal)
            continue
        a = parse_formula(rng.choice(CUT_POOL))
        piece = B.cut(expand_axiom(a), expand_axiom(a), a)
        if proof is None:
            proof, goal = piece, a
        else:
            proof = B.and_r(proof, piece, goal, a)
            goal = proof.conclusion.succ[-1]
        if rng.random() < 0.2:
            proof = B.neg_r(B.neg_l(proof, goal), Neg(goal))
            goal = Neg(Neg(goal))
    if rng.random() < 0.3:
        proof = B.weaken_l(proof, parse_formula("R"))
    return proof


# --------------------------------------------------------------------------
# random epsilon problems

TERM_POOL = ["c", "d", "f(c)", "f(d)", "f(f(c))"]
MATRIX_POOL = [
    "P(v1) -> P(f(v1))",
    "P(v1) | ~P(c)",
    "~P(v1) | P(d)",
    "Q(v1, v2) -> Q(c, v2)",
    "P(v1) & Q(v1, c) -> P(v2)",
    "P(v1) -> P(v2)",
    "Q(v1, v2) | ~Q(c, d)",
    "(P(v1) -> P(f(v1))) & (Q(v1, v1) | ~Q(v2, v2))",
]


def random_epsilon_problem(rng, attempts: int = 200):
    """(criticals, goal, template, vars, instances) with the criticals chosen
    as those of exr inferences proving the goal from a tautological Herbrand
    disjunction of random instances."""
    from epsforge.epsilon_theorem import is_tautology
    from epsforge.syntax import Ex, Or, substitute_many
    from epsforge.text import parse_formula, parse_term
    from epsforge.transforms import CriticalFormula
    from epsforge.translation import to_epsilon

    for _ in range(attempts):
        m = parse_formula(rng.choice(MATRIX_POOL))
        vs = [v for v in ("v1", "v2") if v in naive_free(m)]
        insts = [tuple(parse_term(rng.choice(TERM_POOL)) for _ in vs) for _ in range(rng.randint(1, 4))]
        disj = substitute_many(m, dict(zip(vs, insts[0])))
        for ts in insts[1:]:
            disj = Or(disj, substitute_many(m, dict(zip(vs, ts))))
        if not is_tautology(disj):
            continue
        levels = [m]
        for v in reversed(vs):
            levels.insert(0, Ex(v, levels[0]))
        goal = to_epsilon(levels[0])
        crits = []
        for ts in insts:
            for j, v in enumerate(vs):
                base = substitute_many(to_epsilon(levels[j + 1]), dict(zip(vs[:j], ts[:j])))
                crits.append(CriticalFormula.of(base, v, ts[j]))
        return crits, goal, m, vs, insts
    raise RuntimeError("no tautological instance set found")
