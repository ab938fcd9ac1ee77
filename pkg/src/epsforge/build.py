"""Constructors that compute conclusions from premises.

Principal formulas go to the front of the antecedent and the end of the
succedent; contexts of binary rules are concatenated left then right.
"""
from __future__ import annotations

from .proofs import ProofNode, Sequent
from .syntax import All, And, Ex, Formula, Imp, Neg, Or, Term, Var, alpha_key, substitute


def _drop(side: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...]:
    k = alpha_key(f)
    for i, g in enumerate(side):
        if alpha_key(g) == k:
            return side[:i] + side[i + 1:]
    raise ValueError(f"formula not present: {f}")


def _without(s: Sequent, ante=(), succ=()) -> Sequent:
    a, b = s.ante, s.succ
    for f in ante:
        a = _drop(a, f)
    for f in succ:
        b = _drop(b, f)
    return Sequent(a, b)


def ax(f: Formula) -> ProofNode:
    return ProofNode("ax", Sequent((f,), (f,)))


def _unary(rule: str, p: ProofNode, ante_out=(), succ_out=(), ante_in=(), succ_in=(), **kw) -> ProofNode:
    rest = _without(p.conclusion, ante_out, succ_out)
    return ProofNode(rule, Sequent(tuple(ante_in) + rest.ante, rest.succ + tuple(succ_in)), (p,), **kw)


def _binary(rule: str, p: ProofNode, q: ProofNode, left_out, right_out, ante_in=(), succ_in=(), **kw) -> ProofNode:
    r1 = _without(p.conclusion, *left_out)
    r2 = _without(q.conclusion, *right_out)
    return ProofNode(rule, Sequent(tuple(ante_in) + r1.ante + r2.ante, r1.succ + r2.succ + tuple(succ_in)),
                     (p, q), **kw)


def weaken_l(p, f):
    return _unary("wl", p, ante_in=(f,))


def weaken_r(p, f):
    return _unary("wr", p, succ_in=(f,))


def contract_l(p, f):
    return _unary("cl", p, ante_out=(f, f), ante_in=(f,))


def contract_r(p, f):
    return _unary("cr", p, succ_out=(f, f), succ_in=(f,))


def and_l(p, a, b):
    return _unary("andl", p, ante_out=(a, b), ante_in=(And(a, b),))


def or_r(p, a, b):
    return _unary("orr", p, succ_out=(a, b), succ_in=(Or(a, b),))


def imp_r(p, a, b):
    return _unary("impr", p, ante_out=(a,), succ_out=(b,), succ_in=(Imp(a, b),))


def neg_l(p, a):
    return _unary("negl", p, succ_out=(a,), ante_in=(Neg(a),))


def neg_r(p, a):
    return _unary("negr", p, ante_out=(a,), succ_in=(Neg(a),))


def and_r(p, q, a, b):
    return _binary("andr", p, q, ((), (a,)), ((), (b,)), succ_in=(And(a, b),))


def or_l(p, q, a, b):
    return _binary("orl", p, q, ((a,), ()), ((b,), ()), ante_in=(Or(a, b),))


def imp_l(p, q, a, b):
    return _binary("impl", p, q, ((), (a,)), ((b,), ()), ante_in=(Imp(a, b),))


def cut(p, q, c, origin: Formula | None = None):
    return _binary("cut", p, q, ((), (c,)), ((c,), ()), origin=origin)


def all_l(p, principal: Formula, aux: Formula, witness: Term):
    return _unary("alll", p, ante_out=(aux,), ante_in=(principal,), witness=witness)


def ex_r(p, principal: Formula, aux: Formula, witness: Term):
    return _unary("exr", p, succ_out=(aux,), succ_in=(principal,), witness=witness)


def all_r(p, principal: All, ev: str):
    aux = substitute(principal.body, principal.var, Var(ev))
    return _unary("allr", p, succ_out=(aux,), succ_in=(principal,), ev=ev)


def ex_l(p, principal: Ex, ev: str):
    aux = substitute(principal.body, principal.var, Var(ev))
    return _unary("exl", p, ante_out=(aux,), ante_in=(principal,), ev=ev)


def inst(q: All | Ex, t: Term) -> Formula:
    return substitute(q.body, q.var, t)


def subst(p, x: str, t: Term):
    return ProofNode("subst", p.conclusion.map(lambda f: substitute(f, x, t)), (p,), var=x, term=t)

