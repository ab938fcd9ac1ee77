"""Concrete syntax: ASCII operators, ``eps``/``all``/``ex`` binders.

Precedence, tightest first: ``~``, ``&``, ``|``, ``->`` (right associative).
Binder bodies extend as far right as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BINARY, EQ, QUANTIFIERS, RESERVED, All, And, App, Atom, Eps, Ex, Expr,
    Formula, Imp, Neg, Or, Signature, Term, Var, ArityError,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


KEYWORDS = {"eps", "all", "ex"}
_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "⊢": "|-", "∀": "all ", "∃": "ex ", "ε": "eps "}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>->|\|-|[~&|=(),.])"
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    for u, a in _UNICODE.items():
        src = src.replace(u, a)
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "ident" and text in KEYWORDS:
                kind = text
            out.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, src: str, strict: bool = False):
        self.toks = tokenize(src)
        self.i = 0
        self.strict = strict

    # token helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        return self.peek().text in texts and self.peek().kind != "ident"

    def skip(self, text: str) -> None:
        if self.at(text):
            self.i += 1

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "ident":
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected identifier, found {tok.text or 'end of input'!r}")
        if self.strict and RESERVED.match(tok.text):
            self.fail(f"identifier {tok.text!r} is reserved for generated names")
        self.i += 1
        return tok.text

    # formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if self.at("~"):
            self.i += 1
            return Neg(self.unary())
        if tok.kind in ("all", "ex"):
            self.i += 1
            var = self.ident()
            self.skip(".")  # the dot after a bound variable is optional
            body = self.formula()
            return All(var, body) if tok.kind == "all" else Ex(var, body)
        if self.at("("):
            start = self.i
            try:
                t = self.term()
                if self.at("="):
                    self.i += 1
                    return Atom(EQ, (t, self.term()))
            except ParseError:
                pass
            self.i = start
            self.expect("(")
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "eps":
            t = self.term()
            self.expect("=")
            return Atom(EQ, (t, self.term()))
        if tok.kind == "ident":
            t = self.term()
            if self.at("="):
                self.i += 1
                return Atom(EQ, (t, self.term()))
            if isinstance(t, App):
                return Atom(t.fn, t.args)
            return Atom(t.name, ())
        self.fail(f"expected formula, found {tok.text or 'end of input'!r}")

    # terms
    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "eps":
            self.i += 1
            var = self.ident()
            self.skip(".")  # the dot after a bound variable is optional
            return Eps(var, self.formula())
        if self.at("("):
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        name = self.ident()
        if self.at("("):
            self.i += 1
            args = [self.term()]
            while self.at(","):
                self.i += 1
                args.append(self.term())
            self.expect(")")
            return App(name, tuple(args))
        return Var(name)

    def formulas(self, stop: str) -> list[Formula]:
        if self.at(stop) or self.peek().kind == "eof":
            return []
        out = [self.formula()]
        while self.at(","):
            self.i += 1
            out.append(self.formula())
        return out

    def done(self) -> None:
        if self.peek().kind != "eof":
            self.fail(f"unexpected {self.peek().text!r}")


def _checked(obj, sig: Signature | None, tok: Token):
    sig = sig if sig is not None else Signature()
    try:
        for x in obj if isinstance(obj, (list, tuple)) else [obj]:
            sig.add(x)
    except ArityError as exc:
        raise ParseError(str(exc), tok.line, tok.col) from None
    return obj


def parse_formula(src: str, sig: Signature | None = None, strict: bool = False) -> Formula:
    p = _Parser(src, strict)
    f = p.formula()
    p.done()
    return _checked(f, sig, p.toks[0])


def parse_term(src: str, sig: Signature | None = None, strict: bool = False) -> Term:
    p = _Parser(src, strict)
    t = p.term()
    p.done()
    return _checked(t, sig, p.toks[0])


def parse_sequent(src: str, sig: Signature | None = None, strict: bool = False):
    from .proofs import Sequent

    p = _Parser(src, strict)
    ante = p.formulas("|-")
    p.expect("|-")
    succ = p.formulas("")
    p.done()
    _checked(ante + succ, sig, p.toks[0])
    return Sequent(tuple(ante), tuple(succ))


# --------------------------------------------------------------------------
# printing

_PREC = {Imp: 1, Or: 2, And: 3, Neg: 4}
_SYM = {Imp: "->", Or: "|", And: "&"}


def show(e: Expr) -> str:
    if isinstance(e, (Var, App, Eps)):
        return _term(e)
    return _formula(e, 0, True)


def _term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        return f"{t.fn}({', '.join(_term(a) for a in t.args)})"
    return f"eps {t.var}. {_body(t.body)}"


def _body(f: Formula) -> str:
    if isinstance(f, BINARY):
        return f"({_formula(f, 0, True)})"
    return _formula(f, 0, True)


def _eq_side(t: Term) -> str:
    return f"({_term(t)})" if isinstance(t, Eps) else _term(t)


def _formula(f: Formula, ctx: int, tail: bool) -> str:
    """``ctx`` is the binding strength the surrounding operator demands;
    ``tail`` says whether nothing follows this text inside its delimiters."""
    if isinstance(f, Atom):
        if f.pred == EQ and len(f.args) == 2:
            return f"{_eq_side(f.args[0])} = {_eq_side(f.args[1])}"
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(_term(a) for a in f.args)})"
    if isinstance(f, QUANTIFIERS):
        kw = "all" if isinstance(f, All) else "ex"
        text = f"{kw} {f.var}. {_body(f.body)}"
        return text if tail else f"({text})"
    if isinstance(f, Neg):
        return "~" + _formula(f.sub, 4, tail)
    prec = _PREC[type(f)]
    wrap = prec < ctx
    inner_tail = True if wrap else tail
    if isinstance(f, Imp):
        lhs = _formula(f.left, prec + 1, False)
        rhs = _formula(f.right, prec, inner_tail)
    else:
        lhs = _formula(f.left, prec, False)
        rhs = _formula(f.right, prec + 1, inner_tail)
    text = f"{lhs} {_SYM[type(f)]} {rhs}"
    return f"({text})" if wrap else text


def show_sequent(s) -> str:
    ante = ", ".join(show(f) for f in s.ante)
    succ = ", ".join(show(f) for f in s.succ)
    return f"{ante} |- {succ}".strip()
