"""Sequents, proof trees and the s-expression proof-script format.

A script is one s-expression::

    (exr "|- ex x. P(x)" :witness "c"
      (ax "P(c) |- P(c)"))

Payload keys: ``:ev`` (allr/exl), ``:witness`` (alll/exr), ``:var``/``:term``
(subst), ``:principal`` and ``:origin`` (first-order cut formula). Lines
starting with ``;`` are comments; ``; calculus: <name>`` names the calculus
the file is meant for.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterator

from .syntax import Formula, Signature, Term, alpha_key, size, substitute
from .text import ParseError, parse_formula, parse_sequent, parse_term, show, show_sequent

RULES = {
    "ax": 0,
    "andl": 1, "andr": 2, "orl": 2, "orr": 1, "impl": 2, "impr": 1,
    "negl": 1, "negr": 1, "wl": 1, "wr": 1, "cl": 1, "cr": 1, "cut": 2,
    "alll": 1, "allr": 1, "exl": 1, "exr": 1, "subst": 1,
}
STRONG = ("allr", "exl")
WEAK = ("alll", "exr")


class MalformedTree(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    ante: tuple[Formula, ...] = ()
    succ: tuple[Formula, ...] = ()

    def __str__(self) -> str:
        return show_sequent(self)

    def formulas(self) -> tuple[Formula, ...]:
        return self.ante + self.succ

    def same(self, other: "Sequent") -> bool:
        """Multiset equality up to alpha-equivalence."""
        return (Counter(map(alpha_key, self.ante)) == Counter(map(alpha_key, other.ante))
                and Counter(map(alpha_key, self.succ)) == Counter(map(alpha_key, other.succ)))

    def map(self, fn) -> "Sequent":
        return Sequent(tuple(fn(f) for f in self.ante), tuple(fn(f) for f in self.succ))

    def add(self, ante=(), succ=()) -> "Sequent":
        return Sequent(self.ante + tuple(ante), self.succ + tuple(succ))

    def symbol_size(self) -> int:
        return sum(size(f) for f in self.formulas())


@dataclass(frozen=True)
class ProofNode:
    rule: str
    conclusion: Sequent
    premises: tuple["ProofNode", ...] = ()
    ev: str | None = None
    witness: Term | None = None
    var: str | None = None
    term: Term | None = None
    principal: int | None = None
    origin: Formula | None = None

    def validate_shape(self) -> None:
        for path, node in walk(self):
            if node.rule not in RULES:
                raise MalformedTree(f"{path}: unknown rule {node.rule!r}")
            if len(node.premises) != RULES[node.rule]:
                raise MalformedTree(
                    f"{path}: {node.rule} takes {RULES[node.rule]} premise(s), got {len(node.premises)}")
            if node.rule in STRONG and node.ev is None:
                raise MalformedTree(f"{path}: {node.rule} needs an :ev payload")
            if node.rule == "subst" and (node.var is None or node.term is None):
                raise MalformedTree(f"{path}: subst needs :var and :term payloads")

    def with_(self, **kw) -> "ProofNode":
        return replace(self, **kw)


def walk(p: ProofNode, path: str = "/") -> Iterator[tuple[str, ProofNode]]:
    """Pre-order traversal with slash-separated premise paths."""
    stack = [(path, p)]
    while stack:
        path, node = stack.pop()
        yield path, node
        base = path if path.endswith("/") else path + "/"
        for i in range(len(node.premises) - 1, -1, -1):
            stack.append((f"{base}{i}", node.premises[i]))


def node_at(p: ProofNode, path: str) -> ProofNode:
    for part in filter(None, path.split("/")):
        p = p.premises[int(part)]
    return p


def is_cut_free(p: ProofNode) -> bool:
    return all(n.rule != "cut" for _, n in walk(p))


def subst_proof(p: ProofNode, x: str, t: Term) -> ProofNode:
    """Apply ``x := t`` to every sequent and payload term of a proof."""
    def sub(e):
        return substitute(e, x, t) if e is not None else None

    return p.with_(
        conclusion=p.conclusion.map(lambda f: substitute(f, x, t)),
        premises=tuple(subst_proof(q, x, t) for q in p.premises),
        witness=sub(p.witness),
        term=sub(p.term),
        ev=(t.name if p.ev == x and hasattr(t, "name") else p.ev),
    )


# --------------------------------------------------------------------------
# script format

_SEXP = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()";]+))')


def _sexp_tokens(src: str):
    pos, line = 0, 1
    while pos < len(src):
        m = _SEXP.match(src, pos)
        if not m or m.end() == pos:
            if src[pos:].strip() == "":
                break
            raise ParseError(f"bad token near {src[pos:pos + 20]!r}", line, 1)
        line += src.count("\n", pos, m.end())
        pos = m.end()
        comment, lp, rp, string, atom = m.groups()
        if comment is not None:
            continue
        if lp:
            yield ("(", None, line)
        elif rp:
            yield (")", None, line)
        elif string is not None:
            yield ("str", string.replace('\\"', '"').replace("\\\\", "\\"), line)
        elif atom is not None:
            yield ("atom", atom, line)


def read_sexp(src: str):
    toks = list(_sexp_tokens(src))
    if not toks:
        raise ParseError("empty proof script")
    stack: list[list] = [[]]
    for kind, val, line in toks:
        if kind == "(":
            stack.append([])
        elif kind == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append((kind, val, line))
    if len(stack) != 1:
        raise ParseError("unbalanced '('", toks[-1][2])
    if len(stack[0]) != 1 or not isinstance(stack[0][0], list):
        raise ParseError("a proof script holds exactly one s-expression")
    return stack[0][0]


def _lift(exc: ParseError, line: int) -> ParseError:
    return ParseError(f"in sequent or payload: {exc}", line, exc.column)


def parse_proof(src: str, sig: Signature | None = None) -> ProofNode:
    sig = sig if sig is not None else Signature()
    return _build(read_sexp(src), sig)


def _build(sx, sig: Signature) -> ProofNode:
    if not sx or not isinstance(sx[0], tuple) or sx[0][0] != "atom":
        raise ParseError("expected (rule \"sequent\" ...)")
    rule, line = sx[0][1], sx[0][2]
    if rule not in RULES:
        raise ParseError(f"unknown rule {rule!r}", line)
    if len(sx) < 2 or not isinstance(sx[1], tuple) or sx[1][0] != "str":
        raise ParseError(f"{rule}: missing sequent string", line)
    try:
        concl = parse_sequent(sx[1][1], sig)
    except ParseError as exc:
        raise _lift(exc, sx[1][2]) from None
    kw: dict = {}
    premises = []
    items = sx[2:]
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, list):
            premises.append(_build(item, sig))
            i += 1
            continue
        if item[0] != "atom" or not item[1].startswith(":") or i + 1 >= len(items):
            raise ParseError(f"{rule}: unexpected {item[1]!r}", item[2])
        key, val = item[1][1:], items[i + 1]
        if isinstance(val, list):
            raise ParseError(f"{rule}: payload :{key} needs a value", item[2])
        text = val[1]
        try:
            if key in ("ev", "var"):
                kw[key] = text
            elif key in ("witness", "term"):
                kw[key] = parse_term(text, sig)
            elif key == "principal":
                kw[key] = int(text)
            elif key == "origin":
                kw[key] = parse_formula(text, sig)
            else:
                raise ParseError(f"{rule}: unknown payload :{key}", item[2])
        except ParseError as exc:
            raise _lift(exc, val[2]) from None
        except ValueError:
            raise ParseError(f"{rule}: bad value for :{key}", val[2]) from None
        i += 2
    return ProofNode(rule, concl, tuple(premises), **kw)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_proof(p: ProofNode, indent: int = 0) -> str:
    pad = "  " * indent
    head = f"{pad}({p.rule} {_quote(str(p.conclusion))}"
    for key in ("ev", "witness", "var", "term", "principal", "origin"):
        val = getattr(p, key)
        if val is None:
            continue
        if key in ("ev", "var"):
            head += f" :{key} {val}"
        elif key == "principal":
            head += f" :principal {val}"
        else:
            head += f" :{key} {_quote(show(val))}"
    if not p.premises:
        return head + ")"
    body = "\n".join(format_proof(q, indent + 1) for q in p.premises)
    return f"{head}\n{body})"


def calculus_hint(src: str) -> str | None:
    m = re.search(r"^\s*;\s*calculus:\s*(\w+)", src, re.MULTILINE)
    return m.group(1).lower() if m else None
