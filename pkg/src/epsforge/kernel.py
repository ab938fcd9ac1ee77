"""Proof checking for LK, Leps, LK+ and LK++.

Every node is checked locally by :func:`infer`, which reconstructs the
inference (principal formula, auxiliary formulas, and the map from premise
context occurrences to conclusion occurrences). Eigenvariable conditions are
then checked per calculus: locally for LK, globally (substitutability,
side-variable acyclicity, weak or very weak regularity) for LK+ and LK++.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import asdict, dataclass, field

from . import build
from .proofs import STRONG, MalformedTree, ProofNode, Sequent, walk
from .syntax import (
    All, And, Atom, Ex, Formula, Imp, Neg, Or, Term, Var, all_names,
    alpha_eq, alpha_key, epsilon_subterms, free_vars, fresh_name, has_epsilon,
    is_quantifier_free, match, substitute,
)

CALCULI = ("lk", "leps", "lkplus", "lkplusplus")
_ALIASES = {"lkplus": "lkplus", "lk+": "lkplus", "lkplusplus": "lkplusplus", "lk++": "lkplusplus",
            "leps": "leps", "lε": "leps", "lk": "lk"}

Pos = tuple[str, int]  # ("L" | "R", index)


def calculus_id(name: str) -> str:
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown calculus {name!r}; expected one of {', '.join(CALCULI)}") from None


class RuleViolation(Exception):
    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition
        self.message = message


@dataclass
class Violation:
    path: str
    condition: str
    message: str


@dataclass
class SideVarGraph:
    nodes: list[str] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class Metrics:
    length: int
    sequent_count: int
    symbol_size: int


@dataclass
class CheckReport:
    valid: bool
    calculus: str
    violations: list[Violation]
    side_var_graph: SideVarGraph
    metrics: Metrics

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "calculus": self.calculus,
            "violations": [asdict(v) for v in self.violations],
            "side_var_graph": {"nodes": self.side_var_graph.nodes,
                               "edges": [list(e) for e in self.side_var_graph.edges]},
            "metrics": asdict(self.metrics),
        }


@dataclass
class Inference:
    """A reconstructed rule application."""
    rule: str
    principal: Pos | None = None
    aux: list[list[Pos]] = field(default_factory=list)
    context: list[dict[Pos, Pos]] = field(default_factory=list)
    ev: str | None = None
    witness: Term | None = None
    var: str | None = None           # bound variable of a quantifier rule
    body: Formula | None = None      # its matrix body, variable free
    cut_formula: Formula | None = None

    def principal_formula(self, node: ProofNode) -> Formula | None:
        if self.principal is None:
            return None
        side, i = self.principal
        return (node.conclusion.ante if side == "L" else node.conclusion.succ)[i]


# --------------------------------------------------------------------------
# local rule reconstruction


def _side(s: Sequent, side: str) -> tuple[Formula, ...]:
    return s.ante if side == "L" else s.succ


def _find_aux(prem: Sequent, wanted: list[tuple[str, Formula]]) -> list[Pos] | None:
    used: set[Pos] = set()
    out = []
    for side, f in wanted:
        k = alpha_key(f)
        for i, g in enumerate(_side(prem, side)):
            if (side, i) not in used and alpha_key(g) == k:
                used.add((side, i))
                out.append((side, i))
                break
        else:
            return None
    return out


def _context(concl: Sequent, principal: Pos | None, prems: list[Sequent],
             aux: list[list[Pos]], key=alpha_key) -> list[dict[Pos, Pos]] | None:
    """Match premise context occurrences to conclusion occurrences one to one."""
    free: dict[tuple[str, object], list[Pos]] = defaultdict(list)
    for side in ("L", "R"):
        for i, f in enumerate(_side(concl, side)):
            if (side, i) != principal:
                free[(side, alpha_key(f))].append((side, i))
    maps = []
    for prem, skip in zip(prems, aux):
        m = {}
        for side in ("L", "R"):
            for i, f in enumerate(_side(prem, side)):
                if (side, i) in skip:
                    continue
                slots = free.get((side, key(f)))
                if not slots:
                    return None
                m[(side, i)] = slots.pop(0)
        maps.append(m)
    if any(free.values()):
        return None
    return maps


def _attempt(node: ProofNode, rule: str, principal: Pos | None,
             wanted: list[list[tuple[str, Formula]]], **extra) -> Inference | None:
    prems = [p.conclusion for p in node.premises]
    aux = []
    for prem, w in zip(prems, wanted):
        found = _find_aux(prem, w)
        if found is None:
            return None
        aux.append(found)
    ctx = _context(node.conclusion, principal, prems, aux)
    if ctx is None:
        return None
    return Inference(rule, principal, aux, ctx, **extra)


def _principals(node: ProofNode, side: str, kind=None):
    formulas = _side(node.conclusion, side)
    idxs = range(len(formulas)) if node.principal is None else [node.principal]
    for i in idxs:
        if 0 <= i < len(formulas) and (kind is None or isinstance(formulas[i], kind)):
            yield (side, i), formulas[i]


_PROP = {
    # rule: (side, connective, aux per premise)
    "andl": ("L", And, lambda f: [[("L", f.left), ("L", f.right)]]),
    "orr": ("R", Or, lambda f: [[("R", f.left), ("R", f.right)]]),
    "impr": ("R", Imp, lambda f: [[("L", f.left), ("R", f.right)]]),
    "negl": ("L", Neg, lambda f: [[("R", f.sub)]]),
    "negr": ("R", Neg, lambda f: [[("L", f.sub)]]),
    "andr": ("R", And, lambda f: [[("R", f.left)], [("R", f.right)]]),
    "orl": ("L", Or, lambda f: [[("L", f.left)], [("L", f.right)]]),
    "impl": ("L", Imp, lambda f: [[("R", f.left)], [("L", f.right)]]),
    "wl": ("L", None, lambda f: [[]]),
    "wr": ("R", None, lambda f: [[]]),
    "cl": ("L", None, lambda f: [[("L", f), ("L", f)]]),
    "cr": ("R", None, lambda f: [[("R", f), ("R", f)]]),
}


def infer(node: ProofNode, calculus: str = "lk") -> Inference:
    """Reconstruct the inference at ``node`` or raise RuleViolation."""
    rule = node.rule
    if rule == "ax":
        s = node.conclusion
        if len(s.ante) != 1 or len(s.succ) != 1 or not alpha_eq(s.ante[0], s.succ[0]):
            raise RuleViolation("rule shape", f"axiom must have the form A |- A, got {s}")
        if not isinstance(s.ante[0], Atom):
            raise RuleViolation("non-atomic axiom", f"axiom formula is not atomic: {s}")
        return Inference("ax")
    if rule in _PROP:
        side, kind, aux = _PROP[rule]
        for pos, f in _principals(node, side, kind):
            inf = _attempt(node, rule, pos, aux(f))
            if inf:
                return inf
        raise RuleViolation("rule shape", f"conclusion does not follow by {rule}")
    if rule == "cut":
        left = node.premises[0].conclusion
        for i, c in enumerate(left.succ):
            inf = _attempt(node, rule, None, [[("R", c)], [("L", c)]], cut_formula=c)
            if inf:
                return inf
        raise RuleViolation("rule shape", "no cut formula makes the conclusion follow")
    if rule == "subst":
        return _infer_subst(node)
    if rule in STRONG:
        return _infer_strong(node)
    if rule in ("alll", "exr"):
        if calculus == "leps":
            return _infer_eps_weak(node)
        return _infer_weak(node)
    raise MalformedTree(f"unknown rule {rule!r}")


def _infer_subst(node: ProofNode) -> Inference:
    t = node.term
    prem = node.premises[0].conclusion
    key = lambda f: alpha_key(substitute(f, node.var, t))
    ctx = _context(node.conclusion, None, [prem], [[]], key=key)
    if ctx is None:
        raise RuleViolation("rule shape", f"conclusion is not the premise under {node.var} := {t}")
    return Inference("subst", None, [[]], ctx, var=node.var, witness=t)


def _infer_strong(node: ProofNode) -> Inference:
    side, kind = ("R", All) if node.rule == "allr" else ("L", Ex)
    for pos, f in _principals(node, side, kind):
        aux = substitute(f.body, f.var, Var(node.ev))
        inf = _attempt(node, node.rule, pos, [[(side, aux)]], ev=node.ev, var=f.var, body=f.body)
        if inf:
            return inf
    raise RuleViolation("rule shape", f"conclusion does not follow by {node.rule} with eigenvariable {node.ev}")


def _weak_aux(node: ProofNode, side: str, var: str, body: Formula):
    """Candidate auxiliary formulas ``body[var := t]`` in the premise."""
    prem = node.premises[0].conclusion
    if node.witness is not None:
        yield node.witness, substitute(body, var, node.witness)
        return
    seen = set()
    for g in _side(prem, side):
        m = match(body, g, {var})
        if m is None or alpha_key(g) in seen:
            continue
        seen.add(alpha_key(g))
        yield m.get(var, Var(var)), g


def _infer_weak(node: ProofNode) -> Inference:
    side, kind = ("L", All) if node.rule == "alll" else ("R", Ex)
    for pos, f in _principals(node, side, kind):
        for t, aux in _weak_aux(node, side, f.var, f.body):
            inf = _attempt(node, node.rule, pos, [[(side, aux)]], witness=t, var=f.var, body=f.body)
            if inf:
                return inf
    raise RuleViolation("rule shape", f"conclusion does not follow by {node.rule}")


def _infer_eps_weak(node: ProofNode) -> Inference:
    """Leps: A(t) becomes A(eps x. A(x)) on the right, A(eps x. ~A(x)) on the left."""
    side = "L" if node.rule == "alll" else "R"
    for pos, f in _principals(node, side):
        for e in epsilon_subterms(f):
            body = e.body
            if side == "L":
                if not isinstance(body, Neg):
                    continue
                body = body.sub
            if not alpha_eq(substitute(body, e.var, e), f):
                continue
            for t, aux in _weak_aux(node, side, e.var, body):
                inf = _attempt(node, node.rule, pos, [[(side, aux)]], witness=t, var=e.var, body=body)
                if inf:
                    return inf
    raise RuleViolation("rule shape", f"conclusion does not follow by the epsilon form of {node.rule}")


# --------------------------------------------------------------------------
# checking


def _language(node: ProofNode, calculus: str) -> str | None:
    fs = node.conclusion.formulas()
    if calculus == "leps":
        if not all(is_quantifier_free(f) for f in fs):
            return "Leps sequents may not contain quantifiers"
    elif any(has_epsilon(f) for f in fs):
        return "first-order sequents may not contain epsilon terms"
    return None


def check(p: ProofNode, calculus: str = "lk") -> CheckReport:
    calculus = calculus_id(calculus)
    p.validate_shape()
    violations: list[Violation] = []
    strong: list[tuple[str, str, Formula]] = []
    for path, node in walk(p):
        msg = _language(node, calculus)
        if msg:
            violations.append(Violation(path, "language", msg))
        if node.rule == "subst" and calculus != "leps":
            violations.append(Violation(path, "rule not in calculus", "subst nodes occur only in Leps proofs"))
            continue
        if node.rule in STRONG and calculus == "leps":
            violations.append(Violation(path, "rule not in calculus",
                                        f"{node.rule} is replaced by substitution in Leps"))
            continue
        try:
            inf = infer(node, calculus)
        except RuleViolation as exc:
            violations.append(Violation(path, exc.condition, exc.message))
            continue
        if node.rule in STRONG:
            principal = inf.principal_formula(node)
            strong.append((path, node.ev, principal))
            if calculus == "lk":
                lower = set().union(*(free_vars(f) for f in node.conclusion.formulas()))
                if node.ev in lower:
                    violations.append(Violation(
                        path, "eigenvariable condition",
                        f"eigenvariable {node.ev} occurs in the conclusion of {node.rule}"))
    graph = _graph(strong)
    if calculus in ("lkplus", "lkplusplus"):
        violations.extend(_suitability(p, strong, graph, calculus))
    return CheckReport(not violations, calculus, violations, graph, metrics(p))


def _graph(strong) -> SideVarGraph:
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    for _, ev, f in strong:
        if ev not in nodes:
            nodes.append(ev)
    for _, ev, f in strong:
        for b in sorted(free_vars(f) - {ev}):
            if (ev, b) not in edges:
                edges.append((ev, b))
            if b not in nodes:
                nodes.append(b)
    return SideVarGraph(nodes, edges)


def _suitability(p: ProofNode, strong, graph: SideVarGraph, calculus: str) -> list[Violation]:
    out = []
    end = set().union(*(free_vars(f) for f in p.conclusion.formulas()))
    for path, ev, _ in strong:
        if ev in end:
            out.append(Violation(path, "substitutability",
                                 f"eigenvariable {ev} occurs in the end-sequent"))
    cycle = find_cycle(graph)
    if cycle:
        out.append(Violation("/", "side variable condition",
                             "side-variable relation has a cycle: " + " < ".join(cycle)))
    by_ev: dict[str, list] = defaultdict(list)
    for path, ev, f in strong:
        by_ev[ev].append((path, f))
    for ev, uses in by_ev.items():
        if len(uses) < 2:
            continue
        if calculus == "lkplus":
            for path, _ in uses[1:]:
                out.append(Violation(path, "weak regularity",
                                     f"eigenvariable {ev} is shared with {uses[0][0]}"))
        else:
            for path, f in uses[1:]:
                if not alpha_eq(f, uses[0][1]):
                    out.append(Violation(path, "very weak regularity",
                                         f"eigenvariable {ev} is shared with {uses[0][0]} "
                                         "for a different main formula"))
    return out


def side_variable_relation(p: ProofNode) -> SideVarGraph:
    strong = []
    for path, node in walk(p):
        if node.rule in STRONG and node.ev is not None:
            try:
                inf = infer(node)
            except RuleViolation:
                continue
            strong.append((path, node.ev, inf.principal_formula(node)))
    return _graph(strong)


def find_cycle(g: SideVarGraph) -> list[str] | None:
    succ: dict[str, list[str]] = defaultdict(list)
    for a, b in g.edges:
        succ[a].append(b)
    color: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(v: str) -> list[str] | None:
        color[v] = 1
        stack_path.append(v)
        for w in succ[v]:
            if color.get(w) == 1:
                return stack_path[stack_path.index(w):] + [w]
            if w not in color:
                found = visit(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in list(g.nodes) + [a for a, _ in g.edges]:
        if v not in color:
            found = visit(v)
            if found:
                return found
    return None


def check_acyclic(g: SideVarGraph) -> bool:
    return find_cycle(g) is None


def metrics(p: ProofNode) -> Metrics:
    length = count = sym = 0
    for _, node in walk(p):
        if node.rule == "subst":
            continue
        count += 1
        sym += node.conclusion.symbol_size()
        if node.rule != "ax":
            length += 1
    return Metrics(length, count, sym)


# --------------------------------------------------------------------------
# composite axioms


def expand_axiom(f: Formula, calculus: str = "lk", avoid: set[str] | frozenset = frozenset()) -> ProofNode:
    """A proof of ``f |- f`` from atomic axioms, linear in the size of ``f``."""
    calculus = calculus_id(calculus)
    if calculus == "leps" and not is_quantifier_free(f):
        raise ValueError("Leps formulas are quantifier-free")
    avoid = set(avoid) | all_names(f)
    return _expand(f, avoid)


def _expand(f: Formula, avoid: set[str]) -> ProofNode:
    if isinstance(f, Atom):
        return build.ax(f)
    if isinstance(f, Neg):
        return build.neg_r(build.neg_l(_expand(f.sub, avoid), f.sub), f.sub)
    if isinstance(f, And):
        return build.and_l(build.and_r(_expand(f.left, avoid), _expand(f.right, avoid), f.left, f.right),
                           f.left, f.right)
    if isinstance(f, Or):
        return build.or_r(build.or_l(_expand(f.left, avoid), _expand(f.right, avoid), f.left, f.right),
                          f.left, f.right)
    if isinstance(f, Imp):
        return build.imp_r(build.imp_l(_expand(f.left, avoid), _expand(f.right, avoid), f.left, f.right),
                           f.left, f.right)
    a = fresh_name(avoid)
    avoid.add(a)
    inner = build.inst(f, Var(a))
    sub = _expand(inner, avoid)
    if isinstance(f, Ex):
        return build.ex_l(build.ex_r(sub, f, inner, Var(a)), f, a)
    return build.all_r(build.all_l(sub, f, inner, Var(a)), f, a)
