"""Proof-to-proof transformations.

* :func:`lk_to_leps` -- LK to Leps, strong inferences become substitutions.
* :func:`to_critical_form` -- Leps quantifier rules become critical formulas.
* :func:`universalize_cuts` -- Leps cuts become implications, discharged by a
  universally closed ``A^M -> A^M`` in the end-sequent.
* :func:`eliminate_unsound_inferences` -- LK++ to LK with cuts.
* :func:`skolemize_by_cuts`, :func:`skolemize_cut_free` -- proof Skolemization.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from . import build
from .kernel import _PROP, Inference, Metrics, check, expand_axiom, infer, metrics
from .proofs import STRONG, ProofNode, Sequent, is_cut_free, node_at, subst_proof, walk
from .syntax import (
    All, Eps, Ex, Formula, Imp, Neg, Or, Term, Var, all_names, alpha_eq,
    alpha_key, free_vars, fresh_name, match, matrix_with_vars, substitute,
    substitute_many,
)
from .text import show
from .translation import assign_symbols, child_polarity, skolem_instance, skolem_term, to_epsilon


class TransformError(ValueError):
    pass


class InvalidInput(TransformError):
    pass


class UnsupportedCut(TransformError):
    pass


class OriginRequired(TransformError):
    pass


class MatrixMismatch(TransformError):
    pass


@dataclass
class CriticalFormula:
    base: Formula      # A(x), with ``var`` free
    var: str
    witness: Term
    formula: Formula   # A(t) -> A(eps x. A(x))

    @classmethod
    def of(cls, base: Formula, var: str, witness: Term) -> "CriticalFormula":
        eps = Eps(var, base)
        return cls(base, var, witness, Imp(substitute(base, var, witness), substitute(base, var, eps)))

    @property
    def epsilon(self) -> Eps:
        return Eps(self.var, self.base)


@dataclass
class TransformTrace:
    name: str
    input_metrics: Metrics | None = None
    output_metrics: Metrics | None = None
    steps: list[tuple[str, str]] = field(default_factory=list)
    added_end_formulas: list[Formula] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "transform": self.name,
            "input_metrics": asdict(self.input_metrics) if self.input_metrics else None,
            "output_metrics": asdict(self.output_metrics) if self.output_metrics else None,
            "steps": [list(s) for s in self.steps],
            "added_end_formulas": [show(f) for f in self.added_end_formulas],
        }


def _require(p: ProofNode, calculus: str) -> None:
    report = check(p, calculus)
    if not report.valid:
        first = report.violations[0]
        raise InvalidInput(f"input is not {calculus}-valid: {first.condition} at {first.path}: {first.message}")


def _finish(trace: TransformTrace | None, before: ProofNode, after: ProofNode) -> None:
    if trace is not None:
        trace.input_metrics = metrics(before)
        trace.output_metrics = metrics(after)


def _child(path: str, i: int) -> str:
    return f"{path.rstrip('/')}/{i}"


def _with_extras(node: ProofNode, premises, extras: list[Formula]) -> ProofNode:
    c = node.conclusion
    return node.with_(conclusion=Sequent(c.ante + tuple(extras), c.succ), premises=tuple(premises))


def proof_names(p: ProofNode) -> set[str]:
    names: set[str] = set()
    for _, n in walk(p):
        names |= _node_names(n)
    return names


def count_rule(p: ProofNode, rule: str) -> int:
    return sum(1 for _, n in walk(p) if n.rule == rule)


# --------------------------------------------------------------------------
# LK -> Leps


def lk_to_leps(p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    """Translate every sequent; strong inferences become ``subst`` nodes that
    put the epsilon witness in for the eigenvariable. Cuts keep their
    first-order cut formula as ``origin``."""
    _require(p, "lk")
    out = _to_leps(p, "/", trace)
    _finish(trace, p, out)
    return out


def _to_leps(node: ProofNode, path: str, trace) -> ProofNode:
    inf = infer(node, "lk")
    concl = node.conclusion.map(to_epsilon)
    prems = tuple(_to_leps(q, _child(path, i), trace) for i, q in enumerate(node.premises))
    if node.rule in STRONG:
        body = to_epsilon(inf.body)
        term = Eps(inf.var, Neg(body) if node.rule == "allr" else body)
        if trace is not None:
            trace.steps.append((path, f"{node.rule} -> subst {node.ev} := {show(term)}"))
        return ProofNode("subst", concl, prems, var=node.ev, term=term)
    kw = {}
    if node.rule == "cut":
        kw["origin"] = node.origin if node.origin is not None else inf.cut_formula
    if node.rule in ("alll", "exr"):
        if prems[0].conclusion == concl:
            return prems[0]  # vacuous quantifier: the translation is the identity
        kw["witness"] = inf.witness
    return node.with_(conclusion=concl, premises=prems, **kw)


# --------------------------------------------------------------------------
# critical-formula form


def to_critical_form(p: ProofNode, trace: TransformTrace | None = None):
    """Returns ``(proof, criticals, tautology)``.

    Each exr/alll is replaced by an implication-left inference against an
    (expanded) axiom, moving one critical formula into the antecedent. The
    tautology is ``(conjunction of criticals) -> E`` where ``E`` is the
    disjunction of the succedent and the negated antecedent of the input.
    """
    _require(p, "leps")
    if not is_cut_free(p):
        raise UnsupportedCut("critical form needs a cut-free Leps proof")
    out, crits = _crit(p, "/", trace)
    parts = [Neg(f) for f in p.conclusion.ante] + list(p.conclusion.succ)
    goal = _disjunction(parts)
    taut = goal if not crits else Imp(_conjunction([c.formula for c in crits]), goal)
    _finish(trace, p, out)
    if trace is not None:
        trace.added_end_formulas = [c.formula for c in crits]
    return out, crits, taut


def _disjunction(fs: list[Formula]) -> Formula:
    if not fs:
        raise TransformError("empty end-sequent")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def _conjunction(fs: list[Formula]) -> Formula:
    from .syntax import And

    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def _crit(node: ProofNode, path: str, trace) -> tuple[ProofNode, list[CriticalFormula]]:
    done = [_crit(q, _child(path, i), trace) for i, q in enumerate(node.premises)]
    prems = [d[0] for d in done]
    crits = [c for d in done for c in d[1]]
    if node.rule == "subst":
        crits = [CriticalFormula.of(substitute(c.base, node.var, node.term) if c.var != node.var else c.base,
                                    c.var, substitute(c.witness, node.var, node.term)) for c in crits]
        return build.subst(prems[0], node.var, node.term), crits
    if node.rule in ("exr", "alll"):
        inf = infer(node, "leps")
        aux = substitute(inf.body, inf.var, inf.witness)
        principal = inf.principal_formula(node)
        right = expand_axiom(principal, "leps")
        if node.rule == "exr":
            new = build.imp_l(prems[0], right, aux, principal)
            crit = CriticalFormula.of(inf.body, inf.var, inf.witness)
        else:
            left = build.neg_r(prems[0], aux)
            new = build.imp_l(left, build.neg_l(right, principal), Neg(aux), Neg(principal))
            crit = CriticalFormula.of(Neg(inf.body), inf.var, inf.witness)
        if not alpha_eq(crit.formula, new.conclusion.ante[0]):
            raise TransformError(f"critical formula mismatch at {path}")
        if trace is not None:
            trace.steps.append((path, f"{node.rule} -> impl with critical formula {show(crit.formula)}"))
        return new, crits + [crit]
    return _with_extras(node, prems, [c.formula for c in crits]), crits


# --------------------------------------------------------------------------
# cut universalization


def universal_closure_formula(origin: Formula) -> tuple[Formula, Formula, list[str]]:
    """``(A^M, forall v1..vk (A^M -> A^M), [v1..vk])`` for a first-order cut formula."""
    m, vs = matrix_with_vars(origin)
    closed: Formula = Imp(m, m)
    for v in reversed(vs):
        closed = All(v, closed)
    return m, closed, vs


def universalize_cuts(p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    """Replace each cut on ``A`` by an implication-left with ``A -> A`` in the
    antecedent, then drive ``A -> A`` to the epsilon translation of
    ``forall x1..xk (A^M -> A^M)`` with one alll per matrix variable."""
    _require(p, "leps")
    if is_cut_free(p):
        _finish(trace, p, p)
        return p
    out, extras = _univ(p, "/", trace)
    kept: list[Formula] = []
    seen = {alpha_key(f) for f in p.conclusion.ante}
    for f in extras:
        k = alpha_key(f)
        if k in seen:
            out = build.contract_l(out, f)
            if trace is not None:
                trace.steps.append(("/", f"cl {show(f)}"))
        else:
            seen.add(k)
            kept.append(f)
    if trace is not None:
        trace.added_end_formulas = kept
    _finish(trace, p, out)
    return out


def _univ(node: ProofNode, path: str, trace) -> tuple[ProofNode, list[Formula]]:
    done = [_univ(q, _child(path, i), trace) for i, q in enumerate(node.premises)]
    prems = [d[0] for d in done]
    extras = [f for d in done for f in d[1]]
    if node.rule == "subst":
        return build.subst(prems[0], node.var, node.term), [substitute(f, node.var, node.term) for f in extras]
    if node.rule != "cut":
        return _with_extras(node, prems, extras), extras
    if node.origin is None:
        raise OriginRequired(f"cut at {path} has no :origin annotation")
    a = infer(node, "leps").cut_formula
    m, closed, vs = universal_closure_formula(node.origin)
    inst = match(m, a, vs)
    if inst is None:
        raise MatrixMismatch(f"cut formula at {path} is not an instance of the matrix of {show(node.origin)}")
    terms = [inst.get(v, Var(v)) for v in vs]
    cur = build.imp_l(prems[0], prems[1], a, a)
    aux = Imp(a, a)
    # Peel quantifiers from the inside: level j has v1..vj still free.
    levels = [closed]
    for _ in vs:
        levels.append(levels[-1].body)
    for j in range(len(vs), 0, -1):
        outer = to_epsilon(levels[j - 1])
        principal = substitute_many(outer, dict(zip(vs[:j - 1], terms[:j - 1])))
        cur = build.all_l(cur, principal, aux, terms[j - 1])
        aux = principal
    final = to_epsilon(closed)
    if not alpha_eq(aux, final):
        raise MatrixMismatch(f"alll chain at {path} did not reach the closed formula")
    if trace is not None:
        trace.steps.append((path, f"cut -> impl + {len(vs)} alll on {show(node.origin)}"))
    return cur, extras + [final]


# --------------------------------------------------------------------------
# LK+ / LK++ to LK


@dataclass
class _Extra:
    ev: str
    formula: Formula
    quantified: Formula
    strong_rule: str


def _unsound(node: ProofNode) -> bool:
    lower = set().union(*(free_vars(f) for f in node.conclusion.formulas()))
    return node.ev in lower


def eliminate_unsound_inferences(p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    """Turn an LK++ proof into an LK proof with cuts.

    Each strong inference that breaks the local eigenvariable condition is
    replaced by an implication-left against an expanded axiom of its main
    formula, leaving ``A(a) -> forall x A(x)`` (or ``exists x A(x) -> A(a)``)
    in the antecedent. At the end-sequent each such formula is bound by exl
    into ``exists y (A(y) -> forall x A(x))`` (resp. its dual) and cut against
    a fixed cut-free proof of that formula.
    """
    _require(p, "lkplusplus")
    if check(p, "lk").valid:
        _finish(trace, p, p)
        return p
    replace = _replacement_set(p)
    avoid = proof_names(p)
    out, extras = _elim(p, "/", replace, avoid, trace)
    # identical leftovers come from a shared eigenvariable with one main formula
    unique: list[_Extra] = []
    for x in extras:
        if any(alpha_eq(x.formula, u.formula) for u in unique):
            out = build.contract_l(out, x.formula)
            if trace is not None:
                trace.steps.append(("/", f"cl {show(x.formula)}"))
        else:
            unique.append(x)
    end_vars = set().union(*(free_vars(f) for f in p.conclusion.formulas()))
    pending = list(unique)
    while pending:
        for i, x in enumerate(pending):
            others = set().union(*(free_vars(y.formula) for j, y in enumerate(pending) if j != i))
            if x.ev not in others and x.ev not in end_vars:
                break
        else:
            raise TransformError("no admissible order for discharging eigenvariables")
        pending.pop(i)
        out = _discharge(out, x, avoid)
        if trace is not None:
            trace.steps.append(("/", f"exl {x.ev} + cut against template for {show(x.quantified)}"))
    _finish(trace, p, out)
    return out


def _replacement_set(p: ProofNode) -> set[str]:
    """Strong inferences to replace: the locally unsound ones, closed under
    'my eigenvariable occurs in a formula left behind above me'."""
    nodes = dict(walk(p))
    chosen = {path for path, n in nodes.items() if n.rule in STRONG and _unsound(n)}
    changed = True
    while changed:
        changed = False
        for path, n in nodes.items():
            if n.rule not in STRONG or path in chosen:
                continue
            prefix = path.rstrip("/") + "/"
            left_behind: set[str] = set()
            for q in chosen:
                if q.startswith(prefix) and q != path:
                    m = nodes[q]
                    inf = infer(m, "lkplusplus")
                    left_behind |= free_vars(inf.principal_formula(m)) | {m.ev}
            if n.ev in left_behind:
                chosen.add(path)
                changed = True
    return chosen


def _elim(node: ProofNode, path: str, replace: set[str], avoid: set[str], trace):
    done = [_elim(q, _child(path, i), replace, avoid, trace) for i, q in enumerate(node.premises)]
    prems = [d[0] for d in done]
    extras = [x for d in done for x in d[1]]
    if path not in replace:
        return _with_extras(node, prems, [x.formula for x in extras]), extras
    inf = infer(node, "lkplusplus")
    q = inf.principal_formula(node)
    aux = substitute(inf.body, inf.var, Var(node.ev))
    right = expand_axiom(q, "lk", avoid)
    avoid |= proof_names(right)
    if node.rule == "allr":
        new = build.imp_l(prems[0], right, aux, q)
        x = _Extra(node.ev, Imp(aux, q), q, "allr")
    else:
        new = build.imp_l(right, prems[0], q, aux)
        x = _Extra(node.ev, Imp(q, aux), q, "exl")
    if trace is not None:
        trace.steps.append((path, f"{node.rule} -> impl leaving {show(x.formula)}"))
    return new, extras + [x]


def _discharge(p: ProofNode, x: _Extra, avoid: set[str]) -> ProofNode:
    q = x.quantified
    y = fresh_name(avoid | all_names(q))
    avoid.add(y)
    inst_y = substitute(q.body, q.var, Var(y))
    if x.strong_rule == "allr":
        d = Ex(y, Imp(inst_y, q))
        template = drinker_template(q, avoid)
    else:
        d = Ex(y, Imp(q, inst_y))
        template = dual_drinker_template(q, avoid)
    bound = build.ex_l(p, d, x.ev)
    return build.cut(template, bound, d)


def drinker_template(q: All, avoid: set[str]) -> ProofNode:
    """Cut-free LK proof of ``|- exists y (A(y) -> forall x A(x))``."""
    c, d, y = _fresh3(avoid | all_names(q))
    goal = Ex(y, Imp(build.inst(q, Var(y)), q))
    ac, ad = build.inst(q, Var(c)), build.inst(q, Var(d))
    p = build.weaken_r(expand_axiom(ac, "lk", avoid), q)
    p = build.imp_r(p, ac, q)
    p = build.ex_r(p, goal, Imp(ac, q), Var(c))
    p = build.all_r(p, q, c)
    p = build.weaken_l(p, ad)
    p = build.imp_r(p, ad, q)
    p = build.ex_r(p, goal, Imp(ad, q), Var(d))
    return build.contract_r(p, goal)


def dual_drinker_template(q: Ex, avoid: set[str]) -> ProofNode:
    """Cut-free LK proof of ``|- exists y (exists x A(x) -> A(y))``."""
    c, d, y = _fresh3(avoid | all_names(q))
    goal = Ex(y, Imp(q, build.inst(q, Var(y))))
    ac, ad = build.inst(q, Var(c)), build.inst(q, Var(d))
    p = build.weaken_l(expand_axiom(ac, "lk", avoid), q)
    p = build.imp_r(p, q, ac)
    p = build.ex_r(p, goal, Imp(q, ac), Var(c))
    p = build.ex_l(p, q, c)
    p = build.weaken_r(p, ad)
    p = build.imp_r(p, q, ad)
    p = build.ex_r(p, goal, Imp(q, ad), Var(d))
    return build.contract_r(p, goal)


def _fresh3(avoid: set[str]) -> tuple[str, str, str]:
    out = []
    for _ in range(3):
        n = fresh_name(avoid | set(out))
        out.append(n)
    avoid.update(out)
    return tuple(out)


# --------------------------------------------------------------------------
# Skolemization


def regularize(p: ProofNode) -> ProofNode:
    """Rename eigenvariables that are shared between strong inferences or
    occur anywhere outside the subtree above their inference."""
    avoid = proof_names(p)
    paths = [path for path, n in walk(p) if n.rule in STRONG]
    for path in paths:
        node = node_at(p, path)
        above = _child(path, 0)
        outside: set[str] = set()
        for q, n in walk(p):
            if q == path or q == above or q.startswith(above + "/"):
                continue
            outside |= _node_names(n)
        lower = set().union(*(free_vars(f) for f in node.conclusion.formulas()))
        if node.ev in lower:
            continue
        shared = any(n.rule in STRONG and n.ev == node.ev for _, n in walk(node.premises[0]))
        if node.ev not in outside and not shared:
            continue
        new = fresh_name(avoid)
        avoid.add(new)
        prem = subst_proof(node.premises[0], node.ev, Var(new))
        p = _replace_at(p, path, node.with_(premises=(prem,), ev=new))
    return p


def _node_names(n: ProofNode) -> set[str]:
    out: set[str] = set()
    for f in n.conclusion.formulas():
        out |= all_names(f)
    for t in (n.witness, n.term):
        if t is not None:
            out |= all_names(t)
    for v in (n.ev, n.var):
        if v:
            out.add(v)
    return out


def _replace_at(p: ProofNode, path: str, new: ProofNode) -> ProofNode:
    parts = [int(x) for x in path.split("/") if x]
    if not parts:
        return new
    prems = list(p.premises)
    prems[parts[0]] = _replace_at(prems[parts[0]], "/" + "/".join(map(str, parts[1:])), new)
    return p.with_(premises=tuple(prems))


@dataclass(frozen=True)
class _Occ:
    """An end-sequent ancestor: subformula ``sub`` of an end formula at ``path``."""
    sub: Formula
    positive: bool
    env: tuple[tuple[str, Term], ...]
    weak: tuple[Term, ...]
    path: tuple
    symbols: int

    def child(self, i: int, bind: tuple[str, Term] | None = None, weak: bool = False) -> "_Occ":
        from .syntax import children

        env = self.env + ((bind,) if bind else ())
        w = self.weak + ((bind[1],) if weak else ())
        return _Occ(children(self.sub)[i], child_polarity(self.sub, i, self.positive), env, w,
                    self.path + (i,), self.symbols)


class _Skolemizer:
    def __init__(self, p: ProofNode, cut_free: bool, trace):
        self.cut_free = cut_free
        self.trace = trace
        names = proof_names(p)
        items = [(f, False) for f in p.conclusion.ante] + [(f, True) for f in p.conclusion.succ]
        self.symbols = assign_symbols(items, names)
        self.avoid = names | {s for table in self.symbols for s in table.values()}
        self.root_ctx = {}
        for k, (f, pol) in enumerate(items):
            pos = ("L", k) if k < len(p.conclusion.ante) else ("R", k - len(p.conclusion.ante))
            self.root_ctx[pos] = _Occ(f, pol, (), (), (), k)

    def target(self, occ: _Occ | None, f: Formula, sigma: dict) -> Formula:
        if occ is None:
            return substitute_many(f, sigma)
        return skolem_instance(occ.sub, occ.positive, dict(occ.env), list(occ.weak), occ.path,
                               self.symbols[occ.symbols])

    def skolem_term(self, occ: _Occ) -> Term:
        return skolem_term(self.symbols[occ.symbols][occ.path], list(occ.weak))

    def run(self, node: ProofNode, ctx: dict, sigma: dict, path: str) -> ProofNode:
        inf = infer(node, "lk")
        s = node.conclusion
        concl = Sequent(tuple(self.target(ctx.get(("L", i)), f, sigma) for i, f in enumerate(s.ante)),
                        tuple(self.target(ctx.get(("R", i)), f, sigma) for i, f in enumerate(s.succ)))
        occ = ctx.get(inf.principal) if inf.principal else None
        prem_ctx = [{pp: ctx.get(cp) for pp, cp in m.items()} for m in inf.context]
        witness = node.witness
        sub_sigma = sigma
        if node.rule in _PROP:
            flat = [(j, pos) for j, auxes in enumerate(inf.aux) for pos in auxes]
            for k, (j, pos) in enumerate(flat):
                if occ is None:
                    prem_ctx[j][pos] = None
                elif node.rule in ("cl", "cr"):
                    prem_ctx[j][pos] = occ
                else:
                    prem_ctx[j][pos] = occ.child(k)
        elif node.rule == "cut":
            for j, auxes in enumerate(inf.aux):
                for pos in auxes:
                    prem_ctx[j][pos] = None
        elif node.rule in ("alll", "exr"):
            witness = substitute_many(inf.witness, sigma)
            prem_ctx[0][inf.aux[0][0]] = None if occ is None else occ.child(0, (inf.var, witness), weak=True)
        elif node.rule in STRONG:
            if occ is not None:
                st = self.skolem_term(occ)
                if self.cut_free:
                    sub_sigma = dict(sigma)
                    sub_sigma[node.ev] = st
                    prem_ctx[0][inf.aux[0][0]] = occ.child(0, (inf.var, st))
                    if self.trace is not None:
                        self.trace.steps.append((path, f"{node.rule} deleted, {node.ev} := {show(st)}"))
                    return self.run(node.premises[0], prem_ctx[0], sub_sigma, _child(path, 0))
                prem_ctx[0][inf.aux[0][0]] = occ.child(0, (inf.var, Var(node.ev)))
            else:
                prem_ctx[0][inf.aux[0][0]] = None
        prems = tuple(self.run(q, prem_ctx[j], sub_sigma, _child(path, j)) for j, q in enumerate(node.premises))
        new = node.with_(conclusion=concl, premises=prems, witness=witness if node.rule in ("alll", "exr") else None,
                         principal=None)
        if node.rule in STRONG and occ is not None:
            return self._gadget(node, inf, occ, prems[0], path)
        return new

    def _gadget(self, node: ProofNode, inf: Inference, occ: _Occ, prem: ProofNode, path: str) -> ProofNode:
        st = self.skolem_term(occ)
        env = dict(occ.env)
        incoming = set().union(*(free_vars(t) for t in env.values())) if env else set()
        x = inf.var if inf.var not in incoming else fresh_name(self.avoid | incoming)
        self.avoid.add(x)
        inner = self.target(occ.child(0, (inf.var, Var(x))), inf.body, {})
        w = (All if node.rule == "allr" else Ex)(x, inner)
        inst = substitute(inner, x, st)
        ax = expand_axiom(inst, "lk", self.avoid)
        self.avoid |= proof_names(ax)
        if node.rule == "allr":
            strong = build.all_r(prem, w, node.ev)
            out = build.cut(strong, build.all_l(ax, w, inst, st), w)
        else:
            strong = build.ex_l(prem, w, node.ev)
            out = build.cut(build.ex_r(ax, w, inst, st), strong, w)
        if self.trace is not None:
            self.trace.steps.append((path, f"{node.rule} + cut against {show(w)} |- {show(inst)}"))
        return out


def skolemize_by_cuts(p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    """Every strong inference on an end-sequent ancestor is followed by a cut
    that replaces the quantified formula by its Skolem instance."""
    _require(p, "lk")
    q = regularize(p)
    sk = _Skolemizer(q, cut_free=False, trace=trace)
    if not any(sk.symbols):
        _finish(trace, p, p)
        return p
    out = sk.run(q, sk.root_ctx, {}, "/")
    _finish(trace, p, out)
    return out


def skolemize_cut_free(p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    """Delete strong inferences of a cut-free proof, substituting Skolem terms
    for their eigenvariables in the subtree above."""
    _require(p, "lk")
    if not is_cut_free(p):
        raise UnsupportedCut("skolemize_cut_free needs a cut-free proof")
    q = regularize(p)
    sk = _Skolemizer(q, cut_free=True, trace=trace)
    if not any(sk.symbols):
        _finish(trace, p, p)
        return p
    out = sk.run(q, sk.root_ctx, {}, "/")
    _finish(trace, p, out)
    return out


PASSES = {
    "lk-to-leps": ("lk", "leps"),
    "critical-form": ("leps", "leps"),
    "universalize-cuts": ("leps", "leps"),
    "eliminate-unsound": ("lkplusplus", "lk"),
    "skolem-cuts": ("lk", "lk"),
    "skolem-cutfree": ("lk", "lk"),
}


def run_pass(name: str, p: ProofNode, trace: TransformTrace | None = None) -> ProofNode:
    if name == "lk-to-leps":
        return lk_to_leps(p, trace)
    if name == "critical-form":
        return to_critical_form(p, trace)[0]
    if name == "universalize-cuts":
        return universalize_cuts(p, trace)
    if name == "eliminate-unsound":
        return eliminate_unsound_inferences(p, trace)
    if name == "skolem-cuts":
        return skolemize_by_cuts(p, trace)
    if name == "skolem-cutfree":
        return skolemize_cut_free(p, trace)
    raise ValueError(f"unknown pass {name!r}")
