"""Critical-formula elimination and Herbrand disjunctions.

The tautology checker evaluates a formula on all assignments at once: each
atom is a bit column of the truth table packed into a Python integer, and
connectives become bitwise operations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .proofs import ProofNode
from .syntax import (
    And, Atom, Eps, Formula, Imp, Neg, Or, Term, Var, alpha_eq, alpha_key,
    children, free_vars, match, matrix_with_vars, replace_term, substitute_many,
)
from .text import show
from .transforms import CriticalFormula, to_critical_form
from .translation import strong_positions, to_epsilon

DEFAULT_CONSTANT = "def0"
TABLE_ATOMS = 20
MAX_CELLS = 2 ** 24


class TooManyAtoms(ValueError):
    pass


class NonTautology(ValueError):
    pass


class Diverged(RuntimeError):
    pass


# --------------------------------------------------------------------------
# rank


def _eps_inside(e) -> list[Eps]:
    out = []
    for k in children(e):
        if isinstance(k, Eps):
            out.append(k)
        out.extend(_eps_inside(k))
    return out


def epsilon_rank(t) -> int:
    """Subordinate nesting depth: an epsilon term inside ``eps x. B`` counts
    only if ``x`` occurs free in it."""
    if isinstance(t, Eps):
        inner = [epsilon_rank(e) for e in _eps_inside(t.body) if t.var in free_vars(e)]
        return 1 + max(inner, default=0)
    return max((epsilon_rank(e) for e in _eps_inside(t)), default=0)


# --------------------------------------------------------------------------
# tautologies


def atoms_of(f: Formula) -> list[Atom]:
    out, seen = [], set()

    def walk(g):
        if isinstance(g, Atom):
            k = alpha_key(g)
            if k not in seen:
                seen.add(k)
                out.append(g)
        elif isinstance(g, (Neg, And, Or, Imp)):
            for k in children(g):
                walk(k)
        else:
            raise ValueError(f"not quantifier-free: {show(g)}")

    walk(f)
    return out


def _column(i: int, n: int) -> int:
    # bit k of the result is bit i of k, for k < 2**n
    half = 1 << i
    col = ((1 << half) - 1) << half
    width = half * 2
    while width < (1 << n):
        col |= col << width
        width *= 2
    return col


def _evaluate(f: Formula, cols: dict, full: int) -> int:
    if isinstance(f, Atom):
        return cols[alpha_key(f)]
    if isinstance(f, Neg):
        return full & ~_evaluate(f.sub, cols, full)
    a = _evaluate(f.left, cols, full)
    b = _evaluate(f.right, cols, full)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    return (full & ~a) | b


def is_tautology(f: Formula, max_cells: int = MAX_CELLS) -> bool:
    """Exact propositional validity; atoms are compared up to alpha."""
    atoms = atoms_of(f)
    n = len(atoms)
    if 2 ** n > max_cells:
        raise TooManyAtoms(f"{n} distinct atoms exceed the cap of {max_cells} table cells")
    keys = [alpha_key(a) for a in atoms]
    width = min(n, TABLE_ATOMS)
    split = n - width
    full = (1 << (1 << width)) - 1
    table = {keys[split + i]: _column(i, width) for i in range(width)}
    for fixed in range(1 << split):
        cols = dict(table)
        for j in range(split):
            cols[keys[j]] = full if (fixed >> j) & 1 else 0
        if _evaluate(f, cols, full) != full:
            return False
    return True


def conjunction(fs: list[Formula]) -> Formula | None:
    if not fs:
        return None
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = And(g, out)
    return out


def disjunction(fs: list[Formula]) -> Formula:
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = Or(g, out)
    return out


# --------------------------------------------------------------------------
# problems and elimination


@dataclass
class EpsilonProblem:
    criticals: list[CriticalFormula]
    goal: Formula

    def __post_init__(self):
        if not is_tautology(self.formula()):
            raise NonTautology("criticals do not imply the goal propositionally")

    def formula(self) -> Formula:
        c = conjunction([k.formula for k in self.criticals])
        return self.goal if c is None else Imp(c, self.goal)


@dataclass
class HerbrandDisjunction:
    template: Formula
    vars: tuple[str, ...]
    instances: list[tuple[Term, ...]]
    certified: bool = False
    steps: int = 0

    def instance(self, ts: tuple[Term, ...]) -> Formula:
        return substitute_many(self.template, dict(zip(self.vars, ts)))

    def disjunction(self) -> Formula:
        return disjunction([self.instance(ts) for ts in self.instances])

    def certify(self) -> bool:
        self.certified = bool(self.instances) and is_tautology(self.disjunction())
        return self.certified

    def to_json(self) -> dict:
        return {
            "template": show(self.template),
            "vars": list(self.vars),
            "instances": [[show(t) for t in ts] for ts in self.instances],
            "disjunction": show(self.disjunction()),
            "certified": self.certified,
        }


def _replace_crit(c: CriticalFormula, old: Eps, new: Term) -> CriticalFormula:
    base = replace_term(c.base, old, new)
    return CriticalFormula.of(base, c.var, replace_term(c.witness, old, new))


def _dedupe(items, key):
    out, seen = [], set()
    for it in items:
        k = key(it)
        if k not in seen:
            seen.add(k)
            out.append(it)
    return out


def _crit_key(c: CriticalFormula):
    return alpha_key(c.formula)


def _tuple_key(ts):
    return tuple(alpha_key(t) for t in ts)


def eliminate(problem: EpsilonProblem, template: Formula, vars, max_steps: int = 1000,
              max_instances: int = 10000) -> HerbrandDisjunction:
    """Remove the critical formulas one epsilon term at a time.

    The epsilon term of highest rank (first occurrence breaks ties) is
    replaced in turn by each of its critical witnesses and by the constant
    ``def0``; instance sets of the branches are unioned. The result is
    certified with :func:`is_tautology` and sorted by printed terms.
    """
    vars = tuple(vars)
    start = match(template, problem.goal, vars)
    if start is None:
        raise ValueError("goal is not an instance of the template")
    tuples = [tuple(start.get(v, Var(v)) for v in vars)]
    crits = list(problem.criticals)
    steps = 0
    while crits:
        steps += 1
        if steps > max_steps:
            raise Diverged(f"no fixpoint after {max_steps} eliminations")
        terms = _dedupe([c.epsilon for c in crits], alpha_key)
        e = max(terms, key=epsilon_rank)  # max() keeps the first of equal ranks
        ek = alpha_key(e)
        mine = [c for c in crits if alpha_key(c.epsilon) == ek]
        rest = [c for c in crits if alpha_key(c.epsilon) != ek]
        witnesses = _dedupe([c.witness for c in mine], alpha_key) + [Var(DEFAULT_CONSTANT)]
        new_crits, new_tuples = [], []
        for t in witnesses:
            for c in rest:
                r = _replace_crit(c, e, t)
                if not alpha_eq(r.formula.left, r.formula.right):
                    new_crits.append(r)
            new_tuples.extend(tuple(replace_term(s, e, t) for s in ts) for ts in tuples)
        crits = _dedupe(new_crits, _crit_key)
        tuples = _dedupe(new_tuples, _tuple_key)
        if len(tuples) > max_instances:
            raise Diverged(f"instance budget {max_instances} exceeded")
    tuples.sort(key=lambda ts: [show(t) for t in ts])
    out = HerbrandDisjunction(template, vars, tuples, steps=steps)
    if not out.certify():
        raise NonTautology("elimination produced a non-tautological disjunction")
    return out


def minimize(hd: HerbrandDisjunction) -> HerbrandDisjunction:
    """Greedily drop instances while the disjunction stays a tautology;
    instances mentioning ``def0`` are tried first."""
    def has_default(ts):
        return any(DEFAULT_CONSTANT in free_vars(t) for t in ts)

    order = sorted(range(len(hd.instances)), key=lambda i: (not has_default(hd.instances[i]), -i))
    keep = list(hd.instances)
    for i in order:
        cand = [ts for ts in keep if ts is not hd.instances[i]]
        if cand and is_tautology(disjunction([hd.instance(ts) for ts in cand])):
            keep = cand
    out = HerbrandDisjunction(hd.template, hd.vars, keep, steps=hd.steps)
    out.certify()
    return out


def herbrand_pipeline(p: ProofNode, fo_goal: Formula, reduce: bool = True) -> HerbrandDisjunction:
    """Herbrand disjunction for a weak-quantifier goal from a cut-free Leps
    proof of its epsilon translation."""
    if strong_positions(fo_goal, True):
        raise ValueError("goal contains a strong quantifier")
    c = p.conclusion
    if c.ante or len(c.succ) != 1:
        raise ValueError("expected a proof of a single formula with empty antecedent")
    goal = c.succ[0]
    if not alpha_eq(goal, to_epsilon(fo_goal)):
        raise ValueError("end-sequent is not the epsilon translation of the goal")
    _, crits, _ = to_critical_form(p)
    problem = EpsilonProblem(crits, goal)
    template, vars = matrix_with_vars(fo_goal)
    hd = eliminate(problem, template, vars)
    return minimize(hd) if reduce else hd
