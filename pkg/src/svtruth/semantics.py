"""Partial interpretations, supervaluation structures and evaluation.

Interpretations are strong Kleene style: every predicate carries a
disjoint extension/anti-extension pair, and a sentence can lack a verdict.
A supervaluation structure bundles finitely many such interpretations over
one domain with a reflexive transitive accessibility relation H that
respects the information order.  The conditional quantifies over
H-successors: `phi -> psi` is true at J when every successor that makes
phi true makes psi true, and false at J exactly when phi is true and psi
is false at J itself.

Truth and falsity are bilateral: `eval_formula` reports `false` exactly
when the negation comes out true, and `undefined` when neither side has a
maker.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .syntax import (
    And, Atom, Box, Cond, CondOp, Const, Falsum, Forall, FuncApp, Identity,
    Not, Quote, SentenceEnv, TruthAtom, Var, Formula, instantiate, neg,
    print_formula,
)

TRUTH_PRED = "T"


class EvalError(Exception):
    pass


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"

    def __str__(self):
        return self.value


@dataclass
class Report:
    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, msg):
        self.violations.append(msg)

    def lines(self):
        if self.ok:
            return ["%s: ok" % self.subject]
        return ["%s: %d violation(s)" % (self.subject, len(self.violations))] + \
            ["  - " + v for v in self.violations]


class PartialInterpretation:
    """One point of a supervaluation structure.

    `predicates` maps a predicate name to an (extension, anti_extension)
    pair of tuple sets.  The reserved truth predicate may appear here with
    sentence objects in its tuples; ordinary predicates range over the
    domain.
    """

    def __init__(self, label, constants=None, functions=None, predicates=None):
        self.label = label
        self.constants = dict(constants or {})
        self.functions = {f: dict(m) for f, m in (functions or {}).items()}
        self.predicates = {
            p: (frozenset(ext), frozenset(anti))
            for p, (ext, anti) in (predicates or {}).items()
        }

    def extension(self, pred):
        return self.predicates.get(pred, (frozenset(), frozenset()))[0]

    def anti_extension(self, pred):
        return self.predicates.get(pred, (frozenset(), frozenset()))[1]

    def with_predicate(self, pred, ext, anti):
        preds = dict(self.predicates)
        preds[pred] = (frozenset(ext), frozenset(anti))
        return PartialInterpretation(self.label, self.constants, self.functions, preds)

    def __repr__(self):
        return "PartialInterpretation(%r)" % self.label


def leq(i: PartialInterpretation, j: PartialInterpretation) -> bool:
    """The information order: every verdict of i survives in j."""
    if set(i.predicates) - set(j.predicates):
        missing = sorted(set(i.predicates) - set(j.predicates))
        for p in missing:
            if i.extension(p) or i.anti_extension(p):
                raise EvalError("signature mismatch: %s missing from %s" % (p, j.label))
    for p in i.predicates:
        if not (i.extension(p) <= j.extension(p) and i.anti_extension(p) <= j.anti_extension(p)):
            return False
    return True


class SupervaluationStructure:
    def __init__(self, env: SentenceEnv, domain, interps, h):
        self.env = env
        self.domain = tuple(domain)
        self.interps = list(interps)
        self.h = frozenset(h)
        self._succ = {}
        self._memo = {}

    def successors(self, j):
        if j not in self._succ:
            self._succ[j] = tuple(b for (a, b) in sorted(self.h) if a == j)
        return self._succ[j]

    def label_of(self, j):
        return self.interps[j].label

    def index_of(self, label):
        for k, interp in enumerate(self.interps):
            if interp.label == label:
                return k
        raise EvalError("no interpretation labelled %r" % label)


def denote(structure: SupervaluationStructure, j: int, beta, t):
    """Denotation of a term; quotes denote the named sentence object."""
    interp = structure.interps[j]
    if isinstance(t, Var):
        beta = beta or {}
        if t.name not in beta:
            raise EvalError("unbound variable %s" % t.name)
        return beta[t.name]
    if isinstance(t, Const):
        if t.name not in interp.constants:
            raise EvalError("undeclared constant %s" % t.name)
        return interp.constants[t.name]
    if isinstance(t, FuncApp):
        args = tuple(denote(structure, j, beta, a) for a in t.args)
        table = interp.functions.get(t.func)
        if table is None:
            raise EvalError("undeclared function %s" % t.func)
        if args not in table:
            raise EvalError("function %s undefined on %r" % (t.func, args))
        return table[args]
    if isinstance(t, Quote):
        return structure.env.lookup(t.name)
    raise EvalError("unknown term %r" % (t,))


def _beta_key(beta):
    if not beta:
        return ()
    return tuple(sorted(beta.items()))


def is_true(structure: SupervaluationStructure, j: int, phi: Formula, beta=None) -> bool:
    """The truthmaker side of the bilateral clauses."""
    key = (j, phi, _beta_key(beta))
    memo = structure._memo
    if key in memo:
        return memo[key]
    out = _is_true(structure, j, phi, beta)
    memo[key] = out
    return out


def _is_true(structure, j, phi, beta):
    interp = structure.interps[j]
    if isinstance(phi, Atom):
        args = tuple(denote(structure, j, beta, a) for a in phi.args)
        return args in interp.extension(phi.pred)
    if isinstance(phi, TruthAtom):
        d = denote(structure, j, beta, phi.term)
        return (d,) in interp.extension(TRUTH_PRED)
    if isinstance(phi, Identity):
        return denote(structure, j, beta, phi.left) == denote(structure, j, beta, phi.right)
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, And):
        return is_true(structure, j, phi.left, beta) and is_true(structure, j, phi.right, beta)
    if isinstance(phi, Cond):
        for k in structure.successors(j):
            if is_true(structure, k, phi.ant, beta) and not is_true(structure, k, phi.cons, beta):
                return False
        return True
    if isinstance(phi, Forall):
        for c in structure.env.constants:
            if not is_true(structure, j, instantiate(phi.body, phi.var, Const(c)), beta):
                return False
        return True
    if isinstance(phi, (Box, CondOp)):
        raise EvalError("modal connective outside the modal module: %s" % print_formula(phi))
    if isinstance(phi, Not):
        body = phi.body
        if isinstance(body, Atom):
            args = tuple(denote(structure, j, beta, a) for a in body.args)
            return args in interp.anti_extension(body.pred)
        if isinstance(body, TruthAtom):
            d = denote(structure, j, beta, body.term)
            return (d,) in interp.anti_extension(TRUTH_PRED)
        if isinstance(body, Identity):
            return denote(structure, j, beta, body.left) != denote(structure, j, beta, body.right)
        if isinstance(body, Falsum):
            return True
        if isinstance(body, And):
            return is_true(structure, j, neg(body.left), beta) or \
                is_true(structure, j, neg(body.right), beta)
        if isinstance(body, Cond):
            return is_true(structure, j, body.ant, beta) and \
                is_true(structure, j, neg(body.cons), beta)
        if isinstance(body, Forall):
            for c in structure.env.constants:
                if is_true(structure, j, neg(instantiate(body.body, body.var, Const(c))), beta):
                    return True
            return False
        if isinstance(body, (Box, CondOp)):
            raise EvalError("modal connective outside the modal module: %s" % print_formula(phi))
    raise EvalError("unknown formula kind: %r" % (phi,))


def eval_formula(structure, j, phi, beta=None) -> TruthValue:
    if is_true(structure, j, phi, beta):
        return TruthValue.TRUE
    if is_true(structure, j, neg(phi), beta):
        return TruthValue.FALSE
    return TruthValue.UNDEFINED


def validate_structure(structure: SupervaluationStructure) -> Report:
    """Check every structural invariant; the report lists all violations."""
    rep = Report("structure")
    dom = set(structure.domain)
    if not dom:
        rep.add("domain is empty")
    if not structure.interps:
        rep.add("no interpretations")
    env = structure.env
    base = structure.interps[0] if structure.interps else None
    for k, interp in enumerate(structure.interps):
        name = interp.label
        for c in env.constants:
            if c not in interp.constants:
                rep.add("%s: constant %s has no denotation" % (name, c))
            elif interp.constants[c] not in dom:
                rep.add("%s: constant %s denotes a non-domain element" % (name, c))
        if interp.constants != base.constants:
            rep.add("%s: constants differ from %s" % (name, base.label))
        if interp.functions != base.functions:
            rep.add("%s: functions differ from %s" % (name, base.label))
        for f, arity in env.functions.items():
            table = interp.functions.get(f, {})
            for tup in itertools.product(structure.domain, repeat=arity):
                if tup not in table:
                    rep.add("%s: function %s undefined on %r" % (name, f, tup))
                elif table[tup] not in dom:
                    rep.add("%s: function %s maps %r outside the domain" % (name, f, tup))
        for p, (ext, anti) in interp.predicates.items():
            overlap = ext & anti
            if overlap:
                rep.add("%s: extension and anti-extension of %s overlap on %s"
                        % (name, p, sorted(map(repr, overlap))))
            if p == TRUTH_PRED:
                continue
            arity = env.predicates.get(p)
            for tup in ext | anti:
                if arity is not None and len(tup) != arity:
                    rep.add("%s: %s holds a tuple of wrong arity %r" % (name, p, tup))
                elif not all(e in dom for e in tup):
                    rep.add("%s: %s holds a non-domain tuple %r" % (name, p, tup))
    n = len(structure.interps)
    for (a, b) in structure.h:
        if not (0 <= a < n and 0 <= b < n):
            rep.add("H refers to missing interpretation index (%d, %d)" % (a, b))
    for k in range(n):
        if (k, k) not in structure.h:
            rep.add("H not reflexive: missing (%d, %d)" % (k, k))
    for (a, b) in structure.h:
        for (c, d) in structure.h:
            if b == c and (a, d) not in structure.h:
                rep.add("H not transitive: (%d,%d),(%d,%d) without (%d,%d)" % (a, b, c, d, a, d))
    for (a, b) in sorted(structure.h):
        if a < n and b < n and not leq(structure.interps[a], structure.interps[b]):
            rep.add("H exceeds information order on (%d, %d)" % (a, b))
    return rep


def persistence_check(structure: SupervaluationStructure, universe) -> Report:
    """Truth at J survives along H; counterexamples mean a bug."""
    rep = Report("persistence")
    for (a, b) in sorted(structure.h):
        if a == b:
            continue
        for phi in universe:
            if is_true(structure, a, phi) and not is_true(structure, b, phi):
                rep.add("%s true at %s but not at %s"
                        % (print_formula(phi), structure.label_of(a), structure.label_of(b)))
    return rep
