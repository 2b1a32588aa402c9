"""Sequent calculi, backward proof search, proof checking and saturation.

Four calculi are supported: k3 (negation, conjunction, quantifiers), n3
(k3 plus the conditional rules), k3t (k3 plus the truth rules) and n3t
(everything).  Identity rules can be switched on for any of them.

Sequents are pairs of finite formula sets, so exchange and contraction
are structural no-ops, and weakening is absorbed into axiom matching.
Search is backward with loop detection on the current branch.  Cut is
analytic: the only admissible cut formulas are members of the declared
universe.  A connective that has no rules in the active calculus is an
unanalysed unit and counts as a literal for axiom purposes; this is what
lets the truth rules talk about sentences whose conditional the calculus
cannot decompose.

A failed search that never hit the budget and never pruned a branch by
loop detection is a definitive refutation of provability within the
calculus; everything else is reported as not proved within budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    And, Atom, Box, Cond, CondOp, Const, Falsum, Forall, FuncApp, Identity,
    Not, Quote, SentenceEnv, TruthAtom, Var, Formula, free_vars, instantiate,
    is_atomic, neg, print_formula,
)

CALCULI = ("k3", "n3", "k3t", "n3t")


class ProofError(Exception):
    pass


class IndeterminateError(ProofError):
    """Budget ran out before the search space was exhausted."""


@dataclass(frozen=True)
class Sequent:
    left: frozenset
    right: frozenset

    def __str__(self):
        l = ", ".join(sorted(print_formula(f) for f in self.left))
        r = ", ".join(sorted(print_formula(f) for f in self.right))
        return "%s => %s" % (l, r)


def sequent(left, right) -> Sequent:
    return Sequent(frozenset(left), frozenset(right))


@dataclass(frozen=True)
class ProofTree:
    root: Sequent
    rule: str
    premises: tuple = ()

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()

    def render(self, indent=0) -> str:
        lines = ["%s%-10s %s" % ("  " * indent, self.rule, self.root)]
        for p in self.premises:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)

    def to_record(self):
        return {
            "rule": self.rule,
            "left": sorted(print_formula(f) for f in self.root.left),
            "right": sorted(print_formula(f) for f in self.root.right),
            "premises": [p.to_record() for p in self.premises],
        }


@dataclass
class ProveResult:
    status: str  # proved | unprovable | not-proved-within-budget
    tree: object = None
    nodes: int = 0

    @property
    def proved(self):
        return self.status == "proved"


def has_conditional_rules(calculus):
    return calculus in ("n3", "n3t")


def has_truth_rules(calculus):
    return calculus in ("k3t", "n3t")


def is_unit(phi: Formula, calculus: str) -> bool:
    """Atomic, or a connective the calculus has no rules for."""
    if is_atomic(phi):
        return True
    if isinstance(phi, Cond) and not has_conditional_rules(calculus):
        return True
    if isinstance(phi, (Box, CondOp)):
        return True
    return False


def is_literal(phi: Formula, calculus: str) -> bool:
    if isinstance(phi, Not):
        return is_unit(phi.body, calculus)
    return is_unit(phi, calculus)


def _subterms(t, acc):
    acc.add(t)
    if isinstance(t, FuncApp):
        for a in t.args:
            _subterms(a, acc)


def _formula_terms(phi, acc):
    if isinstance(phi, Atom):
        for a in phi.args:
            _subterms(a, acc)
    elif isinstance(phi, TruthAtom):
        _subterms(phi.term, acc)
    elif isinstance(phi, Identity):
        _subterms(phi.left, acc)
        _subterms(phi.right, acc)
    elif isinstance(phi, Not):
        _formula_terms(phi.body, acc)
    elif isinstance(phi, And):
        _formula_terms(phi.left, acc)
        _formula_terms(phi.right, acc)
    elif isinstance(phi, (Cond, CondOp)):
        _formula_terms(phi.ant, acc)
        _formula_terms(phi.cons, acc)
    elif isinstance(phi, (Forall, Box)):
        _formula_terms(phi.body, acc)


def term_pool(seq: Sequent, env: SentenceEnv):
    """Candidate instantiation terms: constants, plus terms in the sequent."""
    acc = set()
    for phi in seq.left | seq.right:
        _formula_terms(phi, acc)
    pool = set(acc)
    for c in env.constants:
        pool.add(Const(c))
    # drop terms that still contain a quantified variable occurrence from
    # inside a binder; free variables of the sequent itself stay usable
    fv = set()
    for phi in seq.left | seq.right:
        fv |= free_vars(phi)
    out = []
    for t in pool:
        bad = set()
        _subterms(t, bad)
        vars_in = {u.name for u in bad if isinstance(u, Var)}
        if vars_in <= fv:
            out.append(t)
    return sorted(out, key=str)


def _rewrite_term(t, src, dst):
    if t == src:
        return dst
    if isinstance(t, FuncApp):
        return FuncApp(t.func, tuple(_rewrite_term(a, src, dst) for a in t.args))
    return t


def rewrite_formula(phi, src, dst):
    """Replace every occurrence of the term src by dst."""
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(_rewrite_term(a, src, dst) for a in phi.args))
    if isinstance(phi, TruthAtom):
        return TruthAtom(_rewrite_term(phi.term, src, dst))
    if isinstance(phi, Identity):
        return Identity(_rewrite_term(phi.left, src, dst), _rewrite_term(phi.right, src, dst))
    if isinstance(phi, Falsum):
        return phi
    if isinstance(phi, Not):
        return neg(rewrite_formula(phi.body, src, dst))
    if isinstance(phi, And):
        return And(rewrite_formula(phi.left, src, dst), rewrite_formula(phi.right, src, dst))
    if isinstance(phi, Cond):
        return Cond(rewrite_formula(phi.ant, src, dst), rewrite_formula(phi.cons, src, dst))
    if isinstance(phi, Forall):
        return Forall(phi.var, rewrite_formula(phi.body, src, dst))
    if isinstance(phi, Box):
        return Box(rewrite_formula(phi.body, src, dst))
    if isinstance(phi, CondOp):
        return CondOp(rewrite_formula(phi.ant, src, dst), rewrite_formula(phi.cons, src, dst))
    raise ProofError("unknown formula kind: %r" % (phi,))


def match_instance(pattern: Formula, var: str, target: Formula):
    """The term t with pattern[var := t] == target, or None.

    Used by the proof checker to recover quantifier instantiations.
    """
    binding = []

    def terms(p, t):
        if isinstance(p, Var) and p.name == var:
            if binding and binding[0] != t:
                return False
            if not binding:
                binding.append(t)
            return True
        if type(p) is not type(t):
            return False
        if isinstance(p, FuncApp):
            return p.func == t.func and len(p.args) == len(t.args) and \
                all(terms(a, b) for a, b in zip(p.args, t.args))
        return p == t

    def go(p, t):
        if isinstance(p, Forall) and p.var == var:
            return p == t
        if type(p) is not type(t):
            return False
        if isinstance(p, Atom):
            return p.pred == t.pred and len(p.args) == len(t.args) and \
                all(terms(a, b) for a, b in zip(p.args, t.args))
        if isinstance(p, TruthAtom):
            return terms(p.term, t.term)
        if isinstance(p, Identity):
            return terms(p.left, t.left) and terms(p.right, t.right)
        if isinstance(p, Falsum):
            return True
        if isinstance(p, Not):
            return go(p.body, t.body)
        if isinstance(p, And):
            return go(p.left, t.left) and go(p.right, t.right)
        if isinstance(p, (Cond, CondOp)):
            return go(p.ant, t.ant) and go(p.cons, t.cons)
        if isinstance(p, Forall):
            return p.var == t.var and go(p.body, t.body)
        if isinstance(p, Box):
            return go(p.body, t.body)
        return False

    if not go(pattern, target):
        return None
    if binding:
        return binding[0]
    # the variable does not occur; any term works, signal with a fresh constant
    return Var(var)


class Prover:
    """Backward search for one calculus over one universe."""

    def __init__(self, calculus: str, env: SentenceEnv, universe=(),
                 identity=False, budget=200000, use_cut=True):
        if calculus not in CALCULI:
            raise ProofError("unknown calculus %r" % calculus)
        self.calculus = calculus
        self.env = env
        self.universe = tuple(universe)
        self.identity = identity
        self.budget = budget
        self.use_cut = use_cut
        self._cut_order = sorted(self.universe,
                                 key=lambda f: (len(print_formula(f)),
                                                print_formula(f)))
        self._proved = {}
        self._failed = {}
        self._nodes = 0
        self._eigen = 0
        self._cut_skipped = False

    # -- rule application enumeration ------------------------------------

    def _fresh_var(self, seq: Sequent):
        used = set()
        for phi in seq.left | seq.right:
            used |= free_vars(phi)
        while True:
            self._eigen += 1
            name = "_e%d" % self._eigen
            if name not in used:
                return name

    def _axiom(self, seq: Sequent):
        for phi in sorted(seq.left & seq.right, key=print_formula):
            if is_literal(phi, self.calculus):
                return True
        return False

    def applications(self, seq: Sequent):
        """Yield (rule, [premise sequents]) backward applications."""
        L, R = seq.left, seq.right
        calc = self.calculus

        def variants(rule, consumed, kept):
            seen = []
            for prem_list in (consumed, kept):
                if prem_list is None or prem_list in seen:
                    continue
                if all(p != seq for p in prem_list):
                    seen.append(prem_list)
                    yield (rule, prem_list)

        lefts = sorted(L, key=print_formula)
        rights = sorted(R, key=print_formula)

        for phi in lefts:
            if isinstance(phi, Not) and is_unit(phi.body, calc):
                chi = phi.body
                yield from variants(
                    "neg-l",
                    [sequent(L - {phi}, R | {chi})],
                    [sequent(L, R | {chi})])
            if isinstance(phi, And):
                for part in (phi.left, phi.right):
                    yield from variants(
                        "and-l",
                        [sequent((L - {phi}) | {part}, R)],
                        [sequent(L | {part}, R)])
            if isinstance(phi, Not) and isinstance(phi.body, And):
                a, b = phi.body.left, phi.body.right
                yield from variants(
                    "neg-and-l",
                    [sequent((L - {phi}) | {neg(a)}, R), sequent((L - {phi}) | {neg(b)}, R)],
                    [sequent(L | {neg(a)}, R), sequent(L | {neg(b)}, R)])
            if isinstance(phi, Forall):
                for t in term_pool(seq, self.env):
                    inst = instantiate(phi.body, phi.var, t)
                    if inst not in L:
                        yield ("all-l", [sequent(L | {inst}, R)])
            if isinstance(phi, Not) and isinstance(phi.body, Forall):
                y = self._fresh_var(seq)
                inst = neg(instantiate(phi.body.body, phi.body.var, Var(y)))
                yield ("neg-all-l", [sequent((L - {phi}) | {inst}, R)])
            if has_conditional_rules(calc) and isinstance(phi, Cond):
                a, b = phi.ant, phi.cons
                yield from variants(
                    "cond-l",
                    [sequent(L - {phi}, R | {a}), sequent((L - {phi}) | {b}, R)],
                    [sequent(L, R | {a}), sequent(L | {b}, R)])
            if has_conditional_rules(calc) and isinstance(phi, Not) and isinstance(phi.body, Cond):
                a, b = phi.body.ant, phi.body.cons
                for chi in (a, neg(b)):
                    yield from variants(
                        "neg-cond-l",
                        [sequent((L - {phi}) | {chi}, R)],
                        [sequent(L | {chi}, R)])
            if has_truth_rules(calc) and isinstance(phi, TruthAtom) and isinstance(phi.term, Quote):
                body = self.env.lookup(phi.term.name)
                yield from variants(
                    "T-l",
                    [sequent((L - {phi}) | {body}, R)],
                    [sequent(L | {body}, R)])
            if has_truth_rules(calc) and isinstance(phi, Not) and \
                    isinstance(phi.body, TruthAtom) and isinstance(phi.body.term, Quote):
                body = neg(self.env.lookup(phi.body.term.name))
                yield from variants(
                    "neg-T-l",
                    [sequent((L - {phi}) | {body}, R)],
                    [sequent(L | {body}, R)])

        for phi in rights:
            if isinstance(phi, And):
                a, b = phi.left, phi.right
                yield from variants(
                    "and-r",
                    [sequent(L, (R - {phi}) | {a}), sequent(L, (R - {phi}) | {b})],
                    [sequent(L, R | {a}), sequent(L, R | {b})])
            if isinstance(phi, Not) and isinstance(phi.body, And):
                for part in (phi.body.left, phi.body.right):
                    yield from variants(
                        "neg-and-r",
                        [sequent(L, (R - {phi}) | {neg(part)})],
                        [sequent(L, R | {neg(part)})])
            if isinstance(phi, Forall):
                y = self._fresh_var(seq)
                inst = instantiate(phi.body, phi.var, Var(y))
                yield ("all-r", [sequent(L, (R - {phi}) | {inst})])
            if isinstance(phi, Not) and isinstance(phi.body, Forall):
                for t in term_pool(seq, self.env):
                    inst = neg(instantiate(phi.body.body, phi.body.var, t))
                    if inst not in R:
                        yield ("neg-all-r", [sequent(L, R | {inst})])
            if has_conditional_rules(calc) and isinstance(phi, Cond):
                yield ("cond-r", [sequent(L | {phi.ant}, {phi.cons})])
            if has_conditional_rules(calc) and isinstance(phi, Not) and isinstance(phi.body, Cond):
                a, b = phi.body.ant, phi.body.cons
                yield from variants(
                    "neg-cond-r",
                    [sequent(L, (R - {phi}) | {a}), sequent(L, (R - {phi}) | {neg(b)})],
                    [sequent(L, R | {a}), sequent(L, R | {neg(b)})])
            if has_truth_rules(calc) and isinstance(phi, TruthAtom) and isinstance(phi.term, Quote):
                body = self.env.lookup(phi.term.name)
                yield from variants(
                    "T-r",
                    [sequent(L, (R - {phi}) | {body})],
                    [sequent(L, R | {body})])
            if has_truth_rules(calc) and isinstance(phi, Not) and \
                    isinstance(phi.body, TruthAtom) and isinstance(phi.body.term, Quote):
                body = neg(self.env.lookup(phi.body.term.name))
                yield from variants(
                    "neg-T-r",
                    [sequent(L, (R - {phi}) | {body})],
                    [sequent(L, R | {body})])

        if self.identity:
            for phi in rights:
                if isinstance(phi, Not) and isinstance(phi.body, Identity):
                    idn = phi.body
                    yield from variants(
                        "id-neg-r",
                        [sequent(L | {idn}, R - {phi})],
                        [sequent(L | {idn}, R)])
            for idn in lefts:
                if isinstance(idn, Identity) and idn.left != idn.right:
                    for psi in lefts:
                        if psi == idn:
                            continue
                        rewritten = rewrite_formula(psi, idn.left, idn.right)
                        if rewritten != psi:
                            yield from variants(
                                "rep",
                                [sequent((L - {psi}) | {rewritten}, R)],
                                [sequent(L | {rewritten}, R)])
            for t in term_pool(seq, self.env):
                refl = Identity(t, t)
                if refl not in L:
                    yield ("ref", [sequent(L | {refl}, R)])

    # -- search -----------------------------------------------------------

    def prove(self, seq: Sequent) -> ProveResult:
        """Search with iterative deepening on the number of cuts per branch.

        Each deepening level reruns the search until the set of proved
        sequents stops growing.  Within a run, a sequent that exhausts its
        rule applications is cached as failed; a repeat on the current
        branch is pruned without caching, since that failure is relative
        to the branch.  Failure caches are discarded between runs, so at a
        stable run every cached failure was computed against the complete
        set of proofs, which makes it a genuine refutation.

        Verdicts: "proved" is backed by a tree.  "unprovable" is claimed
        only when a stable run never truncated a cut, so deeper levels
        could not differ.  Anything else is "not-proved-within-budget".
        """
        self._nodes = 0
        allowance = 0
        max_allowance = len(self._cut_order) if self.use_cut else 0
        try:
            while True:
                self._cut_skipped = False
                known = len(self._proved)
                tree = self._search(seq, allowance)
                if tree is not None:
                    return ProveResult("proved", tree, self._nodes)
                if len(self._proved) > known:
                    continue
                if not self._cut_skipped:
                    return ProveResult("unprovable", None, self._nodes)
                if allowance >= max_allowance:
                    return ProveResult("not-proved-within-budget", None,
                                       self._nodes)
                allowance += 1
        except IndeterminateError:
            return ProveResult("not-proved-within-budget", None, self._nodes)

    def _expand(self, seq, path):
        """Resolve a sequent without applying rules: "proved", "failed",
        "blocked" (on the current branch), or None to recurse."""
        tree = self._proved.get(seq)
        if tree is not None:
            return tree
        if seq in self._failed or seq in path:
            return "failed"
        self._nodes += 1
        if self._nodes > self.budget:
            raise IndeterminateError("budget of %d nodes exhausted" % self.budget)
        if self._axiom(seq):
            tree = ProofTree(seq, "ax")
            self._proved[seq] = tree
            return tree
        return None

    def _search(self, root, allowance):
        self._failed = set()
        path = set()
        quick = self._expand(root, path)
        if quick == "failed":
            return None
        if quick is not None:
            return quick

        def frame(seq, allow):
            return {"seq": seq, "allow": allow, "apps": self.applications(seq),
                    "cuts": None, "rule": None, "premises": None, "pallow": 0,
                    "idx": 0, "trees": [], "cache": True}

        def fail(fr):
            if fr["cache"]:
                self._failed.add(fr["seq"])
            path.discard(fr["seq"])
            stack.pop()
            return "failed"

        stack = [frame(root, allowance)]
        path.add(root)
        ret = None
        while stack:
            fr = stack[-1]
            if ret is not None:
                if ret == "failed":
                    fr["premises"] = None
                else:
                    fr["trees"].append(ret)
                    fr["idx"] += 1
                ret = None
            if fr["premises"] is not None:
                if fr["idx"] < len(fr["premises"]):
                    nxt = fr["premises"][fr["idx"]]
                    quick = self._expand(nxt, path)
                    if quick is not None:
                        ret = quick
                        continue
                    stack.append(frame(nxt, fr["pallow"]))
                    path.add(nxt)
                    continue
                tree = ProofTree(fr["seq"], fr["rule"], tuple(fr["trees"]))
                self._proved[fr["seq"]] = tree
                path.discard(fr["seq"])
                stack.pop()
                ret = tree
                continue
            nxt_app = next(fr["apps"], None)
            if nxt_app is not None:
                fr["rule"], fr["premises"] = nxt_app
                fr["pallow"] = fr["allow"]
                fr["idx"] = 0
                fr["trees"] = []
                continue
            if fr["cuts"] is None:
                if not self.use_cut:
                    ret = fail(fr)
                    continue
                seq = fr["seq"]
                pool = [phi for phi in self._cut_order
                        if phi not in seq.left and phi not in seq.right]
                if not pool:
                    ret = fail(fr)
                    continue
                if fr["allow"] <= 0:
                    self._cut_skipped = True
                    fr["cache"] = False
                    ret = fail(fr)
                    continue
                fr["cuts"] = iter(pool)
            phi = next(fr["cuts"], None)
            if phi is None:
                ret = fail(fr)
                continue
            seq = fr["seq"]
            fr["rule"] = "cut"
            fr["premises"] = [sequent(seq.left, seq.right | {phi}),
                              sequent(seq.left | {phi}, seq.right)]
            fr["pallow"] = fr["allow"] - 1
            fr["idx"] = 0
            fr["trees"] = []
        return ret if ret != "failed" else None


def prove(calculus, seq: Sequent, env=None, universe=(), identity=False,
          budget=200000, use_cut=True) -> ProveResult:
    env = env if env is not None else SentenceEnv()
    return Prover(calculus, env, universe, identity, budget, use_cut).prove(seq)


# ---------------------------------------------------------------------------
# proof checking


def check_proof(calculus, tree: ProofTree, env=None, identity=None) -> bool:
    ok, _ = check_proof_detail(calculus, tree, env, identity)
    return ok


def check_proof_detail(calculus, tree: ProofTree, env=None, identity=None):
    """Verify every node instantiates a rule of the calculus.

    Identity rules are accepted when `identity` is true, or by default
    whenever the tree uses them (pass identity=False to forbid).
    """
    env = env if env is not None else SentenceEnv()
    if identity is None:
        identity = True
    checker = Prover(calculus, env, universe=(), identity=identity, use_cut=True)
    for node in tree.nodes():
        ok, why = _check_node(checker, node)
        if not ok:
            return False, "%s at [%s]" % (why, node.root)
    return True, "ok"


def _check_node(checker: Prover, node: ProofTree):
    seq = node.root
    prems = tuple(p.root for p in node.premises)
    rule = node.rule
    if rule == "ax":
        if prems:
            return False, "axiom with premises"
        if not checker._axiom(seq):
            return False, "no shared literal for (ax)"
        return True, "ok"
    if rule == "cut":
        if len(prems) != 2:
            return False, "cut needs two premises"
        p1, p2 = prems
        extra_r = p1.right - seq.right
        extra_l = p2.left - seq.left
        if len(extra_r) != 1 or extra_r != extra_l:
            return False, "cut formula mismatch"
        if p1.left != seq.left or p2.right != seq.right:
            return False, "cut context mismatch"
        return True, "ok"
    if rule == "all-r":
        return _check_eigen(checker, seq, prems, positive=True)
    if rule == "neg-all-l":
        return _check_eigen(checker, seq, prems, positive=False)
    for r, candidate in checker.applications(seq):
        if r == rule and frozenset(candidate) == frozenset(prems) and \
                len(candidate) == len(prems):
            return True, "ok"
    return False, "no %s instance matches premises" % rule


def _check_eigen(checker, seq, prems, positive):
    if len(prems) != 1:
        return False, "eigenvariable rule needs one premise"
    p = prems[0]
    if positive:
        if p.left != seq.left:
            return False, "all-r must not touch the antecedent"
        candidates = [phi for phi in seq.right if isinstance(phi, Forall)]
        for principal in candidates:
            for delta in (seq.right - {principal}, seq.right):
                extra = p.right - delta
                if len(extra) != 1:
                    continue
                added = next(iter(extra))
                if p.right != delta | {added}:
                    continue
                t = match_instance(principal.body, principal.var, added)
                if t is None or not isinstance(t, Var):
                    continue
                conc_vars = set()
                for phi in seq.left | seq.right:
                    conc_vars |= free_vars(phi)
                if t.name in conc_vars:
                    return False, "eigenvariable %s occurs in the conclusion" % t.name
                return True, "ok"
        return False, "no all-r instance matches"
    else:
        if p.right != seq.right:
            return False, "neg-all-l must not touch the succedent"
        candidates = [phi for phi in seq.left
                      if isinstance(phi, Not) and isinstance(phi.body, Forall)]
        for principal in candidates:
            fa = principal.body
            for gamma in (seq.left - {principal}, seq.left):
                extra = p.left - gamma
                if len(extra) != 1:
                    continue
                added = next(iter(extra))
                if p.left != gamma | {added}:
                    continue
                t = match_instance(neg(fa.body), fa.var, added)
                if t is None or not isinstance(t, Var):
                    continue
                conc_vars = set()
                for phi in seq.left | seq.right:
                    conc_vars |= free_vars(phi)
                if t.name in conc_vars:
                    return False, "eigenvariable %s occurs in the conclusion" % t.name
                return True, "ok"
        return False, "no neg-all-l instance matches"


# ---------------------------------------------------------------------------
# saturation


def saturated(calculus, s, universe, env, identity=False, budget=200000,
              prover=None) -> bool:
    """No provable sequent leads from S into the rest of the universe.

    Raises IndeterminateError when the budget runs out, which callers must
    treat as not-saturated-verified.
    """
    s = frozenset(s)
    uni = frozenset(universe)
    if not s <= uni:
        raise ProofError("S must be a subset of the universe")
    if prover is None:
        prover = Prover(calculus, env, tuple(universe), identity, budget)
    res = prover.prove(Sequent(s, uni - s))
    if res.status == "proved":
        return False
    if res.status == "unprovable":
        return True
    raise IndeterminateError("saturation check ran out of budget")


def saturate(calculus, s, universe, env, identity=False, budget=200000):
    """Lindenbaum sweep: a saturated superset of S, or None on failure.

    The sweep keeps the invariant that S extended by the accepted members
    never proves a sequent into the rejected ones; with analytic cut
    available that invariant makes the final set saturated.  The verdict
    is re-checked at the end, so a sweep that went wrong returns None
    rather than an unsaturated set.
    """
    s = frozenset(s)
    uni = tuple(universe)
    if not s <= set(uni):
        raise ProofError("S must be a subset of the universe")
    prover = Prover(calculus, env, uni, identity, budget)
    if prover.prove(Sequent(s, frozenset())).proved:
        return None
    current = set(s)
    out = set()
    for phi in uni:
        if phi in current:
            continue
        res = prover.prove(Sequent(frozenset(current | {phi}), frozenset(out)))
        if res.status == "unprovable":
            current.add(phi)
        elif res.status == "proved":
            out.add(phi)
        else:
            raise IndeterminateError("saturate ran out of budget at %s" % print_formula(phi))
    if not saturated(calculus, current, uni, env, identity, budget, prover=prover):
        return None
    ordered = tuple(phi for phi in uni if phi in current)
    return ordered


# ---------------------------------------------------------------------------
# the Curry argument


def curry_environment():
    """An environment with kappa := T('kappa') -> false, plus its universe."""
    from .syntax import build_universe, parse_formula
    env = SentenceEnv()
    kappa = parse_formula("T('kappa') -> false", env)
    env.declare_sentence("kappa", kappa)
    universe = build_universe(env, [], depth=1)
    return env, universe


def curry_derivation(env=None) -> ProofTree:
    """The empty-succedent-style derivation of falsum from naive truth.

    The tree is a proof of => false in n3t; it needs both the conditional
    rules and the truth rules, plus one analytic cut on T('kappa').
    """
    if env is None:
        env, _ = curry_environment()
    kappa = env.lookup("kappa")
    tk = TruthAtom(Quote("kappa"))
    bot = Falsum()

    ax1 = ProofTree(sequent({tk}, {tk, bot}), "ax")
    ax2 = ProofTree(sequent({tk, bot}, {bot}), "ax")
    condl = ProofTree(sequent({tk, kappa}, {bot}), "cond-l", (ax1, ax2))
    tl = ProofTree(sequent({tk}, {bot}), "T-l", (condl,))
    condr = ProofTree(sequent(set(), {kappa, bot}), "cond-r", (tl,))
    tr = ProofTree(sequent(set(), {tk, bot}), "T-r", (condr,))
    root = ProofTree(sequent(set(), {bot}), "cut", (tr, tl))
    return root
