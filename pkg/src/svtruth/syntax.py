"""Object language: terms, formulas, sentence environments and universes.

The language has predicates over a finite domain, identity, a unary truth
predicate T applied to quotation terms, a primitive conditional ->, the
modal operators [] and ~>, and quantifiers that are read substitutionally
over the declared constants.  Disjunction, the existential quantifier, the
biconditional <-> and strict implication *> are derived forms expanded at
parse time.

Double negation is normalized away at construction: building the negation
of a formula that is already a negation returns its body.  Negation is
therefore involutive on formula objects, which keeps negation-closed
sentence universes finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union


class SyntaxError_(Exception):
    """Raised for malformed formulas, bad declarations or cap overflows."""


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FuncApp:
    func: str
    args: tuple

    def __str__(self):
        return "%s(%s)" % (self.func, ", ".join(str(a) for a in self.args))


@dataclass(frozen=True)
class Quote:
    """A quotation term naming a declared or generated sentence."""

    name: str

    def __str__(self):
        return "'%s'" % self.name.replace("\\", "\\\\").replace("'", "\\'")


Term = Union[Var, Const, FuncApp, Quote]


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple


@dataclass(frozen=True)
class TruthAtom:
    term: Term


@dataclass(frozen=True)
class Identity:
    left: Term
    right: Term


@dataclass(frozen=True)
class Falsum:
    """The reserved always-false sentence, written `false`."""


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __post_init__(self):
        if isinstance(self.body, Not):
            raise SyntaxError_("direct double negation; use neg()")


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Cond:
    ant: "Formula"
    cons: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class CondOp:
    """The modal conditional ~> over ordering frames."""

    ant: "Formula"
    cons: "Formula"


Formula = Union[Atom, TruthAtom, Identity, Falsum, Not, And, Cond, Forall, Box, CondOp]

FALSUM = Falsum()


def neg(phi: Formula) -> Formula:
    """Negation with double negation stripped."""
    if isinstance(phi, Not):
        return phi.body
    return Not(phi)


def conj(parts) -> Formula:
    """Fold a nonempty list into a right-nested conjunction."""
    parts = list(parts)
    if not parts:
        raise SyntaxError_("empty conjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        raise SyntaxError_("empty disjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = neg(And(neg(p), neg(out)))
    return out


def is_atomic(phi: Formula) -> bool:
    return isinstance(phi, (Atom, TruthAtom, Identity, Falsum))


def main_connective(phi: Formula) -> str:
    if isinstance(phi, Not):
        return "not"
    if isinstance(phi, And):
        return "and"
    if isinstance(phi, Cond):
        return "cond"
    if isinstance(phi, Forall):
        return "forall"
    if isinstance(phi, Box):
        return "box"
    if isinstance(phi, CondOp):
        return "condop"
    return "atom"


# ---------------------------------------------------------------------------
# traversals


def terms_of(phi: Formula):
    if isinstance(phi, Atom):
        return list(phi.args)
    if isinstance(phi, TruthAtom):
        return [phi.term]
    if isinstance(phi, Identity):
        return [phi.left, phi.right]
    return []


def children_of(phi: Formula):
    if isinstance(phi, Not):
        return [phi.body]
    if isinstance(phi, (And,)):
        return [phi.left, phi.right]
    if isinstance(phi, (Cond, CondOp)):
        return [phi.ant, phi.cons]
    if isinstance(phi, (Forall, Box)):
        return [phi.body]
    return []


def _term_vars(t, acc):
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, FuncApp):
        for a in t.args:
            _term_vars(a, acc)


def free_vars(phi: Formula, bound=frozenset()) -> set:
    acc = set()
    if is_atomic(phi):
        for t in terms_of(phi):
            _term_vars(t, acc)
        return acc - set(bound)
    if isinstance(phi, Forall):
        return free_vars(phi.body, bound | {phi.var})
    for c in children_of(phi):
        acc |= free_vars(c, bound)
    return acc


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def _subst_term(t, var, term):
    if isinstance(t, Var) and t.name == var:
        return term
    if isinstance(t, FuncApp):
        return FuncApp(t.func, tuple(_subst_term(a, var, term) for a in t.args))
    return t


def instantiate(phi: Formula, var: str, term: Term) -> Formula:
    """Substitute a ground term for a free variable."""
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(_subst_term(a, var, term) for a in phi.args))
    if isinstance(phi, TruthAtom):
        return TruthAtom(_subst_term(phi.term, var, term))
    if isinstance(phi, Identity):
        return Identity(_subst_term(phi.left, var, term), _subst_term(phi.right, var, term))
    if isinstance(phi, Falsum):
        return phi
    if isinstance(phi, Not):
        return neg(instantiate(phi.body, var, term))
    if isinstance(phi, And):
        return And(instantiate(phi.left, var, term), instantiate(phi.right, var, term))
    if isinstance(phi, Cond):
        return Cond(instantiate(phi.ant, var, term), instantiate(phi.cons, var, term))
    if isinstance(phi, Forall):
        if phi.var == var:
            return phi
        return Forall(phi.var, instantiate(phi.body, var, term))
    if isinstance(phi, Box):
        return Box(instantiate(phi.body, var, term))
    if isinstance(phi, CondOp):
        return CondOp(instantiate(phi.ant, var, term), instantiate(phi.cons, var, term))
    raise SyntaxError_("unknown formula kind: %r" % (phi,))


def is_t_free(phi: Formula) -> bool:
    """Whether the formula belongs to the T-free fragment.

    Quotation terms do not count against T-freeness; only occurrences of
    the truth predicate itself do.
    """
    if isinstance(phi, TruthAtom):
        return False
    return all(is_t_free(c) for c in children_of(phi))


def is_modal_free(phi: Formula) -> bool:
    if isinstance(phi, (Box, CondOp)):
        return False
    return all(is_modal_free(c) for c in children_of(phi))


def has_conditional(phi: Formula) -> bool:
    if isinstance(phi, Cond):
        return True
    return any(has_conditional(c) for c in children_of(phi))


def conditional_depth(phi: Formula) -> int:
    """Nesting depth of -> and ~> (used to bound recursive search)."""
    kids = children_of(phi)
    inner = max((conditional_depth(c) for c in kids), default=0)
    if isinstance(phi, (Cond, CondOp)):
        return 1 + inner
    return inner


# ---------------------------------------------------------------------------
# printing

_QUANT_BODY = (Forall,)


def _print_term(t) -> str:
    return str(t)


def print_formula(phi: Formula) -> str:
    """Canonical rendering; parse(print_formula(phi)) == phi."""
    if isinstance(phi, Atom):
        if not phi.args:
            return phi.pred
        return "%s(%s)" % (phi.pred, ", ".join(_print_term(a) for a in phi.args))
    if isinstance(phi, TruthAtom):
        return "T(%s)" % _print_term(phi.term)
    if isinstance(phi, Identity):
        return "%s = %s" % (_print_term(phi.left), _print_term(phi.right))
    if isinstance(phi, Falsum):
        return "false"
    if isinstance(phi, Not):
        body = phi.body
        if is_atomic(body) and not isinstance(body, Identity):
            return "~%s" % print_formula(body)
        return "~(%s)" % print_formula(body)
    if isinstance(phi, And):
        return "(%s & %s)" % (print_formula(phi.left), print_formula(phi.right))
    if isinstance(phi, Cond):
        return "(%s -> %s)" % (print_formula(phi.ant), print_formula(phi.cons))
    if isinstance(phi, Forall):
        return "A %s (%s)" % (phi.var, print_formula(phi.body))
    if isinstance(phi, Box):
        body = phi.body
        if is_atomic(body) and not isinstance(body, Identity):
            return "[]%s" % print_formula(body)
        return "[](%s)" % print_formula(body)
    if isinstance(phi, CondOp):
        return "(%s ~> %s)" % (print_formula(phi.ant), print_formula(phi.cons))
    raise SyntaxError_("unknown formula kind: %r" % (phi,))


# ---------------------------------------------------------------------------
# environments


class SentenceEnv:
    """Declared vocabulary plus the name-to-sentence map.

    Names minted by the universe builder are tracked separately from
    user-declared ones because the T-wrapping depth measure treats them
    differently: a quote of a declared name is depth-free, a quote of a
    generated name sits one level above the sentence it names.
    """

    def __init__(self):
        self.predicates = {}
        self.constants = []
        self.functions = {}
        self.sentences = {}
        self.auto_names = set()
        self._qlevel_cache = {}

    def copy(self):
        out = SentenceEnv()
        out.predicates = dict(self.predicates)
        out.constants = list(self.constants)
        out.functions = dict(self.functions)
        out.sentences = dict(self.sentences)
        out.auto_names = set(self.auto_names)
        return out

    def declare_predicate(self, name, arity):
        if name in ("T",):
            raise SyntaxError_("T is reserved for the truth predicate")
        old = self.predicates.get(name)
        if old is not None and old != arity:
            raise SyntaxError_("predicate %s redeclared with arity %d (was %d)" % (name, arity, old))
        self.predicates[name] = arity

    def declare_constant(self, name):
        if name not in self.constants:
            self.constants.append(name)

    def declare_function(self, name, arity):
        self.functions[name] = arity

    def declare_sentence(self, name, phi):
        if name in self.sentences and self.sentences[name] != phi:
            raise SyntaxError_("sentence name %s already bound" % name)
        if not is_sentence(phi):
            raise SyntaxError_("declared sentence %s has free variables" % name)
        self.sentences[name] = phi

    def lookup(self, name) -> Formula:
        try:
            return self.sentences[name]
        except KeyError:
            raise SyntaxError_("undeclared sentence name %r" % name)

    def name_for(self, phi: Formula) -> str:
        """A name denoting phi, minting a canonical one when needed."""
        for name, psi in self.sentences.items():
            if psi == phi:
                return name
        name = print_formula(phi)
        self.sentences[name] = phi
        self.auto_names.add(name)
        return name

    def qlevel(self, phi: Formula) -> int:
        """How many builder-minted quotation layers the formula sits on."""
        if is_atomic(phi):
            level = 0
            for t in terms_of(phi):
                level = max(level, self._term_qlevel(t))
            return level
        return max((self.qlevel(c) for c in children_of(phi)), default=0)

    def _term_qlevel(self, t) -> int:
        if isinstance(t, Quote):
            if t.name not in self.auto_names:
                return 0
            if t.name in self._qlevel_cache:
                return self._qlevel_cache[t.name]
            # provisional value guards against accidental cycles; generated
            # names always point at previously built formulas
            self._qlevel_cache[t.name] = 0
            level = 1 + self.qlevel(self.sentences[t.name])
            self._qlevel_cache[t.name] = level
            return level
        if isinstance(t, FuncApp):
            return max((self._term_qlevel(a) for a in t.args), default=0)
        return 0


# ---------------------------------------------------------------------------
# parser

_SYMBOLS = ["<->", "*>", "~>", "->", "=>", "[]", "(", ")", ",", "~", "&", "|", "="]


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "'":
            j = i + 1
            buf = []
            while j < n and text[j] != "'":
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise SyntaxError_("unterminated quotation in %r" % text)
            toks.append(("quote", "".join(buf)))
            i = j + 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(("sym", sym))
                i += len(sym)
                break
        else:
            if ch.isalnum() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("name", text[i:j]))
                i = j
            else:
                raise SyntaxError_("unexpected character %r in %r" % (ch, text))
    toks.append(("end", ""))
    return toks


class _Parser:
    def __init__(self, text, env: SentenceEnv):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.env = env
        self.bound = []

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, val=None):
        k, v = self.take()
        if k != kind or (val is not None and v != val):
            raise SyntaxError_("expected %s %r, got %r in %r" % (kind, val, v, self.text))
        return v

    def formula(self) -> Formula:
        left = self.disjunct()
        k, v = self.peek()
        if k == "sym" and v in ("->", "~>", "*>", "<->"):
            self.take()
            right = self.formula()
            if v == "->":
                return Cond(left, right)
            if v == "~>":
                return CondOp(left, right)
            if v == "*>":
                return Box(Cond(left, right))
            return And(Cond(left, right), Cond(right, left))
        if k == "sym" and v == "=>":
            raise SyntaxError_("=> is reserved; did you mean ->")
        return left

    def disjunct(self) -> Formula:
        parts = [self.conjunct()]
        while self.peek() == ("sym", "|"):
            self.take()
            parts.append(self.conjunct())
        return disj(parts) if len(parts) > 1 else parts[0]

    def conjunct(self) -> Formula:
        parts = [self.unary()]
        while self.peek() == ("sym", "&"):
            self.take()
            parts.append(self.unary())
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = And(p, out)
        return out

    def unary(self) -> Formula:
        k, v = self.peek()
        if k == "sym" and v == "~":
            self.take()
            return neg(self.unary())
        if k == "sym" and v == "[]":
            self.take()
            return Box(self.unary())
        if k == "name" and v in ("A", "E"):
            self.take()
            var = self.expect("name")
            self.bound.append(var)
            body = self.formula()
            self.bound.pop()
            if v == "A":
                return Forall(var, body)
            return neg(Forall(var, neg(body)))
        return self.atom_or_group()

    def atom_or_group(self) -> Formula:
        k, v = self.peek()
        if k == "sym" and v == "(":
            self.take()
            out = self.formula()
            self.expect("sym", ")")
            if self.peek() == ("sym", "="):
                raise SyntaxError_("identity takes terms, not formulas")
            return out
        if k == "name" and v == "false":
            self.take()
            return FALSUM
        if k == "name" and v == "T":
            self.take()
            self.expect("sym", "(")
            t = self.term()
            self.expect("sym", ")")
            return TruthAtom(t)
        t = self.term(outer=True)
        if self.peek() == ("sym", "="):
            self.take()
            u = self.term()
            return Identity(t, u)
        if isinstance(t, FuncApp) and t.func not in self.env.functions:
            self.env.declare_predicate(t.func, len(t.args))
            return Atom(t.func, t.args)
        if isinstance(t, Var) and t.name not in self.bound:
            # bare name: zero-ary predicate
            self.env.declare_predicate(t.name, 0)
            return Atom(t.name, ())
        raise SyntaxError_("term %s is not a formula" % t)

    def term(self, outer=False) -> Term:
        k, v = self.take()
        if k == "quote":
            return Quote(v)
        if k != "name":
            raise SyntaxError_("expected a term, got %r in %r" % (v, self.text))
        if v in ("A", "E", "T", "false"):
            raise SyntaxError_("%s is reserved" % v)
        if self.peek() == ("sym", "("):
            self.take()
            args = [self.term()]
            while self.peek() == ("sym", ","):
                self.take()
                args.append(self.term())
            self.expect("sym", ")")
            if v in self.env.functions:
                if self.env.functions[v] != len(args):
                    raise SyntaxError_("function %s expects %d arguments" % (v, self.env.functions[v]))
                return FuncApp(v, tuple(args))
            if not outer:
                raise SyntaxError_("undeclared function %r" % v)
            # the caller reinterprets an undeclared application as an atom
            return FuncApp(v, tuple(args))
        if v in self.bound:
            return Var(v)
        if v in self.env.constants:
            return Const(v)
        # leave unknown bare names as variables; atom_or_group rejects the
        # ones that are not bound, which catches undeclared constants early
        return Var(v)


def parse_formula(text: str, env: Optional[SentenceEnv] = None) -> Formula:
    """Parse one formula. Predicates are declared on first use."""
    env = env if env is not None else SentenceEnv()
    p = _Parser(text, env)
    phi = p.formula()
    if p.peek()[0] != "end":
        raise SyntaxError_("trailing input %r in %r" % (p.peek()[1], text))
    return phi


def parse_sentence(text: str, env: SentenceEnv) -> Formula:
    phi = parse_formula(text, env)
    fv = free_vars(phi)
    if fv:
        raise SyntaxError_(
            "free variables %s in %r; declare constants before use" % (sorted(fv), text)
        )
    return phi


# ---------------------------------------------------------------------------
# universes


class UniverseCapError(SyntaxError_):
    pass


def quote_of(env: SentenceEnv, phi: Formula) -> Quote:
    return Quote(env.name_for(phi))


def build_universe(env: SentenceEnv, seeds: Iterable[Formula], depth: int = 1,
                   cap: int = 4000) -> tuple:
    """Close seeds and declared sentences into a sentence universe.

    The closure adds: immediate subsentences (with quantified bodies
    instantiated by every declared constant), the negation of every member,
    and, for `depth` rounds, T('phi') and ~T('phi') for each member phi
    whose generated-quotation level still sits below the bound.  Quotation
    terms are opaque: the closure never looks inside a quoted sentence.

    Returns the members as a tuple in construction order.  Deterministic
    for a fixed environment, idempotent on its own output, and every
    member's negation is a member.
    """
    order = []
    members = set()

    def add(phi):
        if phi in members:
            return
        if len(order) >= cap:
            raise UniverseCapError(
                "universe exceeds cap of %d sentences; raise the cap or lower the depth" % cap)
        if not is_sentence(phi):
            raise SyntaxError_("universe member %s has free variables" % print_formula(phi))
        members.add(phi)
        order.append(phi)
        if isinstance(phi, Forall):
            for c in env.constants:
                add(instantiate(phi.body, phi.var, Const(c)))
        else:
            for child in children_of(phi):
                add(child)
        add(neg(phi))

    for name in list(env.sentences):
        if name not in env.auto_names:
            add(env.sentences[name])
    for s in seeds:
        add(s)

    for _ in range(depth):
        snapshot = [phi for phi in order if env.qlevel(phi) < depth]
        added = False
        for phi in snapshot:
            w = TruthAtom(quote_of(env, phi))
            if w not in members:
                add(w)
                added = True
        if not added:
            break

    return tuple(order)


def universe_sort_key(phi: Formula) -> str:
    return print_formula(phi)
