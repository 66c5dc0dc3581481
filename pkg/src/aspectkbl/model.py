"""Abstract syntax for networks, policies and obligations.

A network is a multiset of located entries; each entry carries a
location name, a policy expression and either a process or a data
tuple.  Data tuples are kept as plain tuples of constant names since
they are always ground.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class AkblError(Exception):
    pass


class ReplicationPresent(AkblError):
    """Raised when a checker meets a replicated process."""


class EvaluationError(AkblError):
    """Raised when a policy or predicate cannot be evaluated."""


class LimitExceeded(AkblError):
    def __init__(self, kind: str, limit: int):
        super().__init__(f"exploration limit exceeded: {kind} > {limit}")
        self.kind = kind
        self.limit = limit


@dataclass(frozen=True)
class Diagnostic:
    severity: str            # "error" or "warning"
    message: str
    line: int = 0
    col: int = 0

    def format(self) -> str:
        where = f"{self.line}:{self.col}: " if self.line else ""
        return f"{where}{self.severity}: {self.message}"


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    # name keeps its sigil: "$u" in obligations, "#u" in aspects,
    # bare "u" for a process variable bound by an earlier !u
    name: str


@dataclass(frozen=True)
class BindVar:
    name: str                # written !name


@dataclass(frozen=True)
class Wildcard:
    pass


WILDCARD = Wildcard()

Term = Union[Const, Var, BindVar, Wildcard]


def subst_key(t: Term) -> str:
    """Substitution key of a variable-like term."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, BindVar):
        return "!" + t.name
    raise EvaluationError(f"not a substitutable term: {t!r}")


# ---------------------------------------------------------------------------
# actions and processes

OUT, IN, READ = "out", "in", "read"
CAPS = (OUT, IN, READ)
CAP_LETTER = {OUT: "o", IN: "i", READ: "r"}
LETTER_CAP = {v: k for k, v in CAP_LETTER.items()}


@dataclass(frozen=True)
class Action:
    cap: str                 # out, in or read
    args: tuple              # tuple of Term
    target: Term


@dataclass(frozen=True)
class Nil:
    pass


NIL = Nil()


@dataclass(frozen=True)
class Sum:
    branches: tuple          # nonempty tuple of (Action, Process)


@dataclass(frozen=True)
class Par:
    left: "Process"
    right: "Process"


@dataclass(frozen=True)
class Repl:
    body: "Process"


Process = Union[Nil, Sum, Par, Repl]


# ---------------------------------------------------------------------------
# policies

@dataclass(frozen=True)
class TruePol:
    pass


@dataclass(frozen=True)
class FalsePol:
    pass


@dataclass(frozen=True)
class NotPol:
    body: "Policy"


@dataclass(frozen=True)
class CombinePol:
    op: str                  # oplus otimes and or implies pref
    left: "Policy"
    right: "Policy"


@dataclass(frozen=True)
class Cut:
    """Trap pattern of an aspect: subject :: action-template . X."""
    subject: Term
    action: Action
    cont_var: str


# rec and cond expressions share one node set; the parser restricts the
# connectives allowed in each position.

@dataclass(frozen=True)
class ETrue:
    pass


@dataclass(frozen=True)
class EFalse:
    pass


@dataclass(frozen=True)
class ENot:
    body: "Expr"


@dataclass(frozen=True)
class EBin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class EEqual:
    left: Term
    right: Term


@dataclass(frozen=True)
class ETest:
    args: tuple
    at: Term


@dataclass(frozen=True)
class EOccursIn:
    action: Action           # template matched against a continuation
    var: str                 # the cut's continuation variable


Expr = Union[ETrue, EFalse, ENot, EBin, EEqual, ETest, EOccursIn]


@dataclass(frozen=True)
class Aspect:
    rec: Expr
    cut: Cut
    cond: Expr


@dataclass(frozen=True)
class AspectPol:
    aspect: Aspect


Policy = Union[TruePol, FalsePol, NotPol, CombinePol, AspectPol]

TRUE_POL = TruePol()


# ---------------------------------------------------------------------------
# obligations

@dataclass(frozen=True)
class LabelPattern:
    """Trap pattern of an obligation over transition labels."""
    subject: Term
    cap: str                 # letter form: o, i or r
    args: tuple
    target: Term             # a Const for well-formed obligations


@dataclass(frozen=True)
class PTrue:
    pass


@dataclass(frozen=True)
class PFalse:
    pass


@dataclass(frozen=True)
class PNot:
    body: "Pred"


@dataclass(frozen=True)
class PAnd:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class POr:
    left: "Pred"
    right: "Pred"


@dataclass(frozen=True)
class PForall:
    var: str                 # sigiled, e.g. "$x"
    body: "Pred"


@dataclass(frozen=True)
class PExists:
    var: str
    body: "Pred"


@dataclass(frozen=True)
class PEqual:
    left: Term
    right: Term


@dataclass(frozen=True)
class PTest:
    args: tuple
    at: Term


@dataclass(frozen=True)
class PTestPost:
    """test' form, interpreted on the successor state of a transition."""
    args: tuple
    at: Term


@dataclass(frozen=True)
class PGeq:
    left: Term
    right: Term


Pred = Union[PTrue, PFalse, PNot, PAnd, POr, PForall, PExists,
             PEqual, PTest, PTestPost, PGeq]


@dataclass(frozen=True)
class Obligation:
    cut: LabelPattern
    pred: Pred


# ---------------------------------------------------------------------------
# networks

@dataclass(frozen=True)
class NetEntry:
    location: str
    policy: Policy
    body: Union[Process, tuple]   # a tuple of constant names is a data entry

    def is_data(self) -> bool:
        return isinstance(self.body, tuple)


@dataclass(frozen=True)
class Net:
    entries: tuple           # tuple of NetEntry


@dataclass(frozen=True)
class Label:
    """Transition label: subject performs cap(args) at target."""
    subject: str
    cap: str                 # letter form: o, i or r
    args: tuple              # tuple of constant names
    target: str

    def text(self) -> str:
        return f"{self.subject}:{self.cap}({','.join(self.args)})@{self.target}"


@dataclass(frozen=True)
class LocatedAction:
    """An action as it occurs in a network entry."""
    source: str
    policy: Policy
    action: Action
    continuation: Process


# ---------------------------------------------------------------------------
# substitutions

class Substitution:
    """Ordered sequence of single bindings, applied front to back.

    Keys are variable names with their sigil, binders keyed as "!name".
    Composition is concatenation, so (s1.then(s2)) applies s1 first.
    """
    __slots__ = ("pairs",)

    def __init__(self, pairs=()):
        self.pairs = tuple(pairs)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        inner = ", ".join(f"{k}={_term_text(v)}" for k, v in self.pairs)
        return f"[{inner}]"

    def __bool__(self):
        return bool(self.pairs)

    def then(self, other: "Substitution") -> "Substitution":
        return Substitution(self.pairs + other.pairs)

    def bind(self, key: str, value: Term) -> "Substitution":
        return Substitution(self.pairs + ((key, value),))

    # -- application ------------------------------------------------------

    def apply_term(self, t: Term) -> Term:
        for key, val in self.pairs:
            t = _subst_term(t, key, val)
        return t

    def apply_action(self, a: Action) -> Action:
        return Action(a.cap, tuple(self.apply_term(x) for x in a.args),
                      self.apply_term(a.target))

    def apply_process(self, p: Process) -> Process:
        for key, val in self.pairs:
            p = _subst_process(p, key, val)
        return p

    def apply_expr(self, e: Expr) -> Expr:
        for key, val in self.pairs:
            e = _subst_expr(e, key, val)
        return e

    def apply_pred(self, p: Pred) -> Pred:
        for key, val in self.pairs:
            p = _subst_pred(p, key, val)
        return p

    def apply_net(self, n: Net) -> Net:
        entries = []
        for e in n.entries:
            body = e.body if e.is_data() else self.apply_process(e.body)
            entries.append(NetEntry(e.location, e.policy, body))
        return Net(tuple(entries))

    def apply_located(self, la: LocatedAction) -> LocatedAction:
        return LocatedAction(la.source, la.policy,
                             self.apply_action(la.action),
                             self.apply_process(la.continuation))


EMPTY_SUBST = Substitution()


def _subst_term(t: Term, key: str, val: Term) -> Term:
    if isinstance(t, Var) and t.name == key:
        return val
    if isinstance(t, BindVar) and "!" + t.name == key:
        return val
    return t


def _subst_action(a: Action, key: str, val: Term) -> Action:
    return Action(a.cap, tuple(_subst_term(x, key, val) for x in a.args),
                  _subst_term(a.target, key, val))


def _binds(a: Action, key: str) -> bool:
    return any(isinstance(x, BindVar) and x.name == key for x in a.args)


def _subst_process(p: Process, key: str, val: Term) -> Process:
    if isinstance(p, Nil):
        return p
    if isinstance(p, Sum):
        branches = []
        for action, cont in p.branches:
            new_action = _subst_action(action, key, val)
            # a binder of the same name shadows the binding below it
            new_cont = cont if _binds(action, key) else _subst_process(cont, key, val)
            branches.append((new_action, new_cont))
        return Sum(tuple(branches))
    if isinstance(p, Par):
        return Par(_subst_process(p.left, key, val), _subst_process(p.right, key, val))
    if isinstance(p, Repl):
        return Repl(_subst_process(p.body, key, val))
    raise TypeError(f"not a process: {p!r}")


def _subst_expr(e: Expr, key: str, val: Term) -> Expr:
    if isinstance(e, (ETrue, EFalse)):
        return e
    if isinstance(e, ENot):
        return ENot(_subst_expr(e.body, key, val))
    if isinstance(e, EBin):
        return EBin(e.op, _subst_expr(e.left, key, val), _subst_expr(e.right, key, val))
    if isinstance(e, EEqual):
        return EEqual(_subst_term(e.left, key, val), _subst_term(e.right, key, val))
    if isinstance(e, ETest):
        return ETest(tuple(_subst_term(t, key, val) for t in e.args),
                     _subst_term(e.at, key, val))
    if isinstance(e, EOccursIn):
        return EOccursIn(_subst_action(e.action, key, val), e.var)
    raise TypeError(f"not an expression: {e!r}")


def _subst_pred(p: Pred, key: str, val: Term) -> Pred:
    if isinstance(p, (PTrue, PFalse)):
        return p
    if isinstance(p, PNot):
        return PNot(_subst_pred(p.body, key, val))
    if isinstance(p, PAnd):
        return PAnd(_subst_pred(p.left, key, val), _subst_pred(p.right, key, val))
    if isinstance(p, POr):
        return POr(_subst_pred(p.left, key, val), _subst_pred(p.right, key, val))
    if isinstance(p, (PForall, PExists)):
        if p.var == key:      # quantifier shadows
            return p
        cls = PForall if isinstance(p, PForall) else PExists
        return cls(p.var, _subst_pred(p.body, key, val))
    if isinstance(p, PEqual):
        return PEqual(_subst_term(p.left, key, val), _subst_term(p.right, key, val))
    if isinstance(p, (PTest, PTestPost)):
        cls = type(p)
        return cls(tuple(_subst_term(t, key, val) for t in p.args),
                   _subst_term(p.at, key, val))
    if isinstance(p, PGeq):
        return PGeq(_subst_term(p.left, key, val), _subst_term(p.right, key, val))
    raise TypeError(f"not a predicate: {p!r}")


def _term_text(t: Term) -> str:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return t.name
    if isinstance(t, BindVar):
        return "!" + t.name
    return "_"


# ---------------------------------------------------------------------------
# canonical form

def _flatten_entry(loc: str, pol: Policy, body, out: list):
    if isinstance(body, Par):
        _flatten_entry(loc, pol, body.left, out)
        _flatten_entry(loc, pol, body.right, out)
    else:
        out.append(NetEntry(loc, pol, body))


def _entry_sort_key(e: NetEntry):
    kind = "data" if e.is_data() else "proc"
    return (e.location, kind, repr(e.body), repr(e.policy))


def canonicalize(net: Net) -> Net:
    """Normal form under entry splitting and nil removal.

    Top-level parallel compositions are split into separate entries and
    the result is sorted by a total syntactic order.  A nil entry is
    dropped only while another entry with the same location and policy
    remains; erasing the last entry of a location would disable later
    outputs to it, which the congruence rules never do.
    """
    flat: list = []
    for e in net.entries:
        _flatten_entry(e.location, e.policy, e.body, flat)
    alive = {(e.location, repr(e.policy)) for e in flat if not isinstance(e.body, Nil)}
    kept = []
    seen_nil = set()
    for e in flat:
        if isinstance(e.body, Nil):
            k = (e.location, repr(e.policy))
            if k in alive or k in seen_nil:
                continue
            seen_nil.add(k)
        kept.append(e)
    kept.sort(key=_entry_sort_key)
    return Net(tuple(kept))


# ---------------------------------------------------------------------------
# validation

def _count_repl(p: Process) -> int:
    if isinstance(p, Repl):
        return 1 + _count_repl(p.body)
    if isinstance(p, Par):
        return _count_repl(p.left) + _count_repl(p.right)
    if isinstance(p, Sum):
        return sum(_count_repl(c) for _, c in p.branches)
    return 0


def has_replication(net: Net) -> bool:
    return any(not e.is_data() and _count_repl(e.body) for e in net.entries)


def validate(net: Net, mode: str = "check") -> list:
    """Report diagnostics for a network.

    In "check" mode replication is an error (the checkers only handle
    the replication-free fragment) in addition to the policy
    consistency check performed in every mode.
    """
    diags = []
    by_loc: dict = {}
    for e in net.entries:
        by_loc.setdefault(e.location, []).append(e.policy)
    for loc in sorted(by_loc):
        pols = by_loc[loc]
        if any(p != pols[0] for p in pols[1:]):
            diags.append(Diagnostic("error",
                                    f"location {loc} carries inconsistent policies"))
    if mode == "check":
        for e in net.entries:
            if e.is_data():
                continue
            n = _count_repl(e.body)
            for _ in range(n):
                diags.append(Diagnostic(
                    "error",
                    f"replication at {e.location} is outside the checkable fragment"))
    return diags


# ---------------------------------------------------------------------------
# location constants and action enumeration

def _term_consts(t: Term, acc: set):
    if isinstance(t, Const):
        acc.add(t.name)


def _action_consts(a: Action, acc: set):
    for t in a.args:
        _term_consts(t, acc)
    _term_consts(a.target, acc)


def _process_consts(p: Process, acc: set):
    if isinstance(p, Sum):
        for action, cont in p.branches:
            _action_consts(action, acc)
            _process_consts(cont, acc)
    elif isinstance(p, Par):
        _process_consts(p.left, acc)
        _process_consts(p.right, acc)
    elif isinstance(p, Repl):
        _process_consts(p.body, acc)


def _expr_consts(e: Expr, acc: set):
    if isinstance(e, ENot):
        _expr_consts(e.body, acc)
    elif isinstance(e, EBin):
        _expr_consts(e.left, acc)
        _expr_consts(e.right, acc)
    elif isinstance(e, EEqual):
        _term_consts(e.left, acc)
        _term_consts(e.right, acc)
    elif isinstance(e, ETest):
        for t in e.args:
            _term_consts(t, acc)
        _term_consts(e.at, acc)
    elif isinstance(e, EOccursIn):
        _action_consts(e.action, acc)


def _policy_consts(p: Policy, acc: set):
    if isinstance(p, NotPol):
        _policy_consts(p.body, acc)
    elif isinstance(p, CombinePol):
        _policy_consts(p.left, acc)
        _policy_consts(p.right, acc)
    elif isinstance(p, AspectPol):
        asp = p.aspect
        _term_consts(asp.cut.subject, acc)
        _action_consts(asp.cut.action, acc)
        _expr_consts(asp.rec, acc)
        _expr_consts(asp.cond, acc)


def loc_set(net: Net) -> frozenset:
    """All location constants occurring anywhere in the network."""
    acc: set = set()
    for e in net.entries:
        acc.add(e.location)
        if e.is_data():
            acc.update(e.body)
        else:
            _process_consts(e.body, acc)
        _policy_consts(e.policy, acc)
    return frozenset(acc)


def _walk_actions(loc: str, pol: Policy, p: Process, out: list):
    if isinstance(p, Sum):
        for action, cont in p.branches:
            out.append(LocatedAction(loc, pol, action, cont))
            _walk_actions(loc, pol, cont, out)
    elif isinstance(p, Par):
        _walk_actions(loc, pol, p.left, out)
        _walk_actions(loc, pol, p.right, out)
    elif isinstance(p, Repl):
        _walk_actions(loc, pol, p.body, out)


def take_actions(net: Net) -> list:
    """Every action occurring syntactically in the network, in document
    order, paired with its hosting location, policy and continuation."""
    out: list = []
    for e in net.entries:
        if not e.is_data():
            _walk_actions(e.location, e.policy, e.body, out)
    return out
