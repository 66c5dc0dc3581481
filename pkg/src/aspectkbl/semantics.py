"""Reaction semantics and labelled transition system construction.

A step picks one action-prefixed branch of a top-level process entry,
asks the policies of the acting location and of the target location
whether the action template may fire, and applies the effect: out adds
a data tuple at the target, in consumes a matching tuple and read
observes one without removing it.  The two policy verdicts are
combined with the knowledge join and the step fires when the combined
value is bot or tt.

Policies always judge the action template, before input binders are
substituted, so a trap pattern may mention the binder positions with
wildcards but learns nothing about the data that will be bound.
Transition labels on the other hand are fully ground; for in and read
they carry the matched tuple.

States are kept in canonical form, which makes the state space of a
replication-free network finite and the construction below a plain
breadth first search.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .belnap import BINARY_OPS, BOT, FF, TT, FourValue, grant, join_k, neg
from .model import (Action, AspectPol, BindVar, CAP_LETTER, CombinePol, Const,
                    Cut, EBin, EEqual, EFalse, ENot, EOccursIn, ETest, ETrue,
                    EvaluationError, FalsePol, Label, LimitExceeded, Net,
                    NetEntry, NotPol, Par, Process, Repl, ReplicationPresent,
                    Substitution, Sum, TruePol, Wildcard, canonicalize,
                    has_replication)
from .unification import findsubs

# states explored by the most recent exploration-based run; the static
# route must leave this untouched
STATS = {"states_explored": 0}


def reset_stats():
    STATS["states_explored"] = 0


# ---------------------------------------------------------------------------
# template matching

def match(templates, values):
    """Match in/read argument templates against a ground data tuple.

    Positions are independent: constants must be equal, a binder !u
    binds the plain name u (substitution then reaches the variables of
    the continuation), wildcards match anything.  Returns None when
    the tuple does not fit.
    """
    if len(templates) != len(values):
        return None
    pairs = []
    for t, v in zip(templates, values):
        if isinstance(t, Const):
            if t.name != v:
                return None
        elif isinstance(t, BindVar):
            pairs.append((t.name, Const(v)))
        elif isinstance(t, Wildcard):
            continue
        else:
            return None
    return Substitution(tuple(pairs))


def _proc_actions(p: Process):
    if isinstance(p, Sum):
        for action, cont in p.branches:
            yield action
            yield from _proc_actions(cont)
    elif isinstance(p, Par):
        yield from _proc_actions(p.left)
        yield from _proc_actions(p.right)
    elif isinstance(p, Repl):
        yield from _proc_actions(p.body)


def occurs_in(template: Action, proc: Process) -> bool:
    """May an action matching the template occur in the process."""
    for action in _proc_actions(proc):
        if action.cap != template.cap:
            continue
        if findsubs((Const("_s"), template.args, template.target),
                    (Const("_s"), action.args, action.target)) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# policy evaluation

def interp_test(args, at: str, net: Net) -> bool:
    """Is the ground tuple present as a data entry at the location."""
    values = tuple(args)
    return any(e.location == at and e.is_data() and e.body == values
               for e in net.entries)


def _ground_name(t, what: str) -> str:
    if isinstance(t, Const):
        return t.name
    raise EvaluationError(f"unbound variable in {what}: {t!r}")


def eval_expr(e, net: Net, cont_env: dict) -> FourValue:
    """Evaluate a recommendation or condition to a truth value.

    Atoms are two valued, so conditions (restricted to not/and/or)
    come out classical.  Unbound variables raise EvaluationError.
    """
    if isinstance(e, ETrue):
        return TT
    if isinstance(e, EFalse):
        return FF
    if isinstance(e, ENot):
        return neg(eval_expr(e.body, net, cont_env))
    if isinstance(e, EBin):
        return BINARY_OPS[e.op](eval_expr(e.left, net, cont_env),
                                eval_expr(e.right, net, cont_env))
    if isinstance(e, EEqual):
        l = _ground_name(e.left, "equality")
        r = _ground_name(e.right, "equality")
        return TT if l == r else FF
    if isinstance(e, ETest):
        vals = [_ground_name(t, "test") for t in e.args]
        at = _ground_name(e.at, "test")
        return TT if interp_test(vals, at, net) else FF
    if isinstance(e, EOccursIn):
        if e.var not in cont_env:
            raise EvaluationError(f"occurs-in variable {e.var} is unbound")
        return TT if occurs_in(e.action, cont_env[e.var]) else FF
    raise TypeError(f"not an expression: {e!r}")


def check_cut(cut: Cut, subject: str, action: Action, continuation: Process):
    """Unify a trap pattern with an attempted action.

    Returns the unifier together with the continuation binding for the
    cut's process variable, or None when the pattern does not apply.
    """
    if cut.action.cap != action.cap:
        return None
    th = findsubs((cut.subject, cut.action.args, cut.action.target),
                  (Const(subject), action.args, action.target))
    if th is None:
        return None
    return th, {cut.cont_var: continuation}


def eval_policy(pol, trapped, net: Net) -> FourValue:
    """Judge an attempted action (a LocatedAction) under a policy.

    The action is the template as written, with input binders still
    unsubstituted; a trap pattern consequently learns nothing about
    the data an input will bind.
    """
    return _eval_pol(pol, trapped.source, trapped.action,
                     trapped.continuation, net)


def _eval_pol(pol, subject: str, action: Action, continuation: Process,
              net: Net) -> FourValue:
    if isinstance(pol, TruePol):
        return TT
    if isinstance(pol, FalsePol):
        return FF
    if isinstance(pol, NotPol):
        return neg(_eval_pol(pol.body, subject, action, continuation, net))
    if isinstance(pol, CombinePol):
        return BINARY_OPS[pol.op](
            _eval_pol(pol.left, subject, action, continuation, net),
            _eval_pol(pol.right, subject, action, continuation, net))
    if isinstance(pol, AspectPol):
        asp = pol.aspect
        res = check_cut(asp.cut, subject, action, continuation)
        if res is None:
            return BOT
        th, env = res
        if eval_expr(th.apply_expr(asp.cond), net, env) is not TT:
            return BOT
        return eval_expr(th.apply_expr(asp.rec), net, env)
    raise TypeError(f"not a policy: {pol!r}")


# ---------------------------------------------------------------------------
# steps

def policies_by_location(net: Net) -> dict:
    pols: dict = {}
    for e in net.entries:
        pols.setdefault(e.location, e.policy)
    return pols


def step_candidates(net: Net):
    """All transition candidates out of a canonical network.

    Returns (steps, denied): steps is a list of (label, successor) in
    deterministic order with duplicates removed, denied is a list of
    (label, combined-policy-value) for candidates whose action was
    blocked by the policies.
    """
    pols = policies_by_location(net)
    steps: list = []
    denied: list = []
    seen_steps: set = set()
    seen_denied: set = set()

    def emit(label, succ, granted, f):
        if granted:
            key = (label, succ)
            if key not in seen_steps:
                seen_steps.add(key)
                steps.append((label, succ))
        else:
            key = (label, f)
            if key not in seen_denied:
                seen_denied.add(key)
                denied.append((label, f))

    entries = net.entries
    for i, e in enumerate(entries):
        if e.is_data() or not isinstance(e.body, Sum):
            continue
        for action, cont in e.body.branches:
            tgt = action.target
            if not isinstance(tgt, Const):
                raise EvaluationError(f"unbound target in {action!r}")
            if tgt.name not in pols:
                continue            # no entry to receive or hold the data
            f = join_k(
                _eval_pol(e.policy, e.location, action, cont, net),
                _eval_pol(pols[tgt.name], e.location, action, cont, net))
            granted = grant(f)
            letter = CAP_LETTER[action.cap]
            if action.cap == "out":
                args = tuple(_ground_name(t, "out argument")
                             for t in action.args)
                label = Label(e.location, letter, args, tgt.name)
                succ = None
                if granted:
                    rest = entries[:i] + entries[i + 1:]
                    succ = canonicalize(Net(rest + (
                        NetEntry(e.location, e.policy, cont),
                        NetEntry(tgt.name, pols[tgt.name], args))))
                emit(label, succ, granted, f)
                continue
            consumed = set()
            for j, d in enumerate(entries):
                if d.location != tgt.name or not d.is_data():
                    continue
                th = match(action.args, d.body)
                if th is None:
                    continue
                label = Label(e.location, letter, d.body, tgt.name)
                succ = None
                if granted:
                    keep = [k for k in range(len(entries))
                            if k != i and (action.cap == "read" or k != j)]
                    rest = tuple(entries[k] for k in keep)
                    succ = canonicalize(Net(rest + (
                        NetEntry(e.location, e.policy,
                                 th.apply_process(cont)),)))
                if d.body in consumed:
                    continue        # identical tuple, identical step
                consumed.add(d.body)
                emit(label, succ, granted, f)
    return steps, denied


def enabled_steps(net: Net):
    return step_candidates(net)[0]


# ---------------------------------------------------------------------------
# transition systems

@dataclass(frozen=True)
class Transition:
    src: int
    dst: int
    label: Label


@dataclass
class LTS:
    states: list             # state id -> canonical Net
    transitions: list        # in discovery order
    initial: int = 0

    def successors(self, sid: int):
        return [(t.label, t.dst) for t in self.transitions if t.src == sid]


def build_lts(net: Net, max_states: int = 100000, max_depth: int = 10000) -> LTS:
    """Breadth first exploration of the reachable state space."""
    if has_replication(net):
        raise ReplicationPresent("replication is outside the checkable fragment")
    start = canonicalize(net)
    states = [start]
    ids = {start: 0}
    depth = [0]
    transitions: list = []
    queue = deque([0])
    STATS["states_explored"] += 1
    while queue:
        sid = queue.popleft()
        steps, _ = step_candidates(states[sid])
        for label, succ in steps:
            nid = ids.get(succ)
            if nid is None:
                if len(states) >= max_states:
                    raise LimitExceeded("states", max_states)
                d = depth[sid] + 1
                if d > max_depth:
                    raise LimitExceeded("depth", max_depth)
                nid = len(states)
                ids[succ] = nid
                states.append(succ)
                depth.append(d)
                queue.append(nid)
                STATS["states_explored"] += 1
            transitions.append(Transition(sid, nid, label))
    return LTS(states, transitions)


def net_text(net: Net) -> str:
    from .parser import render_net
    return render_net(net).replace("\n", " ")


def json_export(lts: LTS) -> dict:
    return {
        "states": [{"id": i, "net": net_text(n)}
                   for i, n in enumerate(lts.states)],
        "transitions": [{"from": t.src, "to": t.dst, "label": t.label.text()}
                        for t in lts.transitions],
    }


def dot_export(lts: LTS) -> str:
    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    lines = ["digraph lts {", "  rankdir=LR;"]
    for i in range(len(lts.states)):
        shape = "doublecircle" if i == lts.initial else "circle"
        lines.append(f'  {i} [label="s{i}", shape={shape}];')
    for t in lts.transitions:
        lines.append(f'  {t.src} -> {t.dst} [label="{esc(t.label.text())}"];')
    lines.append("}")
    return "\n".join(lines)
