"""Verification toolkit for policy-governed tuple-space networks.

Networks place processes and data tuples at named locations, each
guarded by a four-valued policy built from trap-pattern aspects.
Obligations state that every matching transition satisfies a
predicate.  Two checkers are provided: an exhaustive one over the
reachable transition system and a fast per-action static certifier
that never explores any state.
"""

from importlib import resources

from .belnap import (BOT, FF, TT, TOP, FourValue, VALUES, from_name, grant,
                     implies, join_k, join_t, leq_k, leq_t, meet_k, meet_t,
                     neg, priority)
from .model import (Action, AkblError, Aspect, AspectPol, BindVar, CombinePol,
                    Const, Cut, Diagnostic, EvaluationError, Label,
                    LabelPattern, LimitExceeded, LocatedAction, Net, NetEntry,
                    Nil, Obligation, Par, Repl, ReplicationPresent,
                    Substitution, Sum, TruePol, Var, Wildcard, canonicalize,
                    has_replication, loc_set, take_actions, validate)
from .unification import extract, findsubs, unify, unifylist
from .parser import (ParseError, parse_net, parse_obligation, parse_policy,
                     render, render_net, render_obligation, render_policy,
                     render_process)
from .semantics import (LTS, build_lts, dot_export, enabled_steps,
                        eval_policy, interp_test, json_export, match,
                        occurs_in, reset_stats, STATS, step_candidates)
from .exhaustive import (Verdict, Witness, check_lts, sat_bp, sat_obl,
                         sat_pred, unify_label)
from .certify import (ActionReport, MightGrant, MutationInfo, StaticVerdict,
                      check_network, check_single_action, might_grant,
                      report_json)

__version__ = "0.1.0"


def corpus_path(name: str):
    """Path of a bundled example network or obligation file."""
    return resources.files(__name__) / "corpus" / name


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text()
