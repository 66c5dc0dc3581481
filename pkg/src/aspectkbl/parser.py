"""Concrete syntax: lexer, recursive descent parser and renderer.

Network files use one entry per location joined by ||, with ::[policy]
attaching a policy expression, <a, b> for data tuples, | for parallel
processes, + for sums, * for replication and 0 for the inert process.
Policies are built from aspects [rec if cut : cond] and the spelled
operators oplus, otimes, and, or, not, implies, pref.  Obligation
files hold a single AG [label-pattern] predicate form.  $-variables
belong to obligations, #-variables to aspects, !x binds in input and
read templates and _ is the pattern wildcard.  // starts a comment.

The full grammar is documented in docs/grammar.md.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import (Action, Aspect, AspectPol, BindVar, CombinePol, Const,
                    Cut, Diagnostic, EBin, EEqual, EFalse, ENot, EOccursIn,
                    ETest, ETrue, FalsePol, LabelPattern,
                    LETTER_CAP, Net, NetEntry, Nil, NIL, NotPol, Obligation,
                    PAnd, PEqual, PExists, PFalse, PForall, PGeq, PNot, POr,
                    PTest, PTestPost, PTrue, Par, Repl, Sum, TruePol, Var,
                    WILDCARD, Wildcard, canonicalize)


class ParseError(Exception):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].format() if self.diagnostics else "parse error"
        super().__init__(first)


class _Stop(Exception):
    pass


KEYWORDS = {"out", "in", "read", "test", "AG", "forall", "exists", "true",
            "false", "not", "and", "or", "oplus", "otimes", "implies",
            "pref", "if"}

_PUNCT2 = ("||", "::", ">=")
_PUNCT1 = "|+*:.,()<>[]@!_='"


@dataclass(frozen=True)
class Token:
    kind: str                # ident, number, kw, dollar, hash, occursin,
                             # punctuation text, or eof
    text: str
    line: int
    col: int


def _lex(src: str, diags: list) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)

    def push(kind, text, l, c):
        toks.append(Token(kind, text, l, c))

    while i < n:
        ch = src[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("//", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        start_l, start_c = line, col
        if src.startswith("occurs-in", i):
            after = i + len("occurs-in")
            if after >= n or not (src[after].isalnum() or src[after] == "_"):
                push("occursin", "occurs-in", start_l, start_c)
                i = after
                col += len("occurs-in")
                continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            push("kw" if word in KEYWORDS else "ident", word, start_l, start_c)
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            push("number", src[i:j], start_l, start_c)
            col += j - i
            i = j
            continue
        if ch in "$#":
            j = i + 1
            if j < n and src[j].isalpha():
                while j < n and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                kind = "dollar" if ch == "$" else "hash"
                push(kind, src[i:j], start_l, start_c)
                col += j - i
                i = j
                continue
            diags.append(Diagnostic("error", f"expected a name after {ch}",
                                    start_l, start_c))
            i += 1
            col += 1
            continue
        two = src[i:i + 2]
        if two in _PUNCT2:
            push(two, two, start_l, start_c)
            i += 2
            col += 2
            continue
        if ch == "_":
            j = i + 1
            if j < n and (src[j].isalnum() or src[j] == "_"):
                diags.append(Diagnostic("error",
                                        "names may not start with an underscore",
                                        start_l, start_c))
                while j < n and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                col += j - i
                i = j
                continue
            push("_", "_", start_l, start_c)
            i += 1
            col += 1
            continue
        if ch in _PUNCT1:
            push(ch, ch, start_l, start_c)
            i += 1
            col += 1
            continue
        diags.append(Diagnostic("error", f"stray character {ch!r}",
                                start_l, start_c))
        i += 1
        col += 1
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.diags: list = []
        self.toks = _lex(src, self.diags)
        self.i = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, kind: str, text=None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        self.diags.append(Diagnostic("error", msg, tok.line, tok.col))
        raise _Stop()

    def expect(self, kind: str, text=None, what=None) -> Token:
        if self.at(kind, text):
            return self.advance()
        shown = what or text or kind
        got = self.peek().text or "end of input"
        self.error(f"expected {shown}, found {got!r}")

    def expect_name(self, what="a name") -> Token:
        if self.at("ident"):
            return self.advance()
        if self.at("kw"):
            self.error(f"{self.peek().text!r} is a reserved word")
        self.error(f"expected {what}, found {self.peek().text or 'end of input'!r}")

    # -- networks -----------------------------------------------------------

    def parse_net(self) -> Net:
        entries = [self.parse_entry()]
        while self.at("||"):
            self.advance()
            entries.append(self.parse_entry())
        self.expect("eof", what="|| or end of input")
        return Net(tuple(entries))

    def parse_entry(self) -> NetEntry:
        loc = self.expect_name("a location name").text
        self.expect("::")
        self.expect("[")
        pol = self.parse_policy()
        self.expect("]")
        if self.at("<"):
            self.advance()
            fields = []
            if not self.at(">"):
                fields.append(self.parse_data_field())
                while self.at(","):
                    self.advance()
                    fields.append(self.parse_data_field())
            self.expect(">")
            return NetEntry(loc, pol, tuple(fields))
        return NetEntry(loc, pol, self.parse_process(frozenset()))

    def parse_data_field(self) -> str:
        if self.at("ident") or self.at("number"):
            return self.advance().text
        self.error("data tuples hold constants only")

    def parse_process(self, scope):
        left = self.parse_sum(scope)
        while self.at("|"):
            self.advance()
            left = Par(left, self.parse_sum(scope))
        return left

    def parse_sum(self, scope):
        first = self.parse_term_proc(scope)
        if not self.at("+"):
            return first
        branches = [self.as_branch(first)]
        while self.at("+"):
            self.advance()
            branches.append(self.as_branch(self.parse_term_proc(scope)))
        return Sum(tuple(branches))

    def as_branch(self, p):
        if isinstance(p, Sum) and len(p.branches) == 1:
            return p.branches[0]
        self.error("summands must be action-prefixed")

    def parse_term_proc(self, scope):
        if self.at("number", "0"):
            self.advance()
            return NIL
        if self.at("*"):
            self.advance()
            return Repl(self.parse_term_proc(scope))
        if self.at("("):
            self.advance()
            p = self.parse_process(scope)
            self.expect(")")
            return p
        if self.at("kw", "out") or self.at("kw", "in") or self.at("kw", "read"):
            action, binders = self.parse_proc_action(scope)
            self.expect(".")
            inner = scope | binders if action.cap in ("in", "read") else scope
            cont = self.parse_term_proc(inner)
            return Sum(((action, cont),))
        self.error("expected a process")

    def parse_proc_action(self, scope):
        cap = self.advance().text
        self.expect("(")
        binders: set = set()
        args = []
        if not self.at(")"):
            args.append(self.parse_proc_term(scope, cap, binders))
            while self.at(","):
                self.advance()
                args.append(self.parse_proc_term(scope, cap, binders))
        self.expect(")")
        self.expect("@")
        target = self.parse_proc_term(scope, cap, None)
        return Action(cap, tuple(args), target), frozenset(binders)

    def parse_proc_term(self, scope, cap, binders):
        t = self.peek()
        if t.kind == "ident":
            self.advance()
            return Var(t.text) if t.text in scope else Const(t.text)
        if t.kind == "number":
            self.advance()
            return Const(t.text)
        if t.kind == "!":
            if binders is None:
                self.error("binders are not allowed in a target position")
            if cap == "out":
                self.error("binders are not allowed in out arguments")
            self.advance()
            name = self.expect_name("a binder name").text
            binders.add(name)
            return BindVar(name)
        if t.kind == "_":
            self.error("wildcards belong in policy and obligation patterns only")
        if t.kind in ("dollar", "hash"):
            self.error(f"{t.text} is a pattern variable and cannot occur in a process")
        self.error("expected a term")

    # -- policies ------------------------------------------------------------

    def parse_policy(self):
        left = self.parse_pol_or()
        if self.at("kw", "implies"):
            self.advance()
            return CombinePol("implies", left, self.parse_policy())
        return left

    def _pol_chain(self, sub, op):
        left = sub()
        while self.at("kw", op):
            self.advance()
            left = CombinePol(op, left, sub())
        return left

    def parse_pol_or(self):
        return self._pol_chain(self.parse_pol_and, "or")

    def parse_pol_and(self):
        return self._pol_chain(self.parse_pol_oplus, "and")

    def parse_pol_oplus(self):
        return self._pol_chain(self.parse_pol_otimes, "oplus")

    def parse_pol_otimes(self):
        return self._pol_chain(self.parse_pol_pref, "otimes")

    def parse_pol_pref(self):
        return self._pol_chain(self.parse_pol_unary, "pref")

    def parse_pol_unary(self):
        if self.at("kw", "not"):
            self.advance()
            return NotPol(self.parse_pol_unary())
        return self.parse_pol_atom()

    def parse_pol_atom(self):
        if self.at("kw", "true"):
            self.advance()
            return TruePol()
        if self.at("kw", "false"):
            self.advance()
            return FalsePol()
        if self.at("("):
            self.advance()
            p = self.parse_policy()
            self.expect(")")
            return p
        if self.at("["):
            return AspectPol(self.parse_aspect())
        self.error("expected a policy")

    def parse_aspect(self) -> Aspect:
        open_tok = self.expect("[")
        rec = self.parse_expr()
        self.expect("kw", "if")
        cut, cut_vars = self.parse_cut()
        self.expect(":")
        cond = self.parse_expr()
        self.expect("]")
        self._check_expr(rec, "recommendation", cut_vars, cut.cont_var,
                         allowed_ops=("oplus", "otimes", "and", "or", "implies"),
                         tok=open_tok)
        self._check_expr(cond, "condition", cut_vars, cut.cont_var,
                         allowed_ops=("and", "or"), tok=open_tok)
        return Aspect(rec, cut, cond)

    def parse_cut(self):
        cut_vars: set = set()
        subject = self.parse_cut_term(cut_vars, wild_ok=False, bind_cap=None)
        self.expect("::")
        if not (self.at("kw", "out") or self.at("kw", "in") or self.at("kw", "read")):
            self.error("expected out, in or read in a cut")
        cap = self.advance().text
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_cut_term(cut_vars, wild_ok=True, bind_cap=cap))
            while self.at(","):
                self.advance()
                args.append(self.parse_cut_term(cut_vars, wild_ok=True, bind_cap=cap))
        self.expect(")")
        self.expect("@")
        target = self.parse_cut_term(cut_vars, wild_ok=False, bind_cap=None)
        self.expect(".")
        cont = self.expect_name("a continuation variable").text
        return Cut(subject, Action(cap, tuple(args), target), cont), cut_vars

    def parse_cut_term(self, cut_vars, wild_ok, bind_cap):
        t = self.peek()
        if t.kind == "hash":
            self.advance()
            cut_vars.add(t.text)
            return Var(t.text)
        if t.kind in ("ident", "number"):
            self.advance()
            return Const(t.text)
        if t.kind == "_":
            if not wild_ok:
                self.error("wildcards are only allowed in argument positions here")
            self.advance()
            return WILDCARD
        if t.kind == "!":
            if bind_cap in ("in", "read"):
                self.advance()
                return BindVar(self.expect_name("a binder name").text)
            self.error("binders are only allowed in in and read templates")
        if t.kind == "dollar":
            self.error(f"{t.text} is an obligation variable; aspect variables use #")
        self.error("expected a pattern term")

    # rec and cond expressions

    def parse_expr(self):
        left = self.parse_e_or()
        if self.at("kw", "implies"):
            self.advance()
            return EBin("implies", left, self.parse_expr())
        return left

    def _expr_chain(self, sub, op):
        left = sub()
        while self.at("kw", op):
            self.advance()
            left = EBin(op, left, sub())
        return left

    def parse_e_or(self):
        return self._expr_chain(self.parse_e_and, "or")

    def parse_e_and(self):
        return self._expr_chain(self.parse_e_oplus, "and")

    def parse_e_oplus(self):
        return self._expr_chain(self.parse_e_otimes, "oplus")

    def parse_e_otimes(self):
        return self._expr_chain(self.parse_e_unary, "otimes")

    def parse_e_unary(self):
        if self.at("kw", "not"):
            self.advance()
            return ENot(self.parse_e_unary())
        return self.parse_e_atom()

    def parse_e_atom(self):
        if self.at("kw", "true"):
            self.advance()
            return ETrue()
        if self.at("kw", "false"):
            self.advance()
            return EFalse()
        if self.at("("):
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if self.at("kw", "test"):
            self.advance()
            if self.at("'"):
                self.error("test' belongs to obligation predicates")
            args, at = self.parse_test_args()
            return ETest(args, at)
        if self.at("kw", "out") or self.at("kw", "in") or self.at("kw", "read"):
            template = self.parse_occurs_action()
            self.expect("occursin", what="occurs-in")
            var = self.expect_name("a continuation variable").text
            return EOccursIn(template, var)
        left = self.parse_expr_term()
        self.expect("=", what="= in a comparison")
        return EEqual(left, self.parse_expr_term())

    def parse_test_args(self):
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_expr_term())
            while self.at(","):
                self.advance()
                args.append(self.parse_expr_term())
        self.expect(")")
        self.expect("@")
        return tuple(args), self.parse_expr_term()

    def parse_expr_term(self):
        t = self.peek()
        if t.kind == "hash":
            self.advance()
            return Var(t.text)
        if t.kind in ("ident", "number"):
            self.advance()
            return Const(t.text)
        if t.kind == "_":
            self.error("wildcards cannot occur in recommendations or conditions")
        self.error("expected a constant or an aspect variable")

    def parse_occurs_action(self) -> Action:
        cap = self.advance().text
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_occurs_term(cap))
            while self.at(","):
                self.advance()
                args.append(self.parse_occurs_term(cap))
        self.expect(")")
        self.expect("@")
        target = self.parse_occurs_term(None)
        return Action(cap, tuple(args), target)

    def parse_occurs_term(self, bind_cap):
        t = self.peek()
        if t.kind == "hash":
            self.advance()
            return Var(t.text)
        if t.kind in ("ident", "number"):
            self.advance()
            return Const(t.text)
        if t.kind == "_" and bind_cap is not None:
            self.advance()
            return WILDCARD
        if t.kind == "!" and bind_cap in ("in", "read"):
            self.advance()
            return BindVar(self.expect_name("a binder name").text)
        self.error("expected a term in an action template")

    def _check_expr(self, e, what, cut_vars, cont_var, allowed_ops, tok):
        if isinstance(e, ENot):
            self._check_expr(e.body, what, cut_vars, cont_var, allowed_ops, tok)
        elif isinstance(e, EBin):
            if e.op not in allowed_ops:
                self.diags.append(Diagnostic(
                    "error", f"operator {e.op} is not allowed in a {what}",
                    tok.line, tok.col))
                raise _Stop()
            self._check_expr(e.left, what, cut_vars, cont_var, allowed_ops, tok)
            self._check_expr(e.right, what, cut_vars, cont_var, allowed_ops, tok)
        elif isinstance(e, EEqual):
            self._check_terms((e.left, e.right), what, cut_vars, tok)
        elif isinstance(e, ETest):
            self._check_terms(e.args + (e.at,), what, cut_vars, tok)
        elif isinstance(e, EOccursIn):
            if e.var != cont_var:
                self.diags.append(Diagnostic(
                    "error",
                    f"occurs-in refers to {e.var}, but the cut binds {cont_var}",
                    tok.line, tok.col))
                raise _Stop()
            self._check_terms(e.action.args + (e.action.target,), what,
                              cut_vars, tok)

    def _check_terms(self, terms, what, cut_vars, tok):
        for t in terms:
            if isinstance(t, Var) and t.name not in cut_vars:
                self.diags.append(Diagnostic(
                    "error", f"{t.name} is not bound by the cut", tok.line, tok.col))
                raise _Stop()

    # -- obligations ----------------------------------------------------------

    def parse_obligation(self) -> Obligation:
        self.expect("kw", "AG")
        self.expect("[")
        bound: set = set()
        subject = self.parse_obl_cut_term(bound, wild_ok=False)
        self.expect(":")
        cap_tok = self.expect("ident", what="a capability letter (o, i or r)")
        if cap_tok.text not in LETTER_CAP:
            self.error(f"unknown capability {cap_tok.text!r}, expected o, i or r",
                       cap_tok)
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_obl_cut_term(bound, wild_ok=True))
            while self.at(","):
                self.advance()
                args.append(self.parse_obl_cut_term(bound, wild_ok=True))
        self.expect(")")
        self.expect("@")
        tgt_tok = self.peek()
        if tgt_tok.kind == "dollar":
            self.error("the cut target must be a location constant")
        if tgt_tok.kind == "_":
            self.error("the cut target must be a location constant")
        target = Const(self.expect_name("a location constant").text) \
            if not self.at("number") else Const(self.advance().text)
        self.expect("]")
        pred = self.parse_pred(frozenset(bound))
        self.expect("eof", what="end of input")
        return Obligation(LabelPattern(subject, cap_tok.text, tuple(args), target),
                          pred)

    def parse_obl_cut_term(self, bound, wild_ok):
        t = self.peek()
        if t.kind == "dollar":
            self.advance()
            bound.add(t.text)
            return Var(t.text)
        if t.kind in ("ident", "number"):
            self.advance()
            return Const(t.text)
        if t.kind == "_":
            if not wild_ok:
                self.error("wildcards are only allowed in argument positions here")
            self.advance()
            return WILDCARD
        if t.kind == "hash":
            self.error(f"{t.text} is an aspect variable; obligation variables use $")
        self.error("expected a pattern term")

    def parse_pred(self, bound):
        if self.at("kw", "forall") or self.at("kw", "exists"):
            cls = PForall if self.advance().text == "forall" else PExists
            var_tok = self.peek()
            if var_tok.kind != "dollar":
                self.error("quantified variables carry a $ sigil")
            self.advance()
            self.expect(":")
            return cls(var_tok.text, self.parse_pred(bound | {var_tok.text}))
        return self.parse_p_or(bound)

    def parse_p_or(self, bound):
        left = self.parse_p_and(bound)
        while self.at("kw", "or"):
            self.advance()
            left = POr(left, self.parse_p_and(bound))
        return left

    def parse_p_and(self, bound):
        left = self.parse_p_unary(bound)
        while self.at("kw", "and"):
            self.advance()
            left = PAnd(left, self.parse_p_unary(bound))
        return left

    def parse_p_unary(self, bound):
        if self.at("kw", "not"):
            self.advance()
            return PNot(self.parse_p_unary(bound))
        return self.parse_p_atom(bound)

    def parse_p_atom(self, bound):
        if self.at("kw", "true"):
            self.advance()
            return PTrue()
        if self.at("kw", "false"):
            self.advance()
            return PFalse()
        if self.at("("):
            self.advance()
            p = self.parse_pred(bound)
            self.expect(")")
            return p
        if self.at("kw", "test"):
            self.advance()
            post = False
            if self.at("'"):
                self.advance()
                post = True
            args, at = self.parse_pred_test_args(bound)
            return PTestPost(args, at) if post else PTest(args, at)
        left = self.parse_pred_term(bound)
        if self.at("="):
            self.advance()
            return PEqual(left, self.parse_pred_term(bound))
        if self.at(">="):
            self.advance()
            return PGeq(left, self.parse_pred_term(bound))
        self.error("expected = or >= in a comparison")

    def parse_pred_test_args(self, bound):
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_pred_term(bound))
            while self.at(","):
                self.advance()
                args.append(self.parse_pred_term(bound))
        self.expect(")")
        self.expect("@")
        return tuple(args), self.parse_pred_term(bound)

    def parse_pred_term(self, bound):
        t = self.peek()
        if t.kind == "dollar":
            if t.text not in bound:
                self.error(f"{t.text} is not bound by the cut or a quantifier")
            self.advance()
            return Var(t.text)
        if t.kind in ("ident", "number"):
            self.advance()
            return Const(t.text)
        if t.kind == "hash":
            self.error(f"{t.text} is an aspect variable; obligation variables use $")
        self.error("expected a constant or an obligation variable")


def _run(parser: _Parser, entry):
    try:
        result = entry()
    except _Stop:
        raise ParseError(parser.diags) from None
    if any(d.severity == "error" for d in parser.diags):
        raise ParseError(parser.diags)
    return result


def parse_net(src: str) -> Net:
    """Parse a network and return its canonical form."""
    p = _Parser(src)
    return canonicalize(_run(p, p.parse_net))


def parse_policy(src: str):
    p = _Parser(src)

    def entry():
        pol = p.parse_policy()
        p.expect("eof", what="end of input")
        return pol
    return _run(p, entry)


def parse_obligation(src: str) -> Obligation:
    p = _Parser(src)
    return _run(p, p.parse_obligation)


# ---------------------------------------------------------------------------
# rendering

def render_term(t) -> str:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        return t.name
    if isinstance(t, BindVar):
        return "!" + t.name
    if isinstance(t, Wildcard):
        return "_"
    raise TypeError(f"not a term: {t!r}")


def render_action(a: Action) -> str:
    args = ", ".join(render_term(t) for t in a.args)
    return f"{a.cap}({args})@{render_term(a.target)}"


def _render_term_proc(p) -> str:
    if isinstance(p, (Par,)) or (isinstance(p, Sum) and len(p.branches) > 1):
        return f"({render_process(p)})"
    return render_process(p)


def render_process(p) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Sum):
        parts = [f"{render_action(a)} . {_render_term_proc(c)}"
                 for a, c in p.branches]
        return " + ".join(parts)
    if isinstance(p, Par):
        return f"{render_process(p.left)} | {render_process(p.right)}"
    if isinstance(p, Repl):
        return f"* {_render_term_proc(p.body)}"
    raise TypeError(f"not a process: {p!r}")


_POL_LEVEL = {"implies": 1, "or": 2, "and": 3, "oplus": 4, "otimes": 5, "pref": 6}


def _pol_level(p) -> int:
    if isinstance(p, CombinePol):
        return _POL_LEVEL[p.op]
    if isinstance(p, NotPol):
        return 7
    return 8


def render_policy(p) -> str:
    if isinstance(p, TruePol):
        return "true"
    if isinstance(p, FalsePol):
        return "false"
    if isinstance(p, NotPol):
        body = render_policy(p.body)
        if isinstance(p.body, CombinePol):
            body = f"({body})"
        return f"not {body}"
    if isinstance(p, CombinePol):
        lvl = _POL_LEVEL[p.op]
        right_assoc = p.op == "implies"
        left = render_policy(p.left)
        right = render_policy(p.right)
        if _pol_level(p.left) < lvl or (right_assoc and _pol_level(p.left) == lvl):
            left = f"({left})"
        if _pol_level(p.right) < lvl or (not right_assoc and _pol_level(p.right) == lvl):
            right = f"({right})"
        return f"{left} {p.op} {right}"
    if isinstance(p, AspectPol):
        return render_aspect(p.aspect)
    raise TypeError(f"not a policy: {p!r}")


def render_cut(c: Cut) -> str:
    return (f"{render_term(c.subject)} :: {render_action(c.action)}"
            f" . {c.cont_var}")


def render_aspect(a: Aspect) -> str:
    return f"[{render_expr(a.rec)} if {render_cut(a.cut)} : {render_expr(a.cond)}]"


_EXPR_LEVEL = {"implies": 1, "or": 2, "and": 3, "oplus": 4, "otimes": 5}


def _expr_level(e) -> int:
    if isinstance(e, EBin):
        return _EXPR_LEVEL[e.op]
    if isinstance(e, ENot):
        return 6
    return 7


def render_expr(e) -> str:
    if isinstance(e, ETrue):
        return "true"
    if isinstance(e, EFalse):
        return "false"
    if isinstance(e, ENot):
        body = render_expr(e.body)
        if isinstance(e.body, (EBin, EEqual, EOccursIn)):
            body = f"({body})"
        return f"not {body}"
    if isinstance(e, EBin):
        lvl = _EXPR_LEVEL[e.op]
        right_assoc = e.op == "implies"
        left = render_expr(e.left)
        right = render_expr(e.right)
        if _expr_level(e.left) < lvl or (right_assoc and _expr_level(e.left) == lvl):
            left = f"({left})"
        if _expr_level(e.right) < lvl or (not right_assoc and _expr_level(e.right) == lvl):
            right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, EEqual):
        return f"{render_term(e.left)} = {render_term(e.right)}"
    if isinstance(e, ETest):
        args = ", ".join(render_term(t) for t in e.args)
        return f"test({args})@{render_term(e.at)}"
    if isinstance(e, EOccursIn):
        return f"{render_action(e.action)} occurs-in {e.var}"
    raise TypeError(f"not an expression: {e!r}")


def render_entry(e: NetEntry) -> str:
    pol = render_policy(e.policy)
    if e.is_data():
        return f"{e.location} ::[{pol}] <{', '.join(e.body)}>"
    return f"{e.location} ::[{pol}] {render_process(e.body)}"


def render_net(n: Net) -> str:
    return "\n|| ".join(render_entry(e) for e in n.entries)


def _pred_level(p) -> int:
    if isinstance(p, (PForall, PExists)):
        return 1
    if isinstance(p, POr):
        return 2
    if isinstance(p, PAnd):
        return 3
    if isinstance(p, PNot):
        return 4
    return 5


def render_pred(p) -> str:
    if isinstance(p, PTrue):
        return "true"
    if isinstance(p, PFalse):
        return "false"
    if isinstance(p, PNot):
        body = render_pred(p.body)
        if _pred_level(p.body) < 5:
            body = f"({body})"
        return f"not {body}"
    if isinstance(p, (PAnd, POr)):
        op, lvl = ("and", 3) if isinstance(p, PAnd) else ("or", 2)
        left = render_pred(p.left)
        right = render_pred(p.right)
        if _pred_level(p.left) < lvl:
            left = f"({left})"
        if _pred_level(p.right) <= lvl:
            right = f"({right})"
        return f"{left} {op} {right}"
    if isinstance(p, (PForall, PExists)):
        word = "forall" if isinstance(p, PForall) else "exists"
        return f"{word} {p.var} : {render_pred(p.body)}"
    if isinstance(p, PEqual):
        return f"{render_term(p.left)} = {render_term(p.right)}"
    if isinstance(p, PGeq):
        return f"{render_term(p.left)} >= {render_term(p.right)}"
    if isinstance(p, (PTest, PTestPost)):
        mark = "'" if isinstance(p, PTestPost) else ""
        args = ", ".join(render_term(t) for t in p.args)
        return f"test{mark}({args})@{render_term(p.at)}"
    raise TypeError(f"not a predicate: {p!r}")


def render_obligation(o: Obligation) -> str:
    cut = o.cut
    args = ", ".join(render_term(t) for t in cut.args)
    pattern = (f"{render_term(cut.subject)} : {cut.cap}({args})"
               f"@{render_term(cut.target)}")
    return f"AG [{pattern}] {render_pred(o.pred)}"


def render(obj) -> str:
    """Render any syntax object back to source text."""
    if isinstance(obj, Net):
        return render_net(obj)
    if isinstance(obj, NetEntry):
        return render_entry(obj)
    if isinstance(obj, Obligation):
        return render_obligation(obj)
    if isinstance(obj, (TruePol, FalsePol, NotPol, CombinePol, AspectPol)):
        return render_policy(obj)
    if isinstance(obj, (Nil, Sum, Par, Repl)):
        return render_process(obj)
    if isinstance(obj, Action):
        return render_action(obj)
    if isinstance(obj, (PTrue, PFalse, PNot, PAnd, POr, PForall, PExists,
                        PEqual, PTest, PTestPost, PGeq)):
        return render_pred(obj)
    if isinstance(obj, (ETrue, EFalse, ENot, EBin, EEqual, ETest, EOccursIn)):
        return render_expr(obj)
    if isinstance(obj, (Const, Var, BindVar, Wildcard)):
        return render_term(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
