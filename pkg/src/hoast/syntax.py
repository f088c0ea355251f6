"""Surface syntax: lexer, parser, desugaring and pretty printing of ``.hol`` text.

Grammar (rule terminator ``.`` is mandatory)::

    program   := (directive | rule)*
    directive := '#const' IDENT* '.'  |  '#type' IDENT ':' type '.'
    type      := tatom ('->' type)?          tatom := 'o' | 'i' | '(' type ')'
    rule      := expr (':-' expr (',' expr)*)? '.'
    expr      := app ('=' app)?
    app       := atom atom*                  (left associative)
    atom      := IDENT | '(' expr ')' | '~' atom

Identifiers starting with an uppercase letter are variables, lowercase ones
are constants; both may contain letters, digits, ``_`` and ``'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .errors import DesugarError, LexError, ParseError


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int

    @property
    def span(self):
        return (self.line, self.col)


_PUNCT = {",": ",", "~": "~", "=": "=", "(": "(", ")": ")", ".": "."}


def _ident_char(c):
    return c.isalnum() or c in "_'"


def tokenize(text: str) -> list[Token]:
    """Split source text into tokens; ``%`` starts a line comment."""
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        if c == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = (line, col)
        if c.isalpha() and c.isascii():
            j = i
            while j < n and _ident_char(text[j]):
                j += 1
            tokens.append(Token("ident", text[i:j], *start))
            col += j - i
            i = j
        elif c == ":":
            if text.startswith(":-", i):
                tokens.append(Token(":-", ":-", *start))
                i, col = i + 2, col + 2
            else:
                tokens.append(Token(":", ":", *start))
                i, col = i + 1, col + 1
        elif c == "-" and text.startswith("->", i):
            tokens.append(Token("->", "->", *start))
            i, col = i + 2, col + 2
        elif c == "#":
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in ("#const", "#type"):
                raise LexError(f"unknown directive {word!r}", start)
            tokens.append(Token(word, word, *start))
            col += j - i
            i = j
        elif c in _PUNCT:
            tokens.append(Token(_PUNCT[c], c, *start))
            i, col = i + 1, col + 1
        else:
            raise LexError(f"unexpected character {c!r}", start)
    return tokens


# -- raw syntax trees -------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class App:
    fn: "RawExpr"
    arg: "RawExpr"
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    body: "RawExpr"
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Eq:
    left: "RawExpr"
    right: "RawExpr"
    span: tuple = field(default=(0, 0), compare=False)


RawExpr = Union[Var, Sym, App, Neg, Eq]


@dataclass(frozen=True)
class RawRule:
    head: RawExpr
    body: tuple = ()
    span: tuple = field(default=(0, 0), compare=False)

    @property
    def name(self):
        return spine(self.head)[0].name

    @property
    def args(self):
        return spine(self.head)[1]


@dataclass
class SurfaceProgram:
    rules: list = field(default_factory=list)
    consts: list = field(default_factory=list)
    # (name, raw type, span); raw type is 'o', 'i' or ('->', a, b)
    types: list = field(default_factory=list)


def spine(e):
    """Decompose ``f a1 .. an`` into ``(f, [a1, .., an])``."""
    args = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fn
    args.reverse()
    return e, args


def apply_spine(fn, args):
    for a in args:
        fn = App(fn, a, fn.span)
    return fn


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _end_span(self):
        if self.toks:
            last = self.toks[-1]
            return (last.line, last.col + len(last.text))
        return (1, 1)

    def expect(self, kind, what=None):
        tok = self.peek()
        if tok is None or tok.kind != kind:
            want = what or repr(kind)
            if tok is None:
                raise ParseError(f"expected {want}, found end of input", self._end_span(), want)
            raise ParseError(f"expected {want}, found {tok.text!r}", tok.span, want)
        self.i += 1
        return tok

    def program(self):
        prog = SurfaceProgram()
        seen = set()
        while self.peek() is not None:
            tok = self.peek()
            if tok.kind == "#const":
                self.i += 1
                while self.peek() is not None and self.peek().kind == "ident":
                    name = self.expect("ident").text
                    if not name[0].islower():
                        raise ParseError(f"#const expects lowercase names, got {name!r}",
                                         self.toks[self.i - 1].span, "constant")
                    if name not in prog.consts:
                        prog.consts.append(name)
                self.expect(".", "'.'")
            elif tok.kind == "#type":
                self.i += 1
                name_tok = self.expect("ident", "a constant name")
                self.expect(":", "':'")
                ty = self.type_expr()
                self.expect(".", "'.'")
                prog.types.append((name_tok.text, ty, name_tok.span))
            else:
                rule = self.rule()
                if rule not in seen:
                    seen.add(rule)
                    prog.rules.append(rule)
        return prog

    def type_expr(self):
        left = self.type_atom()
        if self.peek() is not None and self.peek().kind == "->":
            self.i += 1
            return ("->", left, self.type_expr())
        return left

    def type_atom(self):
        tok = self.peek()
        if tok is not None and tok.kind == "(":
            self.i += 1
            t = self.type_expr()
            self.expect(")", "')'")
            return t
        tok = self.expect("ident", "a type")
        if tok.text not in ("o", "i"):
            raise ParseError(f"unknown base type {tok.text!r}", tok.span, "'o' or 'i'")
        return tok.text

    def rule(self):
        start = self.peek()
        head = self.expr()
        root, _ = spine(head)
        if not isinstance(root, Sym):
            raise ParseError("rule head must be an application rooted at a lowercase constant",
                             start.span, "head")
        body = []
        tok = self.peek()
        if tok is not None and tok.kind == ":-":
            self.i += 1
            body.append(self.expr())
            while self.peek() is not None and self.peek().kind == ",":
                self.i += 1
                body.append(self.expr())
        self.expect(".", "',' or '.'")
        return RawRule(head, tuple(body), start.span)

    def expr(self):
        left = self.app()
        tok = self.peek()
        if tok is not None and tok.kind == "=":
            self.i += 1
            right = self.app()
            return Eq(left, right, tok.span)
        return left

    def _starts_atom(self):
        tok = self.peek()
        return tok is not None and tok.kind in ("ident", "(", "~")

    def app(self):
        if not self._starts_atom():
            tok = self.peek()
            if tok is None:
                raise ParseError("expected an expression, found end of input",
                                 self._end_span(), "expression")
            raise ParseError(f"expected an expression, found {tok.text!r}", tok.span, "expression")
        e = self.atom()
        while self._starts_atom():
            e = App(e, self.atom(), e.span)
        return e

    def atom(self):
        tok = self.peek()
        if tok.kind == "ident":
            self.i += 1
            if tok.text[0].isupper():
                return Var(tok.text, tok.span)
            return Sym(tok.text, tok.span)
        if tok.kind == "~":
            self.i += 1
            if not self._starts_atom():
                nxt = self.peek()
                raise ParseError("'~' must be followed by an identifier or a parenthesized group",
                                 nxt.span if nxt else self._end_span(), "atom")
            return Neg(self.atom(), tok.span)
        self.expect("(", "'('")
        e = self.expr()
        self.expect(")", "')'")
        return e


def parse_program(tokens) -> SurfaceProgram:
    return _Parser(list(tokens)).program()


def parse_text(text: str) -> SurfaceProgram:
    return parse_program(tokenize(text))


def parse_expression(text: str) -> RawExpr:
    """Parse a single expression (used for queries)."""
    p = _Parser(tokenize(text))
    e = p.expr()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError(f"unexpected {tok.text!r} after expression", tok.span, "end of input")
    return e


# -- desugaring -------------------------------------------------------------

def _names(e, acc):
    if isinstance(e, Var):
        acc.add(e.name)
    elif isinstance(e, App):
        _names(e.fn, acc)
        _names(e.arg, acc)
    elif isinstance(e, Neg):
        _names(e.body, acc)
    elif isinstance(e, Eq):
        _names(e.left, acc)
        _names(e.right, acc)
    return acc


def _fresh(base, used):
    name = base
    while name in used:
        name += "'"
    used.add(name)
    return name


def _fresh_for_constant(used):
    for base in ("X", "Y", "Z"):
        if base not in used:
            used.add(base)
            return base
    k = 1
    while f"X{k}" in used:
        k += 1
    used.add(f"X{k}")
    return f"X{k}"


def desugar_rule(rule: RawRule, defined=frozenset()) -> RawRule:
    root, args = spine(rule.head)
    used = set()
    _names(rule.head, used)
    for b in rule.body:
        _names(b, used)
    seen = set()
    new_args, eqs = [], []
    for a in args:
        if isinstance(a, Var):
            if a.name in seen:
                fresh = Var(_fresh(a.name, used), a.span)
                eqs.append(Eq(Var(a.name, a.span), fresh, a.span))
                new_args.append(fresh)
            else:
                seen.add(a.name)
                new_args.append(a)
        elif isinstance(a, Sym):
            if a.name in defined:
                raise DesugarError(
                    f"head argument {a.name!r} of {root.name!r} is a predicate constant; "
                    "only individual constants may appear in head argument positions", a.span)
            fresh = Var(_fresh_for_constant(used), a.span)
            seen.add(fresh.name)
            eqs.append(Eq(fresh, a, a.span))
            new_args.append(fresh)
        else:
            raise DesugarError(
                f"head argument {pretty_expr(a)!r} of {root.name!r} is not a variable or "
                "individual constant", a.span)
    if not eqs:
        return rule
    return RawRule(apply_spine(root, new_args), tuple(eqs) + tuple(rule.body), rule.span)


def desugar(program: SurfaceProgram) -> SurfaceProgram:
    """Rewrite rule heads so that their arguments are pairwise distinct variables."""
    defined = {r.name for r in program.rules}
    out, seen = [], set()
    for r in program.rules:
        d = desugar_rule(r, defined)
        if d not in seen:
            seen.add(d)
            out.append(d)
    return SurfaceProgram(out, list(program.consts), list(program.types))


def head_distinctness_errors(program: SurfaceProgram) -> list:
    """Return (span, message) for each rule whose head arguments are not distinct variables."""
    errs = []
    for r in program.rules:
        names = []
        for a in r.args:
            if not isinstance(a, Var):
                errs.append((a.span, f"head argument {pretty_expr(a)} of {r.name} is not a variable"))
            elif a.name in names:
                errs.append((a.span, f"variable {a.name} repeated in the head of {r.name}"))
            else:
                names.append(a.name)
    return errs


# -- pretty printing --------------------------------------------------------

def _atomic(e):
    return isinstance(e, (Var, Sym))


def pretty_expr(e) -> str:
    if isinstance(e, (Var, Sym)):
        return e.name
    if isinstance(e, App):
        fn = pretty_expr(e.fn) if isinstance(e.fn, (Var, Sym, App)) else f"({pretty_expr(e.fn)})"
        arg = pretty_expr(e.arg) if _atomic(e.arg) else f"({pretty_expr(e.arg)})"
        return f"{fn} {arg}"
    if isinstance(e, Neg):
        inner = pretty_expr(e.body)
        return f"~{inner}" if _atomic(e.body) else f"~({inner})"
    if isinstance(e, Eq):
        def side(x):
            return f"({pretty_expr(x)})" if isinstance(x, Eq) else pretty_expr(x)
        return f"{side(e.left)} = {side(e.right)}"
    raise TypeError(f"not an expression: {e!r}")


def pretty_type(t) -> str:
    if isinstance(t, str):
        return t
    _, a, b = t
    left = pretty_type(a) if isinstance(a, str) else f"({pretty_type(a)})"
    return f"{left} -> {pretty_type(b)}"


def pretty_rule(r: RawRule) -> str:
    head = pretty_expr(r.head)
    if not r.body:
        return head + "."
    return head + " :- " + ", ".join(pretty_expr(b) for b in r.body) + "."


def pretty(program: SurfaceProgram) -> str:
    lines = []
    if program.consts:
        lines.append("#const " + " ".join(program.consts) + ".")
    for name, ty, _ in program.types:
        lines.append(f"#type {name} : {pretty_type(ty)}.")
    lines.extend(pretty_rule(r) for r in program.rules)
    return "\n".join(lines) + ("\n" if lines else "")
