"""Type inference and monomorphization.

Every defined predicate gets a type scheme generalized over its free type
variables (predicates are generalized in dependency order, callees first,
with mutually recursive groups kept monomorphic).  Each use site
instantiates the scheme, and the program is then expanded into one copy of
each definition per concrete instantiation.  Lowercase symbols without rules
share one monomorphic type per program: they become individuals when their
type is ``i`` and rule-less predicates otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .errors import HolTypeError, KindError
from . import syntax as S


# -- types ------------------------------------------------------------------

class Ty:
    __slots__ = ()


@dataclass(frozen=True)
class Base(Ty):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow(Ty):
    arg: object
    res: object

    def __post_init__(self):
        if self.res == Base("i"):
            raise ValueError("an arrow type cannot return individuals")

    def __str__(self):
        a = str(self.arg)
        if isinstance(self.arg, Arrow):
            a = f"({a})"
        return f"{a} -> {self.res}"


BOOL = Base("o")
IND = Base("i")


def arrow(*tys):
    """``arrow(a, b, c)`` is ``a -> b -> c``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


def pred_type(args):
    return arrow(*args, BOOL)


def is_predicate_type(t) -> bool:
    if t == BOOL:
        return True
    return isinstance(t, Arrow) and is_argument_type(t.arg) and is_predicate_type(t.res)


def is_argument_type(t) -> bool:
    return t == IND or is_predicate_type(t)


def type_order(t) -> int:
    """0 for ``i`` and ``o``, otherwise one more than the highest argument order."""
    if not isinstance(t, Arrow):
        return 0
    return max(type_order(t.arg) + 1, type_order(t.res))


def from_raw(raw) -> Ty:
    if raw == "o":
        return BOOL
    if raw == "i":
        return IND
    _, a, b = raw
    return Arrow(from_raw(a), from_raw(b))


# -- typed expressions --------------------------------------------------------

@dataclass(frozen=True)
class TVar:
    name: str
    ty: Ty
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TConst:
    """A predicate constant."""
    name: str
    ty: Ty
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TInd:
    """An individual constant; ``index`` points into the universe."""
    name: str
    index: int
    span: tuple = field(default=(0, 0), compare=False)

    @property
    def ty(self):
        return IND


@dataclass(frozen=True)
class TApp:
    fn: object
    arg: object
    ty: Ty
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TNeg:
    body: object
    span: tuple = field(default=(0, 0), compare=False)

    @property
    def ty(self):
        return BOOL


@dataclass(frozen=True)
class TEq:
    left: object
    right: object
    span: tuple = field(default=(0, 0), compare=False)

    @property
    def ty(self):
        return BOOL


@dataclass(frozen=True)
class TypedRule:
    pred: str
    params: tuple          # ((name, Ty), ...)
    body: tuple            # typed expressions of type o
    exists: tuple          # ((name, Ty), ...) body-only variables, first occurrence order
    span: tuple = field(default=(0, 0), compare=False)


@dataclass
class Diagnostic:
    severity: str
    span: Optional[tuple]
    message: str

    def render(self, filename="<input>"):
        line, col = self.span if self.span else (0, 0)
        return f"{filename}:{line}:{col}: {self.severity}: {self.message}"


@dataclass
class TypedProgram:
    rules: list
    signature: dict          # predicate constant -> Ty, in canonical order
    universe: list
    warnings: list = field(default_factory=list)
    base_name: dict = field(default_factory=dict)   # instance name -> source name
    instances: dict = field(default_factory=dict)   # source name -> [instance names]

    def __post_init__(self):
        self.rules_by_pred = {p: [] for p in self.signature}
        for r in self.rules:
            self.rules_by_pred[r.pred].append(r)

    @property
    def preds(self):
        return list(self.signature)

    def ind_index(self, name):
        return self.universe.index(name)


def subterms(e):
    yield e
    if isinstance(e, TApp):
        yield from subterms(e.fn)
        yield from subterms(e.arg)
    elif isinstance(e, TNeg):
        yield from subterms(e.body)
    elif isinstance(e, TEq):
        yield from subterms(e.left)
        yield from subterms(e.right)


def constants_in(e):
    return [x.name for x in subterms(e) if isinstance(x, TConst)]


def pretty_typed(e) -> str:
    if isinstance(e, (TVar, TConst, TInd)):
        return e.name
    if isinstance(e, TApp):
        fn = pretty_typed(e.fn)
        if isinstance(e.fn, (TNeg, TEq)):
            fn = f"({fn})"
        arg = pretty_typed(e.arg)
        if not isinstance(e.arg, (TVar, TConst, TInd)):
            arg = f"({arg})"
        return f"{fn} {arg}"
    if isinstance(e, TNeg):
        inner = pretty_typed(e.body)
        return f"~{inner}" if isinstance(e.body, (TVar, TConst, TInd)) else f"~({inner})"
    return f"{pretty_typed(e.left)} = {pretty_typed(e.right)}"


def pretty_typed_rule(r: TypedRule) -> str:
    head = " ".join([r.pred] + [n for n, _ in r.params])
    if not r.body:
        return head + "."
    return head + " :- " + ", ".join(pretty_typed(b) for b in r.body) + "."


# -- unification ----------------------------------------------------------------

class _TV:
    _ids = itertools.count()

    __slots__ = ("id", "ref", "pred_kind")

    def __init__(self, pred_kind=False):
        self.id = next(_TV._ids)
        self.ref = None
        self.pred_kind = pred_kind

    def __repr__(self):
        return f"t{self.id}"


def _resolve(t):
    while isinstance(t, _TV) and t.ref is not None:
        t = t.ref
    return t


def _show(t) -> str:
    t = _resolve(t)
    if isinstance(t, _TV):
        return f"'t{t.id}"
    if isinstance(t, Arrow):
        a = _show(t.arg)
        if isinstance(_resolve(t.arg), Arrow):
            a = f"({a})"
        return f"{a} -> {_show(t.res)}"
    return str(t)


def _occurs(v, t):
    t = _resolve(t)
    if t is v:
        return True
    if isinstance(t, Arrow):
        return _occurs(v, t.arg) or _occurs(v, t.res)
    return False


def _mark_pred(t, span):
    t = _resolve(t)
    if isinstance(t, _TV):
        t.pred_kind = True
    elif t == IND:
        raise KindError("an application cannot produce an individual (result type i)", span)
    elif isinstance(t, Arrow):
        _mark_pred(t.res, span)


def _unify(a, b, span, what="expression"):
    a, b = _resolve(a), _resolve(b)
    if a is b:
        return
    if isinstance(a, _TV) or isinstance(b, _TV):
        v, t = (a, b) if isinstance(a, _TV) else (b, a)
        if _occurs(v, t):
            raise HolTypeError(f"infinite type: {_show(v)} occurs in {_show(t)}", span,
                               _show(v), _show(t))
        if v.pred_kind:
            _mark_pred(t, span)
        v.ref = t
        return
    if isinstance(a, Arrow) and isinstance(b, Arrow):
        _unify(a.arg, b.arg, span, what)
        _unify(a.res, b.res, span, what)
        return
    if a == b:
        return
    raise HolTypeError(f"type mismatch in {what}: {_show(a)} vs {_show(b)}", span, _show(a), _show(b))


def _ftv(t, acc):
    t = _resolve(t)
    if isinstance(t, _TV):
        if t not in acc:
            acc.append(t)
    elif isinstance(t, Arrow):
        _ftv(t.arg, acc)
        _ftv(t.res, acc)
    return acc


def _subst(t, mapping):
    t = _resolve(t)
    if isinstance(t, _TV):
        return mapping.get(t, t)
    if isinstance(t, Arrow):
        return Arrow(_subst(t.arg, mapping), _subst(t.res, mapping))
    return t


def _from_raw_tv(raw):
    return from_raw(raw)


# -- inference AST ----------------------------------------------------------------

@dataclass(eq=False)
class _IVar:
    name: str
    tv: object
    span: tuple


@dataclass(eq=False)
class _ISym:
    name: str
    ty: object
    span: tuple
    kind: str                      # 'local' | 'poly' | 'free'
    inst: dict = field(default_factory=dict)


@dataclass(eq=False)
class _IApp:
    fn: object
    arg: object
    res: object
    span: tuple


@dataclass(eq=False)
class _INeg:
    body: object
    span: tuple


@dataclass(eq=False)
class _IEq:
    left: object
    right: object
    span: tuple


@dataclass(eq=False)
class _IRule:
    pred: str
    params: list
    body: list
    exists: list
    span: tuple


def _node_type(n):
    if isinstance(n, _IVar):
        return n.tv
    if isinstance(n, _ISym):
        return n.ty
    if isinstance(n, _IApp):
        return n.res
    return BOOL


def _body_syms(e, acc):
    if isinstance(e, S.Sym):
        acc.append(e)
    elif isinstance(e, S.App):
        _body_syms(e.fn, acc)
        _body_syms(e.arg, acc)
    elif isinstance(e, S.Neg):
        _body_syms(e.body, acc)
    elif isinstance(e, S.Eq):
        _body_syms(e.left, acc)
        _body_syms(e.right, acc)
    return acc


def _body_vars(e, acc):
    if isinstance(e, S.Var):
        if e.name not in acc:
            acc.append(e.name)
    elif isinstance(e, S.App):
        _body_vars(e.fn, acc)
        _body_vars(e.arg, acc)
    elif isinstance(e, S.Neg):
        _body_vars(e.body, acc)
    elif isinstance(e, S.Eq):
        _body_vars(e.left, acc)
        _body_vars(e.right, acc)
    return acc


class _Inferencer:
    def __init__(self, prog: S.SurfaceProgram):
        self.prog = prog
        self.defined = {}
        for r in prog.rules:
            self.defined.setdefault(r.name, []).append(r)
        self.consts = list(prog.consts)
        for c in self.consts:
            if c in self.defined:
                span = self.defined[c][0].span
                raise HolTypeError(f"{c!r} is declared as an individual but has rules", span, "i", "predicate")
        self.free = {}
        self.annot = {}
        for name, raw, span in prog.types:
            t = from_raw(raw)
            if not (t == IND or is_predicate_type(t)):
                raise KindError(f"#type {name}: {t} is not a valid type", span)
            if name in self.annot and self.annot[name][0] != t:
                raise HolTypeError(f"conflicting #type annotations for {name!r}", span,
                                   str(self.annot[name][0]), str(t))
            self.annot[name] = (t, span)
        for c in self.consts:
            self._free_type(c, None)
            _unify(self.free[c], IND, None, f"#const {c}")
        self.mono = {}
        self.schemes = {}
        self.scc_of = {}
        self.irules = {}
        self.warnings = []

    def _free_type(self, name, span):
        if name not in self.free:
            tv = _TV()
            self.free[name] = tv
            if name in self.annot:
                t, aspan = self.annot[name]
                _unify(tv, t, aspan, f"#type annotation of {name}")
        return self.free[name]

    def run(self):
        g = nx.DiGraph()
        order = {p: i for i, p in enumerate(self.defined)}
        g.add_nodes_from(self.defined)
        for p, rules in self.defined.items():
            for r in rules:
                for b in r.body:
                    for s in _body_syms(b, []):
                        if s.name in self.defined:
                            g.add_edge(s.name, p)       # callee before caller
        cond = nx.condensation(g)
        members = cond.graph["mapping"]
        comps = {}
        for p, c in members.items():
            comps.setdefault(c, []).append(p)
        for c in comps:
            comps[c].sort(key=order.get)
        topo = list(nx.lexicographical_topological_sort(cond, key=lambda c: order[comps[c][0]]))
        self.sccs = [comps[c] for c in topo]
        for scc in self.sccs:
            self._infer_scc(scc)
        self.callers = {p: set() for p in self.defined}
        for u, v in g.edges:
            if self.scc_of[u] != self.scc_of[v]:
                self.callers[u].add(v)
        for name in self.annot:
            if name not in self.defined:
                self._free_type(name, None)

    def _infer_scc(self, scc):
        key = tuple(scc)
        for p in scc:
            self.scc_of[p] = key
            self.mono[p] = _TV(pred_kind=True)
            if p in self.annot:
                t, span = self.annot[p]
                _unify(self.mono[p], t, span, f"#type annotation of {p}")
        for p in scc:
            self.irules[p] = [self._infer_rule(r, key) for r in self.defined[p]]
        env = []
        for t in self.free.values():
            _ftv(t, env)
        envset = set(env)
        for p in scc:
            qs = [v for v in _ftv(self.mono[p], []) if v not in envset]
            self.schemes[p] = (self.mono[p], qs)

    def _infer_rule(self, r: S.RawRule, scc_key):
        env = {}
        params = []
        for a in r.args:
            tv = _TV()
            env[a.name] = tv
            params.append((a.name, tv))
        head_t = pred_type([tv for _, tv in params])
        _unify(self.mono[r.name], head_t, r.span, f"head of {r.name}")
        body = []
        for b in r.body:
            n = self._infer(b, env, scc_key)
            _unify(_node_type(n), BOOL, b.span, "body conjunct (must have type o)")
            body.append(n)
        head_vars = {n for n, _ in params}
        exists = []
        for b in r.body:
            for v in _body_vars(b, []):
                if v not in head_vars and v not in [x for x, _ in exists]:
                    exists.append((v, env[v]))
        return _IRule(r.name, params, body, exists, r.span)

    def _infer(self, e, env, scc_key):
        if isinstance(e, S.Var):
            if e.name not in env:
                env[e.name] = _TV()
            return _IVar(e.name, env[e.name], e.span)
        if isinstance(e, S.Sym):
            if e.name in self.defined:
                if self.scc_of.get(e.name) == scc_key:
                    return _ISym(e.name, self.mono[e.name], e.span, "local")
                t, qs = self.schemes[e.name]
                mapping = {q: _TV(pred_kind=q.pred_kind) for q in qs}
                return _ISym(e.name, _subst(t, mapping), e.span, "poly", mapping)
            return _ISym(e.name, self._free_type(e.name, e.span), e.span, "free")
        if isinstance(e, S.App):
            fn = self._infer(e.fn, env, scc_key)
            arg = self._infer(e.arg, env, scc_key)
            res = _TV(pred_kind=True)
            _unify(_node_type(fn), Arrow(_node_type(arg), res), e.span, "application")
            return _IApp(fn, arg, res, e.span)
        if isinstance(e, S.Neg):
            body = self._infer(e.body, env, scc_key)
            _unify(_node_type(body), BOOL, e.span, "negation (operand must have type o)")
            return _INeg(body, e.span)
        if isinstance(e, S.Eq):
            left = self._infer(e.left, env, scc_key)
            right = self._infer(e.right, env, scc_key)
            _unify(_node_type(left), IND, e.span, "equality (operands must have type i)")
            _unify(_node_type(right), IND, e.span, "equality (operands must have type i)")
            return _IEq(left, right, e.span)
        raise TypeError(f"unexpected node {e!r}")


class _Concretizer:
    """Turns inference types into concrete ones under an instance substitution."""

    def __init__(self, warnings):
        self.warnings = warnings
        self._warned = set()

    def conc(self, t, sigma, span=None, what=None):
        t = _resolve(t)
        if isinstance(t, _TV):
            if t in sigma:
                return sigma[t]
            d = BOOL if t.pred_kind else IND
            if what is not None and (what, t.id) not in self._warned:
                self._warned.add((what, t.id))
                self.warnings.append(Diagnostic(
                    "warning", span, f"unconstrained type in {what} defaulted to {d}"))
            return d
        if isinstance(t, Arrow):
            return Arrow(self.conc(t.arg, sigma, span, what), self.conc(t.res, sigma, span, what))
        return t


def _match(t, concrete, sigma):
    t = _resolve(t)
    if isinstance(t, _TV):
        sigma.setdefault(t, concrete)
    elif isinstance(t, Arrow) and isinstance(concrete, Arrow):
        _match(t.arg, concrete.arg, sigma)
        _match(t.res, concrete.res, sigma)


def infer_types(program: S.SurfaceProgram) -> TypedProgram:
    """Desugar, infer and monomorphize ``program``."""
    prog = S.desugar(program)
    inf = _Inferencer(prog)
    inf.run()
    warnings = []
    cz = _Concretizer(warnings)

    # free symbols: individuals or rule-less predicates
    free_ty = {}
    for name, tv in inf.free.items():
        t = cz.conc(tv, {}, None, f"symbol {name}")
        if not (t == IND or is_predicate_type(t)):
            raise KindError(f"symbol {name!r} has invalid type {t}")
        free_ty[name] = t

    # monomorphization worklist
    instances = {p: [] for p in inf.defined}
    work = []

    def add_instance(p, ty, span=None):
        if ty not in instances[p]:
            instances[p].append(ty)
            work.append((p, ty))

    for scc in inf.sccs:
        for p in scc:
            mono, qs = inf.schemes[p]
            if not qs:
                add_instance(p, cz.conc(mono, {}, None, f"predicate {p}"))
            elif not inf.callers[p]:
                sigma = {q: (BOOL if q.pred_kind else IND) for q in qs}
                ty = cz.conc(mono, sigma)
                warnings.append(Diagnostic(
                    "warning", inf.defined[p][0].span,
                    f"polymorphic predicate {p} has no use site; instantiated at {ty}"))
                add_instance(p, ty)

    def scan(n, sigma, span_what):
        if isinstance(n, _ISym) and n.name in inf.defined:
            if n.kind == "local":
                ty = cz.conc(n.ty, sigma, n.span, span_what)
            else:
                _, qs = inf.schemes[n.name]
                sub = {q: cz.conc(n.inst[q], sigma, n.span, span_what) for q in qs}
                ty = cz.conc(inf.schemes[n.name][0], sub)
            add_instance(n.name, ty)
        elif isinstance(n, _IApp):
            scan(n.fn, sigma, span_what)
            scan(n.arg, sigma, span_what)
        elif isinstance(n, _INeg):
            scan(n.body, sigma, span_what)
        elif isinstance(n, _IEq):
            scan(n.left, sigma, span_what)
            scan(n.right, sigma, span_what)

    def sigma_for(p, ty):
        sigma = {}
        _match(inf.mono[p], ty, sigma)
        return sigma

    while work:
        p, ty = work.pop(0)
        sigma = sigma_for(p, ty)
        for r in inf.irules[p]:
            for b in r.body:
                scan(b, sigma, f"a rule for {p}")

    inst_name = {}
    for p, tys in instances.items():
        for k, ty in enumerate(tys, 1):
            inst_name[(p, ty)] = p if len(tys) == 1 else f"{p}@{k}"

    # universe: declared constants, then occurrence order
    universe = []
    for c in prog.consts:
        if c not in universe:
            universe.append(c)
    for r in prog.rules:
        for e in (r.head,) + tuple(r.body):
            for s in _body_syms(e, []):
                if s.name in free_ty and free_ty[s.name] == IND and s.name not in universe:
                    universe.append(s.name)
    for name, t in free_ty.items():
        if t == IND and name not in universe:
            universe.append(name)
    index = {c: i for i, c in enumerate(universe)}

    def build(n, sigma, what):
        if isinstance(n, _IVar):
            return TVar(n.name, cz.conc(n.tv, sigma, n.span, what), n.span)
        if isinstance(n, _ISym):
            if n.name in inf.defined:
                if n.kind == "local":
                    ty = cz.conc(n.ty, sigma, n.span, what)
                else:
                    _, qs = inf.schemes[n.name]
                    sub = {q: cz.conc(n.inst[q], sigma, n.span, what) for q in qs}
                    ty = cz.conc(inf.schemes[n.name][0], sub)
                return TConst(inst_name[(n.name, ty)], ty, n.span)
            t = free_ty[n.name]
            if t == IND:
                return TInd(n.name, index[n.name], n.span)
            return TConst(n.name, t, n.span)
        if isinstance(n, _IApp):
            fn = build(n.fn, sigma, what)
            arg = build(n.arg, sigma, what)
            return TApp(fn, arg, fn.ty.res, n.span)
        if isinstance(n, _INeg):
            return TNeg(build(n.body, sigma, what), n.span)
        return _eq(build(n.left, sigma, what), build(n.right, sigma, what), n.span)

    def _eq(l, r, span):
        return TEq(l, r, span)

    # canonical predicate order: first occurrence of the source symbol
    signature = {}
    base_name = {}
    inst_lists = {}
    seen_syms = []
    for r in prog.rules:
        if r.name not in seen_syms:
            seen_syms.append(r.name)
        for b in r.body:
            for s in _body_syms(b, []):
                if s.name not in seen_syms:
                    seen_syms.append(s.name)
    for name in list(free_ty):
        if name not in seen_syms:
            seen_syms.append(name)
    for name in seen_syms:
        if name in inf.defined:
            inst_lists[name] = []
            for ty in instances[name]:
                iname = inst_name[(name, ty)]
                signature[iname] = ty
                base_name[iname] = name
                inst_lists[name].append(iname)
        elif free_ty.get(name, IND) != IND:
            signature[name] = free_ty[name]
            base_name[name] = name
            inst_lists[name] = [name]

    rules = []
    for name in seen_syms:
        if name not in inf.defined:
            continue
        for ty in instances[name]:
            sigma = sigma_for(name, ty)
            iname = inst_name[(name, ty)]
            for r in inf.irules[name]:
                what = f"a rule for {name}"
                params = tuple((v, cz.conc(tv, sigma, r.span, what)) for v, tv in r.params)
                body = tuple(build(b, sigma, what) for b in r.body)
                exists = tuple((v, cz.conc(tv, sigma, r.span, what)) for v, tv in r.exists)
                rules.append(TypedRule(iname, params, body, exists, r.span))

    for iname, ty in signature.items():
        if not is_predicate_type(ty):
            raise KindError(f"predicate {iname} has invalid type {ty}")
    return TypedProgram(rules, signature, universe, warnings, base_name, inst_lists)


# -- checks and queries ----------------------------------------------------------

def check_program(tp, budgets=None) -> list:
    """Diagnostics for a typed program (or head problems of a surface program)."""
    if isinstance(tp, S.SurfaceProgram):
        return [Diagnostic("error", span, msg) for span, msg in S.head_distinctness_errors(tp)]
    from .domains import BudgetConfig, Domain
    dom = Domain(tp.universe, budgets or BudgetConfig())
    out = list(tp.warnings)
    for r in tp.rules:
        names = [n for n, _ in r.params]
        if len(set(names)) != len(names):
            out.append(Diagnostic("error", r.span, f"head variables of {r.pred} are not distinct"))
        for b in r.body:
            if b.ty != BOOL:
                out.append(Diagnostic("error", b.span, "body conjunct does not have type o"))
            for x in subterms(b):
                if isinstance(x, TEq) and (x.left.ty != IND or x.right.ty != IND):
                    out.append(Diagnostic("error", x.span, "equality between non-individuals"))
        for v, ty in r.exists:
            c = dom.value_count(ty)
            if c > dom.budgets.enum_budget:
                out.append(Diagnostic(
                    "warning", r.span,
                    f"existential variable {v} : {ty} in a rule for {r.pred} ranges over "
                    f"{dom.describe_count(ty)} values (enumeration budget {dom.budgets.enum_budget})"))
    return out


QUERY = "__query"


def query_program(program: S.SurfaceProgram, expr):
    """Extend ``program`` with a rule defining ``__query`` from the expression.

    Returns ``(typed program, arity)``; the query predicate has one argument
    per argument of the expression's type (0 for a formula).
    """
    if isinstance(expr, str):
        expr = S.parse_expression(expr)
    probe = S.RawRule(S.Sym("__probe"), (S.App(S.Sym("__sink"), expr, expr.span),), expr.span)
    tp = infer_types(S.SurfaceProgram(list(program.rules) + [probe], list(program.consts),
                                      list(program.types)))
    ety = tp.signature["__sink"].arg
    if ety == IND:
        raise HolTypeError("a query must have a predicate type, not i", expr.span, "i", "o")
    from .domains import arg_types
    n = len(arg_types(ety))
    used = set()
    S._names(expr, used)
    vs = []
    for k in range(n):
        name = f"Q{k + 1}"
        while name in used:
            name += "'"
        used.add(name)
        vs.append(S.Var(name, expr.span))
    head = S.apply_spine(S.Sym(QUERY, expr.span), vs)
    body = S.apply_spine(expr, vs) if vs else expr
    rule = S.RawRule(head, (body,), expr.span)
    tp = infer_types(S.SurfaceProgram(list(program.rules) + [rule], list(program.consts),
                                      list(program.types)))
    return tp, n
