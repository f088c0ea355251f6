"""Expression semantics and the immediate consequence operators.

Two evaluators live here and deliberately share no code:

* ``eval2`` works on dense two-valued interpretations and applies tables
  directly by slicing;
* ``Evaluator3`` implements the three-valued semantics.  Predicate values are
  kept lazy (a head plus the argument tuples applied so far) and entries are
  only computed on request through a *view*, an object with a
  ``point(pred, args) -> trit`` method.  The dense operators below use a view
  over a full table; the tabled engine plugs in a demand-driven one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .domains import FALSE, TRUE, UNDEF, BudgetConfig, Domain, check_pair, leq2, leq3
from .errors import ExtensionBudgetExceeded, InconsistentPair
from .typesys import BOOL, IND, TApp, TConst, TEq, TInd, TNeg, TVar, TypedProgram


def make_domain(P: TypedProgram, budgets: BudgetConfig | None = None) -> Domain:
    return Domain(P.universe, budgets)


def spine(e):
    args = []
    while isinstance(e, TApp):
        args.append(e.arg)
        e = e.fn
    args.reverse()
    return e, args


# -- interpretations ---------------------------------------------------------------

@dataclass
class PairInterp:
    lo: dict
    hi: dict

    def __post_init__(self):
        for p in self.lo:
            if not leq2(self.lo[p], self.hi[p]):
                raise InconsistentPair(f"pair is not consistent at {p}")

    def three_valued(self):
        return {p: check_pair(self.lo[p], self.hi[p]) for p in self.lo}

    @classmethod
    def from3(cls, I3):
        lo, hi = {}, {}
        for p, pv in I3.items():
            lo[p], hi[p] = check_pair(*pv)
        return cls(lo, hi)

    def is_exact(self):
        return self.lo == self.hi


def bottom2(P, dom):
    return {p: 0 for p in P.signature}


def top2(P, dom):
    return {p: dom.full(ty) for p, ty in P.signature.items()}


def undef3(P, dom):
    return {p: (0, dom.full(ty)) for p, ty in P.signature.items()}


def exact3(I2):
    return {p: (v, v) for p, v in I2.items()}


# -- two-valued semantics ----------------------------------------------------------

def eval2(e, I, s, dom: Domain):
    """Two-valued value of ``e``: an individual index, 0/1 for ``o``, or a table."""
    if isinstance(e, TVar):
        return s[e.name]
    if isinstance(e, TInd):
        return e.index
    if isinstance(e, TConst):
        return I.get(e.name, 0)
    if isinstance(e, TApp):
        f = eval2(e.fn, I, s, dom)
        a = eval2(e.arg, I, s, dom)
        return dom.apply(e.fn.ty, f, a)
    if isinstance(e, TNeg):
        return 1 - eval2(e.body, I, s, dom)
    if isinstance(e, TEq):
        return int(eval2(e.left, I, s, dom) == eval2(e.right, I, s, dom))
    raise TypeError(f"not a typed expression: {e!r}")


def eval2_body(body, I, s, dom) -> int:
    for b in body:
        if not eval2(b, I, s, dom):
            return 0
    return 1


def _states(rule, args, dom):
    base = {name: a for (name, _), a in zip(rule.params, args)}
    names = [n for n, _ in rule.exists]
    spaces = [dom.enumerate_values(t) for _, t in rule.exists]
    for combo in itertools.product(*spaces):
        s = dict(base)
        s.update(zip(names, combo))
        yield s


def tp2(P: TypedProgram, I, dom: Domain | None = None):
    """Two-valued immediate consequence operator on a dense interpretation."""
    dom = dom or make_domain(P)
    out = {}
    for p, ty in P.signature.items():
        n = dom.check_dense(ty)
        table = 0
        rules = P.rules_by_pred[p]
        for t in range(n):
            args = dom.decode(ty, t)
            if any(eval2_body(r.body, I, s, dom) for r in rules for s in _states(r, args, dom)):
                table |= 1 << (n - 1 - t)
        out[p] = table
    return out


def is_model2(P, I, dom=None) -> bool:
    T = tp2(P, I, dom)
    return all(leq2(T[p], I[p]) for p in P.signature)


# -- three-valued semantics ---------------------------------------------------------

class Lazy:
    """A predicate value: glb (precision order) of ``head`` applied to each combo.

    ``head`` is a table (``is_var``) of type ``hty`` or a predicate constant name.
    A lazy value with ``head is None`` is the all-undefined value (widening).
    """

    __slots__ = ("head", "is_var", "hty", "ty", "combos")

    def __init__(self, head, is_var, hty, ty, combos):
        self.head = head
        self.is_var = is_var
        self.hty = hty
        self.ty = ty
        self.combos = combos

    def key(self):
        return (self.is_var, self.head, self.ty, tuple(self.combos))


_WIDE = object()


class DenseView:
    """Point access to a dense three-valued interpretation."""

    def __init__(self, dom, signature, I3):
        self.dom = dom
        self.sig = signature
        self.I3 = I3

    def point(self, pred, args):
        ty = self.sig[pred]
        lo, hi = self.I3[pred]
        n = self.dom.tuple_count(ty)
        sh = n - 1 - self.dom.index_of(ty, args)
        return ((lo >> sh) & 1) + ((hi >> sh) & 1)


class Evaluator3:
    """Three-valued evaluation of expressions and rule bodies against a view."""

    def __init__(self, dom: Domain, signature, view, widen=False):
        self.dom = dom
        self.sig = signature
        self.view = view
        self.widen = widen
        self.widened = False
        self._mcache = {}

    # values ---------------------------------------------------------------

    def trit(self, e, s) -> int:
        if isinstance(e, TApp):
            return self._app_trit(e, s)
        if isinstance(e, TNeg):
            return 2 - self.trit(e.body, s)
        if isinstance(e, TEq):
            return TRUE if self._ind(e.left, s) == self._ind(e.right, s) else FALSE
        if isinstance(e, TConst):
            return self.view.point(e.name, ())
        if isinstance(e, TVar):
            return 2 * s[e.name]
        raise TypeError(f"expression {e!r} does not have type o")

    def _ind(self, e, s):
        if isinstance(e, TInd):
            return e.index
        return s[e.name]

    def value(self, e, s):
        """Individual index, trit, or ``Lazy`` according to the type of ``e``."""
        ty = e.ty
        if ty == IND:
            return self._ind(e, s)
        if ty == BOOL:
            return self.trit(e, s)
        if isinstance(e, TVar):
            return Lazy(s[e.name], True, ty, ty, [()])
        if isinstance(e, TConst):
            return Lazy(e.name, False, ty, ty, [()])
        head, args = spine(e)
        lists = [self._candidates(a, s) for a in args]
        if any(l is _WIDE for l in lists):
            return Lazy(None, False, ty, ty, [])
        if isinstance(head, TVar):
            return Lazy(s[head.name], True, head.ty, ty, list(itertools.product(*lists)))
        return Lazy(head.name, False, head.ty, ty, list(itertools.product(*lists)))

    def _candidates(self, a, s):
        """Two-valued values above the value of argument ``a``, in probing order."""
        ty = a.ty
        if ty == IND:
            return [self._ind(a, s)]
        if isinstance(a, TVar):
            return [s[a.name]]
        if ty == BOOL:
            t = self.trit(a, s)
            return [0, 1] if t == UNDEF else [t >> 1]
        pv = self.materialize(self.value(a, s))
        lo, hi = pv
        if lo == hi:
            return [lo]
        try:
            exts = self.dom.extensions(ty, pv)
        except ExtensionBudgetExceeded:
            if not self.widen:
                raise
            self.widened = True
            return _WIDE
        return [lo, hi] + exts[1:-1]

    def _app_trit(self, e, s):
        head, args = spine(e)
        lists = []
        for a in args:
            c = self._candidates(a, s)
            if c is _WIDE:
                return UNDEF
            lists.append(c)
        res = None
        if isinstance(head, TVar):
            v, hty, dom = s[head.name], head.ty, self.dom
            for combo in itertools.product(*lists):
                t = 2 * dom.bit(hty, v, combo)
                if res is None:
                    res = t
                elif res != t:
                    return UNDEF
            return res
        point = self.view.point
        name = head.name
        for combo in itertools.product(*lists):
            t = point(name, combo)
            if res is None:
                res = t
            elif res != t:
                return UNDEF
            if res == UNDEF:
                return UNDEF
        return res

    def materialize(self, lz: Lazy):
        """Dense ``(lo, hi)`` table of a lazy value."""
        dom = self.dom
        n = dom.check_dense(lz.ty)
        if lz.head is None:
            return (0, (1 << n) - 1)
        key = lz.key()
        hit = self._mcache.get(key)
        if hit is not None:
            return hit
        if lz.is_var:
            lo, hi = (1 << n) - 1, 0
            for combo in lz.combos:
                v, t = lz.head, lz.hty
                for a in combo:
                    v = dom.apply(t, v, a)
                    t = t.res
                lo &= v
                hi |= v
        else:
            lo = hi = 0
            point = self.view.point
            name = lz.head
            for t in range(n):
                rest = dom.decode(lz.ty, t)
                res = None
                for combo in lz.combos:
                    x = point(name, combo + rest)
                    if res is None:
                        res = x
                    elif res != x:
                        res = UNDEF
                    if res == UNDEF:
                        break
                bit = 1 << (n - 1 - t)
                if res == TRUE:
                    lo |= bit
                    hi |= bit
                elif res == UNDEF:
                    hi |= bit
        out = (lo, hi)
        self._mcache[key] = out
        return out

    def pval(self, e, s):
        """Public three-valued value: index for ``i``, ``(lo, hi)`` otherwise."""
        v = self.value(e, s)
        if e.ty == IND:
            return v
        if e.ty == BOOL:
            return (int(v == TRUE), int(v != FALSE))
        return self.materialize(v)

    # rule bodies --------------------------------------------------------------

    def rule_value(self, rule, args, plan) -> int:
        """Lub over states of the glb of the body conjuncts, for one head tuple."""
        self._mcache = {}
        s = {name: a for (name, _), a in zip(rule.params, args)}
        return self._body(rule.body, plan, 0, s)

    def _body(self, body, plan, i, s):
        if i == len(body):
            return TRUE
        best = FALSE
        names, spaces = plan[i]
        conj = body[i]
        for combo in itertools.product(*spaces) if names else ((),):
            for n, v in zip(names, combo):
                s[n] = v
            t = self.trit(conj, s)
            if t == FALSE:
                continue
            if t > best:
                r = self._body(body, plan, i + 1, s)
                if r < t:
                    t = r
                if t > best:
                    best = t
                    if best == TRUE:
                        break
        for n in names:
            s.pop(n, None)
        return best


def binding_plan(rule, dom: Domain):
    """For each conjunct, the existential variables first occurring in it."""
    from .typesys import subterms
    types = dict(rule.exists)
    bound = {n for n, _ in rule.params}
    plan = []
    for conj in rule.body:
        names = []
        for x in subterms(conj):
            if isinstance(x, TVar) and x.name not in bound and x.name not in names:
                names.append(x.name)
        bound.update(names)
        plan.append((names, [dom.enumerate_values(types[n]) for n in names]))
    return plan


def point_value(ev: Evaluator3, rules, plans, args) -> int:
    best = FALSE
    for r, plan in zip(rules, plans):
        t = ev.rule_value(r, args, plan)
        if t > best:
            best = t
            if best == TRUE:
                break
    return best


def eval3(e, I3, s, dom: Domain, signature, widen=False):
    ev = Evaluator3(dom, signature, DenseView(dom, signature, I3), widen)
    return ev.pval(e, s)


def tp3(P: TypedProgram, I3, dom: Domain | None = None, widen=False):
    """Three-valued immediate consequence operator on a dense interpretation."""
    dom = dom or make_domain(P)
    ev = Evaluator3(dom, P.signature, DenseView(dom, P.signature, I3), widen)
    out = {}
    for p, ty in P.signature.items():
        n = dom.check_dense(ty)
        rules = P.rules_by_pred[p]
        plans = [binding_plan(r, dom) for r in rules]
        lo = hi = 0
        for t in range(n):
            v = point_value(ev, rules, plans, dom.decode(ty, t))
            bit = 1 << (n - 1 - t)
            if v == TRUE:
                lo |= bit
            if v != FALSE:
                hi |= bit
        out[p] = (lo, hi)
    return out


def approx(P, pair: PairInterp, dom=None, widen=False) -> PairInterp:
    """The approximator: the three-valued operator transported to pairs."""
    return PairInterp.from3(tp3(P, pair.three_valued(), dom, widen))


def is_model3(P, I3, dom=None) -> bool:
    T = tp3(P, I3, dom)
    return all(leq3(T[p], I3[p]) for p in P.signature)


def is_model_pair(P, pair: PairInterp, dom=None) -> bool:
    A = approx(P, pair, dom)
    return all(leq2(A.lo[p], pair.lo[p]) and leq2(A.hi[p], pair.hi[p]) for p in P.signature)
