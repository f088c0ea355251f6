"""Demand-driven evaluation of the fixpoint operators.

Points are pairs ``(pred, args)`` with ``args`` a tuple of two-valued
argument values.  The engine splits the predicate dependency graph into
strongly connected components and solves them bottom-up: a component is only
iterated after every point it reads from lower components has its final
value.  Within a component, values are computed by chaotic worklist
iteration over the set of demanded points; reading a point that has not been
seen yet adds it to the set.

Three phases are iterated:

``kk``      three-valued values from all-undefined (precision order);
``first``   the certain part ``X -> A(X, J)_1`` from all-false, ``J`` fixed;
``second``  the possible part ``Y -> A(I, Y)_2`` from ``I``, ``I`` fixed.

The well-founded values are obtained by alternating ``first`` and ``second``
from ``(bottom, top)``.  When a later round reads a point the earlier rounds
never computed, the component is solved again from scratch with the enlarged
point set, so every round ranges over the same closed set of points.
"""

from __future__ import annotations

from collections import deque

import networkx as nx

from .domains import FALSE, TRUE, UNDEF, BudgetConfig, Domain
from .errors import IterationCapExceeded, SearchBudgetExceeded
from .evaluation import Evaluator3, binding_plan, point_value
from .typesys import TypedProgram, constants_in


def predicate_graph(P: TypedProgram):
    """Directed graph with an edge ``q -> p`` whenever ``q`` occurs in a rule for ``p``."""
    g = nx.DiGraph()
    g.add_nodes_from(P.signature)
    for r in P.rules:
        for b in r.body:
            for q in constants_in(b):
                g.add_edge(q, r.pred)
    return g


def components(P: TypedProgram):
    """Strongly connected components of the predicate graph, lower ones first."""
    g = predicate_graph(P)
    order = {p: i for i, p in enumerate(P.signature)}
    cond = nx.condensation(g)
    members = {}
    for p, c in cond.graph["mapping"].items():
        members.setdefault(c, []).append(p)
    for c in members:
        members[c].sort(key=order.get)
    topo = nx.lexicographical_topological_sort(cond, key=lambda c: order[members[c][0]])
    comps = [tuple(members[c]) for c in topo]
    where = {p: i for i, comp in enumerate(comps) for p in comp}
    deps = {}
    for i, comp in enumerate(comps):
        deps[i] = {where[q] for p in comp for q in g.predecessors(p)} - {i}
    return comps, deps


class NeedRestart(Exception):
    """Raised inside a search when a point outside the seeded closure is read."""

    def __init__(self, points):
        self.points = set(points)
        super().__init__(f"{len(self.points)} new point(s) demanded")


class DemandTable:
    """Partial per-predicate tables with read dependencies."""

    def __init__(self):
        self.values = {}
        self.deps = {}
        self.queue = deque()

    def __len__(self):
        return len(self.values)

    def __contains__(self, pt):
        return pt in self.values

    def get(self, pred, args, default=None):
        return self.values.get((pred, args), default)

    def points(self):
        return list(self.values)

    def by_pred(self):
        out = {}
        for (p, a), v in self.values.items():
            out.setdefault(p, {})[a] = v
        return out


class _Phase:
    """One chaotic iteration; acts as the view for the evaluator."""

    def __init__(self, engine, scope, kind, lower, fixed=None, default=None, strict=False,
                 closed=None):
        self.e = engine
        self.scope = scope
        self.kind = kind
        self.lower = lower
        self.fixed = fixed if fixed is not None else {}
        self.default = default
        self.strict = strict
        self.closed = closed if closed is not None else {}
        self.val = {}
        self.rdeps = {}
        self.queue = deque()
        self.inq = set()
        self.missing = set()
        self.current = None
        self.tainted = set()
        self.ev = Evaluator3(engine.dom, engine.P.signature, self, engine.widen)

    def _fixed(self, pt):
        v = self.fixed.get(pt)
        if v is None:
            self.missing.add(pt)
            return self.default
        return v

    def add(self, pt):
        if pt in self.val:
            return
        if self.strict:
            raise NeedRestart([pt])
        if self.kind == "kk":
            self.val[pt] = UNDEF
        elif self.kind == "first":
            self.val[pt] = False
        else:
            self.val[pt] = self._fixed(pt)
        self.rdeps[pt] = set()
        self.queue.append(pt)
        self.inq.add(pt)

    def seed(self, pts, values=None):
        for pt in pts:
            if pt in self.val:
                continue
            if values is not None and pt in values:
                self.val[pt] = values[pt]
                self.rdeps[pt] = set()
                self.queue.append(pt)
                self.inq.add(pt)
            else:
                strict, self.strict = self.strict, False
                self.add(pt)
                self.strict = strict

    def point(self, pred, args):
        pt = (pred, args)
        if pred not in self.scope:
            r = self.lower(pred, args)
            if self.e.tainted and pt in self.e.tainted:
                self.tainted.add(self.current)
            return r
        c = self.closed.get(pt)
        if c is not None:
            if pt in self.e.tainted:
                self.tainted.add(self.current)
            return c
        v = self.val.get(pt)
        if v is None:
            self.add(pt)
            v = self.val[pt]
        self.rdeps[pt].add(self.current)
        if self.kind == "kk":
            return v
        if self.kind == "first":
            if v:
                return TRUE
            return UNDEF if self._fixed(pt) else FALSE
        if self._fixed(pt):
            return TRUE
        return UNDEF if v else FALSE

    def evaluate(self, pt):
        pred, args = pt
        rules, plans = self.e.rules_for(pred)
        prev, self.current = self.current, pt
        self.ev.widened = False
        t = point_value(self.ev, rules, plans, args)
        if self.ev.widened:
            self.tainted.add(pt)
        self.current = prev
        return t

    def step_value(self, pt, t):
        if self.kind == "kk":
            return t
        if self.kind == "first":
            return t == TRUE and bool(self._fixed(pt))
        return bool(self._fixed(pt)) or t != FALSE

    def run(self):
        e = self.e
        cap = e.budgets.iteration_cap
        while self.queue:
            pt = self.queue.popleft()
            self.inq.discard(pt)
            e.stats["evaluations"] += 1
            if e.stats["evaluations"] > cap * 50:
                raise IterationCapExceeded(f"more than {cap * 50} point evaluations")
            new = self.step_value(pt, self.evaluate(pt))
            old = self.val[pt]
            if new == old:
                continue
            if self.kind == "kk":
                if old != UNDEF:
                    e.stats["nonmonotone"] += 1
                    continue
            elif old and not new:
                e.stats["nonmonotone"] += 1
                continue
            self.val[pt] = new
            e.stats["updates"] += 1
            if e.stats["updates"] > cap:
                raise IterationCapExceeded(f"more than {cap} updates")
            for d in self.rdeps.get(pt, ()):
                if d not in self.inq:
                    self.queue.append(d)
                    self.inq.add(d)
        return self.val

    def taint_closure(self):
        work = list(self.tainted)
        seen = set(work)
        while work:
            pt = work.pop()
            for d in self.rdeps.get(pt, ()):
                if d not in seen:
                    seen.add(d)
                    work.append(d)
        return seen


def _trit(i, j):
    return TRUE if i else (UNDEF if j else FALSE)


class Engine:
    """Solves the program component by component for the demanded points."""

    def __init__(self, P: TypedProgram, budgets: BudgetConfig | None = None, widen=False,
                 mode="wf"):
        if mode not in ("wf", "kk"):
            raise ValueError(f"unknown mode {mode!r}")
        self.P = P
        self.budgets = budgets or BudgetConfig()
        self.dom = Domain(P.universe, self.budgets)
        self.widen = widen
        self.mode = mode
        self.comps, self.comp_deps = components(P)
        self.comp_of = {p: i for i, c in enumerate(self.comps) for p in c}
        self.final = {}
        self.tainted = set()
        self.stats = {"evaluations": 0, "updates": 0, "nonmonotone": 0, "restarts": 0,
                      "batches": 0}
        self._rules = {}
        self._pred_pos = {p: i for i, p in enumerate(P.signature)}

    def rules_for(self, pred):
        hit = self._rules.get(pred)
        if hit is None:
            rules = self.P.rules_by_pred.get(pred, [])
            hit = (rules, [binding_plan(r, self.dom) for r in rules])
            self._rules[pred] = hit
        return hit

    def point_key(self, pt):
        return (self._pred_pos[pt[0]], pt[1])

    # -- well-founded / Kripke-Kleene values ------------------------------------

    def value(self, pred, args):
        pt = (pred, args)
        if pt not in self.final:
            self.ensure([pt])
        return self.final[pt]

    def _lower(self, pred, args):
        return self.value(pred, args)

    def ensure(self, points):
        by_comp = {}
        for pt in points:
            if pt not in self.final:
                by_comp.setdefault(self.comp_of[pt[0]], []).append(pt)
        for c in sorted(by_comp):
            todo = [pt for pt in by_comp[c] if pt not in self.final]
            if todo:
                self._solve_batch(c, todo)

    def _closed(self, c):
        return {pt: v for pt, v in self.final.items() if self.comp_of[pt[0]] == c}

    def _solve_batch(self, c, pts):
        self.stats["batches"] += 1
        scope = set(self.comps[c])
        closed = self._closed(c)
        if self.mode == "kk":
            ph = _Phase(self, scope, "kk", self._lower, closed=closed)
            ph.seed(pts)
            vals = ph.run()
            taint = ph.taint_closure()
            for pt, v in vals.items():
                self.final[pt] = v
            self.tainted |= taint
            return
        I, J, taint = self.alternate(scope, self._lower, pts, closed)
        for pt in I:
            self.final[pt] = _trit(I[pt], J[pt])
        self.tainted |= taint

    def alternate(self, scope, lower, pts, closed=None, strict=False):
        """Well-founded values of ``scope`` restricted to the closure of ``pts``."""
        D = list(dict.fromkeys(pts))
        while True:
            fi = _Phase(self, scope, "first", lower, default=True, closed=closed)
            se = _Phase(self, scope, "second", lower, default=False, closed=closed)
            fi.seed(D)
            se.seed(D)
            while True:
                fi.run()
                extra = [pt for pt in fi.val if pt not in se.val]
                se.seed(extra)
                se.run()
                extra = [pt for pt in se.val if pt not in fi.val]
                if not extra:
                    break
                fi.seed(extra)
            if strict and len(fi.val) != len(D):
                raise NeedRestart(pt for pt in fi.val if pt not in set(D))
            D = list(fi.val)
            I, J = dict(fi.val), dict(se.val)
            taint = fi.taint_closure() | se.taint_closure()
            restart = False
            while True:
                fi = _Phase(self, scope, "first", lower, fixed=J, default=True, closed=closed)
                se = _Phase(self, scope, "second", lower, fixed=I, default=False, closed=closed)
                fi.seed(D)
                se.seed(D)
                fi.run()
                se.run()
                taint |= fi.taint_closure() | se.taint_closure()
                new = [pt for pt in list(fi.val) + list(se.val) if pt not in I]
                if new or fi.missing or se.missing:
                    if strict:
                        raise NeedRestart(new or (fi.missing | se.missing))
                    D = D + [pt for pt in dict.fromkeys(new)]
                    restart = True
                    break
                if fi.val == I and se.val == J:
                    break
                I, J = dict(fi.val), dict(se.val)
            if restart:
                self.stats["restarts"] += 1
                continue
            return I, J, taint

    # -- fixed-interpretation iterations -------------------------------------------

    def lfp_phase(self, kind, pts, fixed=None, default=None, lower=None, scope=None,
                  strict=False, start=None):
        """Run one phase over ``scope`` (default: every predicate)."""
        scope = set(self.P.signature) if scope is None else scope
        ph = _Phase(self, scope, kind, lower or self._no_lower, fixed=fixed, default=default,
                    strict=False)
        ph.seed(pts, start)
        ph.strict = strict
        ph.run()
        return ph

    def _no_lower(self, pred, args):
        raise KeyError(f"no value for {pred} {args}")

    # -- stable models ----------------------------------------------------------

    def one_step(self, scope, lower, I, J, pts):
        """The three-valued operator once, at the pair (I, J), for each point."""
        ph = _Phase(self, scope, "second", lower, fixed=I, default=False, strict=True)
        ph.val = dict(J)
        ph.rdeps = {pt: set() for pt in J}
        out = {}
        for pt in pts:
            out[pt] = ph.evaluate(pt)
        return out

    def stable_models(self, seeds):
        """All two-valued stable models restricted to the closure of ``seeds``.

        Raises ``NeedRestart`` when the search reads a point outside the
        closure; the caller enlarges the seeds and tries again.
        """
        self.ensure(seeds)
        by_comp = {}
        for pt in sorted(self.final, key=self.point_key):
            by_comp.setdefault(self.comp_of[pt[0]], []).append(pt)
        affected = set()
        for c in range(len(self.comps)):
            pts = by_comp.get(c, [])
            if any(self.final[pt] == UNDEF for pt in pts) or self.comp_deps[c] & affected:
                affected.add(c)
        order = [c for c in range(len(self.comps)) if c in by_comp]
        models = []
        base = {pt: v == TRUE for pt, v in self.final.items()
                if self.comp_of[pt[0]] not in affected}
        self.stats["search_leaves"] = 0

        def rec(i, assign):
            while i < len(order) and order[i] not in affected:
                i += 1
            if i == len(order):
                models.append(dict(assign))
                return
            c = order[i]
            D = by_comp[c]
            scope = set(self.comps[c])

            def lower(pred, args):
                pt = (pred, args)
                v = assign.get(pt)
                if v is None:
                    raise NeedRestart([pt])
                return TRUE if v else FALSE

            I, J, _ = self.alternate(scope, lower, D, strict=True)
            undefined = [pt for pt in D if I[pt] != J[pt]]
            if len(undefined) > self.budgets.search_budget:
                raise SearchBudgetExceeded(len(undefined), self.budgets.search_budget)
            for M in self._branch(scope, lower, D, I, J):
                nxt = dict(assign)
                nxt.update(M)
                rec(i + 1, nxt)

        rec(0, dict(base))
        models.sort(key=lambda m: [0 if m[pt] else 1 for pt in sorted(m, key=self.point_key)])
        return models

    def _propagate(self, scope, lower, D, I, J):
        while True:
            X = self.lfp_phase("first", D, fixed=J, default=True, lower=lower, scope=scope,
                               strict=True).val
            T = self.one_step(scope, lower, I, J, D)
            I2 = {pt: I[pt] or X[pt] or T[pt] == TRUE for pt in D}
            J2 = {pt: J[pt] and T[pt] != FALSE for pt in D}
            if any(I2[pt] and not J2[pt] for pt in D):
                return None
            if I2 == I and J2 == J:
                return I, J
            I, J = I2, J2

    def _branch(self, scope, lower, D, I, J):
        res = self._propagate(scope, lower, D, I, J)
        if res is None:
            return
        I, J = res
        for pt in D:
            if I[pt] != J[pt]:
                for choice in (True, False):
                    I2, J2 = dict(I), dict(J)
                    I2[pt] = J2[pt] = choice
                    yield from self._branch(scope, lower, D, I2, J2)
                return
        self.stats["search_leaves"] += 1
        M = I
        X = self.lfp_phase("first", D, fixed=M, default=True, lower=lower, scope=scope,
                           strict=True).val
        if X == M:
            yield M


class _DenseLookup:
    """Point access to a dense two-valued interpretation (``get`` like a dict)."""

    def __init__(self, dom, signature, I2):
        self.dom = dom
        self.sig = signature
        self.I2 = I2

    def get(self, pt, default=None):
        pred, args = pt
        return bool(self.dom.bit(self.sig[pred], self.I2.get(pred, 0), args))


def tabled_lfp(P: TypedProgram, mode, fixed=None, seeds=(), budgets=None, widen=False):
    """Least fixpoint of one operator restricted to the demand closure of ``seeds``.

    ``mode`` is ``"first"`` (certain part, ``fixed`` is J), ``"second"``
    (possible part, ``fixed`` is I) or ``"kk"`` (three-valued, from
    all-undefined).  ``fixed`` is a dense two-valued interpretation or a
    mapping from points to booleans.
    """
    if mode not in ("first", "second", "kk"):
        raise ValueError(f"unknown mode {mode!r}")
    eng = Engine(P, budgets, widen)
    table = DemandTable()
    if not seeds:
        return table
    if mode != "kk" and isinstance(fixed, dict) and all(isinstance(k, str) for k in fixed):
        fixed = _DenseLookup(eng.dom, P.signature, fixed)
    ph = eng.lfp_phase(mode, list(seeds), fixed=fixed if mode != "kk" else None,
                       default=(mode == "first"))
    table.values = dict(ph.val)
    for pt, users in ph.rdeps.items():
        for u in users:
            table.deps.setdefault(u, set()).add(pt)
    table.stats = dict(eng.stats)
    return table
