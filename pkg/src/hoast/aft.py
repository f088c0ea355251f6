"""Supported, Kripke-Kleene, well-founded and stable semantics.

The functions working on whole interpretations (``lfp_first``,
``well_founded`` and friends) iterate the dense operators of
:mod:`hoast.evaluation` and need every predicate table to fit the dense
budget.  ``solve`` handles arbitrary programs with the demand-driven engine
of :mod:`hoast.tabled`, restricted to a seeded set of points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .domains import FALSE, TRUE, UNDEF, BudgetConfig
from .errors import BudgetExceeded
from .evaluation import PairInterp, approx, bottom2, is_model2, make_domain, top2
from .tabled import Engine, NeedRestart
from .typesys import TypedProgram


# -- dense reference iterations ----------------------------------------------------

def _fix(step, x, cap):
    for _ in range(cap):
        y = step(x)
        if y == x:
            return x
        x = y
    from .errors import IterationCapExceeded
    raise IterationCapExceeded(f"no fixpoint after {cap} iterations")


def lfp_first(P: TypedProgram, J, budgets=None):
    """Least fixpoint of ``X -> A(X, J)_1`` below ``J``."""
    dom = make_domain(P, budgets)
    cap = dom.budgets.iteration_cap

    def step(X):
        A = approx(P, PairInterp(X, J), dom)
        return {p: A.lo[p] & J[p] for p in P.signature}

    return _fix(step, bottom2(P, dom), cap)


def lfp_second(P: TypedProgram, I, budgets=None):
    """Least fixpoint of ``Y -> A(I, Y)_2`` above ``I``."""
    dom = make_domain(P, budgets)
    cap = dom.budgets.iteration_cap

    def step(Y):
        A = approx(P, PairInterp(I, Y), dom)
        return {p: A.hi[p] | I[p] for p in P.signature}

    return _fix(step, dict(I), cap)


def kripke_kleene(P: TypedProgram, budgets=None) -> PairInterp:
    dom = make_domain(P, budgets)
    start = PairInterp(bottom2(P, dom), top2(P, dom))
    out = _fix(lambda pr: _as_key(approx(P, _from_key(pr), dom)), _as_key(start),
               dom.budgets.iteration_cap)
    return _from_key(out)


def _as_key(pair):
    return (tuple(sorted(pair.lo.items())), tuple(sorted(pair.hi.items())))


def _from_key(k):
    return PairInterp(dict(k[0]), dict(k[1]))


def well_founded(P: TypedProgram, budgets=None) -> PairInterp:
    """Alternate the two least fixpoints from (bottom, top) until nothing changes."""
    dom = make_domain(P, budgets)
    I, J = bottom2(P, dom), top2(P, dom)
    for _ in range(dom.budgets.iteration_cap):
        I2, J2 = lfp_first(P, J, budgets), lfp_second(P, I, budgets)
        if I2 == I and J2 == J:
            return PairInterp(I, J)
        I, J = I2, J2
    from .errors import IterationCapExceeded
    raise IterationCapExceeded("stable revision did not converge")


def is_stable_pair(P: TypedProgram, pair: PairInterp, budgets=None) -> bool:
    return (lfp_first(P, pair.hi, budgets) == pair.lo
            and lfp_second(P, pair.lo, budgets) == pair.hi)


def is_supported_pair(P: TypedProgram, pair: PairInterp, budgets=None) -> bool:
    A = approx(P, pair, make_domain(P, budgets))
    return A.lo == pair.lo and A.hi == pair.hi


def check_minimal(P: TypedProgram, M, budgets=None, max_points=22) -> bool:
    """True iff no model of ``P`` lies strictly below ``M`` (brute force)."""
    dom = make_domain(P, budgets)
    preds = list(P.signature)
    bits = []
    for p in preds:
        n = dom.check_dense(P.signature[p])
        for i in range(n):
            if (M[p] >> i) & 1:
                bits.append((p, i))
    if len(bits) > max_points:
        raise BudgetExceeded("minimality scan (true points)", len(bits), max_points)
    for mask in range((1 << len(bits)) - 1):
        sub = {p: 0 for p in preds}
        for k, (p, i) in enumerate(bits):
            if (mask >> k) & 1:
                sub[p] |= 1 << i
        if is_model2(P, sub, dom):
            return False
    return True


def enumerate_stable2(P: TypedProgram, budgets=None):
    """All two-valued stable models as dense interpretations, in canonical order."""
    dom = make_domain(P, budgets)
    res = solve(P, "stable", budgets, seeds=all_points(P, dom))
    out = []
    for m in res.models:
        I = {p: 0 for p in P.signature}
        for (p, args), v in m.items():
            if v:
                n = dom.tuple_count(P.signature[p])
                I[p] |= 1 << (n - 1 - dom.index_of(P.signature[p], args))
        out.append(I)
    return out


def all_points(P, dom, limit=None):
    pts = []
    for p, ty in P.signature.items():
        n = dom.tuple_count(ty)
        if limit is not None and n > limit:
            continue
        dom.check_dense(ty)
        pts.extend((p, a) for a in dom.points(ty))
    return pts


# -- demand-driven solving -------------------------------------------------------------

@dataclass
class SolveResult:
    semantics: str
    # point -> trit, for wf and kk
    values: dict = field(default_factory=dict)
    # list of point -> bool, for stable
    models: list = field(default_factory=list)
    # predicates whose tables cover only demanded points
    partial: list = field(default_factory=list)
    widened: set = field(default_factory=set)
    stats: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def flags(self):
        out = []
        if self.widened:
            out.append("widened")
        if self.partial:
            out.append("unexplored")
        if not out:
            out.append("exact")
        return out

    def pair(self, P, dom):
        """The result as a dense pair (only when every table is complete)."""
        lo = {p: 0 for p in P.signature}
        hi = {p: 0 for p in P.signature}
        for (p, args), t in self.values.items():
            n = dom.tuple_count(P.signature[p])
            bit = 1 << (n - 1 - dom.index_of(P.signature[p], args))
            if t == TRUE:
                lo[p] |= bit
            if t != FALSE:
                hi[p] |= bit
        return PairInterp(lo, hi)


def default_seeds(P, dom, budgets):
    limit = min(budgets.seed_budget, budgets.dense_table_budget)
    return all_points(P, dom, limit)


def solve(P: TypedProgram, semantics="wf", budgets=None, widen=False, seeds=None) -> SolveResult:
    """Compute a semantics on the closure of ``seeds`` (default: all small predicates)."""
    budgets = budgets or BudgetConfig()
    dom = make_domain(P, budgets)
    if seeds is None:
        seeds = default_seeds(P, dom, budgets)
    seeds = list(dict.fromkeys(seeds))
    restarts = 0
    while True:
        eng = Engine(P, budgets, widen, mode="kk" if semantics == "kk" else "wf")
        try:
            eng.ensure(seeds)
            models = eng.stable_models(seeds) if semantics == "stable" else []
        except NeedRestart as r:
            restarts += 1
            seeds = seeds + sorted(r.points - set(seeds), key=eng.point_key)
            continue
        break
    stats = dict(eng.stats)
    stats["points"] = len(eng.final)
    stats["search_restarts"] = restarts
    res = SolveResult(semantics, dict(eng.final), models, stats=stats)
    counts = Counter(p for p, _ in eng.final)
    res.partial = [p for p, ty in P.signature.items() if counts[p] != dom.tuple_count(ty)]
    res.widened = set(eng.tainted)
    return res


def verify_stable_models(P, res: SolveResult, budgets=None) -> bool:
    """Cross-check enumerated models with the dense definition (small programs only)."""
    dom = make_domain(P, budgets)
    for m in res.models:
        I = {p: 0 for p in P.signature}
        for (p, args), v in m.items():
            if v:
                n = dom.tuple_count(P.signature[p])
                I[p] |= 1 << (n - 1 - dom.index_of(P.signature[p], args))
        if not is_stable_pair(P, PairInterp(I, dict(I)), budgets):
            return False
    return True


def undefined_points(values):
    return [pt for pt, t in values.items() if t == UNDEF]

