"""Finite denotations of types.

Encoding conventions used throughout the package:

* an individual is its index into the Herbrand universe;
* a two-valued value of type ``o`` is 0 (false) or 1 (true);
* a two-valued value of a predicate type ``r1 -> .. -> rn -> o`` is a truth
  table stored as a Python ``int``.  Argument tuples are numbered
  lexicographically with the first argument most significant, and tuple
  number ``t`` lives at bit ``N - 1 - t`` where ``N`` is the number of tuples.
  Reading the table as a binary numeral therefore gives the canonical order,
  and every value is its own index in its value space;
* a three-valued value of a predicate type is, mathematically, a table of
  trits.  ``tau`` and ``tau_inv`` convert between such trit tables (tuples
  in canonical tuple order) and consistent pairs.  Internally the evaluators
  work on the pair encoding ``(lo, hi)`` with ``lo`` a subset of ``hi``: an
  entry is true when set in ``lo``, false when clear in ``hi`` and undefined
  otherwise;
* single three-valued truth values ("trits") are 0 (false), 1 (undef) and
  2 (true), so the truth order is integer order.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields
from typing import Iterator

from .errors import BudgetExceeded, ExtensionBudgetExceeded, InconsistentPair
from .typesys import BOOL, IND, Arrow, Ty

FALSE, UNDEF, TRUE = 0, 1, 2
TRIT_NAMES = {FALSE: "false", UNDEF: "undef", TRUE: "true"}

# Value spaces above this many tuples are never materialized or counted.
_MAX_LOG2 = 1 << 20
HUGE = math.inf


@dataclass
class BudgetConfig:
    dense_table_budget: int = 1 << 20
    enum_budget: int = 1 << 16
    extension_budget: int = 14
    iteration_cap: int = 10 ** 6
    # points of predicates with at most this many tuples are tabled up front
    seed_budget: int = 1 << 12
    # maximum number of undefined points branched on in one component
    search_budget: int = 24

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"budget {f.name} must be a positive integer, got {v!r}")

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Defaults, then ``HOAST_BUDGET_<FIELD>`` variables, then explicit overrides."""
        environ = os.environ if environ is None else environ
        kw = {}
        for f in fields(cls):
            key = "HOAST_BUDGET_" + f.name.upper()
            if key in environ:
                try:
                    kw[f.name] = int(environ[key])
                except ValueError:
                    raise ValueError(f"{key} must be an integer, got {environ[key]!r}") from None
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


def popcount(x: int) -> int:
    return bin(x).count("1")


def trit(lo_bit, hi_bit) -> int:
    return lo_bit + hi_bit


def glb_prec_trit(a, b):
    return a if a == b else UNDEF


class Domain:
    """Sizes, indexing and enumeration for all types over one universe."""

    def __init__(self, universe, budgets: BudgetConfig | None = None):
        self.universe = list(universe)
        self.n = len(self.universe)
        self.budgets = budgets or BudgetConfig()
        self._tc = {}

    # -- sizes ---------------------------------------------------------------

    def tuple_count(self, ty: Ty):
        """Number of argument tuples of a predicate type (``inf`` if astronomical)."""
        if ty == BOOL:
            return 1
        c = self._tc.get(ty)
        if c is None:
            c = 1
            for a in arg_types(ty):
                c *= self.value_count(a)
            if c == HUGE or c.bit_length() > _MAX_LOG2:
                c = HUGE
            self._tc[ty] = c
        return c

    def value_count(self, ty: Ty):
        if ty == IND:
            return self.n
        n = self.tuple_count(ty)
        if n > _MAX_LOG2:
            return HUGE
        return 1 << n

    def describe_count(self, ty: Ty) -> str:
        if ty == IND:
            return str(self.n)
        n = self.tuple_count(ty)
        return "2^" + ("(astronomical)" if n == HUGE else str(n))

    def check_dense(self, ty: Ty):
        n = self.tuple_count(ty)
        if n > self.budgets.dense_table_budget:
            raise BudgetExceeded("truth table", n, self.budgets.dense_table_budget, ty)
        return n

    def full(self, ty: Ty) -> int:
        return (1 << self.check_dense(ty)) - 1

    # -- indexing ------------------------------------------------------------

    def index_of(self, ty: Ty, args) -> int:
        t = 0
        for a, v in zip(arg_types(ty), args):
            t = t * self.value_count(a) + v
        return t

    def decode(self, ty: Ty, t: int) -> tuple:
        out = []
        for a in reversed(arg_types(ty)):
            s = self.value_count(a)
            t, r = divmod(t, s)
            out.append(r)
        return tuple(reversed(out))

    def bit(self, ty: Ty, table: int, args) -> int:
        n = self.tuple_count(ty)
        return (table >> (n - 1 - self.index_of(ty, args))) & 1

    def apply(self, ty: Ty, table: int, arg: int) -> int:
        """Slice a table of type ``r -> rest`` at argument value ``arg``."""
        n = self.tuple_count(ty)
        m = n // self.value_count(ty.arg)
        return (table >> (n - (arg + 1) * m)) & ((1 << m) - 1)

    def points(self, ty: Ty) -> Iterator[tuple]:
        for t in range(self.check_dense(ty)):
            yield self.decode(ty, t)

    # -- enumeration ---------------------------------------------------------

    def enumerate_values(self, ty: Ty) -> range:
        """All two-valued values of ``ty`` in canonical order."""
        c = self.value_count(ty)
        if c > self.budgets.enum_budget:
            raise BudgetExceeded("value enumeration", c, self.budgets.enum_budget, ty)
        return range(c)

    def extensions(self, ty: Ty, pv) -> list:
        """All two-valued tables above ``pv`` in the precision order, ascending."""
        lo, hi = pv
        undef = hi & ~lo
        k = popcount(undef)
        if k > self.budgets.extension_budget:
            raise ExtensionBudgetExceeded(k, self.budgets.extension_budget, ty)
        return sorted(lo | s for s in subsets_of(undef))

    # -- rendering -----------------------------------------------------------

    def render_arg(self, ty: Ty, v):
        """JSON-ready rendering of a two-valued argument value."""
        if ty == IND:
            return self.universe[v]
        if ty == BOOL:
            return bool(v)
        return [self.render_tuple(ty, a) for a in self.true_tuples(ty, v)]

    def render_tuple(self, ty: Ty, args) -> list:
        return [self.render_arg(a, v) for a, v in zip(arg_types(ty), args)]

    def true_tuples(self, ty: Ty, table: int) -> list:
        n = self.check_dense(ty)
        return [self.decode(ty, t) for t in range(n) if (table >> (n - 1 - t)) & 1]

    def show_arg(self, ty: Ty, v) -> str:
        return show_json(self.render_arg(ty, v))

    def show_tuple(self, ty: Ty, args) -> str:
        parts = [self.show_arg(a, v) for a, v in zip(arg_types(ty), args)]
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"

    def show_value(self, ty: Ty, v) -> str:
        """Text rendering of a two-valued value (predicate tables as sets of tuples)."""
        if ty == IND or ty == BOOL:
            return self.show_arg(ty, v)
        return "{" + ", ".join(self.show_tuple(ty, a) for a in self.true_tuples(ty, v)) + "}"

    def show_pval(self, ty: Ty, pv) -> str:
        lo, hi = pv
        if ty == BOOL:
            return TRIT_NAMES[trit(lo, hi)]
        s = self.show_value(ty, lo)
        undef = hi & ~lo
        if undef:
            s += " undef " + self.show_value(ty, undef)
        return s


def show_json(r) -> str:
    if isinstance(r, bool):
        return "true" if r else "false"
    if isinstance(r, str):
        return r
    items = []
    for tup in r:
        inner = [show_json(x) for x in tup]
        items.append(inner[0] if len(inner) == 1 else "(" + ", ".join(inner) + ")")
    return "{" + ", ".join(items) + "}"


def arg_types(ty: Ty) -> list:
    out = []
    while isinstance(ty, Arrow):
        out.append(ty.arg)
        ty = ty.res
    return out


def subsets_of(mask: int):
    """All submasks of ``mask`` (in increasing numeric order)."""
    bits = []
    m = mask
    while m:
        low = m & -m
        bits.append(low)
        m ^= low
    bits.reverse()
    out = [0]
    for b in bits:
        out += [x | b for x in out]
    return sorted(out)


# -- orders and lattice operations -------------------------------------------

def leq2(a: int, b: int) -> bool:
    return a & ~b == 0


def leq3(x, y) -> bool:
    return leq2(x[0], y[0]) and leq2(x[1], y[1])


def prec(x, y) -> bool:
    """``x`` is at most as precise as ``y``."""
    return leq2(x[0], y[0]) and leq2(y[1], x[1])


def is_two_valued(pv) -> bool:
    return pv[0] == pv[1]


def check_pair(lo: int, hi: int):
    """Return the pair encoding ``(lo, hi)`` after checking consistency."""
    if lo & ~hi:
        raise InconsistentPair(f"pair ({lo:#b}, {hi:#b}) is not consistent: first not below second")
    return (lo, hi)


def tau(pv):
    """Trit table (a trit at type ``o``) to the consistent pair of two-valued tables."""
    if isinstance(pv, int):
        pv = (pv,)
    n = len(pv)
    lo = hi = 0
    for t, v in enumerate(pv):
        if v not in (FALSE, UNDEF, TRUE):
            raise ValueError(f"not a truth value: {v!r}")
        bit = 1 << (n - 1 - t)
        if v == TRUE:
            lo |= bit
        if v != FALSE:
            hi |= bit
    return (lo, hi)


def tau_inv(lo: int, hi: int, n: int = 1) -> tuple:
    """Consistent pair of ``n``-entry tables back to the trit table."""
    check_pair(lo, hi)
    out = []
    for t in range(n):
        bit = 1 << (n - 1 - t)
        out.append(TRUE if lo & bit else (UNDEF if hi & bit else FALSE))
    return tuple(out)


def trits_leq(x, y) -> bool:
    """Entrywise truth order on trit tables."""
    return all(a <= b for a, b in zip(x, y))


def trits_prec(x, y) -> bool:
    """Entrywise precision order on trit tables (undef below both truth values)."""
    return all(a == b or a == UNDEF for a, b in zip(x, y))


class Lattice:
    """Orders and bounds on the value spaces of one predicate type."""

    def __init__(self, dom: Domain, ty: Ty):
        if ty == IND:
            raise ValueError("individuals carry only the trivial order")
        self.ty = ty
        self.n = dom.check_dense(ty)
        self.mask = (1 << self.n) - 1

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return self.mask

    @property
    def bottom3(self):
        return (0, 0)

    @property
    def top3(self):
        return (self.mask, self.mask)

    @property
    def undef(self):
        return (0, self.mask)

    def leq(self, a, b):
        return leq2(a, b)

    def leq3(self, x, y):
        return leq3(x, y)

    def prec(self, x, y):
        return prec(x, y)

    def lub2(self, vals):
        out = 0
        for v in vals:
            out |= v
        return out

    def glb2(self, vals):
        out = self.mask
        for v in vals:
            out &= v
        return out

    def lub3(self, pvs):
        lo = hi = 0
        for a, b in pvs:
            lo |= a
            hi |= b
        return (lo, hi)

    def glb3(self, pvs):
        lo = hi = self.mask
        for a, b in pvs:
            lo &= a
            hi &= b
        return (lo, hi)

    def glb_prec(self, pvs):
        pvs = list(pvs)
        if not pvs:
            raise ValueError("glb_prec is only defined for nonempty sets")
        lo, hi = self.mask, 0
        for a, b in pvs:
            lo &= a
            hi |= b
        return (lo, hi)

    def all_pvals(self):
        """Every three-valued table (only sensible for tiny types)."""
        for hi in range(self.mask + 1):
            for lo in subsets_of(hi):
                yield (lo, hi)


def lattice_ops(dom: Domain, ty: Ty) -> Lattice:
    return Lattice(dom, ty)
