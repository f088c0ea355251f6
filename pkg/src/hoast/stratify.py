"""Stratification analysis.

Edges ``q -> p`` are drawn for every predicate constant ``q`` occurring in a
body conjunct of a rule for ``p``.  The edge is strict (weight 1) when ``q``
occurs inside a negated conjunct or anywhere inside the argument of an
application; otherwise it has weight 0.  A program is stratified iff no
strict edge lies on a cycle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .typesys import TApp, TNeg, TypedProgram, constants_in, subterms

BODY, NEGATION, ARGUMENT = "body-occurrence", "under-negation", "in-application-argument"


@dataclass
class StratResult:
    levels: Optional[dict] = None
    witness: Optional[list] = None
    # (q, p, rule span, condition) for each edge of the witness cycle
    witness_edges: list = field(default_factory=list)

    @property
    def stratified(self):
        return self.levels is not None

    @property
    def level_count(self):
        return 1 + max(self.levels.values()) if self.levels else 0


def dependency_graph(P: TypedProgram) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(P.signature)

    def add(q, p, w, span, cond):
        if g.has_edge(q, p):
            d = g.edges[q, p]
            d["reasons"].append((span, cond))
            if w > d["weight"]:
                d["weight"] = w
        else:
            g.add_edge(q, p, weight=w, reasons=[(span, cond)])

    for r in P.rules:
        for conj in r.body:
            for q in constants_in(conj):
                add(q, r.pred, 0, r.span, BODY)
            if isinstance(conj, TNeg):
                for q in constants_in(conj.body):
                    add(q, r.pred, 1, r.span, NEGATION)
            for x in subterms(conj):
                if isinstance(x, TApp):
                    for q in constants_in(x.arg):
                        add(q, r.pred, 1, r.span, ARGUMENT)
    return g


def stratify(P: TypedProgram, g: nx.DiGraph | None = None) -> StratResult:
    g = dependency_graph(P) if g is None else g
    pos = {p: i for i, p in enumerate(P.signature)}
    cond = nx.condensation(g)
    where = cond.graph["mapping"]
    strict_inside = sorted(
        ((u, v) for u, v, d in g.edges(data=True) if d["weight"] == 1 and where[u] == where[v]),
        key=lambda e: (pos[e[0]], pos[e[1]]))
    if strict_inside:
        # shortest cycle through the first strict edge in canonical order
        u, v = strict_inside[0]
        best = [u] + _shortest_path(g, v, u)
        edges = []
        for a, b in zip(best, best[1:]):
            d = g.edges[a, b]
            span, why = max(d["reasons"], key=lambda r: r[1] != BODY)
            edges.append((a, b, span, why))
        return StratResult(witness=best, witness_edges=edges)
    comp_level = {}
    for c in nx.topological_sort(cond):
        lvl = 0
        for pc in cond.predecessors(c):
            w = max(g.edges[u, v]["weight"] for u in cond.nodes[pc]["members"]
                    for v in cond.nodes[c]["members"] if g.has_edge(u, v))
            lvl = max(lvl, comp_level[pc] + w)
        comp_level[c] = lvl
    return StratResult(levels={p: comp_level[where[p]] for p in P.signature})


def _shortest_path(g, src, dst):
    prev = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        if x == dst:
            break
        for y in sorted(g.successors(x)):
            if y not in prev:
                prev[y] = x
                q.append(y)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def check_levels(P: TypedProgram, levels: dict) -> list:
    """Edges violating a level map (empty when the map is a stratification)."""
    bad = []
    for u, v, d in dependency_graph(P).edges(data=True):
        if levels[u] > levels[v] or (d["weight"] == 1 and levels[u] == levels[v]):
            bad.append((u, v, d["weight"]))
    return bad
