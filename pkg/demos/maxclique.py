"""Maximal cliques of small graphs as stable models of a higher-order program.

The constraint rule ``f :- ~f, ~(maxclique pick).`` discards every guess of
``pick`` that is not a maximal clique, so each stable model carries one.
"""

from itertools import combinations

from hoast import load_program, solve
from hoast.cli import GRAPHS
from hoast.domains import Domain
from importlib import resources

SOURCE = (resources.files("hoast") / "corpus" / "maxclique.hol").read_text()


def picked(P, model):
    dom = Domain(P.universe)
    return sorted(dom.render_tuple(P.signature["pick"], a)[0]
                  for (p, a), v in model.items() if p == "pick" and v)


def brute_force(facts):
    """Maximal cliques by direct enumeration, for comparison."""
    verts = sorted({w.split()[1] for w in facts.split(".") if w.strip().startswith("v ")})
    edges = {tuple(w.split()[1:]) for w in facts.split(".") if w.strip().startswith("e ")}
    cliques = [set(c) for k in range(1, len(verts) + 1) for c in combinations(verts, k)
               if all((x, y) in edges for x in c for y in c if x != y)]
    return sorted(sorted(c) for c in cliques if not any(c < d for d in cliques))


for name in ["path3", "k3", "k4"]:
    P = load_program(SOURCE, GRAPHS[name])
    res = solve(P, "stable")
    found = sorted(picked(P, m) for m in res.models)
    print(f"{name}: {len(found)} stable model(s)")
    for c in found:
        print("   pick =", "{" + ", ".join(c) + "}")
    print("   matches enumeration:", found == brute_force(GRAPHS[name]))
