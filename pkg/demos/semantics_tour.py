"""Supported, Kripke-Kleene, well-founded and stable semantics side by side."""

from hoast import (gl_stable_models, kripke_kleene, load_program, solve, to_propositional,
                   well_founded)
from hoast.domains import TRIT_NAMES, Domain

PROGRAMS = {
    "positive loop": "p :- p.",
    "odd loop": "p :- ~p.",
    "even loop": "p :- ~q. q :- ~p.",
    "even loop with tiebreak": "p :- ~q. q :- ~p. r :- p. r :- q.",
    "higher-order": "#const a b. s a. t X :- s X. both P :- P a, P b. u :- ~(both t).",
}


def point(P, p, a):
    args = Domain(P.universe).render_tuple(P.signature[p], a)
    return " ".join([p] + [str(x).replace("'", "") for x in args])


def show(P, res):
    return ", ".join(f"{point(P, p, a)}={TRIT_NAMES[t]}" for (p, a), t in sorted(res.values.items()))


for name, text in PROGRAMS.items():
    P = load_program(text)
    print(f"== {name}: {text}")
    print("  kk:    ", show(P, solve(P, "kk")))
    print("  wf:    ", show(P, solve(P, "wf")))
    models = solve(P, "stable").models
    print("  stable:", [sorted(point(P, p, a) for (p, a), v in m.items() if v) for m in models])
    kk, wf = kripke_kleene(P), well_founded(P)
    print("  kk below wf:", all((kk.lo[p] & ~wf.lo[p]) == 0 and (wf.hi[p] & ~kk.hi[p]) == 0
                                for p in P.signature))
    try:
        gl = gl_stable_models(to_propositional(P))
        print("  classical stable models agree:", len(gl) == len(models))
    except Exception as exc:
        print("  classical oracle n/a:", type(exc).__name__)
