"""Reference semantics for propositional normal programs.

Kept free of any code shared with the higher-order engine: atoms are plain
strings, interpretations are Python sets, and every semantics is computed
from the Gelfond-Lifschitz reduct.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, NotPropositional
from .typesys import BOOL, TConst, TNeg, TypedProgram

MAX_ATOMS = 20


@dataclass(frozen=True)
class PropRule:
    head: str
    pos: tuple
    neg: tuple


@dataclass
class PropProgram:
    atoms: list
    rules: list

    def __str__(self):
        lines = []
        for r in self.rules:
            lits = list(r.pos) + [f"~{a}" for a in r.neg]
            lines.append(r.head + (" :- " + ", ".join(lits) if lits else "") + ".")
        return "\n".join(lines)


def to_propositional(P: TypedProgram) -> PropProgram:
    for p, ty in P.signature.items():
        if ty != BOOL:
            raise NotPropositional(f"{p} has type {ty}")
    if P.universe:
        raise NotPropositional("the program mentions individual constants")
    rules = []
    for r in P.rules:
        pos, neg = [], []
        for b in r.body:
            if isinstance(b, TConst):
                pos.append(b.name)
            elif isinstance(b, TNeg) and isinstance(b.body, TConst):
                neg.append(b.body.name)
            else:
                raise NotPropositional(f"body of a rule for {r.pred} is not a list of literals")
        rules.append(PropRule(r.pred, tuple(pos), tuple(neg)))
    return PropProgram(list(P.signature), rules)


def least_model(rules, negation_context):
    """Least model of the reduct of ``rules`` w.r.t. the set ``negation_context``."""
    active = [r for r in rules if not any(a in negation_context for a in r.neg)]
    model = set()
    changed = True
    while changed:
        changed = False
        for r in active:
            if r.head not in model and all(a in model for a in r.pos):
                model.add(r.head)
                changed = True
    return model


def _canonical(atoms, sets):
    return sorted(sets, key=lambda m: [0 if a in m else 1 for a in atoms])


def gl_stable_models(pp: PropProgram) -> list:
    if len(pp.atoms) > MAX_ATOMS:
        raise BudgetExceeded("stable model candidates (atoms)", len(pp.atoms), MAX_ATOMS)
    found = []
    for k in range(len(pp.atoms) + 1):
        for combo in combinations(pp.atoms, k):
            m = set(combo)
            if least_model(pp.rules, m) == m:
                found.append(m)
    return _canonical(pp.atoms, found)


def classical_wf(pp: PropProgram) -> dict:
    """Well-founded model by the alternating fixpoint; values 'true'/'false'/'undef'."""
    true = set()
    while True:
        possible = least_model(pp.rules, true)
        nxt = least_model(pp.rules, possible)
        if nxt == true:
            break
        true = nxt
    possible = least_model(pp.rules, true)
    return {a: "true" if a in true else ("undef" if a in possible else "false") for a in pp.atoms}


def przymusinski_3stable(pp: PropProgram, assignment: dict) -> bool:
    """Pair form: certain atoms derivable against the possible ones and vice versa."""
    certain = {a for a, v in assignment.items() if v == "true"}
    possible = {a for a, v in assignment.items() if v in ("true", "undef")}
    return least_model(pp.rules, possible) == certain and least_model(pp.rules, certain) == possible
