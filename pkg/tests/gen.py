"""Seeded random generators for programs and interpretations used by the tests."""

import random

from hoast import infer_types, parse_text
from hoast.evaluation import make_domain

HO_TYPES = {
    "p0": "o",
    "p1": "o",
    "q0": "i -> o",
    "q1": "i -> o",
    "r0": "i -> i -> o",
    "h0": "(i -> o) -> o",
}


def prop_program(rng: random.Random, max_atoms=8, max_rules=12):
    """Text of a propositional normal program with literal bodies."""
    n = rng.randint(1, max_atoms)
    atoms = [f"a{k}" for k in range(n)]
    lines = []
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(atoms)
        body = []
        for _ in range(rng.randint(0, 3)):
            a = rng.choice(atoms)
            body.append(f"~{a}" if rng.random() < 0.5 else a)
        lines.append(head + (" :- " + ", ".join(body) if body else "") + ".")
    return "\n".join(lines)


def stratified_prop_program(rng: random.Random, n=6):
    """Propositional program where atom k only negates atoms of lower index."""
    lines = []
    for k in range(n):
        for _ in range(rng.randint(0, 2)):
            body = []
            for _ in range(rng.randint(0, 3)):
                j = rng.randrange(k + 1)
                if j < k and rng.random() < 0.5:
                    body.append(f"~a{j}")
                else:
                    body.append(f"a{j}")
            lines.append(f"a{k}" + (" :- " + ", ".join(body) if body else "") + ".")
        lines.append(f"a{k} :- a{k}.")
    return "\n".join(lines)


class _Rule:
    def __init__(self, rng, preds, consts, allow_neg=True):
        self.rng = rng
        self.preds = preds
        self.consts = consts
        self.allow_neg = allow_neg
        self.env = {}
        self.fresh = 0

    def var(self, ty):
        self.fresh += 1
        name = f"E{self.fresh}"
        self.env[name] = ty
        return name

    def arg(self, ty):
        rng = self.rng
        vs = [v for v, t in self.env.items() if t == ty]
        if ty == "i":
            opts = vs + list(self.consts)
            if not opts or rng.random() < 0.25:
                return self.var("i")
            return rng.choice(opts)
        ps = [p for p, t in self.preds.items() if t == ty]
        opts = vs + ps
        if not opts or rng.random() < 0.15:
            return self.var(ty)
        return rng.choice(opts)

    def atom(self):
        rng = self.rng
        heads = [(p, t) for p, t in self.preds.items()]
        heads += [(v, t) for v, t in self.env.items() if t != "i"]
        name, ty = rng.choice(heads)
        return " ".join([name] + [_paren(self.arg(a)) for a in _args(ty)])

    def literal(self):
        rng = self.rng
        r = rng.random()
        if r < 0.12 and self.consts:
            e = f"{self.arg('i')} = {self.arg('i')}"
        else:
            e = self.atom()
        if self.allow_neg and rng.random() < 0.35:
            return f"~({e})"
        return e


def _args(ty):
    """Argument type strings of a predicate type written with the fixed names above."""
    return {
        "o": [],
        "i -> o": ["i"],
        "i -> i -> o": ["i", "i"],
        "(i -> o) -> o": ["i -> o"],
    }[ty]


def _paren(x):
    return x if " " not in x else f"({x})"


def ho_program(rng: random.Random, n_consts=2, max_rules=6, allow_neg=True, preds=None):
    """Text of a small well-typed higher-order program with declared types."""
    preds = dict(preds or HO_TYPES)
    consts = ["a", "b", "c"][:n_consts]
    lines = ["#const " + " ".join(consts) + "."]
    lines += [f"#type {p} : {t}." for p, t in preds.items()]
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(list(preds))
        g = _Rule(rng, preds, consts, allow_neg)
        params = []
        for k, a in enumerate(_args(preds[head])):
            name = f"H{k}"
            g.env[name] = a
            params.append(name)
        body = [g.literal() for _ in range(rng.randint(0, 3))]
        h = " ".join([head] + params)
        lines.append(h + (" :- " + ", ".join(body) if body else "") + ".")
    return "\n".join(lines)


def typed(text):
    return infer_types(parse_text(text))


def random_interp(rng, P, dom=None):
    dom = dom or make_domain(P)
    return {p: rng.getrandbits(dom.check_dense(ty)) for p, ty in P.signature.items()}


def random_pair(rng, P, dom=None):
    dom = dom or make_domain(P)
    lo, hi = {}, {}
    for p, ty in P.signature.items():
        n = dom.check_dense(ty)
        a, b = rng.getrandbits(n), rng.getrandbits(n)
        lo[p], hi[p] = a & b, a | b
    return lo, hi


def refine(rng, P, lo, hi, dom=None):
    """A pair at least as precise as ``(lo, hi)``."""
    lo2, hi2 = dict(lo), dict(hi)
    for p in P.signature:
        undef = hi[p] & ~lo[p]
        pick = rng.getrandbits(max(undef.bit_length(), 1)) & undef
        to_true = pick & rng.getrandbits(max(undef.bit_length(), 1))
        lo2[p] |= to_true
        hi2[p] &= ~(pick & ~to_true)
    return lo2, hi2
