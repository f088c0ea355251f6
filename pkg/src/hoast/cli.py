"""Command-line front end: ``hoast check|solve|query|oracle``.

Exit codes: 0 success, 1 program error, 2 I/O error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, fields
from importlib import resources

from . import syntax as S
from .aft import SolveResult, is_supported_pair, kripke_kleene, solve, well_founded
from .classical import classical_wf, gl_stable_models, to_propositional
from .domains import FALSE, TRIT_NAMES, TRUE, UNDEF, BudgetConfig, Domain
from .errors import HoastError
from .stratify import stratify
from .typesys import QUERY, check_program, infer_types, query_program

GRAPHS = {
    "path3": "v a. v b. v c. e a b. e b a. e b c. e c b.",
    "k3": "v a. v b. v c. e a b. e b a. e a c. e c a. e b c. e c b.",
    "k4": "v a. v b. v c. v d. "
          + " ".join(f"e {x} {y}." for x in "abcd" for y in "abcd" if x != y),
    "geo3": "v a. v b. v c. e a b. e b c.",
}


class InputError(Exception):
    """Unreadable input file (exit status 2)."""


@dataclass
class RunConfig:
    command: str
    inputs: list
    semantics: str = "wf"
    budgets: BudgetConfig = field(default_factory=BudgetConfig)
    mode: str = "exact"
    show: list = field(default_factory=list)
    fmt: str = "text"
    graph: str | None = None
    jobs: int = 1
    stratify: bool = False
    json_diagnostics: bool = False
    expr: str | None = None


# -- input handling ------------------------------------------------------------------

def read_source(arg: str) -> tuple:
    """Return ``(name, text)`` for a file path or inline program text."""
    if os.path.exists(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                return arg, fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from exc
    base = os.path.basename(arg)
    if arg.startswith("corpus/") or arg.startswith("corpus" + os.sep):
        res = resources.files("hoast") / "corpus" / base
        if res.is_file():
            return arg, res.read_text(encoding="utf-8")
    if arg.endswith(".hol"):
        raise InputError(f"cannot read {arg}: no such file")
    return "<inline>", arg


def load(cfg: RunConfig):
    names, texts = [], []
    for a in cfg.inputs:
        n, t = read_source(a)
        names.append(n)
        texts.append(t)
    if cfg.graph:
        texts.append(GRAPHS[cfg.graph])
    return ", ".join(names) or "<empty>", S.parse_text("\n".join(texts))


# -- rendering -----------------------------------------------------------------------

def _table(dom, ty, entries):
    """Split ``args -> trit`` entries into rendered true and undef tuple lists."""
    true, undef = [], []
    for args in sorted(entries, key=lambda a: dom.index_of(ty, a)):
        t = entries[args]
        if t == TRUE:
            true.append(dom.render_tuple(ty, args))
        elif t == UNDEF:
            undef.append(dom.render_tuple(ty, args))
    return {"true": true, "undef": undef}


def _shown(P, show):
    return [p for p in P.signature if (p in show if show else not p.startswith("__"))]


def result_document(P, program_name, res: SolveResult, show) -> dict:
    dom = Domain(P.universe)
    preds = _shown(P, show)

    def predicates(values):
        per = {p: {} for p in preds}
        for (p, args), t in values.items():
            if p in per:
                per[p][args] = t
        return {p: _table(dom, P.signature[p], per[p]) for p in preds}

    if res.semantics == "stable":
        models = [{"predicates": predicates({pt: TRUE if v else FALSE for pt, v in m.items()})}
                  for m in res.models]
    else:
        models = [{"predicates": predicates(res.values)}]
    stats = {k: res.stats[k] for k in sorted(res.stats)}
    doc = {"program": program_name, "semantics": res.semantics, "models": models,
           "flags": res.flags, "stats": stats}
    if res.partial:
        doc["partial"] = [p for p in res.partial if p in preds]
    return doc


def emit_json(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


def _show_tuple(tup):
    parts = [_show_item(x) for x in tup]
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def _show_item(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    return "{" + ", ".join(_show_tuple(t) for t in x) + "}"


def render_text(doc, P) -> str:
    lines = []
    stable = doc["semantics"] == "stable"
    if stable:
        lines.append(f"{len(doc['models'])} stable model(s)")
    for k, m in enumerate(doc["models"], 1):
        if stable:
            lines.append(f"model {k}:")
        for p, tab in m["predicates"].items():
            ind = "  " if stable else ""
            if not P.signature[p].__class__.__name__ == "Arrow":
                val = "true" if tab["true"] else ("undef" if tab["undef"] else "false")
                lines.append(f"{ind}{p} = {val}")
                continue
            s = "{" + ", ".join(_show_tuple(t) for t in tab["true"]) + "}"
            if tab["undef"]:
                s += " undef {" + ", ".join(_show_tuple(t) for t in tab["undef"]) + "}"
            if p in doc.get("partial", []):
                s += " (demanded points only)"
            lines.append(f"{ind}{p} = {s}")
    lines.append("flags: " + ",".join(doc["flags"]))
    return "\n".join(lines)


# -- commands --------------------------------------------------------------------------

def cmd_check(cfg: RunConfig, out) -> int:
    name, prog = load(cfg)
    diags = check_program(prog)
    P = None
    if not any(d.severity == "error" for d in diags):
        P = infer_types(prog)
        diags = check_program(P, cfg.budgets)
    errors = any(d.severity == "error" for d in diags)
    if cfg.json_diagnostics:
        print(json.dumps([{"severity": d.severity, "line": d.span[0] if d.span else None,
                           "col": d.span[1] if d.span else None, "message": d.message}
                          for d in diags]), file=out)
    else:
        for d in diags:
            print(d.render(name), file=out)
    if P is None or errors:
        return 1
    if not cfg.json_diagnostics:
        for p, ty in P.signature.items():
            print(f"{p} : {ty}", file=out)
    st = stratify(P)
    if st.stratified:
        print(f"stratified with {st.level_count} levels", file=out)
        if cfg.stratify:
            for p, lvl in st.levels.items():
                print(f"  {p}: {lvl}", file=out)
    else:
        print("not stratified (cycle " + "→".join(st.witness) + ")", file=out)
        if cfg.stratify:
            for q, p, span, why in st.witness_edges:
                loc = f"{span[0]}:{span[1]}" if span else "?"
                print(f"  {q} -> {p}: {why} in the rule at {loc}", file=out)
    return 0


def cmd_solve(cfg: RunConfig, out) -> int:
    name, prog = load(cfg)
    P = infer_types(prog)
    for p in cfg.show:
        if p not in P.signature:
            raise HoastError(f"unknown predicate in --show: {p}")
    if cfg.semantics == "supported-check":
        return _supported_check(P, cfg, out)
    res = solve(P, cfg.semantics, cfg.budgets, widen=cfg.mode == "widen")
    doc = result_document(P, name, res, cfg.show)
    print(emit_json(doc) if cfg.fmt == "json" else render_text(doc, P), file=out)
    return 0


def _supported_check(P, cfg, out) -> int:
    """Report which of the KK, WF and stable pairs are fixpoints of the approximator."""
    dom = Domain(P.universe, cfg.budgets)
    rows = [("kripke-kleene", kripke_kleene(P, cfg.budgets)),
            ("well-founded", well_founded(P, cfg.budgets))]
    res = solve(P, "stable", cfg.budgets)
    from .evaluation import PairInterp
    for k, m in enumerate(res.models, 1):
        I = {p: 0 for p in P.signature}
        for (p, args), v in m.items():
            if v:
                ty = P.signature[p]
                I[p] |= 1 << (dom.tuple_count(ty) - 1 - dom.index_of(ty, args))
        rows.append((f"stable model {k}", PairInterp(I, dict(I))))
    report = [{"pair": label, "supported": is_supported_pair(P, pair, cfg.budgets)}
              for label, pair in rows]
    if cfg.fmt == "json":
        print(emit_json({"semantics": "supported-check", "checks": report}), file=out)
    else:
        for r in report:
            print(f"{r['pair']}: {'supported' if r['supported'] else 'not supported'}", file=out)
    return 0


def cmd_query(cfg: RunConfig, out) -> int:
    name, prog = load(cfg)
    P, arity = query_program(prog, cfg.expr)
    dom = Domain(P.universe, cfg.budgets)
    qty = P.signature[QUERY]
    seeds = [(QUERY, a) for a in dom.points(qty)] if arity else [(QUERY, ())]
    res = solve(P, "wf", cfg.budgets, widen=cfg.mode == "widen", seeds=seeds)
    entries = {args: t for (p, args), t in res.values.items() if p == QUERY}
    if arity == 0:
        answer = TRIT_NAMES[entries[()]]
        doc = {"query": cfg.expr, "answer": answer, "flags": res.flags}
        text = answer
    else:
        tab = _table(dom, qty, entries)
        doc = {"query": cfg.expr, "answer": tab, "flags": res.flags}
        text = "{" + ", ".join(_show_tuple(t) for t in tab["true"]) + "}"
        if tab["undef"]:
            text += " undef {" + ", ".join(_show_tuple(t) for t in tab["undef"]) + "}"
    if res.widened:
        text += "  [widened]"
    print(emit_json(doc) if cfg.fmt == "json" else text, file=out)
    return 0


def cmd_oracle(cfg: RunConfig, out) -> int:
    _, prog = load(cfg)
    pp = to_propositional(infer_types(prog))
    if cfg.semantics == "stable":
        models = [sorted(m, key=pp.atoms.index) for m in gl_stable_models(pp)]
        doc = {"semantics": "stable", "models": models}
        text = "\n".join("{" + ", ".join(m) + "}" for m in models) or "no stable models"
    else:
        wf = classical_wf(pp)
        doc = {"semantics": "wf", "model": wf}
        text = "\n".join(f"{a} = {v}" for a, v in wf.items())
    print(emit_json(doc) if cfg.fmt == "json" else text, file=out)
    return 0


COMMANDS = {"check": cmd_check, "solve": cmd_solve, "query": cmd_query, "oracle": cmd_oracle}


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hoast", description="Solve higher-order logic programs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--graph", choices=sorted(GRAPHS), help="append a preset v/e graph")
        p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
        for f in fields(BudgetConfig):
            p.add_argument("--" + f.name.replace("_", "-"), type=int, dest=f.name,
                           metavar="N", help=f"override the {f.name.replace('_', ' ')}")

    c = sub.add_parser("check", help="parse, type and stratify a program")
    c.add_argument("inputs", nargs="+", help="program files or inline program text")
    c.add_argument("--stratify", action="store_true", help="print levels or the witness cycle")
    c.add_argument("--json-diagnostics", action="store_true")
    common(c)

    s = sub.add_parser("solve", help="compute a semantics")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--semantics", choices=["wf", "kk", "stable", "supported-check"],
                   default="wf")
    s.add_argument("--show", action="append", default=[],
                   help="predicate to print (repeatable or comma separated)")
    s.add_argument("--mode", choices=["exact", "widen"], default="exact")
    s.add_argument("--jobs", type=int, default=1, help="accepted; the search runs sequentially")
    common(s)

    q = sub.add_parser("query", help="evaluate an expression under the well-founded model")
    q.add_argument("inputs", nargs="*", help="program files or text, followed by the query")
    q.add_argument("--mode", choices=["exact", "widen"], default="exact")
    common(q)

    o = sub.add_parser("oracle", help="classical semantics of a propositional program")
    o.add_argument("inputs", nargs="+")
    o.add_argument("--semantics", choices=["wf", "stable"], default="stable")
    common(o)
    return ap


def config_from_args(ns) -> RunConfig:
    overrides = {f.name: getattr(ns, f.name) for f in fields(BudgetConfig)
                 if getattr(ns, f.name, None) is not None}
    inputs = list(ns.inputs)
    expr = None
    if ns.command == "query":
        if not inputs:
            raise HoastError("query needs an expression")
        expr = inputs.pop()
    show = [x for s in getattr(ns, "show", []) for x in s.split(",") if x]
    return RunConfig(
        command=ns.command, inputs=inputs, semantics=getattr(ns, "semantics", "wf"),
        budgets=BudgetConfig.from_env(os.environ, **overrides),
        mode=getattr(ns, "mode", "exact"), show=show, fmt=ns.fmt, graph=ns.graph,
        jobs=getattr(ns, "jobs", 1), stratify=getattr(ns, "stratify", False),
        json_diagnostics=getattr(ns, "json_diagnostics", False), expr=expr)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except HoastError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
