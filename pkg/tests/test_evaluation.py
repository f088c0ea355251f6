import pytest

from hoast import load_program
from hoast.domains import FALSE, TRUE, UNDEF, BudgetConfig
from hoast.errors import ExtensionBudgetExceeded, InconsistentPair
from hoast.evaluation import (PairInterp, approx, bottom2, eval2, eval3, is_model2, is_model3,
                              is_model_pair, make_domain, top2, tp2, tp3, undef3)
from hoast.tabled import tabled_lfp

NEG = 0b10  # r(false) = true, r(true) = false


def body_of(P, pred, k=0):
    return P.rules_by_pred[pred][0].body[k]


def test_footnote_body_true():
    P = load_program("p :- r p.")
    dom = make_domain(P)
    assert eval2(body_of(P, "p"), {"p": 0, "r": NEG}, {}, dom) == 1


def test_reflexive_equality():
    P = load_program("p X :- X = X. q a.")
    dom = make_domain(P)
    r = P.rules_by_pred["p"][0]
    assert eval2(r.body[0], {"p": 0, "q": 0}, {r.params[0][0]: 0}, dom) == 1


def test_subset_table():
    P = load_program("#type subset : (i -> o) -> (i -> o) -> o. t :- subset s w. s a. w a. w b.")
    dom = make_domain(P)
    ty = P.signature["subset"]
    table = 0
    for x in range(4):
        for y in range(4):
            if x & ~y == 0:
                table |= 1 << (15 - dom.index_of(ty, (x, y)))
    I = {"subset": table, "s": 0b10, "w": 0b11, "t": 0}
    assert eval2(body_of(P, "t"), I, {}, dom) == 1
    I["w"] = 0b01
    assert eval2(body_of(P, "t"), I, {}, dom) == 0


def test_negation_of_undef():
    P = load_program("p :- ~q. q :- q.")
    dom = make_domain(P)
    I3 = {"p": (0, 1), "q": (0, 1)}
    assert eval3(body_of(P, "p"), I3, {}, dom, P.signature) == (0, 1)


def _ho_apply(f_on_a, f_on_ab):
    P = load_program("#type f : (i -> o) -> o. t :- f s. s a. s b.")
    dom = make_domain(P)
    ty = P.signature["f"]
    lo = hi = 0
    for val, out in ((0b10, f_on_a), (0b11, f_on_ab)):
        bit = 1 << (3 - dom.index_of(ty, (val,)))
        if out:
            lo |= bit
            hi |= bit
    I3 = {"f": (lo, hi), "s": (0b10, 0b11), "t": (0, 0)}
    return eval3(body_of(P, "t"), I3, {}, dom, P.signature)


def test_application_to_three_valued_argument():
    assert _ho_apply(True, True) == (1, 1)
    assert _ho_apply(True, False) == (0, 1)
    assert _ho_apply(False, False) == (0, 0)


def test_extension_budget_and_widening():
    P = load_program("#type f : (i -> o) -> o. t :- f s. #const a b c.")
    dom = make_domain(P, BudgetConfig(extension_budget=2))
    I3 = {"f": (0, 0), "s": (0, 0b111), "t": (0, 0)}
    with pytest.raises(ExtensionBudgetExceeded):
        eval3(body_of(P, "t"), I3, {}, dom, P.signature)
    assert eval3(body_of(P, "t"), I3, {}, dom, P.signature, widen=True) == (0, 1)


def test_tp2_nonmonotone_footnote():
    P = load_program("p :- r p.")
    assert tp2(P, {"p": 0, "r": NEG})["p"] == 1
    assert tp2(P, {"p": 1, "r": NEG})["p"] == 0


def test_tp2_empty_program_and_two_steps():
    assert tp2(load_program(""), {}) == {}
    P = load_program("q. p :- q.")
    I1 = tp2(P, {"p": 0, "q": 0})
    assert I1 == {"q": 1, "p": 0}
    assert tp2(P, I1) == {"q": 1, "p": 1}


def test_predicates_without_rules_are_false():
    P = load_program("p :- r p.")
    assert tp2(P, {"p": 1, "r": 0b11})["r"] == 0


def test_tp3_examples():
    P = load_program("p :- ~p.")
    assert tp3(P, {"p": (0, 1)}) == {"p": (0, 1)}
    P = load_program("p :- ~q. q :- r. r :- r.")
    I = {"p": (0, 1), "q": (0, 1), "r": (0, 0)}
    I = tp3(P, I)
    assert I["q"] == (0, 0)
    assert tp3(P, I)["p"] == (1, 1)


def test_approx_odd_loop():
    P = load_program("p :- ~p.")
    dom = make_domain(P)
    A = approx(P, PairInterp(bottom2(P, dom), top2(P, dom)))
    assert (A.lo, A.hi) == ({"p": 0}, {"p": 1})


def test_inconsistent_pair_rejected():
    with pytest.raises(InconsistentPair):
        PairInterp({"p": 1}, {"p": 0})


def test_models():
    P = load_program("p.")
    assert is_model2(P, {"p": 1}) and not is_model2(P, {"p": 0})
    P = load_program("p :- r p.")
    assert is_model2(P, {"p": 1, "r": NEG})
    assert is_model3(P, {"p": (1, 1), "r": (NEG, NEG)})
    assert is_model_pair(P, PairInterp({"p": 1, "r": NEG}, {"p": 1, "r": NEG}))


def test_tabled_empty_seeds():
    P = load_program("p :- ~q. q :- ~p.")
    assert tabled_lfp(P, "kk").values == {}


def test_tabled_geography_points():
    from hoast import parse_text
    from hoast.aft import solve
    from hoast.typesys import query_program
    from test_syntax import corpus_text
    prog = parse_text(corpus_text("geography"))
    got = {}
    for x in "abc":
        P, _ = query_program(prog, f"winning v e {x}")
        got[x] = solve(P, "wf", seeds=[("__query", ())]).values[("__query", ())]
    assert got == {"a": FALSE, "b": TRUE, "c": FALSE}


def test_tabled_modes_small_program():
    P = load_program("p :- ~q. q :- ~p. r :- p. s.")
    seeds = [(p, ()) for p in P.signature]
    J = {"p": 1, "q": 0, "r": 1, "s": 1}
    first = tabled_lfp(P, "first", J, seeds).values
    assert {pt[0]: bool(v) for pt, v in first.items()} == {"p": True, "q": False, "r": True,
                                                           "s": True}
    kk = tabled_lfp(P, "kk", None, seeds).values
    assert kk[("p", ())] == UNDEF and kk[("s", ())] == TRUE
    assert undef3(P, make_domain(P))["p"] == (0, 1)
