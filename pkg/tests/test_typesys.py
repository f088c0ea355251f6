import random

import pytest
from hypothesis import given, settings, strategies as st

from hoast import parse_text
from hoast.domains import BudgetConfig
from hoast.errors import HolTypeError, KindError
from hoast.typesys import (BOOL, IND, Arrow, arrow, check_program, infer_types,
                           is_argument_type, is_predicate_type, query_program)

from gen import ho_program
from test_syntax import CORPUS, corpus_text

SET = arrow(IND, BOOL)


def types_of(text):
    return infer_types(parse_text(text)).signature


def test_set_level_nonsubset():
    sig = types_of("nonsubset P Q :- P X, ~(Q X). use :- nonsubset v w. v a. w b.")
    assert sig["nonsubset"] == arrow(SET, SET, BOOL)


def test_footnote_program():
    sig = types_of("p :- r p.")
    assert sig["p"] == BOOL
    assert sig["r"] == arrow(BOOL, BOOL)


def test_max_clique_types():
    P = infer_types(parse_text(corpus_text("maxclique")))
    sig = P.signature
    assert sig["pick"] == SET and sig["e"] == arrow(IND, IND, BOOL)
    assert sig["clique"] == arrow(SET, BOOL)
    ordr = arrow(SET, SET, BOOL)
    assert sig["maximal"] == arrow(ordr, arrow(SET, BOOL), SET, BOOL)
    assert not [d for d in check_program(P) if d.severity == "error"]
    assert not P.warnings


def test_polymorphic_use_is_monomorphized():
    text = corpus_text("generic") + """
        a1 :- equal v w.
        a2 :- equal s t.
        v a. w a.
        s Q :- subset Q v.
        t Q :- subset Q w.
    """
    P = infer_types(parse_text(text))
    insts = sorted(p for p in P.signature if p.startswith("equal"))
    assert insts == ["equal@1", "equal@2"]
    tys = {P.signature[p] for p in insts}
    assert tys == {arrow(SET, SET, BOOL), arrow(arrow(SET, BOOL), arrow(SET, BOOL), BOOL)}
    # helpers follow their callers into both instances
    assert sum(p.startswith("subset") for p in P.signature) == 2


def test_geography_types():
    P = infer_types(parse_text(corpus_text("geography")))
    sig = P.signature
    rel = arrow(IND, IND, BOOL)
    assert sig["winning"] == arrow(SET, rel, IND, BOOL)
    assert sig["inducedGraph"] == arrow(SET, rel, SET, rel, BOOL)
    assert sig["equal2"] == arrow(rel, rel, BOOL)


def test_unused_polymorphic_predicate_gets_default_instance_with_warning():
    P = infer_types(parse_text(corpus_text("generic")))
    assert P.signature["nonsubset"] == arrow(SET, SET, BOOL)
    assert any("maximal" in w.message for w in P.warnings)


def test_universe_order():
    P = infer_types(parse_text("#const c. p X :- q X, X = b. q a."))
    assert P.universe == ["c", "b", "a"]


def test_empty_universe_allowed():
    P = infer_types(parse_text(corpus_text("generic")))
    assert P.universe == []


def test_eq_requires_individuals():
    with pytest.raises(HolTypeError) as exc:
        infer_types(parse_text("p :- a = q. q."))
    assert exc.value.span is not None


def test_kind_error_when_result_is_individual():
    with pytest.raises(KindError):
        infer_types(parse_text("p :- f c = c."))


def test_occurs_check():
    with pytest.raises(HolTypeError):
        infer_types(parse_text("p X :- X X."))


def test_annotation_conflict():
    with pytest.raises(HolTypeError):
        infer_types(parse_text("#type q : i -> o. p :- q r. r."))


def test_arity_disagreement_rejected():
    with pytest.raises(HolTypeError):
        infer_types(parse_text("p X :- q X. p :- q a."))


def test_head_distinctness_error_before_desugar():
    diags = check_program(parse_text("p X X :- q X."))
    assert diags and diags[0].severity == "error"


def test_existential_budget_warning():
    text = "p :- q S. q S :- r S. #type r : ((i -> o) -> o) -> o. #const a b c d e."
    P = infer_types(parse_text(text))
    diags = check_program(P, BudgetConfig(enum_budget=1000))
    assert any(d.severity == "warning" and "S" in d.message for d in diags)


def test_query_program_arity():
    prog = parse_text(corpus_text("af"))
    P, n = query_program(prog, "stable arg attacks")
    assert n == 1 and P.signature["__query"] == arrow(SET, BOOL)
    P, n = query_program(prog, "grounded arg attacks a")
    assert n == 0


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_types_follow_the_grammar(name):
    P = infer_types(parse_text(corpus_text(name)))
    for p, ty in P.signature.items():
        assert is_predicate_type(ty), (p, ty)
    for r in P.rules:
        for _, ty in list(r.params) + list(r.exists):
            assert is_argument_type(ty)
        for b in r.body:
            assert b.ty == BOOL


def _strip_types(text):
    return "\n".join(l for l in text.splitlines() if not l.startswith("#type"))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_annotations_agree_with_inference(seed):
    text = ho_program(random.Random(seed))
    annotated = infer_types(parse_text(text))
    bare = infer_types(parse_text(_strip_types(text)))
    for p, ty in bare.signature.items():
        if p in annotated.signature and not bare.warnings:
            assert annotated.signature[p] == ty


def test_arrow_never_returns_individual():
    with pytest.raises(ValueError):
        Arrow(IND, IND)
