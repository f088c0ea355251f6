import pytest

from hoast import load_program
from hoast.classical import (classical_wf, gl_stable_models, least_model,
                             przymusinski_3stable, to_propositional)
from hoast.errors import NotPropositional

from test_syntax import corpus_text


def prop(text):
    return to_propositional(load_program(text))


def test_translation():
    pp = prop("p :- ~q. q :- ~p.")
    assert pp.atoms == ["p", "q"] and len(pp.rules) == 2
    assert str(pp) == "p :- ~q.\nq :- ~p."


@pytest.mark.parametrize("text", ["p :- r p.", corpus_text("maxclique") + " v a. e a a.",
                                  "p :- ~(~q). q."])
def test_not_propositional(text):
    with pytest.raises(NotPropositional):
        prop(text)


def test_gl_stable_models():
    assert gl_stable_models(prop("p :- ~q. q :- ~p.")) == [{"p"}, {"q"}]
    assert gl_stable_models(prop("p :- ~p.")) == []
    assert gl_stable_models(prop("q. p :- q.")) == [{"p", "q"}]


def test_classical_wf():
    assert classical_wf(prop("p :- ~q. q :- ~p.")) == {"p": "undef", "q": "undef"}
    assert classical_wf(prop("p :- p.")) == {"p": "false"}
    assert classical_wf(prop("q. p :- ~q.")) == {"q": "true", "p": "false"}


def test_three_valued_stable():
    pp = prop("p :- ~q. q :- ~p.")
    assert przymusinski_3stable(pp, {"p": "undef", "q": "undef"})
    assert przymusinski_3stable(pp, {"p": "true", "q": "false"})
    assert not przymusinski_3stable(prop("q."), {"q": "undef"})


def test_least_model_of_reduct():
    pp = prop("a :- ~b. c :- a. b :- d.")
    assert least_model(pp.rules, set()) == {"a", "c"}
    assert least_model(pp.rules, {"b"}) == set()
