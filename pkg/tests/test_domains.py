import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hoast.domains import (FALSE, TRUE, UNDEF, BudgetConfig, Domain, Lattice, is_two_valued,
                           leq3, prec, tau, tau_inv, trits_leq, trits_prec)
from hoast.errors import BudgetExceeded, ExtensionBudgetExceeded, InconsistentPair
from hoast.typesys import BOOL, IND, arrow

SET = arrow(IND, BOOL)
SET2 = arrow(SET, BOOL)
REL = arrow(IND, IND, BOOL)
AB = Domain(["a", "b"])


def test_budget_defaults_and_validation():
    b = BudgetConfig()
    assert b.dense_table_budget == 2 ** 20 and b.enum_budget == 2 ** 16
    assert b.extension_budget == 14 and b.iteration_cap == 10 ** 6
    with pytest.raises(ValueError):
        BudgetConfig(enum_budget=0)


def test_budget_environment_overrides():
    env = {"HOAST_BUDGET_ENUM_BUDGET": "77", "HOAST_BUDGET_SEARCH_BUDGET": "5"}
    b = BudgetConfig.from_env(env, search_budget=9)
    assert b.enum_budget == 77 and b.search_budget == 9
    with pytest.raises(ValueError):
        BudgetConfig.from_env({"HOAST_BUDGET_ENUM_BUDGET": "lots"})


def test_tuple_spaces():
    d = Domain(["a", "b", "c"])
    assert d.tuple_count(BOOL) == 1
    assert d.tuple_count(REL) == 9
    assert d.tuple_count(SET2) == 8
    assert d.value_count(SET2) == 256
    assert d.decode(REL, 5) == (1, 2)
    assert d.index_of(REL, (1, 2)) == 5


def test_enumerate_values_examples():
    d = Domain(["a", "b", "c"])
    assert list(d.enumerate_values(IND)) == [0, 1, 2]
    assert [AB.show_value(SET, v) for v in AB.enumerate_values(SET)] == [
        "{}", "{b}", "{a}", "{a, b}"]
    assert len(AB.enumerate_values(SET2)) == 16


def test_enumeration_budget_reports_exact_size():
    d = Domain(list("abcde"), BudgetConfig(enum_budget=1000))
    with pytest.raises(BudgetExceeded) as exc:
        d.enumerate_values(SET2)
    assert exc.value.size == 2 ** 32 and exc.value.ty == SET2


def test_dense_budget():
    d = Domain(list("abcd"), BudgetConfig(dense_table_budget=8))
    with pytest.raises(BudgetExceeded) as exc:
        d.check_dense(REL)
    assert exc.value.size == 16


def test_third_order_space_is_refused_not_allocated():
    d = Domain(list("abcdef"))
    third = arrow(SET2, BOOL)
    with pytest.raises(BudgetExceeded):
        d.check_dense(third)
    assert d.describe_count(third).startswith("2^")


def test_lattice_examples():
    L = Lattice(AB, SET)
    a, b, ab = 0b10, 0b01, 0b11
    assert L.leq(a, ab) and not L.leq(a, b)
    Lo = Lattice(AB, BOOL)
    assert Lo.glb_prec([(1, 1), (0, 0)]) == (0, 1)
    assert Lo.lub3([]) == (0, 0)
    with pytest.raises(ValueError):
        Lo.glb_prec([])


def test_lattice_refuses_individuals():
    with pytest.raises(ValueError):
        Lattice(AB, IND)


def test_extensions_examples():
    # {a: true, b: undef}
    assert AB.extensions(SET, (0b10, 0b11)) == [0b10, 0b11]
    assert AB.extensions(SET, (0b01, 0b01)) == [0b01]
    assert AB.extensions(SET, (0, 0b11)) == [0, 1, 2, 3]


def test_extension_budget():
    d = Domain(list("abcd"), BudgetConfig(extension_budget=3))
    with pytest.raises(ExtensionBudgetExceeded) as exc:
        d.extensions(SET, (0, 0b1111))
    assert exc.value.k == 4


def test_tau_examples():
    assert tau((TRUE, UNDEF)) == (0b10, 0b11)
    assert tau(UNDEF) == (0, 1)
    for f in range(4):
        assert tau_inv(f, f, 2) == tuple(TRUE if f >> (1 - t) & 1 else FALSE for t in range(2))
    with pytest.raises(InconsistentPair):
        tau_inv(0b10, 0b01, 2)


def test_tau_exhaustive_at_o():
    for x in (FALSE, UNDEF, TRUE):
        assert tau_inv(*tau(x)) == (x,)
        for y in (FALSE, UNDEF, TRUE):
            assert (x <= y) == leq3(tau(x), tau(y))
            assert trits_prec((x,), (y,)) == prec(tau(x), tau(y))


def _rendering(d, ty, pv):
    """Text rendering, used to check the documented grammar."""
    return d.show_pval(ty, pv)


def test_rendering_grammar():
    d = Domain(["a", "b"])
    assert _rendering(d, SET, (0b10, 0b11)) == "{a} undef {b}"
    assert d.show_value(REL, 0b0100) == "{(a, b)}"
    assert d.show_value(SET2, 0b0010) == "{{a}}"
    assert d.render_tuple(REL, (0, 1)) == ["a", "b"]
    assert _rendering(d, BOOL, (0, 1)) == "undef"


def _all_pvals(d, ty):
    return list(Lattice(d, ty).all_pvals())


@pytest.mark.parametrize("ty", [BOOL, SET])
def test_glb_prec_is_greatest_lower_bound_bruteforce(ty):
    L = Lattice(AB, ty)
    pvs = _all_pvals(AB, ty)
    for r in (1, 2, 3):
        for group in itertools.combinations(pvs, r):
            g = L.glb_prec(group)
            lower = [x for x in pvs if all(prec(x, y) for y in group)]
            assert g in lower
            assert all(prec(x, g) for x in lower)


def test_two_valued_values_are_precision_maximal():
    for ty in (BOOL, SET):
        pvs = _all_pvals(AB, ty)
        for v in pvs:
            if is_two_valued(v):
                assert all(not prec(v, w) or w == v for w in pvs)


sizes = st.sampled_from([(1, BOOL), (2, SET), (3, SET), (2, SET2), (3, SET2), (2, REL)])


@settings(max_examples=300, deadline=None)
@given(sizes, st.integers(0, 2 ** 64))
def test_lattice_laws(spec, seed):
    n, ty = spec
    d = Domain(["a", "b", "c"][:n])
    L = Lattice(d, ty)
    rng = random.Random(seed)
    x, y, z = (rng.getrandbits(L.n) for _ in range(3))
    assert L.lub2([x, L.lub2([y, z])]) == L.lub2([L.lub2([x, y]), z])
    assert L.glb2([x, L.lub2([x, y])]) == x
    assert L.lub2([x, L.glb2([x, y])]) == x
    assert L.leq(x, y) == (L.lub2([x, y]) == y)
    assert L.leq(L.bottom, x) and L.leq(x, L.top)


def _random_trits(rng, n):
    return tuple(rng.choice((FALSE, UNDEF, TRUE)) for _ in range(n))


@settings(max_examples=200, deadline=None)
@given(sizes, st.integers(0, 2 ** 64))
def test_interlacing(spec, seed):
    n, ty = spec
    d = Domain(["a", "b", "c"][:n])
    L = Lattice(d, ty)
    rng = random.Random(seed)
    fam, finer = [], []
    for _ in range(rng.randint(1, 4)):
        x = _random_trits(rng, L.n)
        y = tuple(v if v != UNDEF or rng.random() < 0.5 else rng.choice((FALSE, TRUE)) for v in x)
        fam.append(tau(x))
        finer.append(tau(y))
    assert prec(L.lub3(fam), L.lub3(finer))
    assert prec(L.glb3(fam), L.glb3(finer))
