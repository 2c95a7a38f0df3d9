import pytest
from hypothesis import given, settings, strategies as st

from hvmodels.errors import (
    BudgetExceeded,
    CrossAlgebra,
    ParseError,
    UnknownId,
    UnknownKey,
    WrongAlgebra,
)
from hvmodels.lattice import make_boolean, make_chain
from hvmodels.names import (
    NameStore,
    check_project,
    enumerate_names,
    hat_embed,
    ord_hf,
    ordered_pair_h,
    pad_equivalent,
    parse_name_literal,
    rank,
    singleton_h,
    unordered_pair_h,
)
from hvmodels.valuation import EvalContext

from oracles import pool_count, ref_eq


def test_interning_is_canonical(store3):
    e = store3.intern({})
    a = store3.intern({e: 1})
    b = store3.intern(((e, 1),))
    assert a == b
    assert store3.intern({e: 1, e: 2}) == store3.intern({e: 2})
    # last-wins on duplicate pair keys as well
    assert store3.intern(((e, 1), (e, 2))) == store3.intern({e: 2})
    assert len({e, a}) == 2


def test_entries_are_sorted_and_immutable(store3):
    e = store3.intern({})
    u = store3.intern({e: 1})
    x = store3.intern({u: 0, e: 2})
    assert store3.entries(x) == ((e, 2), (u, 0))
    assert store3.domain(x) == (e, u)


def test_intern_validates_keys_and_values(store3):
    e = store3.intern({})
    with pytest.raises(UnknownKey):
        store3.intern({41: 1})
    with pytest.raises(CrossAlgebra):
        store3.intern({e: 9})
    with pytest.raises(UnknownId):
        store3.entries(99)


def test_rank_convention(store3):
    e = store3.intern({})
    assert rank(store3, e) == 0
    u = store3.intern({e: 0})
    assert rank(store3, u) == 1
    v = store3.intern({u: 1, e: 1})
    assert rank(store3, v) == 2


@pytest.mark.parametrize("alg_size,max_rank,cap,expect", [
    (2, 2, 2, 19),
    (2, 2, None, 27),
    (3, 2, 2, 67),
    (4, 2, 2, 181),
    (4, 2, 3, 821),
])
def test_enumeration_counts_match_closed_form(alg_size, max_rank, cap, expect):
    algebra = make_chain(alg_size) if alg_size != 4 else make_boolean(2)
    store = NameStore(algebra)
    pool = enumerate_names(store, max_rank=max_rank, max_domain=cap)
    assert len(pool) == expect
    assert pool_count(alg_size, max_rank, cap) == expect
    assert len(set(pool)) == len(pool)
    assert all(rank(store, x) <= max_rank for x in pool)


def test_enumeration_is_downward_closed_and_sorted(store3):
    pool = enumerate_names(store3, max_rank=2, max_domain=2)
    assert pool == sorted(pool)
    members = set(pool)
    for x in pool:
        for u, _ in store3.entries(x):
            assert u in members


def test_enumeration_budget():
    store = NameStore(make_boolean(2))
    with pytest.raises(BudgetExceeded) as err:
        enumerate_names(store, max_rank=3, max_domain=None, budget=10_000)
    assert err.value.predicted is not None
    assert err.value.predicted > 10_000


def test_hat_embed_and_project_roundtrip(store2):
    sets = [frozenset(), ord_hf(1), ord_hf(3),
            frozenset([frozenset(), frozenset([frozenset()])])]
    for x in sets:
        assert check_project(store2, hat_embed(store2, x)) == x


def test_check_project_requires_the_two_chain(store3):
    e = store3.intern({})
    with pytest.raises(WrongAlgebra):
        check_project(store3, e)


def test_ord_hf():
    assert ord_hf(0) == frozenset()
    assert ord_hf(2) == frozenset([frozenset(), frozenset([frozenset()])])
    assert len(ord_hf(4)) == 4


def test_pairing_collapses_duplicates(store3):
    e = store3.intern({})
    u = store3.intern({e: 1})
    assert unordered_pair_h(store3, u, u) == singleton_h(store3, u)
    p = ordered_pair_h(store3, u, e)
    (k1, v1), (k2, v2) = store3.entries(p)
    assert {k1, k2} == {singleton_h(store3, u), unordered_pair_h(store3, u, e)}
    assert v1 == v2 == store3.algebra.top


def test_pad_equivalent_is_equal_with_value_top(store4):
    e = store4.intern({})
    u = store4.intern({e: 1})
    x = store4.intern({u: 3, e: 1})
    seen = {x}
    for k in (1, 2, 3):
        p = pad_equivalent(store4, x, k)
        assert p not in seen
        seen.add(p)
        assert ref_eq(store4, x, p) == store4.algebra.top
        # pads only ever append bottom-valued fresh keys
        base = dict(store4.entries(x))
        for key, v in store4.entries(p):
            if key in base:
                assert v == base[key]
            else:
                assert v == store4.algebra.bottom


def test_pad_equivalent_skips_keys_already_in_the_domain(store3):
    e = store3.intern({})
    x = store3.intern({e: 1})  # the first tag candidate is already a key
    p = pad_equivalent(store3, x, 1)
    extra = [k for k, _ in store3.entries(p) if k != e]
    assert len(extra) == 1
    assert extra[0] != e
    assert ref_eq(store3, x, p) == store3.algebra.top


def test_literal_roundtrip_basics(store3):
    e = parse_name_literal(store3, "{}")
    assert e == store3.intern({})
    u = parse_name_literal(store3, "{({}, m)}")
    assert u == store3.intern({e: 1})
    nested = parse_name_literal(store3, "{({({}, m)}, 0), ({}, 1)}")
    assert store3.entries(nested) == ((e, 2), (u, 0))
    # trailing comma and whitespace are tolerated
    assert parse_name_literal(store3, "{ ({} , m) , }") == u


def test_literal_bindings(store3):
    e = store3.intern({})
    u = store3.intern({e: 0})
    got = parse_name_literal(store3, "{(base, m), ({}, 0)}", {"base": u})
    assert got == store3.intern({u: 1, e: 0})


def test_literal_errors(store3):
    for bad in ["", "{", "{(}", "{({}, zz)}", "{({}, m) ({}, 0)}", "oops", "{} {}"]:
        with pytest.raises(ParseError):
            parse_name_literal(store3, bad)


def test_to_literal_parse_roundtrip_exhaustive(pools):
    for store, _, pool in pools.values():
        for x in pool[:200]:
            assert parse_name_literal(store, store.to_literal(x)) == x


@st.composite
def name_trees(draw, depth=3):
    if depth == 0:
        return ()
    n = draw(st.integers(0, 2))
    return tuple(
        (draw(name_trees(depth=depth - 1)), draw(st.integers(0, 2)))
        for _ in range(n)
    )


def _intern_tree(store, tree):
    return store.intern({_intern_tree(store, sub): v for sub, v in tree})


@settings(max_examples=60, deadline=None)
@given(name_trees())
def test_interning_literal_roundtrip_random(tree):
    store = NameStore(make_chain(3))
    x = _intern_tree(store, tree)
    assert parse_name_literal(store, store.to_literal(x)) == x
    # re-interning the parsed entries is stable
    assert store.intern(dict(store.entries(x))) == x
