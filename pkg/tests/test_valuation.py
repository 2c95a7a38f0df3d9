r"""Valuation and formula-language tests.

Atomic values are cross-checked against the naive reference recursion in
oracles.py; the parser is checked for precedence ("->" binds loosest and
associates right, "\/" above it, "/\" above that, "~" tightest) and for
text round-trips.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hvmodels.errors import (
    EmptyFragment,
    ParseError,
    UnboundVariable,
    UnknownConstant,
)
from hvmodels.formula import (
    And,
    BExists,
    BForall,
    Const,
    Eq,
    Implies,
    Member,
    Not,
    Or,
    UExists,
    UForall,
    Var,
    free_vars,
    is_positive_bounded,
    parse_formula,
    to_text,
)
from hvmodels.lattice import make_boolean, make_chain
from hvmodels.names import NameStore, enumerate_names, ordered_pair_h
from hvmodels.valuation import EvalContext, eq_matrix, mem_matrix

from oracles import ref_eq, ref_mem, ref_ni


# -- atomic values against the reference recursion ---------------------------


def _sample(pool, k):
    if len(pool) <= k:
        return list(pool)
    step = max(1, len(pool) // k)
    return list(pool[::step][:k])


def test_atomic_values_match_oracle(pools):
    budgets = {"chain2": 27, "chain3": 16, "four": 12}
    for name, (store, ctx, pool) in pools.items():
        sample = _sample(pool, budgets[name])
        for x in sample:
            for y in sample:
                assert ctx.atomic_eq(x, y) == ref_eq(store, x, y)
                assert ctx.atomic_mem(x, y) == ref_mem(store, x, y)
                assert ctx.atomic_ni(x, y) == ref_ni(store, x, y)


def test_memo_is_shared_across_queries(store3):
    ctx = EvalContext(store3)
    e = store3.intern({})
    u = store3.intern({e: 1})
    x = store3.intern({u: 2, e: 0})
    ctx.atomic_eq(x, u)
    # the recursive fill must have populated strictly smaller pairs
    assert (min(e, u), max(e, u)) in ctx._eq
    assert ctx.atomic_eq(u, x) == ctx.atomic_eq(x, u)


def test_matrix_helpers_agree_with_loops(store2):
    pool = enumerate_names(store2, max_rank=1)
    ctx = EvalContext(store2)
    E = eq_matrix(ctx, pool)
    M = mem_matrix(ctx, pool, pool)
    for i, x in enumerate(pool):
        for j, y in enumerate(pool):
            assert E[i, j] == ctx.atomic_eq(x, y)
            assert M[i, j] == ctx.atomic_mem(x, y)
    assert (E == E.T).all()


# -- parser ------------------------------------------------------------------

FREE = ("a", "b", "c", "X", "Y")


def P(text):
    return parse_formula(text, free=FREE)


def test_implication_associates_right():
    assert P("a = a -> b = b -> c = c") == Implies(
        Eq(Var("a"), Var("a")),
        Implies(Eq(Var("b"), Var("b")), Eq(Var("c"), Var("c"))),
    )


def test_connective_precedence():
    na = Not(Eq(Var("a"), Var("a")))
    bc = And(Member(Var("b"), Var("X")), Member(Var("c"), Var("X")))
    assert P("~a = a \\/ b in X /\\ c in X") == Or(na, bc)
    assert P("a in X /\\ b in X \\/ c in X") == Or(
        And(Member(Var("a"), Var("X")), Member(Var("b"), Var("X"))),
        Member(Var("c"), Var("X")),
    )
    assert P("a in X \\/ b in X -> c in X") == Implies(
        Or(Member(Var("a"), Var("X")), Member(Var("b"), Var("X"))),
        Member(Var("c"), Var("X")),
    )


def test_quantifier_body_extends_right():
    phi = P("forall u in X . u in Y /\\ u = u")
    assert phi == BForall(
        "u",
        Var("X"),
        And(Member(Var("u"), Var("Y")), Eq(Var("u"), Var("u"))),
    )
    psi = P("exists u . forall v in X . u = v")
    assert psi == UExists("u", BForall("v", Var("X"), Eq(Var("u"), Var("v"))))


def test_parens_override_precedence():
    assert P("(a in X \\/ b in X) /\\ c in X") == And(
        Or(Member(Var("a"), Var("X")), Member(Var("b"), Var("X"))),
        Member(Var("c"), Var("X")),
    )


def test_constants_resolve_to_name_ids(store3):
    e = store3.intern({})
    phi = parse_formula("e in X", constants={"e": e}, free=("X",))
    assert phi == Member(Const(e, "e"), Var("X"))


def test_scope_shadows_constants(store3):
    e = store3.intern({})
    phi = parse_formula("forall e in X . e = e", constants={"e": e}, free=("X",))
    assert phi.body == Eq(Var("e"), Var("e"))


def test_parse_errors():
    with pytest.raises(UnknownConstant):
        parse_formula("mystery in X", free=("X",))
    with pytest.raises(ParseError) as err:
        parse_formula("a = a \\/", free=("a",))
    assert err.value.column is not None
    with pytest.raises(ParseError):
        parse_formula("a = a b = b", free=("a", "b"))
    with pytest.raises(ParseError):
        parse_formula("forall . a = a", free=("a",))
    with pytest.raises(ParseError):
        parse_formula("a ? a", free=("a",))
    with pytest.raises(ParseError):
        parse_formula("(a = a", free=("a",))


def test_free_vars_and_positivity():
    phi = P("forall u in X . u in Y \\/ (exists v in X . u = v)")
    assert free_vars(phi) == {"X", "Y"}
    assert is_positive_bounded(phi)
    assert not is_positive_bounded(P("~a = a"))
    assert not is_positive_bounded(P("a = a -> b = b"))
    assert not is_positive_bounded(parse_formula("exists u . u in X", free=("X",)))


# -- text round-trip ----------------------------------------------------------

_vars = st.sampled_from(["a", "b", "X"])


def _terms():
    return st.builds(Var, _vars)


def _formulas(depth=3):
    atoms = st.one_of(
        st.builds(Eq, _terms(), _terms()),
        st.builds(Member, _terms(), _terms()),
    )
    if depth == 0:
        return atoms
    sub = _formulas(depth - 1)
    return st.one_of(
        atoms,
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
        st.builds(BForall, st.just("u"), _terms(), sub),
        st.builds(BExists, st.just("u"), _terms(), sub),
        st.builds(UForall, st.just("w"), sub),
        st.builds(UExists, st.just("w"), sub),
    )


@settings(max_examples=120, deadline=None)
@given(_formulas())
def test_to_text_parse_roundtrip(phi):
    assert parse_formula(to_text(phi), free=("a", "b", "X")) == phi


# -- evaluation errors ---------------------------------------------------------


def test_eval_error_paths(store3):
    ctx = EvalContext(store3)
    e = store3.intern({})
    with pytest.raises(UnboundVariable):
        ctx.eval(Eq(Var("a"), Var("a")))
    with pytest.raises(EmptyFragment):
        ctx.eval(UForall("u", Eq(Var("u"), Var("u"))))
    with pytest.raises(EmptyFragment):
        ctx.eval(UExists("u", Eq(Var("u"), Var("u"))))
    frag = EvalContext(store3, fragment=[e])
    assert frag.eval(UExists("u", Eq(Var("u"), Const(e)))) == store3.algebra.top


# -- soundness of the intuitionistic propositional laws -------------------------

# each schema maps formula slots to a compound that must carry value top
SCHEMAS = [
    ("K", 2, lambda a, b: Implies(a, Implies(b, a))),
    ("S", 3, lambda a, b, c: Implies(
        Implies(a, Implies(b, c)),
        Implies(Implies(a, b), Implies(a, c)))),
    ("and-left", 2, lambda a, b: Implies(And(a, b), a)),
    ("and-right", 2, lambda a, b: Implies(And(a, b), b)),
    ("and-intro", 2, lambda a, b: Implies(a, Implies(b, And(a, b)))),
    ("or-left", 2, lambda a, b: Implies(a, Or(a, b))),
    ("or-right", 2, lambda a, b: Implies(b, Or(a, b))),
    ("or-elim", 3, lambda a, b, c: Implies(
        Implies(a, c), Implies(Implies(b, c), Implies(Or(a, b), c)))),
    ("neg-intro", 2, lambda a, b: Implies(
        Implies(a, b), Implies(Implies(a, Not(b)), Not(a)))),
    ("explosion", 2, lambda a, b: Implies(Not(a), Implies(a, b))),
    ("double-neg", 1, lambda a: Implies(a, Not(Not(a)))),
    ("contrapose", 2, lambda a, b: Implies(Implies(a, b), Implies(Not(b), Not(a)))),
]


def _atoms_covering_algebra(store):
    """One atomic formula per algebra element, with exactly that value."""
    e = store.intern({})
    out = []
    for v in range(store.algebra.n):
        holder = store.intern({e: v})
        out.append(Member(Const(e), Const(holder)))
    return out


@pytest.mark.parametrize("label,arity,schema", SCHEMAS, ids=[s[0] for s in SCHEMAS])
def test_intuitionistic_schemas_hold(label, arity, schema, algebras):
    for algebra in algebras.values():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        atoms = _atoms_covering_algebra(store)
        for slots in itertools.product(atoms, repeat=arity):
            phi = schema(*slots)
            assert ctx.eval(phi) == algebra.top, (label, algebra.name)


def test_atoms_cover_every_value(algebras):
    for algebra in algebras.values():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        assert [ctx.eval(a) for a in _atoms_covering_algebra(store)] == list(
            range(algebra.n)
        )


def test_peirce_fails_on_the_chain_and_holds_boolean(chain3, four):
    def peirce(a, b):
        return Implies(Implies(Implies(a, b), a), a)

    store = NameStore(chain3)
    ctx = EvalContext(store)
    e = store.intern({})
    a = Member(Const(e), Const(store.intern({e: 1})))  # value m
    b = Member(Const(e), Const(e))  # value 0
    assert ctx.eval(peirce(a, b)) == 1  # the middle element, not top

    bstore = NameStore(four)
    bctx = EvalContext(bstore)
    for a, b in itertools.product(_atoms_covering_algebra(bstore), repeat=2):
        assert bctx.eval(peirce(a, b)) == four.top


# -- ordered pairs -------------------------------------------------------------


@pytest.mark.parametrize("size", [2, 3])
def test_ordered_pair_equality_law(size):
    store = NameStore(make_chain(size))
    ctx = EvalContext(store)
    pool = enumerate_names(store, max_rank=1)
    mt = store.algebra.meet_table
    for u, v, up, vp in itertools.product(pool, repeat=4):
        lhs = ctx.atomic_eq(
            ordered_pair_h(store, u, v), ordered_pair_h(store, up, vp)
        )
        rhs = mt[ctx.atomic_eq(u, up), ctx.atomic_eq(v, vp)]
        assert lhs == rhs, (u, v, up, vp)


# -- unbounded vs bounded agreement ---------------------------------------------


def test_fragment_evaluation_is_exact_for_bounded_ranges(store3):
    pool = enumerate_names(store3, max_rank=2, max_domain=2)
    ctx = EvalContext(store3, fragment=pool)
    inner = Member(Var("u"), Var("Y"))
    jt = store3.algebra.join_table
    mt = store3.algebra.meet_table
    it = store3.algebra.impl_table
    for x in pool[::7]:
        for y in pool[::11]:
            sigma = {"X": x, "Y": y}
            # exists u in X . u in Y  ==  relativised unbounded exists
            bound = ctx.eval(BExists("u", Var("X"), inner), sigma)
            guard = UExists("u", And(Member(Var("u"), Var("X")), inner))
            assert ctx.eval(guard, sigma) == bound
            bound = ctx.eval(BForall("u", Var("X"), inner), sigma)
            guard = UForall("u", Implies(Member(Var("u"), Var("X")), inner))
            assert ctx.eval(guard, sigma) == bound
