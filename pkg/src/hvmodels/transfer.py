"""Locale morphisms and the induced map between name universes.

A locale morphism f: A -> B preserves finite meets and all joins; over
finite algebras that reduces to top, bottom, binary meets and binary
joins.  The induced map on names comes in two flavors:

- the strict relation: x is related to x' when some surjection from
  dom x onto dom x' commutes with f on values and relates children
  recursively.  This relation is not total (see the counterexample
  helpers), which is the point of the construction below.
- the generalized relation and its canonical witness `lift`: children
  are lifted recursively in deterministic domain order, and when two
  children receive the same interned image the later one is replaced by
  an equivalence-padded variant, so the witness is a bijection and the
  image is a genuine mapping.
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .errors import (
    BottomNotPreserved,
    BudgetExceeded,
    CrossAlgebra,
    NotJoinPreserving,
    NotMeetPreserving,
    NotPositiveBounded,
    ParseError,
    TopNotPreserved,
)
from .formula import Const, is_positive_bounded
from .hset import HSet, HSetMorphism, from_name
from .names import pad_equivalent
from .valuation import EvalContext, eq_matrix, mem_matrix

SURJECTION_DOMAIN_CAP = 4


class LocaleMorphism:
    """Validated element-wise table A -> B; construct via
    validate_locale_morphism."""

    def __init__(self, source, target, table, name=None):
        self.source = source
        self.target = target
        self.table = np.asarray(table, dtype=np.int64)
        self.table.setflags(write=False)
        self.name = name
        self._lift_cache = {}

    def __call__(self, a):
        return int(self.table[a])

    def __repr__(self):
        return f"LocaleMorphism({self.name or '?'}: {self.source!r} -> {self.target!r})"


def validate_locale_morphism(source, target, table, name=None):
    """Check the locale-morphism laws; raise a structured error naming the
    violated law with witnesses on failure."""
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (source.n,):
        raise ParseError("morphism table must cover every source element once")
    if table.min() < 0 or table.max() >= target.n:
        raise CrossAlgebra("table values outside the target algebra")
    if table[source.bottom] != target.bottom:
        raise BottomNotPreserved((source.labels[source.bottom],),
                                 f"maps to {target.labels[table[source.bottom]]}")
    if table[source.top] != target.top:
        raise TopNotPreserved((source.labels[source.top],),
                              f"maps to {target.labels[table[source.top]]}")
    fm = table[source.meet_table]            # f(a /\ b)
    mf = target.meet_table[table[:, None], table[None, :]]
    bad = np.argwhere(fm != mf)
    if len(bad):
        a, b = map(int, bad[0])
        raise NotMeetPreserving((source.labels[a], source.labels[b]))
    fj = table[source.join_table]
    jf = target.join_table[table[:, None], table[None, :]]
    bad = np.argwhere(fj != jf)
    if len(bad):
        a, b = map(int, bad[0])
        raise NotJoinPreserving((source.labels[a], source.labels[b]))
    return LocaleMorphism(source, target, table, name=name)


def identity_morphism(algebra):
    return LocaleMorphism(algebra, algebra, np.arange(algebra.n), name="id")


def compose_locale(g, f):
    """g after f."""
    if g.source is not f.target:
        raise CrossAlgebra("locale morphisms are not composable")
    name = None
    if f.name and g.name:
        name = f"{g.name}.{f.name}"
    return LocaleMorphism(f.source, g.target, g.table[f.table], name=name)


def preserves_implication(f):
    """True when f also strictly preserves the Heyting implication (and
    hence, over finite algebras, all the operations used by valuation)."""
    fi = f.table[f.source.impl_table]
    if_ = f.target.impl_table[f.table[:, None], f.table[None, :]]
    return bool((fi == if_).all())


# -- the strict (first-proposal) relation ------------------------------------------


def _surjections(n_from, n_to):
    if n_to > n_from:
        return
    for fn in iproduct(range(n_to), repeat=n_from):
        if len(set(fn)) == n_to:
            yield fn


def strict_related(f, store_a, store_b, x, xp, _memo=None, budget=None, _count=None):
    """The naive recursive relation: a surjection of domains commuting
    with f whose child pairs are themselves strictly related."""
    memo = {} if _memo is None else _memo
    count = [0] if _count is None else _count
    key = (x, xp)
    if key in memo:
        return memo[key]
    ea = store_a.entries(x)
    eb = store_b.entries(xp)
    if not ea:
        memo[key] = xp == store_b.empty
        return memo[key]
    if len(ea) > SURJECTION_DOMAIN_CAP:
        raise BudgetExceeded(
            f"surjection search over a domain of {len(ea)} exceeds the cap"
        )
    dom_a = [u for u, _ in ea]
    vals_a = [v for _, v in ea]
    dom_b = [u for u, _ in eb]
    vals_b = [v for _, v in eb]
    result = False
    for eps in _surjections(len(dom_a), len(dom_b)):
        count[0] += 1
        if budget is not None and count[0] > budget:
            raise BudgetExceeded("surjection search budget exhausted")
        if any(vals_b[eps[i]] != f(vals_a[i]) for i in range(len(dom_a))):
            continue
        if all(
            strict_related(f, store_a, store_b, dom_a[i], dom_b[eps[i]],
                           _memo=memo, budget=budget, _count=count)
            for i in range(len(dom_a))
        ):
            result = True
            break
    memo[key] = result
    return result


def first_proposal_images(f, x, candidates, store_a, store_b, budget=None):
    """All candidates strictly related to x; empty exactly when the naive
    definition fails to assign x an image inside the candidate pool."""
    memo = {}
    count = [0]
    return [
        xp
        for xp in candidates
        if strict_related(f, store_a, store_b, x, xp, _memo=memo, budget=budget,
                          _count=count)
    ]


# -- the canonical witnessed lift ---------------------------------------------------


@dataclass(frozen=True)
class WitnessedLift:
    x: int
    image: int
    witness: tuple  # pairs (u, tau(u)), tau a bijection dom x -> dom image


def lift(f, x, store_a, store_b):
    """Canonical total lift of x along f.

    Children are lifted in ascending NameId order; a child whose image
    collides with an already-used key is replaced by successive
    equivalence pads until fresh.  Deterministic: equal inputs produce
    equal witnesses and images.
    """
    # keyed by the stores themselves: holding them alive keeps the cached
    # name ids valid for the lifetime of the morphism
    cache = f._lift_cache.setdefault((store_a, store_b), {})
    if x in cache:
        return cache[x]
    stack = [store_a.check_id(x)]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        entries = store_a.entries(cur)
        missing = [u for u, _ in entries if u not in cache]
        if missing:
            stack.extend(missing)
            continue
        image_entries = {}
        witness = []
        for u, val in entries:
            target = cache[u].image
            k = 1
            while target in image_entries:
                target = pad_equivalent(store_b, cache[u].image, k)
                k += 1
            image_entries[target] = f(val)
            witness.append((u, target))
        cache[cur] = WitnessedLift(
            x=cur, image=store_b.intern(image_entries), witness=tuple(witness)
        )
        stack.pop()
    return cache[x]


def witnessed_lift_with(f, x, tau, store_a, store_b, ctx_b=None):
    """Build a WitnessedLift from an explicit witness bijection, checking
    its validity: values commute with f and every target is equal (value
    top) to the canonical child image."""
    ctx_b = ctx_b or EvalContext(store_b)
    entries = store_a.entries(x)
    targets = [tau[u] for u, _ in entries]
    if len(set(targets)) != len(targets):
        raise ParseError("witness is not injective")
    image_entries = {}
    top = store_b.algebra.top
    for u, val in entries:
        rep = lift(f, u, store_a, store_b).image
        if ctx_b.atomic_eq(rep, tau[u]) != top:
            raise ParseError(f"witness target for {u} is not equivalent to a lift of it")
        image_entries[tau[u]] = f(val)
    image = store_b.intern(image_entries)
    return WitnessedLift(x=x, image=image, witness=tuple((u, tau[u]) for u, _ in entries))


def is_generalized_related(f, x, xp, store_a, store_b, ctx_b=None, budget=None):
    """Decide the generalized relation.

    The main test is the equivalence-closure clause against the
    canonical representative, [x' = lift(f,x).image] = top.  A direct
    surjection search (recursive clause checked through canonical child
    representatives) backs it up for witnesses the closure clause could
    not justify on its own; the two agree on every tested pool.
    """
    ctx_b = ctx_b or EvalContext(store_b)
    top = store_b.algebra.top
    if ctx_b.atomic_eq(xp, lift(f, x, store_a, store_b).image) == top:
        return True
    ea = store_a.entries(x)
    eb = store_b.entries(xp)
    if not ea:
        return xp == store_b.empty
    if len(ea) > SURJECTION_DOMAIN_CAP:
        raise BudgetExceeded(
            f"surjection search over a domain of {len(ea)} exceeds the cap"
        )
    dom_a = [u for u, _ in ea]
    vals_a = [v for _, v in ea]
    dom_b = [u for u, _ in eb]
    vals_b = [v for _, v in eb]
    count = 0
    for eps in _surjections(len(dom_a), len(dom_b)):
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded("surjection search budget exhausted")
        if any(vals_b[eps[i]] != f(vals_a[i]) for i in range(len(dom_a))):
            continue
        if all(
            ctx_b.atomic_eq(lift(f, dom_a[i], store_a, store_b).image, dom_b[eps[i]]) == top
            for i in range(len(dom_a))
        ):
            return True
    return False


# -- reports --------------------------------------------------------------------------


@dataclass
class LiftReport:
    title: str
    checked: int = 0
    equality_asserted: bool = False
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def record(self, ok, detail):
        self.checked += 1
        if not ok:
            self.violations.append(detail)

    def to_json_dict(self):
        return {
            "title": self.title,
            "checked": self.checked,
            "equality_asserted": self.equality_asserted,
            "ok": self.ok,
            "violations": self.violations,
            "notes": self.notes,
        }

    def render_text(self):
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'} "
                 f"({self.checked} checks"
                 + (", equality asserted" if self.equality_asserted else "")
                 + ")"]
        for v in self.violations[:20]:
            lines.append(f"  violation: {v}")
        for k in sorted(self.notes):
            lines.append(f"  note: {k} = {self.notes[k]}")
        return "\n".join(lines)


def check_atomic_preservation(f, pairs, store_a, store_b, ctx_a=None, ctx_b=None):
    """f([y in x]) <= [y' in x'] and f([x = z]) <= [x' = z'] over all
    ordered pairs drawn from the related list; when f also preserves
    implication, equality of both sides is asserted instead."""
    ctx_a = ctx_a or EvalContext(store_a)
    ctx_b = ctx_b or EvalContext(store_b)
    B = f.target
    strict = preserves_implication(f)
    xs = [x for x, _ in pairs]
    xps = [xp for _, xp in pairs]
    rep = LiftReport(
        title=f"atomic preservation along {f.name or 'f'}",
        equality_asserted=strict,
    )
    for kind, mat_a, mat_b in (
        ("in", mem_matrix(ctx_a, xs), mem_matrix(ctx_b, xps)),
        ("=", eq_matrix(ctx_a, xs), eq_matrix(ctx_b, xps)),
    ):
        fa = f.table[mat_a]
        ok = B.leq[fa, mat_b]
        if strict:
            ok &= fa == mat_b
        rep.checked += ok.size
        for i, j in np.argwhere(~ok):
            rep.violations.append({
                "relation": kind,
                "source_pair": [store_a.to_literal(xs[i]), store_a.to_literal(xs[j])],
                "target_pair": [store_b.to_literal(xps[i]), store_b.to_literal(xps[j])],
                "f_of_source_value": B.labels[fa[i, j]],
                "target_value": B.labels[mat_b[i, j]],
            })
    return rep


def check_positive_bounded_preservation(f, phi, tuples, store_a, store_b,
                                        ctx_a=None, ctx_b=None, title=None):
    """f([phi(a)]) <= [phi(a')] for positive bounded phi and lifted
    assignment pairs (sigma_A, sigma_B).  Parameters must come through
    the assignments: constants are rejected."""
    if not is_positive_bounded(phi):
        raise NotPositiveBounded(
            "formula uses negation, implication or an unbounded quantifier"
        )
    if _has_const(phi):
        raise NotPositiveBounded(
            "constants are store-specific; pass parameters through assignments"
        )
    ctx_a = ctx_a or EvalContext(store_a)
    ctx_b = ctx_b or EvalContext(store_b)
    B = f.target
    rep = LiftReport(title=title or "positive bounded preservation")
    for sigma_a, sigma_b in tuples:
        va = f(ctx_a.eval(phi, sigma_a))
        vb = ctx_b.eval(phi, sigma_b)
        ok = bool(B.leq[va, vb])
        rep.record(ok, None if ok else {
            "assignment": {k: store_a.to_literal(v) for k, v in sigma_a.items()},
            "f_of_source_value": B.labels[va],
            "target_value": B.labels[vb],
        })
    return rep


def _has_const(phi):
    if isinstance(phi, Const):
        return True
    return any(
        _has_const(child)
        for attr in ("left", "right", "bound", "body")
        if (child := getattr(phi, attr, None)) is not None
    )


def check_functoriality(f, g, sample, store_a, store_b, store_c,
                        ctx_a=None, ctx_c=None):
    """Identity law on the source sample and the composition law for the
    composable pair (f then g), both up to internal equality with value
    top."""
    ctx_a = ctx_a or EvalContext(store_a)
    ctx_c = ctx_c or EvalContext(store_c)
    ida = identity_morphism(f.source)
    gf = compose_locale(g, f)
    rep = LiftReport(title=f"functoriality of lifting ({f.name or 'f'}, {g.name or 'g'})")
    top_a = f.source.top
    interned_identity = True
    for x in sample:
        wl = lift(ida, x, store_a, store_a)
        ok = ctx_a.atomic_eq(wl.image, x) == top_a
        interned_identity &= wl.image == x
        rep.record(ok, None if ok else {
            "law": "identity",
            "x": store_a.to_literal(x),
            "image": store_a.to_literal(wl.image),
        })
    top_c = g.target.top
    for x in sample:
        via_b = lift(g, lift(f, x, store_a, store_b).image, store_b, store_c).image
        direct = lift(gf, x, store_a, store_c).image
        ok = ctx_c.atomic_eq(via_b, direct) == top_c
        rep.record(ok, None if ok else {
            "law": "composition",
            "x": store_a.to_literal(x),
            "two_step": store_c.to_literal(via_b),
            "one_step": store_c.to_literal(direct),
        })
    rep.notes["identity_images_interned_equal"] = interned_identity
    return rep


# -- the induced H-set morphism ----------------------------------------------------


def epsilon_hset_morphism(f, wl, store_a, store_b, ctx_a=None, ctx_b=None):
    """The H-set morphism (dom x, f . delta_x) -> (dom x', delta_x')
    induced by a witnessed lift:
    eps(u, v') = f([u in x]) /\\ [tau(u) = v'] /\\ [v' in x']."""
    ctx_a = ctx_a or EvalContext(store_a)
    ctx_b = ctx_b or EvalContext(store_b)
    B = f.target
    source_a = from_name(store_a, wl.x, ctx_a)
    source = HSet(B, source_a.points, f.table[source_a.delta])
    target = from_name(store_b, wl.image, ctx_b)
    tau = dict(wl.witness)
    phi = np.empty((len(source), len(target)), dtype=np.int64)
    for i, u in enumerate(source.points):
        fm = f(ctx_a.atomic_mem(u, wl.x))
        for j, vp in enumerate(target.points):
            phi[i, j] = B.big_meet([
                fm,
                ctx_b.atomic_eq(tau[u], vp),
                ctx_b.atomic_mem(vp, wl.image),
            ])
    return HSetMorphism(source, target, phi)


def mono_epi_experiment(m):
    """Experimental probes for the open question about eps being an iso:
    the usual mono characterization phi(x,z') /\\ phi(y,z') <= delta(x,y)
    and epi characterization \\/_x phi(x,x') = delta'(x',x')."""
    A = m.source.algebra
    mt, leq = A.meet_table, A.leq
    phi, ds, dt = m.phi, m.source.delta, m.target.delta
    mono = True
    for zp in range(len(m.target)):
        col = phi[:, zp]
        if not leq[mt[col[:, None], col[None, :]], ds].all():
            mono = False
            break
    epi = all(
        A.big_join(phi[:, xp]) == dt[xp, xp] for xp in range(len(m.target))
    )
    return {"mono": bool(mono), "epi": bool(epi)}


# -- morphism text format -------------------------------------------------------------


def parse_morphism(text, algebras):
    """Parse `morphism NAME : A -> B` followed by `map: a -> b` lines.

    `algebras` maps identifiers to loaded HeytingAlgebra values; the
    table must be total on the source.  Returns (name, LocaleMorphism),
    validated.
    """
    name = None
    src = tgt = None
    mapping = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("morphism"):
            if name is not None:
                raise ParseError("duplicate morphism header", lineno)
            head = line[len("morphism"):]
            try:
                name_part, arrow = head.split(":", 1)
                a_part, b_part = arrow.split("->", 1)
            except ValueError:
                raise ParseError("expected 'morphism NAME : A -> B'", lineno)
            name = name_part.strip()
            for ident in (a_part.strip(), b_part.strip()):
                if ident not in algebras:
                    raise ParseError(f"unknown algebra {ident!r}", lineno)
            src, tgt = algebras[a_part.strip()], algebras[b_part.strip()]
            continue
        if line.startswith("map:"):
            if name is None:
                raise ParseError("map: line before morphism header", lineno)
            try:
                a_lab, b_lab = line[len("map:"):].split("->", 1)
            except ValueError:
                raise ParseError("expected 'map: a -> b'", lineno)
            a_lab, b_lab = a_lab.strip(), b_lab.strip()
            try:
                a = src.index(a_lab)
            except KeyError:
                raise ParseError(f"unknown source element {a_lab!r}", lineno)
            try:
                b = tgt.index(b_lab)
            except KeyError:
                raise ParseError(f"unknown target element {b_lab!r}", lineno)
            if a in mapping:
                raise ParseError(f"duplicate map for {a_lab!r}", lineno)
            mapping[a] = b
            continue
        raise ParseError(f"unrecognized line {line!r}", lineno)
    if name is None:
        raise ParseError("missing morphism header")
    if len(mapping) != src.n:
        missing = [src.labels[i] for i in range(src.n) if i not in mapping]
        raise ParseError(f"table not total, missing {missing}")
    table = [mapping[i] for i in range(src.n)]
    return name, validate_locale_morphism(src, tgt, table, name=name)
