"""Executable law suites.

Each suite returns a CheckReport made of named families; a family counts
its checks and collects violations.  The command line prints and
serializes these reports, and the test suite asserts on them, so the
laws live in exactly one place.
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import hset as hs
from . import transfer as tr
from .errors import HvError, NotAFrame, NotJoinPreserving, NotMeetPreserving
from .formula import parse_formula
from .lattice import HeytingAlgebra, make_boolean, make_chain
from .names import (
    NameStore,
    check_project,
    enumerate_names,
    hat_embed,
    pad_equivalent,
)
from .valuation import EvalContext, eq_matrix, make_function_predicate, mem_matrix

DEFAULT_SEED = 1729


@dataclass
class Family:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def record(self, ok, detail=None):
        self.checked += 1
        if not ok:
            self.violations.append(detail)

    def bulk(self, count, ok_mask_or_bool, detail=None):
        """Count `count` checks at once; on failure store one witness."""
        self.checked += count
        if isinstance(ok_mask_or_bool, np.ndarray):
            if not ok_mask_or_bool.all():
                self.violations.append(detail)
        elif not ok_mask_or_bool:
            self.violations.append(detail)


@dataclass
class CheckReport:
    title: str
    config: dict = field(default_factory=dict)
    families: list = field(default_factory=list)

    def family(self, name):
        fam = Family(name)
        self.families.append(fam)
        return fam

    @property
    def ok(self):
        return all(f.ok for f in self.families)

    def summary_line(self):
        good = sum(1 for f in self.families if f.ok)
        return f"{good}/{len(self.families)} property families pass"

    def to_json_dict(self):
        return {
            "title": self.title,
            "config": self.config,
            "ok": self.ok,
            "summary": self.summary_line(),
            "families": [
                {
                    "name": f.name,
                    "checked": f.checked,
                    "ok": f.ok,
                    "violations": f.violations[:20],
                    "notes": f.notes,
                }
                for f in self.families
            ],
        }

    def render_text(self):
        lines = [f"== {self.title} =="]
        for f in self.families:
            status = "PASS" if f.ok else "FAIL"
            lines.append(f"  [{status}] {f.name} ({f.checked} checks)")
            for v in f.violations[:5]:
                lines.append(f"      violation: {v}")
            for k in sorted(f.notes):
                lines.append(f"      note: {k} = {f.notes[k]}")
        lines.append(self.summary_line())
        return "\n".join(lines)


def test_algebras():
    """The three standard algebras used across the suites."""
    return {
        "chain2": make_chain(2),
        "chain3": make_chain(3),
        "four": make_boolean(2),
    }


def standard_morphisms(algebras=None):
    """The four standard locale morphisms used across the suites."""
    alg = algebras or test_algebras()
    two, three, four = alg["chain2"], alg["chain3"], alg["four"]
    return {
        "f": tr.validate_locale_morphism(four, two, [0, 0, 1, 1], name="f"),
        "i": tr.validate_locale_morphism(two, four, [0, 3], name="i"),
        "collapse0": tr.validate_locale_morphism(three, two, [0, 0, 1], name="collapse0"),
        "collapse1": tr.validate_locale_morphism(three, two, [0, 1, 1], name="collapse1"),
    }


def _config(algebra, **kw):
    cfg = {"algebra": algebra.name or "?", "algebra_hash": algebra.content_hash()}
    cfg.update(kw)
    return cfg


# -- the eleven laws of atomic valuation ---------------------------------------------


def valuation_property_suite(algebra, rank=2, max_domain=2, budget=None,
                             eval_samples=8):
    """The eleven laws of the atomic/bounded valuation, exhaustive over
    the name pool of the given rank and domain caps.

    Families 10 and 11 additionally compare against the unbounded
    quantifier forms evaluated over the whole pool as fragment, plus an
    eval()-path subsample through the parser.
    """
    store = NameStore(algebra)
    ctx = EvalContext(store)
    pool = enumerate_names(store, max_rank=rank, max_domain=max_domain, budget=budget)
    n = len(pool)
    idx = {nid: k for k, nid in enumerate(pool)}
    EQ = eq_matrix(ctx, pool)
    MEM = mem_matrix(ctx, pool)
    mt, jt, it, leq = (algebra.meet_table, algebra.join_table,
                       algebra.impl_table, algebra.leq)
    top, bottom = algebra.top, algebra.bottom
    rep = CheckReport(
        title=f"valuation laws over {algebra.name or algebra.n}",
        config=_config(algebra, rank=rank, max_domain=max_domain, pool=n),
    )

    fam = rep.family("1 reflexivity [x = x] = top")
    fam.bulk(n, EQ.diagonal() == top, "diagonal below top")

    fam = rep.family("2 entry value below membership")
    for j, y in enumerate(pool):
        for u, v in store.entries(y):
            fam.record(bool(leq[v, MEM[idx[u], j]]),
                       {"y": store.to_literal(y), "u": store.to_literal(u)})

    fam = rep.family("3 symmetry [x = y] = [y = x]")
    fam.bulk(n * n, np.array_equal(EQ, EQ.T), "asymmetric pair")

    fam = rep.family("4 mirrored membership [x in y] = [y ni x]")
    for i, x in enumerate(pool):
        row = np.full(n, bottom, dtype=np.int64)
        for u, v in store.entries(x):
            row = jt[row, mt[v, EQ[idx[u], :]]]
        fam.bulk(n, np.array_equal(row, MEM[:, i]),
                 {"x": store.to_literal(x)})

    fam = rep.family("5 equality transitive")
    for k in range(n):
        lhs = mt[EQ[:, k][:, None], EQ[k, :][None, :]]
        fam.bulk(n * n, leq[lhs, EQ].all(), {"middle": store.to_literal(pool[k])})

    fam = rep.family("6 equality then membership")
    for k in range(n):
        lhs = mt[EQ[:, k][:, None], MEM[k, :][None, :]]
        fam.bulk(n * n, leq[lhs, MEM].all(), {"middle": store.to_literal(pool[k])})

    fam = rep.family("7 membership then equality")
    for k in range(n):
        lhs = mt[MEM[:, k][:, None], EQ[k, :][None, :]]
        fam.bulk(n * n, leq[lhs, MEM].all(), {"middle": store.to_literal(pool[k])})

    fam = rep.family("8 equality carries entries")
    for i, x in enumerate(pool):
        for u, v in store.entries(x):
            fam.bulk(n, leq[mt[EQ[i, :], v], MEM[idx[u], :]].all(),
                     {"x": store.to_literal(x), "u": store.to_literal(u)})

    fam = rep.family("9 substitution under equality")
    for k in range(n):
        for tag, phi in (("w in z", MEM[:, k]), ("z in w", MEM[k, :]),
                         ("w = z", EQ[:, k])):
            lhs = mt[EQ, phi[:, None]]
            rhs = mt[EQ, phi[None, :]]
            fam.bulk(n * n, np.array_equal(lhs, rhs),
                     {"family": tag, "z": store.to_literal(pool[k])})

    # bounded-quantifier expansion over dom x, with the value of the
    # unbounded form over the full pool as fragment for comparison
    bex = np.full((n, n), bottom, dtype=np.int64)
    bfa = np.full((n, n), top, dtype=np.int64)
    for i, x in enumerate(pool):
        for u, v in store.entries(x):
            bex[i, :] = jt[bex[i, :], mt[v, MEM[idx[u], :]]]
            bfa[i, :] = mt[bfa[i, :], it[v, MEM[idx[u], :]]]
    fex = np.full((n, n), bottom, dtype=np.int64)
    ffa = np.full((n, n), top, dtype=np.int64)
    for w in range(n):
        fex = jt[fex, mt[MEM[w, :][:, None], MEM[w, :][None, :]]]
        ffa = mt[ffa, it[MEM[w, :][:, None], MEM[w, :][None, :]]]

    sample = pool[:: max(1, n // eval_samples)]
    frag_ctx = EvalContext(store, fragment=pool)
    bounded_ex = parse_formula("exists u in X . u in Z", free=("X", "Z"))
    unbounded_ex = parse_formula("exists u . u in X /\\ u in Z", free=("X", "Z"))
    bounded_fa = parse_formula("forall u in X . u in Z", free=("X", "Z"))
    unbounded_fa = parse_formula("forall u . u in X -> u in Z", free=("X", "Z"))

    fam = rep.family("10 bounded exists expands over the domain")
    fam.bulk(n * n, np.array_equal(bex, fex), "fragment form differs")
    for x in sample:
        for z in sample:
            sigma = {"X": x, "Z": z}
            b = ctx.eval(bounded_ex, sigma)
            u = frag_ctx.eval(unbounded_ex, sigma)
            fam.record(b == bex[idx[x], idx[z]] == u,
                       {"x": store.to_literal(x), "z": store.to_literal(z)})

    fam = rep.family("11 bounded forall expands over the domain")
    fam.bulk(n * n, np.array_equal(bfa, ffa), "fragment form differs")
    for x in sample:
        for z in sample:
            sigma = {"X": x, "Z": z}
            b = ctx.eval(bounded_fa, sigma)
            u = frag_ctx.eval(unbounded_fa, sigma)
            fam.record(b == bfa[idx[x], idx[z]] == u,
                       {"x": store.to_literal(x), "z": store.to_literal(z)})

    return rep


# -- the pinned counterexample --------------------------------------------------------


def counterexample_names(store):
    """The pinned name over the four-element Boolean algebra whose strict
    image set is empty: its two children differ only in the value an atom
    assigns to the empty name, which no two-chain name can track."""
    four = store.algebra
    e = store.intern({})
    u1 = store.intern({e: four.index("0")})
    u2 = store.intern({e: four.index("a")})
    return store.intern({u1: four.index("0"), u2: four.index("1")})


def counterexample_suite():
    """Strict lifting has no image for the pinned name while the
    generalized lift succeeds through an equivalence pad."""
    alg = test_algebras()
    f = standard_morphisms(alg)["f"]
    sa, sb = NameStore(alg["four"]), NameStore(alg["chain2"])
    x = counterexample_names(sa)
    pool_b = enumerate_names(sb, max_rank=2)
    rep = CheckReport(
        title="strict lifting counterexample",
        config={
            "morphism": "f",
            "source_hash": alg["four"].content_hash(),
            "target_hash": alg["chain2"].content_hash(),
            "candidates": len(pool_b),
        },
    )

    fam = rep.family("strict relation yields no image")
    images = tr.first_proposal_images(f, x, pool_b, sa, sb)
    fam.record(images == [], {"images": [sb.to_literal(i) for i in images]})

    fam = rep.family("generalized lift succeeds")
    wl = tr.lift(f, x, sa, sb)
    ctx_b = EvalContext(sb)
    fam.record(tr.is_generalized_related(f, x, wl.image, sa, sb, ctx_b),
               "lift image not related")
    e = sb.intern({})
    w = sb.intern({e: sb.algebra.index("0")})
    pinned = sb.intern({w: sb.algebra.index("0"),
                        pad_equivalent(sb, w, 1): sb.algebra.index("1")})
    fam.record(wl.image == pinned,
               {"image": sb.to_literal(wl.image), "expected": sb.to_literal(pinned)})

    fam = rep.family("witness passes through an equivalence pad")
    targets = [t for _, t in wl.witness]
    fam.record(pad_equivalent(sb, w, 1) in targets,
               {"witness_targets": [sb.to_literal(t) for t in targets]})
    fam.record(len(set(targets)) == len(targets), "witness not injective")
    return rep


def injective_suite(rank=2):
    """Along an injective morphism the strict relation is already a total
    injective function whose values are the canonical lifts."""
    alg = test_algebras()
    i = standard_morphisms(alg)["i"]
    sa, sb = NameStore(alg["chain2"]), NameStore(alg["four"])
    pool_a = enumerate_names(sa, max_rank=rank)
    pool_b = enumerate_names(sb, max_rank=rank)
    rep = CheckReport(
        title="strict lifting along an injective morphism",
        config={"morphism": "i", "source_pool": len(pool_a),
                "candidate_pool": len(pool_b)},
    )
    fam_total = rep.family("every name has exactly one strict image")
    fam_intern = rep.family("strict image is the canonical lift, interned")
    images = []
    for x in pool_a:
        imgs = tr.first_proposal_images(i, x, pool_b, sa, sb)
        fam_total.record(len(imgs) == 1,
                         {"x": sa.to_literal(x), "image_count": len(imgs)})
        canon = tr.lift(i, x, sa, sb).image
        fam_intern.record(imgs == [canon], {"x": sa.to_literal(x)})
        images.append(canon)
    fam = rep.family("the strict function is injective")
    fam.bulk(len(pool_a), len(set(images)) == len(images), "image collision")
    return rep


# -- preservation sweeps --------------------------------------------------------------

POSITIVE_BOUNDED_FAMILY = (
    "X in Y",
    "X = Y",
    "exists u in X . u in Y",
    "forall u in X . u in Y",
    "exists u in X . forall v in Y . u = v",
    "forall u in X . exists v in Y . u = v",
)


def _sweep_pool(store, morphism_name, rank, max_domain):
    # the two-chain pool stays uncapped (it is finite and small); the
    # larger algebras use the domain cap
    if store.algebra.n == 2:
        return enumerate_names(store, max_rank=rank)
    return enumerate_names(store, max_rank=rank, max_domain=max_domain)


def preservation_suite(rank=2, max_domain=2, positive_bounded=True):
    """Atomic and positive-bounded preservation along the standard
    morphisms, over canonical lift pairs for the full pools."""
    alg = test_algebras()
    morphisms = standard_morphisms(alg)
    rep = CheckReport(
        title="preservation along standard morphisms",
        config={"rank": rank, "max_domain": max_domain,
                "morphisms": sorted(morphisms)},
    )
    for mname in ("f", "collapse0", "collapse1", "i"):
        m = morphisms[mname]
        sa, sb = NameStore(m.source), NameStore(m.target)
        ctx_a, ctx_b = EvalContext(sa), EvalContext(sb)
        pool = _sweep_pool(sa, mname, rank, max_domain)
        pairs = [(x, tr.lift(m, x, sa, sb).image) for x in pool]
        sub = tr.check_atomic_preservation(m, pairs, sa, sb, ctx_a, ctx_b)
        fam = rep.family(f"atomic preservation along {mname}"
                         + (" (equality)" if sub.equality_asserted else ""))
        fam.checked += sub.checked
        fam.violations.extend(sub.violations[:20])
        fam.notes["pairs"] = len(pairs)
        fam.notes["equality_asserted"] = sub.equality_asserted
        if positive_bounded:
            fam = rep.family(f"positive bounded preservation along {mname}")
            tuples = [
                ({"X": a, "Y": b}, {"X": pa, "Y": pb})
                for (a, pa), (b, pb) in iproduct(pairs, pairs)
            ]
            for text in POSITIVE_BOUNDED_FAMILY:
                phi = parse_formula(text, free=("X", "Y"))
                sub = tr.check_positive_bounded_preservation(
                    m, phi, tuples, sa, sb, ctx_a, ctx_b, title=text)
                fam.checked += sub.checked
                if sub.violations:
                    fam.violations.append({"formula": text,
                                           "first": sub.violations[0]})
    return rep


def functoriality_suite(rank=2, max_domain=2):
    """Identity lifts are the identity (by internal equality, and in fact
    by interning) on every standard pool; lifting along i then f agrees
    with lifting along the composite."""
    alg = test_algebras()
    morphisms = standard_morphisms(alg)
    rep = CheckReport(
        title="functoriality of lifting",
        config={"rank": rank, "max_domain": max_domain},
    )
    for aname, algebra in alg.items():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        pool = _sweep_pool(store, aname, rank, max_domain)
        ident = tr.identity_morphism(algebra)
        fam = rep.family(f"identity lift over {aname}")
        interned = True
        for x in pool:
            wl = tr.lift(ident, x, store, store)
            fam.record(ctx.atomic_eq(wl.image, x) == algebra.top,
                       {"x": store.to_literal(x)})
            interned &= wl.image == x
        fam.notes["images_interned_equal"] = interned
    i, f = morphisms["i"], morphisms["f"]
    sa = NameStore(alg["chain2"])
    sb = NameStore(alg["four"])
    sc = NameStore(alg["chain2"])
    ctx_c = EvalContext(sc)
    pool = enumerate_names(sa, max_rank=rank)
    gf = tr.compose_locale(f, i)
    fam = rep.family("composite lift i then f")
    for x in pool:
        via = tr.lift(f, tr.lift(i, x, sa, sb).image, sb, sc).image
        direct = tr.lift(gf, x, sa, sc).image
        fam.record(ctx_c.atomic_eq(via, direct) == alg["chain2"].top,
                   {"x": sa.to_literal(x)})
    return rep


# -- immersion of ordinary finite sets ------------------------------------------------


def small_hf_sets():
    """Hereditarily finite sets of depth at most 3 and width at most 3."""
    level = [frozenset()]
    for _ in range(3):
        seen = list(level)
        extra = []
        for r in range(1, min(3, len(seen)) + 1):
            extra.extend(
                frozenset(c)
                for c in _combinations(seen, r)
            )
        for x in extra:
            if x not in level:
                level.append(x)
    return level


def _combinations(items, r):
    from itertools import combinations

    return combinations(items, r)


def immersion_suite():
    """hat embeds ordinary finite sets rigidly over every test algebra:
    membership and equality valuate to top exactly on true instances and
    to bottom otherwise; over the two-chain, projecting back is exact."""
    rep = CheckReport(title="immersion of hereditarily finite sets")
    sets = small_hf_sets()
    rep.config["hf_sets"] = len(sets)
    for aname, algebra in test_algebras().items():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        names = [hat_embed(store, x) for x in sets]
        top, bottom = algebra.top, algebra.bottom
        fam = rep.family(f"membership biconditional over {aname}")
        for a, na in zip(sets, names):
            for b, nb in zip(sets, names):
                want = top if a in b else bottom
                fam.record(ctx.atomic_mem(na, nb) == want, {"pair": (str(a), str(b))})
        fam = rep.family(f"equality biconditional over {aname}")
        for a, na in zip(sets, names):
            for b, nb in zip(sets, names):
                want = top if a == b else bottom
                fam.record(ctx.atomic_eq(na, nb) == want, {"pair": (str(a), str(b))})
    store2 = NameStore(make_chain(2))
    fam = rep.family("project after embed is the identity")
    for x in sets:
        fam.record(check_project(store2, hat_embed(store2, x)) == x, {"set": str(x)})
    return rep


# -- negative validators --------------------------------------------------------------


def m3_lattice_input():
    """The five-element diamond M3: bottom, three incomparable atoms, top.
    A lattice but not a frame."""
    labels = ["0", "a", "b", "c", "1"]
    n = 5
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        leq[i, i] = True
        leq[0, i] = True
        leq[i, 4] = True
    return labels, leq


def negative_validator_suite():
    """The adjoint-like maps l and r fail to be locale morphisms with the
    expected witnesses, and M3 fails frame validation."""
    alg = test_algebras()
    four, two = alg["four"], alg["chain2"]
    rep = CheckReport(title="validators reject non-morphisms and non-frames")

    fam = rep.family("l (left adjoint style) is not meet preserving")
    try:
        tr.validate_locale_morphism(four, two, [0, 1, 1, 1], name="l")
        fam.record(False, "l accepted")
    except NotMeetPreserving as ex:
        fam.record(sorted(ex.witness) == ["a", "na"], {"witness": ex.witness})
    except HvError as ex:
        fam.record(False, {"wrong error": type(ex).__name__})

    fam = rep.family("r (right adjoint style) is not join preserving")
    try:
        tr.validate_locale_morphism(four, two, [0, 0, 0, 1], name="r")
        fam.record(False, "r accepted")
    except NotJoinPreserving as ex:
        fam.record(sorted(ex.witness) == ["a", "na"], {"witness": ex.witness})
    except HvError as ex:
        fam.record(False, {"wrong error": type(ex).__name__})

    fam = rep.family("M3 is not a frame")
    labels, leq = m3_lattice_input()
    try:
        HeytingAlgebra(labels, leq, name="m3")
        fam.record(False, "M3 accepted")
    except NotAFrame as ex:
        fam.record(len(set(ex.witness)) == 3, {"witness": ex.witness})
    except HvError as ex:
        fam.record(False, {"wrong error": type(ex).__name__})
    return rep


# -- the H-set category ---------------------------------------------------------------


def _random_hset(algebra, rng, max_points=3):
    """A valid H-set: distances from random predicate vectors through
    biimplication, cut down by a random existence degree."""
    npts = rng.randrange(1, max_points + 1)
    mt, it = algebra.meet_table, algebra.impl_table
    delta = np.full((npts, npts), algebra.top, dtype=np.int64)
    for _ in range(2):
        row = np.array([rng.randrange(algebra.n) for _ in range(npts)])
        bii = mt[it[row[:, None], row[None, :]], it[row[None, :], row[:, None]]]
        delta = mt[delta, bii]
    e = np.array([rng.randrange(algebra.n) for _ in range(npts)])
    delta = mt[delta, mt[e[:, None], e[None, :]]]
    return hs.HSet(algebra, list(range(npts)), delta)


def _graph_morphisms(X, Y, limit=None):
    """All valid morphisms X -> Y of graph shape phi(x, y') =
    delta_Y(g(x), y') for point maps g."""
    out = []
    for g in iproduct(range(len(Y)), repeat=len(X)):
        phi = Y.delta[np.asarray(g, dtype=np.int64), :]
        m = hs.HSetMorphism(X, Y, phi)
        if hs.validate_morphism(m):
            out.append(m)
            if limit and len(out) >= limit:
                break
    return out


def hset_law_suite(seed=DEFAULT_SEED, corpus_per_algebra=4, rank=2):
    """Category laws, equality from one-sided comparison, dagger and
    completion roundtrips, product/equalizer behavior, bridge coherence,
    and the induced morphism of a witnessed lift."""
    import random

    rep = CheckReport(title="H-set category laws",
                      config={"seed": seed, "corpus_per_algebra": corpus_per_algebra})
    alg = test_algebras()
    rng = random.Random(seed)
    corpus = {}
    for aname, algebra in alg.items():
        corpus[aname] = [_random_hset(algebra, rng) for _ in range(corpus_per_algebra)]

    fam_id = rep.family("identity is neutral for composition")
    fam_assoc = rep.family("composition is associative")
    fam_onesided = rep.family("one-sided comparison already implies equality")
    for aname, hsets in corpus.items():
        for X, Y in iproduct(hsets, hsets):
            mors = _graph_morphisms(X, Y, limit=6)
            for m in mors:
                fam_id.record(
                    hs.morphisms_equal(hs.compose(m, hs.identity(X)), m)
                    and hs.morphisms_equal(hs.compose(hs.identity(Y), m), m),
                    {"algebra": aname},
                )
            for m, m2 in iproduct(mors, mors):
                leq_both = hs.hsets_equal(m.source, m2.source) and hs.hsets_equal(
                    m.target, m2.target)
                if leq_both and alg[aname].leq[m.phi, m2.phi].all():
                    fam_onesided.record(np.array_equal(m.phi, m2.phi),
                                        {"algebra": aname})
        for X, Y, Z in iproduct(hsets, hsets, hsets):
            for m in _graph_morphisms(X, Y, limit=2):
                for m2 in _graph_morphisms(Y, Z, limit=2):
                    for m3 in _graph_morphisms(Z, X, limit=2):
                        lhs = hs.compose(m3, hs.compose(m2, m))
                        rhs = hs.compose(hs.compose(m3, m2), m)
                        fam_assoc.record(hs.morphisms_equal(lhs, rhs),
                                         {"algebra": aname})

    fam = rep.family("dagger roundtrip is an isomorphism")
    fam_fun = rep.family("dagger of the identity satisfies the function predicate")
    for aname, algebra in alg.items():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        for X in corpus[aname][:2]:
            phi, psi = hs.dagger_iso(store, X, ctx)
            ok = (bool(hs.validate_morphism(phi)) and bool(hs.validate_morphism(psi))
                  and hs.morphisms_equal(hs.compose(psi, phi), hs.identity(X))
                  and hs.morphisms_equal(hs.compose(phi, psi),
                                         hs.identity(phi.target)))
            fam.record(ok, {"algebra": aname, "points": len(X)})
            h = hs.dagger_morphism(store, hs.identity(X))
            xd = hs.dagger_hset(store, X)
            pred = make_function_predicate(h, xd, xd)
            fam_fun.record(ctx.eval(pred) == algebra.top,
                           {"algebra": aname, "points": len(X)})

    fam = rep.family("completion is complete and idempotent")
    for aname, algebra in alg.items():
        for X in corpus[aname][:2]:
            comp, (fwd, bwd) = hs.completion(X)
            ok = (bool(hs.validate_morphism(fwd)) and bool(hs.validate_morphism(bwd))
                  and hs.is_complete(comp)
                  and hs.morphisms_equal(hs.compose(bwd, fwd), hs.identity(X))
                  and hs.morphisms_equal(hs.compose(fwd, bwd), hs.identity(comp)))
            comp2, (f2, b2) = hs.completion(comp)
            ok = ok and hs.morphisms_equal(hs.compose(b2, f2), hs.identity(comp))
            ok = ok and hs.morphisms_equal(hs.compose(f2, b2), hs.identity(comp2))
            fam.record(ok, {"algebra": aname})

    fam = rep.family("product projections and pairing")
    fam_eq = rep.family("equalizer equalizes and includes")
    for aname, algebra in alg.items():
        hsets = corpus[aname]
        mt = algebra.meet_table
        for X, Y in iproduct(hsets, hsets):
            P, projs = hs.product([X, Y])
            ok = all(bool(hs.validate_morphism(p)) for p in projs)
            fam.record(ok, {"algebra": aname, "kind": "projections"})
            for W in hsets:
                h1 = _graph_morphisms(W, X, limit=1)
                h2 = _graph_morphisms(W, Y, limit=1)
                if not (h1 and h2):
                    continue
                pair_phi = np.empty((len(W), len(P)), dtype=np.int64)
                for k, (ix, iy) in enumerate(
                        iproduct(range(len(X)), range(len(Y)))):
                    pair_phi[:, k] = mt[h1[0].phi[:, ix], h2[0].phi[:, iy]]
                paired = hs.HSetMorphism(W, P, pair_phi)
                ok = bool(hs.validate_morphism(paired))
                ok = ok and hs.morphisms_equal(hs.compose(projs[0], paired), h1[0])
                ok = ok and hs.morphisms_equal(hs.compose(projs[1], paired), h2[0])
                fam.record(ok, {"algebra": aname, "kind": "pairing"})
                break
            mors = _graph_morphisms(X, Y, limit=2)
            for m, m2 in iproduct(mors, mors):
                E, incl = hs.equalizer(m, m2)
                ok = bool(hs.validate_morphism(incl))
                ok = ok and hs.morphisms_equal(hs.compose(m, incl),
                                               hs.compose(m2, incl))
                fam_eq.record(ok, {"algebra": aname})

    fam = rep.family("name bridge coherence (identity and composition)")
    for aname, algebra in alg.items():
        store = NameStore(algebra)
        ctx = EvalContext(store)
        e = store.intern({})
        seeds = [store.intern({e: algebra.top}),
                 store.intern({e: algebra.bottom}),
                 store.intern({store.intern({e: algebra.top}): algebra.top})]
        for u in seeds:
            u1 = pad_equivalent(store, u, 1)
            u2 = pad_equivalent(store, u, 2)
            lam_uu = hs.lambda_iso(store, u, u, ctx)
            ident = hs.identity(hs.from_name(store, u, ctx))
            ok = hs.morphisms_equal(lam_uu, ident)
            a_b = hs.lambda_iso(store, u, u1, ctx)
            b_c = hs.lambda_iso(store, u1, u2, ctx)
            a_c = hs.lambda_iso(store, u, u2, ctx)
            ok = ok and hs.morphisms_equal(hs.compose(b_c, a_b), a_c)
            back = hs.lambda_iso(store, u1, u, ctx)
            ok = ok and hs.morphisms_equal(hs.compose(back, a_b), ident)
            fam.record(ok, {"algebra": aname, "u": store.to_literal(u)})

    fam = rep.family("induced morphism of a witnessed lift validates")
    fam_wi = rep.family("induced morphism is witness independent")
    morphisms = standard_morphisms(alg)
    f = morphisms["f"]
    sa, sb = NameStore(alg["four"]), NameStore(alg["chain2"])
    ctx_a, ctx_b = EvalContext(sa), EvalContext(sb)
    pool = enumerate_names(sa, max_rank=rank, max_domain=2)
    mono = epi = 0
    swapped = 0
    for x in pool:
        wl = tr.lift(f, x, sa, sb)
        em = tr.epsilon_hset_morphism(f, wl, sa, sb, ctx_a, ctx_b)
        v = hs.validate_morphism(em)
        fam.record(bool(v), {"x": sa.to_literal(x), "failures": v.failures[:2]})
        probe = tr.mono_epi_experiment(em)
        mono += probe["mono"]
        epi += probe["epi"]
        ents = sa.entries(x)
        if len(ents) == 2:
            (u, uv), (v2, vv) = ents
            same_img = ctx_b.atomic_eq(tr.lift(f, u, sa, sb).image,
                                       tr.lift(f, v2, sa, sb).image)
            if same_img == alg["chain2"].top and f(uv) == f(vv):
                tau = dict(wl.witness)
                alt = {u: tau[v2], v2: tau[u]}
                wl2 = tr.witnessed_lift_with(f, x, alt, sa, sb, ctx_b)
                em2 = tr.epsilon_hset_morphism(f, wl2, sa, sb, ctx_a, ctx_b)
                fam_wi.record(
                    wl2.image == wl.image and np.array_equal(em.phi, em2.phi),
                    {"x": sa.to_literal(x)},
                )
                swapped += 1
    fam_wi.notes["alternate_witness_instances"] = swapped
    fam.notes["mono_probe_passes"] = f"{mono}/{len(pool)} (experimental, not asserted)"
    fam.notes["epi_probe_passes"] = f"{epi}/{len(pool)} (experimental, not asserted)"
    return rep
