"""The category of H-sets and its bridges to the name universe.

An H-set is a carrier of opaque points with an H-valued equality table
delta (symmetric, transitive).  Morphisms are H-valued functional
relations.  The bridges: from_name turns a name u into the H-set
(dom u, delta_u); the dagger constructions go back, turning an H-set
(or morphism) into a name; lambda tables give the canonical
isomorphisms between from_name images of equal names and the morphism
induced by an internal function name.
"""

import re
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .errors import (
    BudgetExceeded,
    CrossAlgebra,
    NotAFunctionName,
    NotComposable,
    NotEquivalent,
    ParseError,
)
from . import names as names_mod
from .valuation import EvalContext, make_function_predicate

SINGLETON_BUDGET = 1 << 16
PRODUCT_CAP = 4096


class HSet:
    def __init__(self, algebra, points, delta):
        self.algebra = algebra
        self.points = list(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise ParseError("duplicate carrier points")
        n = len(self.points)
        delta = np.asarray(delta, dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), dtype=np.int64)
        self.delta = delta
        self.delta.setflags(write=False)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"HSet({len(self.points)} points over {self.algebra!r})"


class HSetMorphism:
    def __init__(self, source, target, phi):
        self.source = source
        self.target = target
        phi = np.asarray(phi, dtype=np.int64).reshape(len(source), len(target))
        self.phi = phi
        self.phi.setflags(write=False)

    def __repr__(self):
        return f"HSetMorphism({len(self.source)} -> {len(self.target)})"


@dataclass(frozen=True)
class Singleton:
    owner: object
    sigma: tuple


@dataclass
class ValidationReport:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, law, witness, values):
        self.ok = False
        self.failures.append({"law": law, "witness": witness, "values": values})

    def __bool__(self):
        return self.ok


def hsets_equal(X, Y):
    return (
        X.algebra is Y.algebra
        and X.points == Y.points
        and np.array_equal(X.delta, Y.delta)
    )


# -- validators -----------------------------------------------------------------


def validate_hset(X):
    A = X.algebra
    rep = ValidationReport()
    d = X.delta
    n = len(X)
    bad = np.argwhere(d != d.T)
    for i, j in bad[:1]:
        rep.fail("symmetry", (X.points[i], X.points[j]),
                 (A.labels[d[i, j]], A.labels[d[j, i]]))
    mt, leq = A.meet_table, A.leq
    for y in range(n):
        lhs = mt[d[:, y][:, None], d[y, :][None, :]]
        viol = ~leq[lhs, d]
        if viol.any():
            i, k = map(int, np.argwhere(viol)[0])
            rep.fail("transitivity", (X.points[i], X.points[y], X.points[k]),
                     (A.labels[lhs[i, k]], A.labels[d[i, k]]))
            break
    return rep


def validate_morphism(m):
    A = m.source.algebra
    if A is not m.target.algebra:
        raise CrossAlgebra("morphism endpoints live over different algebras")
    rep = ValidationReport()
    ds, dt, phi = m.source.delta, m.target.delta, m.phi
    ns, nt = len(m.source), len(m.target)
    mt, leq = A.meet_table, A.leq
    for x in range(ns):
        # 1. delta'(x',y') /\ phi(x,y') <= phi(x,x')
        lhs = mt[dt, phi[x][None, :]]        # lhs[x', y']
        viol = ~leq[lhs, phi[x][:, None]]
        if viol.any():
            xp, yp = map(int, np.argwhere(viol)[0])
            rep.fail("target congruence", (m.source.points[x], m.target.points[xp], m.target.points[yp]),
                     (A.labels[lhs[xp, yp]], A.labels[phi[x, xp]]))
            break
    for x in range(ns):
        # 2. delta(x,y) /\ phi(x,y') <= phi(y,y')
        lhs = mt[ds[x][:, None], phi[x][None, :]]   # lhs[y, y']
        viol = ~leq[lhs, phi]
        if viol.any():
            y, yp = map(int, np.argwhere(viol)[0])
            rep.fail("source congruence", (m.source.points[x], m.source.points[y], m.target.points[yp]),
                     (A.labels[lhs[y, yp]], A.labels[phi[y, yp]]))
            break
    for x in range(ns):
        # 3. phi(x,x') /\ phi(x,y') <= delta'(x',y')
        lhs = mt[phi[x][:, None], phi[x][None, :]]
        viol = ~leq[lhs, dt]
        if viol.any():
            xp, yp = map(int, np.argwhere(viol)[0])
            rep.fail("single-valuedness", (m.source.points[x], m.target.points[xp], m.target.points[yp]),
                     (A.labels[lhs[xp, yp]], A.labels[dt[xp, yp]]))
            break
    for x in range(ns):
        # 4. \/_{z'} phi(x,z') = delta(x,x)
        v = A.big_join(phi[x])
        if v != ds[x, x]:
            rep.fail("totality", (m.source.points[x],),
                     (A.labels[v], A.labels[ds[x, x]]))
            break
    return rep


# -- category structure -----------------------------------------------------------


def identity(X):
    return HSetMorphism(X, X, X.delta.copy())


def compose(psi, phi):
    """psi after phi; (psi . phi)(x, x'') = \\/_{x'} phi(x,x') /\\ psi(x',x'')."""
    if not hsets_equal(phi.target, psi.source):
        raise NotComposable("codomain of first factor differs from domain of second")
    A = phi.source.algebra
    mt = A.meet_table
    ns, nm, nt = len(phi.source), len(phi.target), len(psi.target)
    out = np.full((ns, nt), A.bottom, dtype=np.int64)
    jt = A.join_table
    for y in range(nm):
        out = jt[out, mt[phi.phi[:, y][:, None], psi.phi[y, :][None, :]]]
    return HSetMorphism(phi.source, psi.target, out)


def morphisms_equal(phi, psi):
    """Equality of parallel morphisms; one-sided pointwise <= suffices."""
    if not (hsets_equal(phi.source, psi.source) and hsets_equal(phi.target, psi.target)):
        return False
    A = phi.source.algebra
    return bool(A.leq[phi.phi, psi.phi].all())


# -- singletons and completion ------------------------------------------------------


def singletons(X):
    """All maps sigma: X -> H with sigma(x)/\\sigma(y) <= delta(x,y) and
    sigma(x)/\\delta(x,y) <= sigma(y).

    Backtracking over coordinates; a partial assignment survives only
    while every already-assigned pair satisfies both conditions, so the
    search stays near the (small) solution set instead of ranging over
    all |H|^|X| candidate maps.
    """
    A = X.algebra
    n = len(X)
    mt, leq, d = A.meet_table, A.leq, X.delta
    # sigma(x) <= delta(x,x) is forced (meet the two laws at y = x)
    options = [np.flatnonzero(leq[:, d[i, i]]) for i in range(n)]
    out = []
    visited = 0
    stack = [(0, ())]
    while stack:
        i, prefix = stack.pop()
        if i == n:
            out.append(Singleton(X, prefix))
            continue
        for v in options[i]:
            visited += 1
            if visited > SINGLETON_BUDGET:
                raise BudgetExceeded(
                    "singleton search exceeded the node budget",
                    predicted=visited, budget=SINGLETON_BUDGET,
                )
            ok = True
            for j in range(i):
                w = prefix[j]
                if not (leq[mt[v, w], d[i, j]]
                        and leq[mt[v, d[i, j]], w]
                        and leq[mt[w, d[j, i]], v]):
                    ok = False
                    break
            if ok:
                stack.append((i + 1, prefix + (int(v),)))
    out.sort(key=lambda s: s.sigma)
    return out


def is_complete(X):
    """Complete iff x -> delta(x, .) is a bijection onto the singletons."""
    sigs = {s.sigma for s in singletons(X)}
    rows = [tuple(int(v) for v in X.delta[i]) for i in range(len(X))]
    return len(set(rows)) == len(rows) and set(rows) == sigs


def completion(X):
    """The H-set of singletons with sigma(delta), plus the inverse isos."""
    A = X.algebra
    sigs = singletons(X)
    pts = [s.sigma for s in sigs]
    m = len(pts)
    mt, jt = A.meet_table, A.join_table
    delta = np.full((m, m), A.bottom, dtype=np.int64)
    for i, rho in enumerate(pts):
        for j, tau in enumerate(pts):
            v = A.bottom
            for x in range(len(X)):
                v = jt[v, mt[rho[x], tau[x]]]
            delta[i, j] = v
    comp = HSet(A, pts, delta)
    fwd = np.array([[rho[x] for rho in pts] for x in range(len(X))], dtype=np.int64)
    fwd = fwd.reshape(len(X), m)
    phi = HSetMorphism(X, comp, fwd)
    psi = HSetMorphism(comp, X, fwd.T.copy())
    return comp, (phi, psi)


# -- finite limits ---------------------------------------------------------------------


def product(hsets, algebra=None):
    """Cartesian-product H-set with pointwise meet delta and projections.

    The projection table is delta_P(p,p) /\\ delta_k(p_k, x'); without
    the diagonal cut, totality fails as soon as another factor gives p a
    smaller existence degree than the projected coordinate has.
    """
    if hsets:
        algebra = hsets[0].algebra
    if algebra is None:
        raise CrossAlgebra("empty product needs an explicit algebra")
    for X in hsets:
        if X.algebra is not algebra:
            raise CrossAlgebra("product factors live over different algebras")
    pts = list(iproduct(*(X.points for X in hsets)))
    if len(pts) > PRODUCT_CAP:
        raise BudgetExceeded(f"product carrier of {len(pts)} points exceeds the cap")
    n = len(pts)
    mt = algebra.meet_table
    delta = np.full((n, n), algebra.top, dtype=np.int64)
    for k, X in enumerate(hsets):
        idx = np.array([X.index[p[k]] for p in pts], dtype=np.int64)
        delta = mt[delta, X.delta[idx[:, None], idx[None, :]]]
    P = HSet(algebra, pts, delta)
    diag = delta.diagonal()
    projections = []
    for k, X in enumerate(hsets):
        idx = np.array([X.index[p[k]] for p in pts], dtype=np.int64)
        table = mt[diag[:, None], X.delta[idx, :]]
        projections.append(HSetMorphism(P, X, table))
    return P, projections


def equalizer(phi, psi):
    """Equalizer of parallel morphisms.

    Carrier is the source carrier with
    tau(x, y) = delta(x, y) /\\ \\/_{x'} phi(x,x') /\\ psi(y,x'),
    which works out to delta(x, y) /\\ e(x) where e is the extent of
    agreement e(x) = \\/_{x'} phi(x,x') /\\ psi(x,x').
    """
    if not (hsets_equal(phi.source, psi.source) and hsets_equal(phi.target, psi.target)):
        raise NotComposable("equalizer needs parallel morphisms")
    X = phi.source
    A = X.algebra
    mt, jt = A.meet_table, A.join_table
    n, m = len(X), len(phi.target)
    agree = np.full((n, n), A.bottom, dtype=np.int64)   # \/_{x'} phi(x,x') /\ psi(y,x')
    for xp in range(m):
        agree = jt[agree, mt[phi.phi[:, xp][:, None], psi.phi[:, xp][None, :]]]
    tau = mt[X.delta, agree]
    E = HSet(A, X.points, tau)
    inc = mt[tau.diagonal()[:, None], X.delta]
    return E, HSetMorphism(E, X, inc)


# -- bridges to the name universe ----------------------------------------------------


def from_name(store, u, ctx=None, simplified=False):
    """The H-set (dom u, delta_u) with
    delta_u(x, y) = [x in u] /\\ [x = y] /\\ [y in u]; the `simplified`
    variant drops the absorbed third factor."""
    ctx = ctx or EvalContext(store)
    A = store.algebra
    dom = store.domain(u)
    n = len(dom)
    delta = np.empty((n, n), dtype=np.int64)
    memv = [ctx.atomic_mem(x, u) for x in dom]
    for i, x in enumerate(dom):
        for j, y in enumerate(dom):
            v = A.meet(memv[i], ctx.atomic_eq(x, y))
            if not simplified:
                v = A.meet(v, memv[j])
            delta[i, j] = v
    return HSet(A, list(dom), delta)


def lambda_iso(store, u, uprime, ctx=None):
    """The canonical iso from_name(u) -> from_name(u') for names equal
    with value top; its inverse is lambda_iso(u', u)."""
    ctx = ctx or EvalContext(store)
    A = store.algebra
    if ctx.atomic_eq(u, uprime) != A.top:
        raise NotEquivalent("[u = u'] < top")
    X, Y = from_name(store, u, ctx), from_name(store, uprime, ctx)
    phi = np.empty((len(X), len(Y)), dtype=np.int64)
    for i, x in enumerate(X.points):
        mi = ctx.atomic_mem(x, u)
        for j, xp in enumerate(Y.points):
            phi[i, j] = A.big_meet(
                [mi, ctx.atomic_eq(x, xp), ctx.atomic_mem(xp, uprime)]
            )
    return HSetMorphism(X, Y, phi)


def lambda_f(store, h, x, y, ctx=None):
    """The H-set morphism from_name(x) -> from_name(y) induced by an
    internal function name h; requires [fun(h: x -> y)] = top."""
    ctx = ctx or EvalContext(store)
    A = store.algebra
    if not ctx.models(make_function_predicate(h, x, y)):
        raise NotAFunctionName("[fun(h)] < top")
    X, Y = from_name(store, x, ctx), from_name(store, y, ctx)
    phi = np.empty((len(X), len(Y)), dtype=np.int64)
    for i, u in enumerate(X.points):
        mu = ctx.atomic_mem(u, x)
        for j, v in enumerate(Y.points):
            pair = names_mod.ordered_pair_h(store, u, v)
            phi[i, j] = A.big_meet(
                [mu, ctx.atomic_mem(pair, h), ctx.atomic_mem(v, y)]
            )
    return HSetMorphism(X, Y, phi)


def dagger_points(store, X):
    """The name x-dot for each carrier point: tag names are hat-images
    of the point's position ordinal, values are the delta row."""
    if X.algebra is not store.algebra:
        raise CrossAlgebra("H-set and store algebras differ")
    tags = [names_mod.hat_embed(store, names_mod.ord_hf(i)) for i in range(len(X))]
    return [
        store.intern(tuple(zip(tags, (int(v) for v in X.delta[i]))))
        for i in range(len(X))
    ]


def dagger_hset(store, X):
    """The name whose domain is the x-dots, valued at the extents delta(x,x)."""
    dots = dagger_points(store, X)
    return store.intern(
        {dot: int(X.delta[i, i]) for i, dot in enumerate(dots)}
    )


def dagger_morphism(store, m):
    """The function name of a morphism: ordered pairs of dots mapped to
    the table values.  Colliding pairs always carry equal values."""
    sdots = dagger_points(store, m.source)
    tdots = dagger_points(store, m.target)
    entries = {}
    for i in range(len(m.source)):
        for j in range(len(m.target)):
            key = names_mod.ordered_pair_h(store, sdots[i], tdots[j])
            entries[key] = int(m.phi[i, j])
    return store.intern(entries)


def dagger_iso(store, X, ctx=None):
    """The inverse isomorphism pair between X and from_name(dagger_hset(X)):
    phi(x, k) = delta(x,x) /\\ [x-dot = k]."""
    ctx = ctx or EvalContext(store)
    A = store.algebra
    dots = dagger_points(store, X)
    u = dagger_hset(store, X)
    Y = from_name(store, u, ctx)
    phi = np.empty((len(X), len(Y)), dtype=np.int64)
    for i in range(len(X)):
        for j, k in enumerate(Y.points):
            phi[i, j] = A.meet(int(X.delta[i, i]), ctx.atomic_eq(dots[i], k))
    return HSetMorphism(X, Y, phi), HSetMorphism(Y, X, phi.T.copy())


# -- text format -------------------------------------------------------------------


def parse_hset_file(text, algebras):
    """Parse `hset NAME over ALGEBRA` blocks with points:/delta: lines and
    `morphism NAME : X -> Y` blocks with phi: lines.

    `algebras` maps identifiers to HeytingAlgebra values.  Returns
    (hsets, morphisms) dictionaries; tables must be total (delta up to
    symmetry).  Validation is the caller's job.
    """
    hsets = {}
    morphisms = {}
    current = None  # ('hset', name, algebra, points, {pairs}) | ('mor', name, X, Y, {pairs})

    def finish():
        nonlocal current
        if current is None:
            return
        if current[0] == "hset":
            _, hname, alg, pts, entries = current
            if pts is None:
                raise ParseError(f"hset {hname!r} has no points: line")
            n = len(pts)
            delta = np.full((n, n), -1, dtype=np.int64)
            for (p, q), v in entries.items():
                delta[pts.index(p), pts.index(q)] = v
                delta[pts.index(q), pts.index(p)] = v
            if (delta < 0).any():
                i, j = map(int, np.argwhere(delta < 0)[0])
                raise ParseError(f"hset {hname!r}: missing delta for ({pts[i]},{pts[j]})")
            hsets[hname] = HSet(alg, pts, delta)
        else:
            _, mname, src, tgt, entries = current
            X, Y = hsets[src], hsets[tgt]
            phi = np.full((len(X), len(Y)), -1, dtype=np.int64)
            for (p, q), v in entries.items():
                phi[X.index[p], Y.index[q]] = v
            if (phi < 0).any():
                i, j = map(int, np.argwhere(phi < 0)[0])
                raise ParseError(
                    f"morphism {mname!r}: missing phi for ({X.points[i]},{Y.points[j]})"
                )
            morphisms[mname] = HSetMorphism(X, Y, phi)
        current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("hset "):
            finish()
            parts = line.split()
            if len(parts) != 4 or parts[2] != "over":
                raise ParseError("expected 'hset NAME over ALGEBRA'", lineno)
            if parts[3] not in algebras:
                raise ParseError(f"unknown algebra {parts[3]!r}", lineno)
            current = ("hset", parts[1], algebras[parts[3]], None, {})
            continue
        if line.startswith("morphism "):
            finish()
            head = line[len("morphism "):]
            try:
                mname, arrow = head.split(":", 1)
                src, tgt = arrow.split("->", 1)
            except ValueError:
                raise ParseError("expected 'morphism NAME : X -> Y'", lineno)
            mname, src, tgt = mname.strip(), src.strip(), tgt.strip()
            for hname in (src, tgt):
                if hname not in hsets:
                    raise ParseError(f"unknown hset {hname!r}", lineno)
            current = ("mor", mname, src, tgt, {})
            continue
        if current is None:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        if line.startswith("points:") and current[0] == "hset":
            pts = [s for s in re.split(r"[,\s]+", line[len("points:"):].strip()) if s]
            if len(set(pts)) != len(pts):
                raise ParseError("duplicate point names", lineno)
            current = (current[0], current[1], current[2], pts, current[4])
            continue
        if line.startswith("delta:") and current[0] == "hset":
            body, kind = line[len("delta:"):], "delta"
        elif line.startswith("phi:") and current[0] == "mor":
            body, kind = line[len("phi:"):], "phi"
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        try:
            pair_part, val_part = body.split("=", 1)
            p, q = [s.strip() for s in pair_part.split(",", 1)]
        except ValueError:
            raise ParseError(f"expected '{kind}: p,q = label'", lineno)
        alg = current[2] if current[0] == "hset" else hsets[current[2]].algebra
        try:
            v = alg.index(val_part.strip())
        except KeyError:
            raise ParseError(f"unknown element label {val_part.strip()!r}", lineno)
        if current[0] == "hset":
            if current[3] is None or p not in current[3] or q not in current[3]:
                raise ParseError(f"unknown point in {p!r},{q!r}", lineno)
            prev = current[4].get((p, q), current[4].get((q, p)))
            if prev is not None and prev != v:
                raise ParseError(f"conflicting delta for ({p},{q})", lineno)
        else:
            X, Y = hsets[current[2]], hsets[current[3]]
            if p not in X.index or q not in Y.index:
                raise ParseError(f"unknown point in {p!r},{q!r}", lineno)
        current[4][(p, q)] = v
    finish()
    return hsets, morphisms
