"""The cumulative universe of H-names up to bounded rank.

A name is a finite mapping from previously created names to algebra
elements.  Names are hash-consed in an append-only store: structurally
equal mappings receive the same integer id, so the store is an acyclic
DAG and structural recursion on entries always terminates.
"""

import math
from itertools import combinations, product

from .errors import (
    BudgetExceeded,
    CrossAlgebra,
    ParseError,
    UnknownId,
    UnknownKey,
    WrongAlgebra,
)


class NameStore:
    """Append-only interning store of names over one algebra."""

    def __init__(self, algebra):
        self.algebra = algebra
        self._entries = []  # canonical tuples of (key_id, value) sorted by key
        self._ranks = []
        self._interned = {}
        self.empty = self.intern(())

    def __len__(self):
        return len(self._entries)

    def intern(self, entries):
        """Intern a mapping given as a dict or iterable of (key, value) pairs.

        Duplicate keys collapse (mapping semantics, last value wins).
        """
        if isinstance(entries, dict):
            items = entries.items()
        else:
            items = dict(entries).items()
        canon = []
        for k, v in sorted(items):
            if not isinstance(k, int) or not (0 <= k < len(self._entries)):
                raise UnknownKey(f"key {k!r} is not an interned name id")
            if not isinstance(v, int) or not (0 <= v < self.algebra.n):
                raise CrossAlgebra(f"value {v!r} is not an element of the algebra")
            canon.append((k, v))
        canon = tuple(canon)
        found = self._interned.get(canon)
        if found is not None:
            return found
        nid = len(self._entries)
        self._entries.append(canon)
        self._ranks.append(
            0 if not canon else 1 + max(self._ranks[k] for k, _ in canon)
        )
        self._interned[canon] = nid
        return nid

    def check_id(self, nid):
        if not isinstance(nid, int) or not (0 <= nid < len(self._entries)):
            raise UnknownId(f"{nid!r} is not an interned name id")
        return nid

    def entries(self, nid):
        return self._entries[self.check_id(nid)]

    def domain(self, nid):
        return tuple(k for k, _ in self._entries[self.check_id(nid)])

    def rank(self, nid):
        return self._ranks[self.check_id(nid)]

    def to_literal(self, nid):
        """Render a name in the `{(N, v), ...}` literal syntax."""
        entries = self.entries(nid)
        if not entries:
            return "{}"
        labels = self.algebra.labels
        inner = ", ".join(f"({self.to_literal(k)}, {labels[v]})" for k, v in entries)
        return "{" + inner + "}"


def make_name(store, entries):
    return store.intern(entries)


def rank(store, nid):
    return store.rank(nid)


def enumerate_names(store, max_rank, max_domain=None, budget=None):
    """All names of rank <= max_rank with every domain capped at max_domain.

    Returns ids sorted ascending (equal to interning order for a fresh
    store).  Raises BudgetExceeded if the predicted count of generated
    mappings in some round exceeds the budget.
    """
    nh = store.algebra.n
    pool = [store.empty]
    for _ in range(max_rank):
        pool_sorted = sorted(pool)
        cap = len(pool_sorted) if max_domain is None else min(max_domain, len(pool_sorted))
        if budget is not None:
            predicted = sum(
                math.comb(len(pool_sorted), s) * nh**s for s in range(cap + 1)
            )
            if predicted > budget:
                raise BudgetExceeded(
                    f"enumeration round would generate {predicted} mappings",
                    predicted=predicted,
                    budget=budget,
                )
        nxt = []
        seen = set()
        for size in range(cap + 1):
            for dom in combinations(pool_sorted, size):
                for values in product(range(nh), repeat=size):
                    nid = store.intern(tuple(zip(dom, values)))
                    if nid not in seen:
                        seen.add(nid)
                        nxt.append(nid)
        pool = nxt
    return sorted(pool)


# -- hereditarily finite sets and the hat/check immersions ------------------


def as_hf(obj):
    """Normalize nested iterables into a nested-frozenset HF set."""
    return frozenset(as_hf(m) for m in obj)


def ord_hf(k):
    """The von Neumann ordinal k as an HF set."""
    x = frozenset()
    for _ in range(k):
        x = x | frozenset([x])
    return x


def hat_embed(store, x):
    """The canonical name of an HF set: every membership gets value top."""
    x = as_hf(x)
    top = store.algebra.top
    return store.intern(tuple((hat_embed(store, y), top) for y in x))


def check_project(store, nid):
    """Left inverse of hat_embed; defined over the two-element algebra only."""
    if store.algebra.n != 2:
        raise WrongAlgebra("check_project is defined over the two-chain only")
    top = store.algebra.top
    return frozenset(
        check_project(store, k) for k, v in store.entries(nid) if v == top
    )


# -- internal pairing --------------------------------------------------------


def singleton_h(store, u):
    return store.intern(((store.check_id(u), store.algebra.top),))


def unordered_pair_h(store, u, v):
    top = store.algebra.top
    return store.intern({store.check_id(u): top, store.check_id(v): top})


def ordered_pair_h(store, u, v):
    return unordered_pair_h(store, singleton_h(store, u), unordered_pair_h(store, u, v))


# -- equivalence padding ------------------------------------------------------


def pad_equivalent(store, nid, fresh_count):
    """A strictly larger name equal to `nid` with value top.

    Extends the domain by `fresh_count` fresh tag names valued bottom.
    Tags are hat-images of consecutive von Neumann ordinals, skipping any
    already present in the domain, so padding is deterministic and
    iterated pads of the same name are pairwise distinct.
    """
    if fresh_count < 1:
        raise ParseError("fresh_count must be >= 1")
    dom = set(store.domain(nid))
    tags = []
    k = 0
    while len(tags) < fresh_count:
        t = hat_embed(store, ord_hf(k))
        k += 1
        if t in dom:
            continue
        tags.append(t)
    bottom = store.algebra.bottom
    return store.intern(store.entries(nid) + tuple((t, bottom) for t in tags))


# -- name literal parsing ------------------------------------------------------


def _tokenize_literal(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "{}(),":
            tokens.append((ch, i))
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "{}(),":
            j += 1
        tokens.append((text[i:j], i))
        i = j
    tokens.append((None, len(text)))
    return tokens


def parse_name_literal(store, text, bindings=None):
    """Parse `{}` / `{(N, v), ...}` literals; identifiers refer to bindings."""
    bindings = bindings or {}
    tokens = _tokenize_literal(text)
    pos = [0]

    def peek():
        return tokens[pos[0]][0]

    def take(expected=None):
        tok, col = tokens[pos[0]]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok!r}", column=col)
        pos[0] += 1
        return tok, col

    def parse_name():
        tok, col = take()
        if tok == "{":
            entries = []
            if peek() == "}":
                take()
                return store.intern(())
            while True:
                take("(")
                key = parse_name()
                take(",")
                lab, lcol = take()
                if lab is None or lab in "{}(),":
                    raise ParseError("expected an element label", column=lcol)
                try:
                    val = store.algebra.index(lab)
                except KeyError:
                    raise ParseError(f"unknown element label {lab!r}", column=lcol)
                take(")")
                entries.append((key, val))
                nxt, ncol = take()
                if nxt == "}":
                    break
                if nxt != ",":
                    raise ParseError("expected ',' or '}'", column=ncol)
                if peek() == "}":  # trailing comma
                    take()
                    break
            return store.intern(entries)
        if tok is None:
            raise ParseError("unexpected end of literal", column=col)
        if tok in bindings:
            return bindings[tok]
        raise ParseError(f"unknown name binding {tok!r}", column=col)

    nid = parse_name()
    tok, col = take()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", column=col)
    return nid
