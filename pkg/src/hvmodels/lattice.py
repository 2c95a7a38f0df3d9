r"""Finite complete Heyting algebras.

An algebra is represented by a boolean order matrix ``leq`` over dense
integer element indices plus precomputed meet/join/implication tables, so
every lattice operation downstream is a table lookup.  Construction
validates the poset axioms, the existence of all binary meets and joins,
and binary distributivity; for a finite lattice the latter is equivalent
to the frame law a /\ \/S = \/{a /\ s : s in S}.
"""

import hashlib

import numpy as np

from .errors import (
    BudgetExceeded,
    CrossAlgebra,
    NotAFrame,
    NotALattice,
    NotAPoset,
    ParseError,
)

MAX_ELEMENTS = 1 << 16


class HeytingAlgebra:
    r"""Immutable finite Heyting algebra with precomputed operation tables.

    Conventions
    -----------
    - Elements are the integers 0..n-1; ``labels[i]`` is the display name.
    - ``leq[i, j]`` is True iff element i <= element j.
    - ``meet_table``, ``join_table``, ``impl_table`` are n x n integer
      tables; ``impl_table[a, b]`` is the relative pseudo-complement
      a -> b = \/{c : a /\ c <= b}.
    """

    def __init__(self, labels, leq, name=None):
        labels = [str(s) for s in labels]
        if len(set(labels)) != len(labels):
            raise ParseError("duplicate element labels")
        n = len(labels)
        if n == 0:
            raise ParseError("an algebra needs at least one element")
        if n > MAX_ELEMENTS:
            raise BudgetExceeded(f"{n} elements exceeds the {MAX_ELEMENTS} cap")
        leq = np.asarray(leq, dtype=bool)
        if leq.shape != (n, n):
            raise ParseError("order matrix shape does not match element count")

        self.name = name
        self.labels = labels
        self._index = {s: i for i, s in enumerate(labels)}
        self.n = n
        self.leq = leq

        self._check_poset()
        self.meet_table, self.join_table = self._compute_bounds()
        # fold instead of min(): indices are arbitrary, order is not
        bot = 0
        top = 0
        for i in range(1, n):
            bot = int(self.meet_table[bot, i])
            top = int(self.join_table[top, i])
        self.bottom = bot
        self.top = top
        self._check_frame()
        self.impl_table = self._compute_implication()
        for arr in (self.leq, self.meet_table, self.join_table, self.impl_table):
            arr.setflags(write=False)

    # -- validation ------------------------------------------------------

    def _check_poset(self):
        leq = self.leq
        n = self.n
        if not leq.diagonal().all():
            i = int(np.flatnonzero(~leq.diagonal())[0])
            raise NotAPoset("reflexivity", (self.labels[i],))
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise NotAPoset("antisymmetry", (self.labels[i], self.labels[j]))
        reach = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
        if (reach & ~leq).any():
            i, j = map(int, np.argwhere(reach & ~leq)[0])
            raise NotAPoset("transitivity", (self.labels[i], self.labels[j]))

    def _compute_bounds(self):
        n = self.n
        leq = self.leq
        meet = np.empty((n, n), dtype=np.int64)
        join = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(a, n):
                lows = leq[:, a] & leq[:, b]
                m = self._greatest(lows)
                if m is None:
                    raise NotALattice("meet", (self.labels[a], self.labels[b]))
                ups = leq[a, :] & leq[b, :]
                j = self._least(ups)
                if j is None:
                    raise NotALattice("join", (self.labels[a], self.labels[b]))
                meet[a, b] = meet[b, a] = m
                join[a, b] = join[b, a] = j
        return meet, join

    def _greatest(self, mask):
        for m in np.flatnonzero(mask):
            if np.all(~mask | self.leq[:, m]):
                return int(m)
        return None

    def _least(self, mask):
        for m in np.flatnonzero(mask):
            if np.all(~mask | self.leq[m, :]):
                return int(m)
        return None

    def _check_frame(self):
        # a /\ (b \/ c) == (a /\ b) \/ (a /\ c) for all triples
        mt, jt = self.meet_table, self.join_table
        lhs = mt[:, jt]                      # lhs[a, b, c]
        rhs = jt[mt[:, :, None], mt[:, None, :]]
        bad = lhs != rhs
        if bad.any():
            a, b, c = map(int, np.argwhere(bad)[0])
            raise NotAFrame((self.labels[a], self.labels[b], self.labels[c]))

    def _compute_implication(self):
        n = self.n
        impl = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                # \/ {c : a /\ c <= b}
                mask = self.leq[self.meet_table[a], b]
                v = self.bottom
                for c in np.flatnonzero(mask):
                    v = int(self.join_table[v, c])
                impl[a, b] = v
        return impl

    # -- scalar operations ----------------------------------------------

    def check_element(self, a):
        if not isinstance(a, (int, np.integer)) or not (0 <= int(a) < self.n):
            raise CrossAlgebra(f"element index {a!r} not valid for this algebra")
        return int(a)

    def le(self, a, b):
        return bool(self.leq[a, b])

    def meet(self, a, b):
        return int(self.meet_table[a, b])

    def join(self, a, b):
        return int(self.join_table[a, b])

    def imp(self, a, b):
        return int(self.impl_table[a, b])

    def neg(self, a):
        return int(self.impl_table[a, self.bottom])

    def big_meet(self, elems):
        v = self.top
        for a in elems:
            v = int(self.meet_table[v, a])
        return v

    def big_join(self, elems):
        v = self.bottom
        for a in elems:
            v = int(self.join_table[v, a])
        return v

    def index(self, label):
        return self._index[label]

    def label(self, a):
        return self.labels[a]

    def __repr__(self):
        tag = self.name or f"{self.n} elements"
        return f"HeytingAlgebra({tag})"

    def content_hash(self):
        h = hashlib.sha256()
        h.update(("|".join(self.labels)).encode())
        h.update(np.packbits(self.leq).tobytes())
        return h.hexdigest()


# -- module-level operations (validated entry points) ---------------------


def meet(algebra, a, b):
    return algebra.meet(algebra.check_element(a), algebra.check_element(b))


def join(algebra, a, b):
    return algebra.join(algebra.check_element(a), algebra.check_element(b))


def big_meet(algebra, elems):
    return algebra.big_meet([algebra.check_element(a) for a in elems])


def big_join(algebra, elems):
    return algebra.big_join([algebra.check_element(a) for a in elems])


def implication(algebra, a, b):
    return algebra.imp(algebra.check_element(a), algebra.check_element(b))


def negation(algebra, a):
    return algebra.neg(algebra.check_element(a))


def is_boolean(algebra):
    return all(
        algebra.join(a, algebra.neg(a)) == algebra.top for a in range(algebra.n)
    )


# -- constructors ----------------------------------------------------------


def make_chain(length, name=None):
    """Linear Heyting algebra 0 < m1 < ... < 1 with `length` elements."""
    if length < 1:
        raise ParseError("chain length must be >= 1")
    if length > MAX_ELEMENTS:
        raise BudgetExceeded(f"{length} elements exceeds the {MAX_ELEMENTS} cap")
    if length == 1:
        labels = ["01"]
    elif length == 2:
        labels = ["0", "1"]
    elif length == 3:
        labels = ["0", "m", "1"]
    else:
        labels = ["0"] + [f"m{i}" for i in range(1, length - 1)] + ["1"]
    leq = np.tril(np.ones((length, length), dtype=bool)).T
    return HeytingAlgebra(labels, leq, name=name or f"chain{length}")


def make_boolean(atom_count, name=None):
    """Powerset Boolean algebra on `atom_count` atoms (2^k elements)."""
    if atom_count < 0:
        raise ParseError("atom count must be >= 0")
    if atom_count > 16:
        raise BudgetExceeded(f"2^{atom_count} elements exceeds the {MAX_ELEMENTS} cap")
    n = 1 << atom_count
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    if atom_count == 0:
        labels = ["01"]
    elif atom_count == 2:
        labels = ["0", "a", "na", "1"]
    else:
        full = n - 1
        letters = "abcdefghijklmnop"

        def lab(mask):
            if mask == 0:
                return "0"
            if mask == full:
                return "1"
            return "".join(letters[i] for i in range(atom_count) if mask >> i & 1)

        labels = [lab(int(m)) for m in masks]
    return HeytingAlgebra(labels, leq, name=name or f"boolean{n}")


# -- text format -----------------------------------------------------------


def _strip(line):
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def load_algebra(source, name=None):
    """Parse the line-based algebra format.

    ``elements: a, b, c`` followed by either ``order: a<=b`` lines giving
    the full order relation (reflexivity implied) or ``hasse: a<b`` cover
    lines (reflexive-transitive closure applied).
    """
    labels = None
    mode = None  # 'order' or 'hasse'
    rel = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("elements:"):
            if labels is not None:
                raise ParseError("duplicate elements line", lineno)
            labels = [s.strip() for s in line[len("elements:"):].split(",") if s.strip()]
            if not labels:
                raise ParseError("empty element list", lineno)
            continue
        if labels is None:
            raise ParseError("expected an elements: line first", lineno)
        if line.startswith("order:"):
            kind, body, sep = "order", line[len("order:"):], "<="
        elif line.startswith("hasse:"):
            kind, body, sep = "hasse", line[len("hasse:"):], "<"
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        if mode is None:
            mode = kind
        elif mode != kind:
            raise ParseError("cannot mix order: and hasse: lines", lineno)
        parts = body.split(sep)
        if len(parts) != 2:
            raise ParseError(f"expected <a>{sep}<b>", lineno)
        a, b = parts[0].strip(), parts[1].strip()
        for s in (a, b):
            if s not in labels:
                raise ParseError(f"unknown element {s!r}", lineno)
        rel.append((a, b))
    if labels is None:
        raise ParseError("missing elements: line")
    n = len(labels)
    index = {s: i for i, s in enumerate(labels)}
    leq = np.eye(n, dtype=bool)
    for a, b in rel:
        leq[index[a], index[b]] = True
    if mode == "hasse":
        # Warshall closure of the cover relation
        for k in range(n):
            leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    return HeytingAlgebra(labels, leq, name=name)
