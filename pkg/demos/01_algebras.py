r"""Build finite Heyting algebras and poke at their operations.

Every algebra here is a complete lattice on integer indices with
precomputed meet/join/implication tables; implication is the largest c
with a /\ c <= b, so chains get the Godel implication and Boolean
algebras get material implication.
"""

from hvmodels import HeytingAlgebra, NotAFrame, make_boolean, make_chain
import numpy as np

chain3 = make_chain(3)
print("3-chain elements:", chain3.labels)
print("implication table (rows: a, cols: b, entry: a -> b):")
for i, row in enumerate(chain3.impl_table):
    print("  ", chain3.labels[i], [chain3.labels[v] for v in row])

# on a chain: a -> b is top when a <= b, else b itself
m, one = chain3.index("m"), chain3.index("1")
assert chain3.imp(one, m) == m
assert chain3.imp(m, one) == one

four = make_boolean(2)
print("\n4-element Boolean algebra:", four.labels)
a, na = four.index("a"), four.index("na")
print("a /\\ na =", four.labels[four.meet(a, na)])
print("a \\/ na =", four.labels[four.join(a, na)])
print("~a =", four.labels[four.imp(a, four.bottom)])

# the frame law: binary meets distribute over arbitrary joins.  Finite
# distributive lattices always satisfy it; M3 (the diamond) does not.
labels = ["0", "a", "b", "c", "1"]
leq = np.zeros((5, 5), dtype=bool)
for i in range(5):
    leq[i, i] = leq[0, i] = leq[i, 4] = True
try:
    HeytingAlgebra(labels, leq, name="M3")
except NotAFrame as ex:
    print("\nM3 rejected:", ex)
    print("witness triple:", ex.witness)
