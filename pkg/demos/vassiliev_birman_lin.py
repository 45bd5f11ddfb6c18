"""
Finite type invariants from the Jones polynomial
================================================

Substituting t = e^x in V and expanding gives the Birman-Lin coefficients
u_i, each of finite type i.  The Jones polynomial itself is not.
"""

from itertools import combinations

from kh_finite import SingularDiagram, load_table
from kh_finite.invariants import (birman_lin_coefficients, birman_lin_invariant,
                                  finite_type_test, format_doubled, jones_polynomial,
                                  vassiliev_extend)

table = load_table()

for name in ("3_1", "3_1r", "4_1", "5_1"):
    print(name, [str(u) for u in birman_lin_coefficients(table[name], 4)])

knots = [d for d in table.values() if d.components == 1 and 3 <= d.n <= 5]
strata = [SingularDiagram(d, frozenset(ks)) for d in knots for ks in combinations(range(d.n), 3)]
print("u2 on 3-singular strata:", finite_type_test(birman_lin_invariant(2), 2, strata).vanishes)
print("u3 on 3-singular strata:", finite_type_test(birman_lin_invariant(3), 2, strata).vanishes)

# the extension of V to one double point of the trefoil
s = SingularDiagram(table["3_1r"], frozenset({0}))
print(format_doubled(vassiliev_extend(jones_polynomial, s)))
