"""
Disjoint unions and 2-torsion
=============================

Homology of a split diagram is predicted by the Kunneth formula, with Tor
terms one homological degree down.  The trefoil has Z/2 torsion, so two
trefoils side by side pick up a Tor contribution.
"""

from kh_finite import load_table
from kh_finite.diagram import disjoint_union
from kh_finite.invariants import kunneth_check, tor2
from kh_finite.khovanov import khovanov_homology

table = load_table()
t = table["3_1r"]

rep = kunneth_check(t, t)
print(rep.computed.render())
print("matches prediction:", rep.match)

# 2-torsion: nothing for unknots and Hopf links, present for trefoils
for name in ("0_1", "hopf", "3_1", "3_1r"):
    print(name, tor2(khovanov_homology(table[name])).entries)
print(tor2(khovanov_homology(disjoint_union(table["hopf"], table["hopf"]))).entries)
