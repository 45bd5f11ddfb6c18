"""
Khovanov homology of small knots
================================

Build the cube of resolutions for a few diagrams from the bundled table and
print their integral homology, unreduced and reduced.
"""

from kh_finite import khovanov_homology, load_table

table = load_table()

# the unknot: one copy of Z in each of the quantum degrees -1 and 1
print(khovanov_homology(table["0_1"]).render())

# right-handed trefoil; note the Z/2 in homological degree 3
h = khovanov_homology(table["3_1r"])
print(h.render())
print("torsion:", h.torsion())

# the reduced theory pins the basepoint circle and kills the torsion here
print(khovanov_homology(table["3_1r"], reduced=True).render())

# the figure eight is amphichiral: the free part is symmetric under (i, j) -> (-i, -j)
print(khovanov_homology(table["4_1"]).render())
