"""Two spheres pinched along a collapsing circle: the pair theory.

The complex is two spheres sharing an equatorial circle that shrinks
like T^2.  Absolutely, the circle class is the only thing that
vanishes.  Taking the circle as the subcomplex A shows where that class
lives: it is carried entirely by the part attached to A, the relative
groups are trivial, and the six-term-per-degree long exact sequence
closes up exactly.
"""

from fractions import Fraction

from vanhom import (Velocity, build_pinched_spheres, excision_check,
                    les_check, relative_vanishing)

c, rates, circle = build_pinched_spheres(2, 3)
v = Velocity(Fraction(2))

rep = relative_vanishing(c, rates, circle, v)
print("absolute:", rep.absolute)
print("relative:", rep.relative)
print("attached to A:", rep.attached)

# Every node of the long exact sequence: dimension, incoming rank,
# outgoing rank.  Exact means the two ranks always fill the middle.
les = les_check(c, rates, circle, v)
for node in les.nodes:
    print(f"  degree {node.degree} {node.space:8s} dim {node.dim} "
          f"in {node.rank_in} out {node.rank_out} ok {node.ok}")
print("exact:", les.exact)

# Excision on a hexagonal circle: cut an open arc out of the
# subcomplex and the relative answer does not move.
from vanhom import build_circle

hc, hrates = build_circle(6, 2)
arc = frozenset([0, 1, 2, 3, 6, 7, 8])
interior = frozenset([1, 6, 7])
ex = excision_check(hc, hrates, arc, interior, v)
print("full pair:", ex.full, " after cutting:", ex.excised,
      " equal:", ex.equal)
