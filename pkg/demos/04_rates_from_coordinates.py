"""Deriving collapse rates from vertex coordinates.

Instead of annotating rates by hand, embed the complex with truncated
Puiseux coordinates and let each simplex measure its own collapse: the
rate is the valuation of the last invariant factor of the edge matrix,
computed exactly, with honest failure when truncation hides the answer.
"""

from fractions import Fraction

from vanhom import (GeometricComplex, IndeterminateAtPrecision, Velocity,
                    annotate_geometric, constant, parse_series, series,
                    simplex_rate, t_power, vanishing_betti)

zero = series(())

# A triangle whose height shrinks like T^2.  Every edge keeps a
# length of order 1, so the edges rate 0; the triangle itself
# flattens, and its rate picks that up.
g = GeometricComplex(
    ambient_dim=2,
    vertices={0: (zero, zero),
              1: (constant(1), zero),
              2: (constant(Fraction(1, 2)), t_power(2))},
    simplices=[(0, 1), (1, 2), (0, 2), (0, 1, 2)])
for s in g.simplices:
    print(s, "rate", simplex_rate(g, s))

# The same works for a whole embedded complex.  Here: a product of two
# triangles in 4-space, one factor of unit size, one of size T^2 (a
# torus squeezed onto a circle).
corners = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
           (Fraction(-1), Fraction(-1))]

def point(i, j):
    x, y = corners[i]
    u, w = corners[j]
    return (constant(x), constant(y),
            constant(u) * t_power(2), constant(w) * t_power(2))

vertices = {3 * i + j: point(i, j) for i in range(3) for j in range(3)}

def vid(i, j):
    return 3 * (i % 3) + (j % 3)

simplices = []
for i in range(3):
    for j in range(3):
        a, b, c = vid(i, j), vid(i + 1, j), vid(i, j + 1)
        d = vid(i + 1, j + 1)
        simplices += [(a, b), (a, c), (a, d), (a, b, d), (a, c, d)]
torus = GeometricComplex(4, vertices, sorted(set(map(tuple, map(sorted, simplices)))))
c, rates = annotate_geometric(torus)
print("f-vector:", c.f_vector())
print("rates seen:", sorted(set(rates.values())))
print("dims at T^2:", vanishing_betti(c, rates, Velocity(Fraction(2))).dims)

# Truncation is respected: if the coordinates do not carry enough
# precision to pin the rate down, the computation refuses to guess.
fuzzy = GeometricComplex(
    1, {0: (zero,), 1: (parse_series("0 + O(T^3)"),)}, [(0, 1)])
try:
    simplex_rate(fuzzy, (0, 1))
except IndeterminateAtPrecision as exc:
    print("refused:", exc)
