"""A torus with one collapsing factor, swept across velocities.

The model: a product of two polygonal circles whose radii shrink like
T^p and T^q.  Cells running along the slow factor carry rate p, cells
along the fast factor carry rate q, and the triangles carry the faster
of the two.
"""

from fractions import Fraction

from vanhom import Velocity, build_torus, sweep, vanishing_betti

c, rates = build_torus(0, 2, 3)
print("f-vector:", c.f_vector())
print("distinct rates:", sorted(set(rates.values())))

# At the cut T^2 only the fast circle direction and the triangles are
# thin.  One circle class survives, and so does the top class.
t = vanishing_betti(c, rates, Velocity(Fraction(2)))
print("dims at T^2:", t.dims, " index:", t.euler)

# Strictly faster than T^2 nothing qualifies.
t = vanishing_betti(c, rates, Velocity(Fraction(2), strict=True))
print("dims at >T^2:", t.dims)

# The sweep evaluates every threshold at once; the dimensions form a
# step function with jumps only at rates that actually occur.
table = sweep(c, rates)
print("breakpoints:", table.breakpoints)
for j in sorted(table.dims):
    pieces = ", ".join(
        f"({'-inf' if lo is None else lo}, {'inf' if hi is None else str(hi) + ']'}"
        + (")" if hi is None else "") + f": {value}"
        for lo, hi, value in table.intervals(j))
    print(f"degree {j}: {pieces}")
