"""Working with truncated Puiseux series and velocity cuts."""

from fractions import Fraction

from vanhom import (Velocity, constant, parse_series, t_power, valuation,
                    velocity_contains)

# T is a positive infinitesimal: smaller than every positive rational.
T = t_power(1)
print("T < 1/1000000:", T < constant(Fraction(1, 1000000)))

# Series are parsed from the same notation they print in.
a = parse_series("2*T^(1/2) - T + 3*T^(3/2)")
b = parse_series("T - 3*T^(3/2)")
print("a + b =", a + b)
print("a * b =", a * b)

# Truncated input carries its precision through arithmetic.  The O-term
# says: below this exponent nothing is known.
c = parse_series("1 - T^2 + O(T^4)")
print("c * T^3 =", c * t_power(3))

# The valuation is the leading exponent; it is how fast a quantity
# shrinks as T goes to zero.
print("val(a)  =", valuation(a))
print("val(ab) =", valuation(a * b))

# A velocity is a cut on rates.  T^q collects everything shrinking at
# least as fast as T^q; the strict form demands faster.
v = Velocity(Fraction(1))
print("T in v:      ", velocity_contains(v, T))
print("sqrt(T) in v:", velocity_contains(v, parse_series("T^(1/2)")))

# Velocities are closed under sums and under passing to smaller
# magnitudes, which is what makes them usable as collapse thresholds.
x, y = t_power(1), t_power(Fraction(3, 2))
print("x+y in v:", velocity_contains(v, x + y))
