"""
Zero sets
=========

Zeros of a regular polynomial are isolated points or whole spheres x + yS.
"""
import numpy as np

from quatreg import (I, J, ONE, Quaternion, QuaternionSampler, RegularPolynomial,
                     eval_poly, left_divide_linear, linear, star_mul, zero_set)

sphere = RegularPolynomial([ONE, Quaternion(), ONE])        # q^2 + 1
print(zero_set(sphere))

f = star_mul(linear(ONE, -I), linear(ONE, -J))              # (q - i) * (q - j)
print(zero_set(f))

# brute force: |f| over the unit imaginary sphere
s = QuaternionSampler(0)
values = np.array([abs(eval_poly(f, s.imaginary_unit())) for _ in range(2000)])
print("min |f| on S, sampled:", values.min())

# a product with a real-coefficient factor picks up a whole sphere
p = Quaternion(2.0, 0.0, 1.0, 0.0)
g = star_mul(RegularPolynomial([Quaternion(5.0), Quaternion(-2.0), ONE]), linear(ONE, -p))
zs = zero_set(g)
for z in zs.isolated:
    print("isolated", z.point, "mult", z.multiplicity)
for sph in zs.spherical:
    print("sphere  ", sph.sphere, "mult", sph.multiplicity)
print("total multiplicity", zs.total_multiplicity(), "= degree", g.degree)

# dividing out a known zero
h = left_divide_linear(f, I)
print("f = (q - i) * h with h =", h)
