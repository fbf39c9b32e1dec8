"""
Regular polynomials and the *-product
=====================================

Polynomials in a quaternion variable with coefficients on the right.
The *-product convolves coefficients, which is not pointwise multiplication.
"""
from quatreg import (I, J, K, ONE, Quaternion, RegularPolynomial, eval_poly, linear,
                     regular_conjugate, star_mul, symmetrization)

# (q - i) * (q - j) = q^2 - q(i + j) + k
f = star_mul(linear(ONE, -I), linear(ONE, -J))
print("f =", f)

q = Quaternion(0.3, 0.5, -0.2, 0.1)
print("f(q)             ", eval_poly(f, q))
print("(q-i)(q-j), naive", (q - I) * (q - J))

# the symmetrization f * f^c has real coefficients
fs = symmetrization(f)
print("f^s =", fs)
print("f^c =", regular_conjugate(f))

# but f itself vanishes only at i, not on the whole sphere of i
for p in (I, J, K, -I):
    print(f"|f({p})| = {abs(eval_poly(f, p)):.3g}")

g = RegularPolynomial([J, K, ONE])
print("f*g - g*f =", star_mul(f, g) - star_mul(g, f))
