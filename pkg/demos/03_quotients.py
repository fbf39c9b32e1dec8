"""
Regular quotients and the transport map
=======================================

f^{-*} * g is evaluated as f^s(q)^{-1} (f^c * g)(q). The transport map
T(q) = f^c(q)^{-1} q f^c(q) turns it into a pointwise quotient.
"""
from quatreg import (I, J, K, ONE, Quaternion, RegularPolynomial, RegularRational,
                     SingularityError, eval_poly, eval_quotient, linear, quotient_relation_eval,
                     singular_set, transport)

f = linear(ONE, -I)
r = RegularRational(f, RegularPolynomial([ONE]))             # (q - i)^{-*}

q = 2 * J
print("r(2j)           =", eval_quotient(r, q))
t = transport(f, q)
print("T(2j)           =", t, "  |T(2j)| =", abs(t))
print("f(T)^-1 g(T)    =", eval_poly(f, t).inverse())
print("via the relation =", quotient_relation_eval(r, q))

# the singular set is the whole sphere through i
try:
    eval_quotient(r, K)
except SingularityError as exc:
    print("singular:", exc, "at", exc.location)

# a removable sphere: the numerator shares the factor q^2 + 1
num = RegularPolynomial([ONE, Quaternion(), ONE])
for comp in singular_set(RegularRational(RegularPolynomial([ONE, Quaternion(), ONE]), num)):
    print(comp)
