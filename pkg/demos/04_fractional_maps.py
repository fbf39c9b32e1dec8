"""
Linear and regular fractional transformations
=============================================

A = [[a, c], [b, d]] gives F_A(q) = (qc + d)^{-1}(qa + b) and its regular
counterpart (qc + d)^{-*} * (qa + b).
"""
from quatreg import (I, INF, J, K, ONE, ZERO, MatrixH, Quaternion, RegularRational, act,
                     canonical_form, classify_pole, generators_decompose, compose_maps, lft_eval,
                     mat_mul, rft_eval, eval_quotient)

A = MatrixH(ONE, ONE, J, -I)          # pole at p = i
B = MatrixH(I, ZERO, K, Quaternion(2.0))
q = Quaternion(0.2, 0.1, 0.4, -0.3)

# F_AB = F_B o F_A
print(lft_eval(mat_mul(A, B), q))
print(lft_eval(B, lft_eval(A, q)))
print("F_A(inf) =", lft_eval(A, INF), " F_A(i) =", lft_eval(A, I))

print("generators:", generators_decompose(A))
print(compose_maps(generators_decompose(A), q))

# the regular map differs from F_A off the slice of the pole
print("regular  ", rft_eval(A, q))
print("pointwise", lft_eval(A, q))
print(canonical_form(A), classify_pole(A))

# a real pole: the two maps agree everywhere
R = MatrixH(I, ONE, J, Quaternion(-2.0))
print(classify_pole(R), abs(rft_eval(R, q) - lft_eval(R, q)))

# the right action, (r.A).B = r.(AB)
r = act(RegularRational.identity(), A)
print(eval_quotient(act(r, B), q), eval_quotient(act(RegularRational.identity(), mat_mul(A, B)), q))
