"""
Regular Moebius transformations of the unit ball
================================================

Sp(1,1) matrices give maps (1 - q conj(a))^{-*} * (q - a) u of the ball onto itself.
"""
import numpy as np

from quatreg import (Quaternion, QuaternionSampler, moebius_from_params, moebius_map_pair,
                     moebius_params, rft_eval, sp11_check, sp11_normalize)

a = Quaternion(0.3, -0.2, 0.1, 0.4)
u = Quaternion(0.0, 0.6, 0.0, 0.8)
M = sp11_normalize(moebius_from_params(a, u))
print(M)
print("Sp(1,1):", sp11_check(M))
print("F(0) =", rft_eval(M, Quaternion()), " -a u =", -(a * u))

s = QuaternionSampler(1)
inside = np.array([abs(rft_eval(M, s.ball(0.99))) for _ in range(2000)])
edge = np.array([abs(rft_eval(M, s.unit())) for _ in range(2000)])
print("max |F| inside:", inside.max())
print("| |F| - 1 | on the sphere:", np.abs(edge - 1).max())

# a map sending a to b
b = Quaternion(0.0, 0.0, -0.5, 0.1)
P = moebius_map_pair(a, b)
print(rft_eval(P, a), "vs", b)
print("recovered (a, u):", moebius_params(P))
