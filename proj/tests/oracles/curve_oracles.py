#!/usr/bin/env python3
"""Independent oracles for curve constants (ellipse / circle).

Values printed here are frozen into the C++ unit and acceptance tests.
Uses mpmath / numpy only; shares no code with the library.
"""
import numpy as np
import mpmath as mp
from scipy.optimize import minimize, minimize_scalar

mp.mp.dps = 30
A, B = 1.2, 0.8


def speed(t):
    return mp.sqrt((A * mp.sin(t)) ** 2 + (B * mp.cos(t)) ** 2)


length = mp.quad(speed, [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi])
print("ellipse_length", mp.nstr(length, 20))

# cumulative arc length S(t) = b E(t | 1 - a^2/b^2)
m_par = 1 - (A * A) / (B * B)


def cum(t):
    return B * mp.ellipe(t, m_par)


def ratio(t1, t2):
    d = abs(float(cum(t2) - cum(t1)))
    arc = min(d, float(length) - d)
    chord = np.hypot(A * (np.cos(t2) - np.cos(t1)), B * (np.sin(t2) - np.sin(t1)))
    return arc / chord


# dense pair search at 4096 nodes
n = 4096
t = 2 * np.pi * np.arange(n) / n
S = np.array([float(cum(x)) for x in t])
P = np.stack([A * np.cos(t), B * np.sin(t)], axis=1)
best, arg = 0.0, None
for i in range(n):
    j = np.arange(i + 11, n)
    if j.size == 0:
        continue
    d = S[j] - S[i]
    arc = np.minimum(d, float(length) - d)
    ch = np.linalg.norm(P[j] - P[i], axis=1)
    r = arc / ch
    k = np.argmax(r)
    if r[k] > best:
        best, arg = r[k], (t[i], t[j[k]])
print("ellipse_lambda_grid4096", repr(best), arg)
res = minimize(lambda x: -ratio(x[0], x[1]), arg, method="Nelder-Mead",
               options=dict(xatol=1e-12, fatol=1e-15, maxiter=4000))
print("ellipse_lambda_refined", repr(-res.fun), res.x)
print("ellipse_lambda_minor_axis L/(4b)", mp.nstr(length / (4 * B), 20))

# curvature max of the ellipse: a/b^2, dense check
tt = np.linspace(0, 2 * np.pi, 200001)
kap = A * B / (A * A * np.sin(tt) ** 2 + B * B * np.cos(tt) ** 2) ** 1.5
print("ellipse_kappa_max_dense", repr(kap.max()), "closed", A / B ** 2)

# circle, mu = 1/2: sup_{d in (0, pi]} 2 sin(d/2) / d^(1/2)
f = lambda d: -2 * mp.sin(d / 2) / mp.sqrt(d)
dd = np.linspace(1e-6, np.pi, 1000001)
g = 2 * np.sin(dd / 2) / np.sqrt(dd)
i = np.argmax(g)
root = mp.findroot(lambda x: mp.tan(x) - 2 * x, 1.16)
print("circle_holder_half_grid", repr(g[i]), dd[i])
print("circle_holder_half_exact", mp.nstr(2 * mp.sin(root) / mp.sqrt(2 * root), 20))

# ellipse Holder constant of the unit-speed derivative for mu = 1 equals the max curvature
# (convex curve: |G'(a) - G'(b)| = 2 sin(dtheta/2) <= dtheta <= kappa_max |a - b|)
