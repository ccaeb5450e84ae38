#!/usr/bin/env python3
"""Oracles for the boundary-Jacobian singular integral and the kernel closed forms."""
import mpmath as mp

mp.mp.dps = 40


def make(eps, m):
    h = lambda t: mp.exp(1j * t) + eps / m * mp.exp(1j * m * t)
    dh = lambda t: 1j * mp.exp(1j * t) + 1j * eps * mp.exp(1j * m * t)
    return h, dh


def kernel(h, dh, s, t):
    X = h(t) - h(s)
    Y = dh(s)
    # planar curve: |X|^2|Y|^2 - <X,Y>^2 = (X x Y)^2
    cross = mp.re(X) * mp.im(Y) - mp.im(X) * mp.re(Y)
    return abs(cross)


def jac_bound(h, dh, tau):
    g = lambda t: kernel(h, dh, tau, t) / (4 * mp.pi * mp.sin((t - tau) / 2) ** 2)
    return mp.quad(g, mp.linspace(tau, tau + 2 * mp.pi, 9), method="gauss-legendre")


for eps, m in [(0.3, 2)]:
    h, dh = make(eps, m)
    for tau in [0, 1, 2.5]:
        b = jac_bound(h, dh, mp.mpf(tau))
        J = abs(1 + eps * mp.exp(1j * (m - 1) * tau)) ** 2
        print(f"conformal_poly({eps},{m}) tau={tau}: bound={mp.nstr(b, 18)}  J_boundary={mp.nstr(J, 18)}")

# affine c = 0.2 : closed form bound 0.96 at every tau
c = 0.2
h = lambda t: mp.exp(1j * t) + c * mp.exp(-1j * t)
dh = lambda t: 1j * mp.exp(1j * t) - 1j * c * mp.exp(-1j * t)
print("affine tau=0 bound", mp.nstr(jac_bound(h, dh, mp.mpf(0)), 18))
print("affine tau=0.7 bound", mp.nstr(jac_bound(h, dh, mp.mpf(0.7)), 18))
