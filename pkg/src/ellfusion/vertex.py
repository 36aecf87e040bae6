"""Elliptic eight-vertex R-matrix on V (x) V."""

import cmath

import numpy as np

from .elliptic import check_pole, theta1_over_sin, triple_product
from .tensor import ID2, ID4, P, SIGMA_Y, embed, partial_transpose_first, residual


def r0_scalar(u, ctx):
    """Scalar normalization R_0(u) as a ratio of double-base products in z = x^(2u)."""
    u = complex(u)
    x2 = ctx.power_x(2)
    x4 = ctx.power_x(4)
    p = ctx.p
    z = ctx.power_x(2 * u)
    n = ctx.cutoff

    def prod(a):
        return triple_product(a, x4, p, n)

    num = prod(p * x2 * z) * prod(x2 * z) * prod(p / z) * prod(x4 / z)
    den = prod(p * x2 / z) * prod(x2 / z) * prod(p * z) * prod(x4 * z)
    check_pole(den, max(abs(num), 1.0), "R_0 denominator", u)
    pref = np.exp(-(ctx.r - 1) / (2 * ctx.r) * 2 * u * ctx.log_x)
    return complex(pref * num / den)


def _expm1_ratio(z):
    """(exp(z) - 1) / z, regular at 0."""
    if abs(z) < 1e-4:
        return 1 + z / 2 + z * z / 6 + z ** 3 / 24
    return (cmath.exp(z) - 1) / z


def _w_over_sin(w):
    """w / sin(w), regular at 0."""
    if abs(w) < 1e-4:
        return 1 + w * w / 6 + 7 * w ** 4 / 360
    return w / cmath.sin(w)


def r0_over_bracket(u, ctx):
    """R_0(u) / [1+u], finite at u = -1 where both vanish.

    The vanishing factor 1 - x^(2+2u) of R_0 is cancelled against the
    sine in [1+u] before evaluation.
    """
    u = complex(u)
    eps = 1 + u
    x2 = ctx.power_x(2)
    x4 = ctx.power_x(4)
    p = ctx.p
    z = ctx.power_x(2 * u)
    n = ctx.cutoff

    def prod(a, skip=False):
        return triple_product(a, x4, p, n, skip_origin=skip)

    num = prod(p * x2 * z) * prod(x2 * z, skip=True) * prod(p / z) * prod(x4 / z)
    den = prod(p * x2 / z) * prod(x2 / z) * prod(p * z) * prod(x4 * z)
    check_pole(den, max(abs(num), 1.0), "R_0 denominator", u)
    pref = np.exp(-(ctx.r - 1) / (2 * ctx.r) * 2 * u * ctx.log_x)
    # (1 - x^(2 eps)) / sin(pi eps / r)
    zero_ratio = (-_expm1_ratio(2 * eps * ctx.log_x) * 2 * ctx.log_x * ctx.r / np.pi
                  * _w_over_sin(np.pi * eps / ctx.r))
    rest = ctx.C * theta1_over_sin(eps / ctx.r, ctx.tau, ctx.cutoff)
    return complex(pref * num / den * zero_ratio / rest)


def weights(u, ctx):
    """The four Boltzmann weights (a, b, c, d) without the R_0 factor."""
    u = complex(u)
    s = 2 * ctx.r
    th = ctx.thh
    t1, t2 = th(1, 1 / s), th(2, 1 / s)
    t20 = th(2, 0)
    den1 = check_pole(th(1, (1 + u) / s), t20, "theta_1((1+u)/2r | tau/2)", u)
    den2 = check_pole(th(2, (1 + u) / s), t20, "theta_2((1+u)/2r | tau/2)", u)
    n1, n2 = th(1, u / s), th(2, u / s)
    a = t2 * n2 / (t20 * den2)
    b = t2 * n1 / (t20 * den1)
    c = t1 * n2 / (t20 * den1)
    d = -t1 * n1 / (t20 * den2)
    return a, b, c, d


def baxter_r(u, ctx, normalized=True):
    """4x4 matrix of R(u) in the basis (++, +-, -+, --).

    With ``normalized=False`` the R_0(u) prefactor is dropped.
    """
    a, b, c, d = weights(u, ctx)
    m = np.array([[a, 0, 0, d],
                  [0, b, c, 0],
                  [0, c, b, 0],
                  [d, 0, 0, a]], dtype=complex)
    if normalized:
        m *= r0_scalar(u, ctx)
    return m


# --- identities ------------------------------------------------------------

def unitarity_residual(u, ctx, variant=False):
    """R(u) P R(-u) P = id.

    ``variant=True`` evaluates R(u) P R(u) P instead; that form cannot hold,
    since at u -> -1 it gives (id - P)^2 = 2 (id - P).
    """
    u = complex(u)
    second = baxter_r(u if variant else -u, ctx)
    return residual(baxter_r(u, ctx) @ P @ second @ P, ID4)


def crossing_residual(u, ctx, variant=False):
    """R(-u-1) = -(sigma_y (x) 1)^-1 (P R(u) P)^t1 (sigma_y (x) 1).

    Without the minus sign the right side at u = 0 would be id - P, while
    R(-1) = P - id.  ``variant=True`` checks that sign-free version.
    """
    u = complex(u)
    s = np.kron(SIGMA_Y, ID2)
    rhs = np.linalg.inv(s) @ partial_transpose_first(P @ baxter_r(u, ctx) @ P, 2, 2) @ s
    if not variant:
        rhs = -rhs
    return residual(baxter_r(-u - 1, ctx), rhs)


def initial_residual(ctx, delta=1e-6):
    """(|R(0) - P|, |R(-1+delta) - (P - id)|), both scaled as ``residual``."""
    return (residual(baxter_r(0, ctx), P),
            residual(baxter_r(-1 + delta, ctx), P - ID4))


def ybe_residual(u, v, ctx):
    """R12(u-v) R13(u) R23(v) against R23(v) R13(u) R12(u-v) on V (x) V (x) V."""
    d = (2, 2, 2)
    r12 = embed(baxter_r(complex(u) - v, ctx), (0, 1), d)
    r13 = embed(baxter_r(u, ctx), (0, 2), d)
    r23 = embed(baxter_r(v, ctx), (1, 2), d)
    return residual(r12 @ r13 @ r23, r23 @ r13 @ r12)


def symmetry_residual(u, ctx):
    m = baxter_r(u, ctx)
    return residual(m, m.T)
