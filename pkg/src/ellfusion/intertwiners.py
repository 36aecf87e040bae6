"""Intertwining vectors, their duals, and the 2-fold fusions of both.

``psi(u, a, b, ctx)`` is the 2-vector (psi_+, psi_-) of psi(u)^a_b; a dual
``psi_dual`` is the covector with the same index placement.  Fused objects
are 3-component arrays indexed by the weights (2, 0, -2): for vectors these
are the coefficients on v_2, v_0, v_-2; for covectors the values on the same
basis vectors.
"""

import numpy as np

from .elliptic import bracket, check_pole
from .errors import AdmissibilityError, ArgumentError
from .face import g_height, pairing, w22, w_face
from .fusion import fuse22, gauge_pair
from .tensor import PI, PROJ, SPINS, residual
from .vertex import baxter_r

FUSION_METHODS = ("fusion", "closed-form")


def _bracket_scale(ctx):
    return ctx.C * ctx.th(1, 0.5)


def _check_step(a, b):
    if abs(a - b) != 1:
        raise ArgumentError(f"|a - b| must be 1, got a={a}, b={b}")


def _check_fused(a, b):
    if a - b not in (2, 0, -2):
        raise ArgumentError(f"a - b must be 0 or +-2, got a={a}, b={b}")


def psi(u, a, b, ctx):
    _check_step(a, b)
    arg = ((a - b) * complex(u) + a) / (2 * ctx.r)
    return np.array([ctx.thh(0, arg), ctx.thh(3, arg)])


def psi_dual(u, a, b, ctx):
    """psi*_eps(u)^a_b = -eps (a-b) C^2 psi_{-eps}(u-1)^a_b / (2 [b] [u])."""
    _check_step(a, b)
    u = complex(u)
    den = (2 * check_pole(bracket(b, ctx), _bracket_scale(ctx), "[b]", b)
           * check_pole(bracket(u, ctx), _bracket_scale(ctx), "[u]", u))
    shifted = psi(u - 1, a, b, ctx)
    # shifted is (psi_+, psi_-); eps = + takes psi_-, eps = - takes psi_+
    return -(a - b) * ctx.C ** 2 / den * np.array([shifted[1], -shifted[0]])


def _middles(a, b):
    return [c for c in (a - 1, a + 1) if abs(c - b) == 1]


def psi2(u, a, b, ctx, method="fusion", c=None):
    """Fused intertwiner psi^(2)(u)^a_b in the (v_2, v_0, v_-2) basis."""
    _check_fused(a, b)
    u = complex(u)
    if method == "fusion":
        options = _middles(a, b)
        if c is None:
            c = options[0]
        elif c not in options:
            raise AdmissibilityError(f"c={c} is not adjacent to both a={a} and b={b}")
        return PROJ @ np.kron(psi(u + 1, a, c, ctx), psi(u, c, b, ctx))
    if method == "closed-form":
        return _psi2_closed(u, a, b, ctx)
    raise ArgumentError(f"method must be one of {FUSION_METHODS}, got {method!r}")


def _psi2_closed(u, n, b, ctx):
    s = 2 * ctx.r
    r = ctx.r
    h, f = ctx.thh, ctx.th
    if b == n + 2:
        x1, x2 = (u - n + 1) / s, (u - n - 1) / s
        mid = 2 * f(0, (u - n) / r) * f(0, 1 / r)
    elif b == n:
        x1, x2 = (u - n + 1) / s, (u + n + 1) / s
        mid = 2 * f(0, n / r) * f(0, (u + 1) / r)
    else:
        x1, x2 = (u + n + 1) / s, (u + n - 1) / s
        mid = 2 * f(0, (u + n) / r) * f(0, 1 / r)
    return np.array([h(0, x1) * h(0, x2), mid, h(3, x1) * h(3, x2)])


def psi2_dual_split(u, a, b, ctx, eps1, eps2):
    """Sum over c of psi*_eps1(u+1)^c_b psi*_eps2(u)^a_c for one spin split."""
    _check_fused(a, b)
    u = complex(u)
    i1, i2 = SPINS.index(eps1), SPINS.index(eps2)
    total = 0j
    for c in _middles(b, a):
        total += psi_dual(u + 1, c, b, ctx)[i1] * psi_dual(u, a, c, ctx)[i2]
    return total


def psi2_dual(u, a, b, ctx, method="fusion"):
    """Fused dual intertwiner psi*^(2)(u)^a_b evaluated on (v_2, v_0, v_-2)."""
    _check_fused(a, b)
    u = complex(u)
    if method == "fusion":
        return np.array([psi2_dual_split(u, a, b, ctx, 1, 1),
                         psi2_dual_split(u, a, b, ctx, 1, -1),
                         psi2_dual_split(u, a, b, ctx, -1, -1)])
    if method == "closed-form":
        return _psi2_dual_closed(u, a, b, ctx)
    raise ArgumentError(f"method must be one of {FUSION_METHODS}, got {method!r}")


def _psi2_dual_closed(u, n, b, ctx):
    s = 2 * ctx.r
    r = ctx.r
    h, f = ctx.thh, ctx.th
    scale = _bracket_scale(ctx)

    def br(x):
        return check_pole(bracket(x, ctx), scale, "bracket", x)

    uu = br(u) * br(u + 1)
    if b == n + 2:
        x = (u - n - 1) / s
        pref = ctx.C ** 4 / (4 * br(n + 1) * br(n + 2) * uu)
        return pref * np.array([h(3, x) ** 2, -h(3, x) * h(0, x), h(0, x) ** 2])
    if b == n - 2:
        x = (u + n - 1) / s
        pref = ctx.C ** 4 / (4 * br(n - 1) * br(n - 2) * uu)
        return pref * np.array([h(3, x) ** 2, -h(3, x) * h(0, x), h(0, x) ** 2])
    pref = -ctx.C ** 5 / (4 * br(n) * br(n + 1) * br(n - 1) * uu)
    lo, hi = f(1, (n - 1) / r), f(1, (n + 1) / r)
    a1, a2 = (u + n + 1) / s, (u - n - 1) / s
    b1, b2 = (u - n + 1) / s, (u + n - 1) / s
    top = h(3, a1) * h(3, a2) * lo + h(3, b1) * h(3, b2) * hi
    mid = -h(1, n / r) * h(2, 1 / r) * f(0, u / r)
    bottom = h(0, a1) * h(0, a2) * lo + h(0, b1) * h(0, b2) * hi
    return pref * np.array([top, mid, bottom])


def psi2_dual_tensor(u, a, b, ctx):
    """The by-fusion covector on V (x) V before any symmetrization."""
    _check_fused(a, b)
    u = complex(u)
    return sum(np.kron(psi_dual(u + 1, c, b, ctx), psi_dual(u, a, c, ctx))
               for c in _middles(b, a))


# --- identities ------------------------------------------------------------

def inversion_residual(u, b, ctx, fused=False):
    """Both inversion relations around the height b, at level 1 or fused.

    sum_eps psi*_eps(u)^a_b psi_eps(u)^b_c = delta_{a,c}, and
    sum_a psi*_eps'(u)^a_b psi_eps(u)^b_a = delta_{eps',eps}.
    """
    if fused:
        near, vec, dual = (b - 2, b, b + 2), psi2, psi2_dual
    else:
        near, vec, dual = (b - 1, b + 1), psi, psi_dual
    duals = {a: dual(u, a, b, ctx) for a in near}
    vecs = {c: vec(u, b, c, ctx) for c in near}
    first = np.array([[duals[a] @ vecs[c] for c in near] for a in near])
    second = sum(np.outer(duals[a], vecs[a]) for a in near)
    return max(residual(first, np.eye(len(near))), residual(second, np.eye(len(second))))


def closed_form_residual(u, a, b, ctx, dual=False):
    build = psi2_dual if dual else psi2
    return residual(build(u, a, b, ctx, "fusion"), build(u, a, b, ctx, "closed-form"))


def closed_form_ratio(u, a, b, ctx, dual=False):
    """Componentwise fusion / closed-form; all ones when the constants agree."""
    build = psi2_dual if dual else psi2
    return build(u, a, b, ctx, "fusion") / build(u, a, b, ctx, "closed-form")


def choice_residual(u, a, b, ctx):
    """c-independence of psi^(2) and split-independence of psi*^(2)_0."""
    worst = 0.0
    options = _middles(a, b)
    if len(options) == 2:
        worst = residual(psi2(u, a, b, ctx, c=options[0]), psi2(u, a, b, ctx, c=options[1]))
    worst = max(worst, residual(psi2_dual_split(u, a, b, ctx, 1, -1),
                                psi2_dual_split(u, a, b, ctx, -1, 1)))
    return worst


def symmetric_dual_residual(u, a, b, ctx):
    """The fused covector is unchanged by Pi, i.e. kills antisymmetric tensors."""
    w = psi2_dual_tensor(u, a, b, ctx)
    return residual(w @ PI, w)


VERTEX_FACE_KINDS = ("level1", "dual", "fused", "fused-dual")


def _neighbours(kind, h):
    return (h - 1, h + 1) if kind in ("level1", "dual") else (h - 2, h, h + 2)


def vertex_face_sides(kind, u, v, a, b, c, ctx, transpose=False):
    """Both sides of a vertex-face correspondence, as vectors over V (x) V or V^(2) (x) V^(2).

    With matrices stored as M[out, in], the plain correspondence contracts
    the columns against the intertwiners; ``transpose`` contracts the rows.
    """
    u, v = complex(u), complex(v)
    level1 = kind in ("level1", "dual")
    m = baxter_r(u - v, ctx) if level1 else fuse22(u - v, ctx)
    if transpose:
        m = m.T
    if kind == "level1":
        vec, weight = psi, (lambda bp: w_face(a, b, bp, c, u - v, ctx))
    elif kind == "dual":
        vec, weight = psi_dual, (lambda bp: w_face(c, bp, b, a, u - v, ctx))
    elif kind == "fused":
        vec, weight = psi2, (lambda bp: w22(a, b, bp, c, u - v, ctx))
    elif kind == "fused-dual":
        vec, weight = psi2_dual, (lambda bp: w22(c, bp, b, a, u - v, ctx))
    else:
        raise ArgumentError(f"kind must be one of {VERTEX_FACE_KINDS}, got {kind!r}")
    lhs = m @ np.kron(vec(u, a, b, ctx), vec(v, b, c, ctx))
    rhs = 0
    for bp in _neighbours(kind, a):
        if bp - c in _steps(kind):
            rhs = rhs + weight(bp) * np.kron(vec(u, bp, c, ctx), vec(v, a, bp, ctx))
    return lhs, rhs


def _steps(kind):
    return (1, -1) if kind in ("level1", "dual") else (2, 0, -2)


def vertex_face_residual(kind, u, v, a, b, c, ctx, transpose=False):
    return residual(*vertex_face_sides(kind, u, v, a, b, c, ctx, transpose))


def vertex_face_configs(kind, center=3, heights=range(1, 6)):
    """(a, b, c) with a = center and b, c admissible neighbours inside ``heights``."""
    hs = set(heights)
    return [(center, b, c) for b in _neighbours(kind, center) for c in _neighbours(kind, b)
            if b in hs and c in hs]


def dual_shift_sides(u, a, b, ctx):
    u = complex(u)
    scale = ctx.C * ctx.th(1, 0.5)
    den = (4 * check_pole(bracket(u, ctx), scale, "[u]", u)
           * check_pole(bracket(u + 1, ctx), scale, "[u+1]", u + 1))
    pref = (-ctx.C ** 4 / den * ctx.th(3, 0) / ctx.th(3, 1 / ctx.r)
            * g_height(a, ctx) / (g_height(b, ctx) * pairing(a, b, 2, ctx)))
    q = gauge_pair(ctx).Q
    # sum_eps' Q^{eps'}_eps psi_eps' with Q^{eps'}_eps = Q[eps, eps']
    return psi2_dual(u, a, b, ctx), pref * (q @ psi2(u - 1, a, b, ctx))


def dual_shift_residual(u, a, b, ctx):
    return residual(*dual_shift_sides(u, a, b, ctx))
