"""Fused R-matrices R^(2,1), R^(2,2), Fateev's 21-vertex R-matrix and the gauge between them.

Every fused object is available from two independent routes: the fusion
products themselves (``method="definition"``) and the explicit theta-function
matrix elements (``method="closed-form"``).  ``method="checked"`` builds both
and raises :class:`ConsistencyError` when they disagree.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .elliptic import bracket, check_pole, jacobi
from .errors import ArgumentError, ConsistencyError
from .tensor import (ID2, IOTA, P2, PI, PROJ, SPINS, WEIGHTS, embed, kron,
                     partial_transpose_first, residual, spin_index, weight_index)
from .vertex import baxter_r

METHODS = ("definition", "closed-form", "checked")
CONSISTENCY_TOL = 1e-9

# basis of V^(2) (x) V, row-major over (mu, eps)
BASIS21 = tuple((mu, eps) for mu in WEIGHTS for eps in SPINS)
# basis of V^(2) (x) V^(2)
BASIS22 = tuple((m1, m2) for m1 in WEIGHTS for m2 in WEIGHTS)


def _dispatch(build_def, build_cf, method, what, u):
    if method == "definition":
        return build_def()
    if method == "closed-form":
        return build_cf()
    if method == "checked":
        a, b = build_def(), build_cf()
        res = residual(a, b)
        if res > CONSISTENCY_TOL:
            raise ConsistencyError(f"{what}({u!r}): constructions differ by {res:.3e}")
        return b
    raise ArgumentError(f"method must be one of {METHODS}, got {method!r}")


# --- R^(2,1) ---------------------------------------------------------------

def fuse21_operator(u, ctx):
    """Pi_12 R_13(u+1) R_23(u) as an 8x8 operator on V (x) V (x) V."""
    d = (2, 2, 2)
    return (embed(PI, (0, 1), d) @ embed(baxter_r(u + 1, ctx), (0, 2), d)
            @ embed(baxter_r(u, ctx), (1, 2), d))


def _fuse21_definition(u, ctx):
    return kron(PROJ, ID2) @ fuse21_operator(u, ctx) @ kron(IOTA, ID2)


def fuse21_component(u, ctx, mu_in, eps_in, mu_out, eps_out, eps2):
    """One element R^(2,1)(u)^{mu eps}_{mu' eps'} from the spin component sum.

    ``eps2`` fixes the split mu_in = eps1 + eps2 of the incoming weight;
    the result does not depend on it.
    """
    if mu_in - eps2 not in SPINS:
        raise ArgumentError(f"cannot split weight {mu_in} with eps2={eps2}")
    r1 = baxter_r(u + 1, ctx)
    r2 = baxter_r(u, ctx)
    eps1 = mu_in - eps2

    def el(m, i_in, j_in, i_out, j_out):
        return m[2 * spin_index(i_out) + spin_index(j_out), 2 * spin_index(i_in) + spin_index(j_in)]

    total = 0j
    for e2p in SPINS:
        e1p = mu_out - e2p
        if e1p not in SPINS:
            continue
        for mid in SPINS:
            total += el(r1, eps1, mid, e1p, eps_out) * el(r2, eps2, eps_in, e2p, mid)
    return total


def _fuse21_closed(u, ctx):
    s = 2 * ctx.r
    th = ctx.thh
    t1, t2 = th(1, 1 / s), th(2, 1 / s)
    z2 = th(2, 0)
    o1, o2 = th(1, 1 / ctx.r), th(2, 1 / ctx.r)
    n1, n2 = th(1, u / s), th(2, u / s)
    h1, h2 = th(1, (u + 1) / s), th(2, (u + 1) / s)
    d1 = check_pole(th(1, (u + 2) / s), z2, "theta_1((u+2)/2r | tau/2)", u)
    d2 = check_pole(th(2, (u + 2) / s), z2, "theta_2((u+2)/2r | tau/2)", u)

    # (out, in) -> value; upper (input) index is the column
    e = {}

    def put(value, *pairs):
        for pair in pairs:
            e[pair] = value

    put(t2 ** 2 * n2 / (z2 ** 2 * d2), ((2, 1), (2, 1)), ((-2, -1), (-2, -1)))
    put(-t1 * t2 * n1 / (z2 ** 2 * d2), ((2, 1), (0, -1)), ((-2, -1), (0, 1)))
    put(-t1 ** 2 * n2 / (z2 ** 2 * d2), ((2, 1), (-2, 1)), ((-2, -1), (2, -1)))
    put(t2 ** 2 * n1 / (z2 ** 2 * d1), ((2, -1), (2, -1)), ((-2, 1), (-2, 1)))
    put(t1 * t2 * n2 / (z2 ** 2 * d1), ((2, -1), (0, 1)), ((-2, 1), (0, -1)))
    put(-t1 ** 2 * n1 / (z2 ** 2 * d1), ((2, -1), (-2, -1)), ((-2, 1), (2, 1)))
    put(o1 * h2 ** 2 / (z2 * d1 * d2), ((0, 1), (2, -1)), ((0, -1), (-2, 1)))
    put(-o1 * h1 ** 2 / (z2 * d1 * d2), ((0, -1), (2, 1)), ((0, 1), (-2, -1)))
    put(o2 * h1 * h2 / (z2 * d1 * d2), ((0, 1), (0, 1)), ((0, -1), (0, -1)))

    m = np.zeros((6, 6), dtype=complex)
    for (out, inp), value in e.items():
        m[BASIS21.index(out), BASIS21.index(inp)] = value
    return fuse21_scalar(u, ctx) * m


def fuse21_scalar(u, ctx):
    """R_0(u+1) R_0(u) = -[u+1]/[u]."""
    den = check_pole(bracket(u, ctx), ctx.C * ctx.th(1, 0.5), "[u]", u)
    return -bracket(u + 1, ctx) / den


def fuse21(u, ctx, method="definition"):
    """6x6 matrix of R^(2,1)(u) on V^(2) (x) V, basis ``BASIS21``."""
    u = complex(u)
    return _dispatch(lambda: _fuse21_definition(u, ctx), lambda: _fuse21_closed(u, ctx),
                     method, "fuse21", u)


# --- R^(2,2) ---------------------------------------------------------------

def fuse22_operator(u, ctx):
    """The fusion product on V_1 (x) V_2 (x) V_1' (x) V_2' before restriction."""
    d = (2, 2, 2, 2)
    pi12 = embed(PI, (0, 1), d)
    upper = pi12 @ embed(baxter_r(u + 1, ctx), (0, 3), d) @ embed(baxter_r(u, ctx), (1, 3), d)
    lower = pi12 @ embed(baxter_r(u, ctx), (0, 2), d) @ embed(baxter_r(u - 1, ctx), (1, 2), d)
    return embed(PI, (2, 3), d) @ upper @ pi12 @ lower


def _fuse22_definition(u, ctx):
    return kron(PROJ, PROJ) @ fuse22_operator(u, ctx) @ kron(IOTA, IOTA)


def fuse22_letters(u, ctx, star=False):
    """Matrix elements A..I of R^(2,2)(u) (without R^(2,2)_0).

    ``star=True`` applies theta_1 -> -theta_2, theta_2 -> theta_1 to every
    theta factor whose argument depends on u.
    """
    s = 2 * ctx.r
    th = ctx.thh

    def f(k, a):
        if not star:
            return th(k, a)
        return -th(2, a) if k == 1 else th(1, a)

    def f12(a):
        return f(1, a) * f(2, a)

    t1, t2 = th(1, 1 / s), th(2, 1 / s)
    t12 = t1 * t2
    z2 = th(2, 0)
    o1, o2 = th(1, 1 / ctx.r), th(2, 1 / ctx.r)
    o12 = o1 * o2
    w0, wp, wpp, wm = u / s, (u + 1) / s, (u + 2) / s, (u - 1) / s
    d2 = check_pole(f(2, wpp), z2, "theta((u+2)/2r | tau/2)", u)
    d12p = check_pole(f12(wp), z2 ** 2, "theta_12((u+1)/2r | tau/2)", u)
    d12pp = check_pole(f12(wpp), z2 ** 2, "theta_12((u+2)/2r | tau/2)", u)

    mixed = (f(2, wp) ** 3 * f(2, wm) + f(1, wp) ** 3 * f(1, wm))
    return {
        "A": -o1 * f(2, w0) * t12 * f12(w0) / (z2 ** 3 * d2 * d12p),
        "B": -o2 * f(1, w0) * t12 * f12(w0) / (z2 ** 3 * d2 * d12p),
        "C": f(2, w0) ** 2 * o12 / (z2 ** 2 * d12pp),
        "D": -o1 ** 2 * f12(w0) / (z2 ** 2 * d12pp),
        "E": (o1 * t12 * mixed / (z2 ** 3 * d12pp * d12p)
              + o2 ** 2 * f12(w0) / (z2 ** 2 * d12pp)),
        "F": o2 ** 2 * f12(w0) / (z2 ** 2 * d12pp),
        "G": (f(2, w0) * (t1 ** 4 * f(1, wm) * f(2, wp) + t2 ** 4 * f(2, wm) * f(1, wp))
              / (z2 ** 4 * d2 * d12p)),
        "H": o1 * f(1, w0) ** 3 * t12 / (z2 ** 3 * d2 * d12p),
        "I": (-o1 * (t2 ** 2 * f(1, wp) ** 3 * f(2, wm) + t1 ** 2 * f(2, wp) ** 3 * f(1, wm))
              / (z2 ** 3 * d12pp * d12p)
              - f(1, w0) ** 2 * o12 / (z2 ** 2 * d12pp)),
    }


# rows are outputs, columns inputs, both in BASIS22 order
LAYOUT22 = (
    ("G", None, "A", None, "B", None, "A", None, "H"),
    (None, "F", None, "C", None, "C*", None, "D", None),
    ("A*", None, "G*", None, "B*", None, "H*", None, "A*"),
    (None, "C", None, "F", None, "D", None, "C*", None),
    ("I", None, "I*", None, "E", None, "I*", None, "I"),
    (None, "C*", None, "D", None, "F", None, "C", None),
    ("A*", None, "H*", None, "B*", None, "G*", None, "A*"),
    (None, "D", None, "C*", None, "C", None, "F", None),
    ("H", None, "A", None, "B", None, "A", None, "G"),
)


def fuse22_scalar(u, ctx):
    """R^(2,1)_0(u-1) R^(2,1)_0(u) = [u+1]/[u-1]."""
    den = check_pole(bracket(u - 1, ctx), ctx.C * ctx.th(1, 0.5), "[u-1]", u)
    return bracket(u + 1, ctx) / den


def _fuse22_closed(u, ctx):
    plain = fuse22_letters(u, ctx)
    starred = fuse22_letters(u, ctx, star=True)
    m = np.zeros((9, 9), dtype=complex)
    for i, row in enumerate(LAYOUT22):
        for j, name in enumerate(row):
            if name is None:
                continue
            m[i, j] = starred[name[0]] if name.endswith("*") else plain[name]
    return fuse22_scalar(u, ctx) * m


def fuse22(u, ctx, method="definition"):
    """9x9 matrix of R^(2,2)(u) on V^(2) (x) V^(2), basis ``BASIS22``."""
    u = complex(u)
    return _dispatch(lambda: _fuse22_definition(u, ctx), lambda: _fuse22_closed(u, ctx),
                     method, "fuse22", u)


def element22(m, upper, lower):
    """R^{mu1 mu2}_{mu1' mu2'} read from a 9x9 matrix."""
    col = 3 * weight_index(upper[0]) + weight_index(upper[1])
    row = 3 * weight_index(lower[0]) + weight_index(lower[1])
    return m[row, col]


# --- Fateev's R-matrix ------------------------------------------------------

def fateev_entries(u, ctx):
    """The named Boltzmann weights s1, s2, s3, t, T, a, r, mu, nu, R, q, rho."""
    u = complex(u)

    def sn(w):
        return jacobi("sn", w, ctx)

    def cn(w):
        return jacobi("cn", w, ctx)

    def dn(w):
        return jacobi("dn", w, ctx)

    sn1, sn2 = sn(1), sn(2)
    cn2, dn2 = cn(2), dn(2)
    snu = check_pole(sn(u), sn1, "sn(lambda u)", u)
    snu1 = check_pole(sn(u + 1), sn1, "sn(lambda (u+1))", u)
    k = sn1 * sn2 / (snu * snu1)
    return {
        "s1": cn2 + k,
        "s2": cn2 + dn2 - 1 + k,
        "s3": dn2 + k,
        "T": 1.0 + 0j,
        "t": cn2,
        "a": dn2,
        "r": cn(u) * sn2 / snu,
        "mu": -cn(u + 1) * sn2 / snu1,
        "R": sn2 / snu,
        "nu": -sn2 / snu1,
        "q": dn(u) * sn2 / snu,
        "rho": -dn(u + 1) * sn2 / snu1,
    }


_FATEEV_LAYOUT = {
    (0, 0): "s1", (0, 4): "mu", (0, 8): "nu",
    (1, 1): "t", (1, 3): "r",
    (2, 2): "T", (2, 6): "R",
    (3, 1): "r", (3, 3): "t",
    (4, 0): "mu", (4, 4): "s2", (4, 8): "rho",
    (5, 5): "a", (5, 7): "q",
    (6, 2): "R", (6, 6): "T",
    (7, 5): "q", (7, 7): "a",
    (8, 0): "nu", (8, 4): "rho", (8, 8): "s3",
}


def ftilde(u, ctx):
    """Scalar factor of Fateev's R-matrix expressed through brackets and thetas."""
    u = complex(u)
    r = ctx.r
    den = check_pole(ctx.th(1, (u + 2) / r), ctx.th(1, 0.5), "theta_1((u+2)/r)", u)
    return (fuse22_scalar(u, ctx) * ctx.th(0, 2 / r) * ctx.th(1, u / r)
            / (ctx.th(0, 0) * den))


def fateev_r(u, ctx, normalized=True):
    """9x9 Fateev R-matrix; ``normalized=False`` drops the F~(u) factor."""
    e = fateev_entries(u, ctx)
    m = np.zeros((9, 9), dtype=complex)
    for pos, name in _FATEEV_LAYOUT.items():
        m[pos] = e[name]
    if normalized:
        m *= ftilde(u, ctx)
    return m


# --- gauge and crossing -----------------------------------------------------

_HADAMARD3 = np.array([[1, 0, 1], [0, np.sqrt(2), 0], [1, 0, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class GaugePair:
    """Single-site gauge U taking R^(2,2) to Fateev's R-matrix, and Q = U^t U."""

    U: np.ndarray
    Q: np.ndarray
    Q_closed: np.ndarray
    x2: complex
    y2: complex


def gauge_squares(ctx):
    th = ctx.th
    v = 1 / ctx.r
    x2 = -0.5 * th(0, 0) * th(3, v) / (check_pole(th(0, v), th(0, 0), "theta_0(1/r)") * th(3, 0))
    y2 = -th(2, 0) * th(3, v) / (check_pole(th(2, v), th(2, 0), "theta_2(1/r)") * th(3, 0))
    return x2, y2


def gauge_pair(ctx, signs=(1, 1)):
    """Build U = diag(1, x, y) H and Q both as U^t U and in closed form.

    ``signs`` picks the branches of x and y relative to the principal roots.
    The closed form uses x^2 (not x^2/2) in the middle entry; that is what
    U^t U gives and what the crossing relation requires.
    """
    x2, y2 = gauge_squares(ctx)
    x = signs[0] * cmath.sqrt(x2)
    y = signs[1] * cmath.sqrt(y2)
    U = np.diag([1, x, y]) @ _HADAMARD3
    Q_closed = 0.5 * np.array([[1 + y2, 0, 1 - y2],
                               [0, 2 * x2, 0],
                               [1 - y2, 0, 1 + y2]], dtype=complex)
    return GaugePair(U=U, Q=U.T @ U, Q_closed=Q_closed, x2=x2, y2=y2)


def gauge_residual(u, ctx, signs=(1, 1), method="closed-form"):
    """Distance between (U (x) U) R^(2,2) (U (x) U)^-1 and Fateev's R-matrix."""
    g = gauge_pair(ctx, signs)
    uu = np.kron(g.U, g.U)
    lhs = uu @ fuse22(u, ctx, method) @ np.linalg.inv(uu)
    return residual(lhs, fateev_r(u, ctx))


def crossing22_residual(u, ctx, method="closed-form", q=None):
    """R^(2,2)(-u-1) against (Q^-1 (x) 1)(P2 R^(2,2)(u) P2)^t1 (Q (x) 1).

    ``q`` defaults to U^t U.
    """
    u = complex(u)
    if q is None:
        q = gauge_pair(ctx).Q
    id3 = np.eye(3, dtype=complex)
    lhs = fuse22(-u - 1, ctx, method)
    rhs = (np.kron(np.linalg.inv(q), id3)
           @ partial_transpose_first(P2 @ fuse22(u, ctx, method) @ P2, 3, 3)
           @ np.kron(q, id3))
    return residual(lhs, rhs)


def q_half_middle(ctx):
    """The variant of Q with the overall 1/2 also applied to the x^2 entry."""
    x2, y2 = gauge_squares(ctx)
    return 0.5 * np.array([[1 + y2, 0, 1 - y2],
                           [0, x2, 0],
                           [1 - y2, 0, 1 + y2]], dtype=complex)


def q_residual(ctx, half_middle=False):
    """Distance between U^t U and the closed form of Q (with x^2, or x^2/2, in the middle)."""
    g = gauge_pair(ctx)
    return residual(g.Q, q_half_middle(ctx) if half_middle else g.Q_closed)


# --- identities ------------------------------------------------------------

def prefactor21_residual(u, ctx):
    from .vertex import r0_scalar
    u = complex(u)
    return residual(r0_scalar(u + 1, ctx) * r0_scalar(u, ctx), fuse21_scalar(u, ctx))


def closed_form_residual(u, ctx, which=22):
    build = fuse22 if which == 22 else fuse21
    return residual(build(u, ctx, "definition"), build(u, ctx, "closed-form"))


def split21_residual(u, ctx):
    """Weight-0 inputs of R^(2,1): the eps2 = +1 and eps2 = -1 component sums agree."""
    worst = 0.0
    for eps_in in SPINS:
        for mu_out, eps_out in BASIS21:
            a = fuse21_component(u, ctx, 0, eps_in, mu_out, eps_out, 1)
            b = fuse21_component(u, ctx, 0, eps_in, mu_out, eps_out, -1)
            worst = max(worst, residual(a, b))
    return worst


def absorption_residual(u, ctx):
    """Pi_12 R_13(u+1) R_23(u) Pi_12 = Pi_12 R_13(u+1) R_23(u)."""
    op = fuse21_operator(complex(u), ctx)
    return residual(op @ embed(PI, (0, 1), (2, 2, 2)), op)


_Z2 = np.eye(3, dtype=complex)[::-1]


def invariance22_residual(u, ctx):
    """P-invariance and Z2 symmetry of R^(2,2), worst of the two."""
    m = fuse22(u, ctx)
    z = np.kron(_Z2, _Z2)
    return max(residual(P2 @ m @ P2, m), residual(z @ m @ z, m))


def ybe22_residual(u, v, ctx, method="closed-form"):
    d = (3, 3, 3)
    u = complex(u)
    r12 = embed(fuse22(u - v, ctx, method), (0, 1), d)
    r13 = embed(fuse22(u, ctx, method), (0, 2), d)
    r23 = embed(fuse22(v, ctx, method), (1, 2), d)
    return residual(r12 @ r13 @ r23, r23 @ r13 @ r12)


def fateev_symmetry_residual(u, ctx):
    """T- and P-invariance of R_F(u) and its crossing R^{ij}_{kl}(u) = R^{kj}_{il}(-u-1)."""
    u = complex(u)
    m = fateev_r(u, ctx)
    crossed = fateev_r(-u - 1, ctx).reshape(3, 3, 3, 3)
    # m[(k,l),(i,j)] = R^{ij}_{kl}; swapping i and k is a partial transpose
    t = m.reshape(3, 3, 3, 3)
    return max(residual(m, m.T), residual(P2 @ m @ P2, m),
               residual(t, crossed.transpose(2, 1, 0, 3)))


def ftilde_reflection_residual(u, ctx):
    u = complex(u)
    return residual(ftilde(u, ctx), ftilde(-u - 1, ctx))


def ftilde_inversion_residual(u, ctx):
    u = complex(u)
    s = jacobi("sn", u, ctx) ** 2
    s2 = jacobi("sn", 2, ctx) ** 2
    den = check_pole(s - s2, s2, "sn^2 u - sn^2 2", u)
    return residual(ftilde(u, ctx) * ftilde(-u, ctx), s / den)
