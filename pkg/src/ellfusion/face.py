"""SOS face weights, their 2x1 and 2x2 fusions, and the crossing factors.

A weight ``w_face(a, b, d, c, u, ctx)`` is the face with corners::

    a  b
    d  c

(a north-west, b north-east, d south-west, c south-east).  Heights are
integers; the north-west height ``n`` enters the weights through ``[n]``.
"""

import cmath
from functools import lru_cache

import numpy as np

from .elliptic import bracket, check_pole
from .errors import AdmissibilityError, ArgumentError, DomainError
from .tensor import residual
from .vertex import r0_over_bracket, r0_scalar


def admissible(a, b, d, c, step=1):
    """Adjacent corners differ by exactly ``step`` (level 1) or by 0, +-2 (``step=2``)."""
    pairs = ((a, b), (a, d), (b, c), (d, c))
    if step == 1:
        return all(abs(x - y) == 1 for x, y in pairs)
    return all(x - y in (2, 0, -2) for x, y in pairs)


def _bracket_scale(ctx):
    return ctx.C * ctx.th(1, 0.5)


@lru_cache(maxsize=1 << 16)
def w_face(a, b, d, c, u, ctx):
    """Level-1 SOS weight; zero for non-admissible corners."""
    if not admissible(a, b, d, c):
        return 0j
    u = complex(u)
    if b == d and c != a:
        return r0_scalar(u, ctx)
    n = a
    # R_0(u)/[1+u] is taken as one regular function so that u = -1 is allowed
    ratio = r0_over_bracket(u, ctx) / check_pole(bracket(n, ctx), _bracket_scale(ctx), "[n]", n)
    if b == d:
        sign = b - a
        return ratio * bracket(n - sign * u, ctx) * bracket(1, ctx)
    return ratio * bracket(b, ctx) * bracket(u, ctx)


def _middle(a, b):
    """Heights adjacent to both a and b."""
    return [h for h in (a - 1, a + 1) if abs(h - b) == 1]


def _choose(options, given, what, ctx):
    if given is not None:
        if given not in options:
            raise AdmissibilityError(f"{what}={given} is not adjacent to both neighbours")
        return given
    if not options:
        raise AdmissibilityError(f"no admissible {what}")
    inside = [h for h in options if 0 < h < ctx.r]
    return (inside or options)[0]


@lru_cache(maxsize=1 << 16)
def w21(a, b, d, c, u, ctx, aprime=None):
    """2x1 fused weight: horizontal pairs differ by 0, +-2, vertical ones by 1."""
    if any(x - y not in (2, 0, -2) for x, y in ((a, b), (d, c))) or abs(a - d) != 1 or abs(b - c) != 1:
        return 0j
    u = complex(u)
    ap = _choose(_middle(a, b), aprime, "a'", ctx)
    total = 0j
    for dp in (d - 1, d + 1):
        total += w_face(a, ap, d, dp, u + 1, ctx) * w_face(ap, b, dp, c, u, ctx)
    return total


@lru_cache(maxsize=1 << 16)
def w22(a, b, d, c, u, ctx, bprime=None):
    """2x2 fused weight over the extended admissible squares."""
    if not admissible(a, b, d, c, step=2):
        return 0j
    u = complex(u)
    bp = _choose(_middle(b, c), bprime, "b'", ctx)
    total = 0j
    for ap in _middle(a, d):
        total += w21(a, b, ap, bp, u - 1, ctx) * w21(ap, bp, d, c, u, ctx)
    return total


def epsilon(a):
    """Sign convention eps_a = (-1)^floor(a/2); eps_a eps_{a+1} = (-1)^a."""
    return -1 if (a // 2) % 2 else 1


def _check_height(a, ctx):
    if int(a) != a or not 0 < a < ctx.r:
        raise DomainError(f"height {a!r} must be an integer in (0, r)")


def g_height(a, ctx):
    """g_a = eps_a sqrt([a])."""
    _check_height(a, ctx)
    return epsilon(a) * cmath.sqrt(bracket(a, ctx))


def bracket_range(lo, hi, ctx):
    """[lo, hi] = [lo][lo+1]...[hi], with the empty product equal to 1."""
    out = 1 + 0j
    for k in range(lo, hi + 1):
        out *= bracket(k, ctx)
    return out


def qbinomial(top, bottom, ctx):
    """Elliptic binomial [top; bottom] built from brackets."""
    if bottom < 0 or bottom > top:
        raise ArgumentError(f"binomial [{top}; {bottom}] out of range")
    num = 1 + 0j
    den = 1 + 0j
    for k in range(bottom):
        num *= bracket(top - k, ctx)
        den *= bracket(bottom - k, ctx)
    return num / den


def pairing(a, b, m, ctx):
    """(a, b)_M, symmetric in a and b."""
    _check_height(a, ctx)
    _check_height(b, ctx)
    if (a - b + m) % 2:
        raise ArgumentError(f"(a - b + M)/2 is not an integer for a={a}, b={b}, M={m}")
    k = (a - b + m) // 2
    if not 0 <= k <= m:
        raise ArgumentError(f"(a - b + M)/2 = {k} outside 0..{m}")
    lo, hi = (a + b - m) // 2, (a + b + m) // 2
    if lo < 1:
        raise DomainError(f"(a + b - M)/2 = {lo} must be at least 1")
    if hi >= ctx.r:
        # [r] = 0 would enter the product
        raise DomainError(f"(a + b + M)/2 = {hi} must stay below r = {ctx.r}")
    return (bracket_range(lo, hi, ctx) / qbinomial(m, k, ctx)
            / cmath.sqrt(bracket(a, ctx) * bracket(b, ctx)))


def crossing_factor(a, b, c, d, ctx):
    """(b, c)_2 g_a g_c / ((a, d)_2 g_b g_d)."""
    return (pairing(b, c, 2, ctx) * g_height(a, ctx) * g_height(c, ctx)
            / (pairing(a, d, 2, ctx) * g_height(b, ctx) * g_height(d, ctx)))


# --- identities ------------------------------------------------------------

def _steps(level):
    return (1, -1) if level == 1 else (2, 0, -2)


def _weight(level):
    return w_face if level == 1 else w22


def initial_residual(ctx, heights=range(1, 6)):
    """max |W(a b; d c | 0) - delta_{b,d}| over admissible level-1 squares."""
    worst = 0.0
    for a in heights:
        for b in (a - 1, a + 1):
            for d in (a - 1, a + 1):
                for c in (b - 1, b + 1):
                    if abs(d - c) != 1:
                        continue
                    worst = max(worst, abs(w_face(a, b, d, c, 0j, ctx) - (b == d)))
    return worst


def w21_squares(heights=range(1, 6)):
    """Extended-admissible squares for W21 with every corner in ``heights``."""
    hs = set(heights)
    out = []
    for a in sorted(hs):
        for b in (a - 2, a, a + 2):
            for d in (a - 1, a + 1):
                for c in (d - 2, d, d + 2):
                    if abs(b - c) == 1 and {b, c, d} <= hs:
                        out.append((a, b, d, c))
    return out


def w21_vanishing(ctx, squares=None, u_ref=0.37):
    """max |W21(. | -1)| relative to max |W21(. | u_ref)| over ``squares``."""
    squares = w21_squares() if squares is None else squares
    scale = max(abs(w21(*sq, complex(u_ref), ctx)) for sq in squares)
    return max(abs(w21(*sq, -1 + 0j, ctx)) for sq in squares) / max(scale, 1.0)


def choice_residual(config, u, ctx):
    """W21 with both a' (``config`` = 4 heights, a == b) or W22 with both b' (b == c).

    The config tuple is (level, a, b, d, c) with level 21 or 22.
    """
    level, a, b, d, c = config
    u = complex(u)
    if level == 21:
        x, y = (w21(a, b, d, c, u, ctx, aprime=h) for h in _middle(a, b))
    else:
        x, y = (w22(a, b, d, c, u, ctx, bprime=h) for h in _middle(b, c))
    return abs(x - y) / max(1.0, abs(x), abs(y))


def unitarity22_residual(a, c, u, ctx):
    """sum_s W22(a s; d c | -u) W22(a b; s c | u) = delta_{b,d}, all b, d at once."""
    u = complex(u)
    mids = [h for h in (a - 2, a, a + 2) if h - c in (2, 0, -2)]
    m = np.array([[sum(w22(a, s, d, c, -u, ctx) * w22(a, b, s, c, u, ctx) for s in mids)
                   for b in mids] for d in mids])
    return residual(m, np.eye(len(mids)))


def crossing22_face_residual(a, b, c, d, u, ctx):
    """W22(d c; a b | u) = (b,c)_2 g_a g_c / ((a,d)_2 g_b g_d) W22(a d; b c | -1-u)."""
    u = complex(u)
    lhs = w22(d, c, a, b, u, ctx)
    rhs = crossing_factor(a, b, c, d, ctx) * w22(a, d, b, c, -1 - u, ctx)
    return residual(lhs, rhs)


def ybe_residual(heights, s, t, ctx, level=22):
    """Face YBE at fixed outer heights (h0, h1, h2, h3, k1, k2).

    Paths h0-h1-h2-h3 and h0-k1-k2-h3 bound a hexagon; the single internal
    height g is summed on both sides:

        sum_g W(h0 h1; g h2 | s) W(g h2; k2 h3 | s+t) W(h0 g; k1 k2 | t)
      = sum_g W(h1 h2; g h3 | t) W(h0 h1; k1 g | s+t) W(k1 g; k2 h3 | s)
    """
    h0, h1, h2, h3, k1, k2 = heights
    w = _weight(level)
    s, t = complex(s), complex(t)
    steps = _steps(level)
    lg = [h0 + x for x in steps]
    rg = [h1 + x for x in steps]
    lhs = sum(w(h0, h1, g, h2, s, ctx) * w(g, h2, k2, h3, s + t, ctx) * w(h0, g, k1, k2, t, ctx)
              for g in lg)
    rhs = sum(w(h1, h2, g, h3, t, ctx) * w(h0, h1, k1, g, s + t, ctx) * w(k1, g, k2, h3, s, ctx)
              for g in rg)
    return residual(lhs, rhs)


def boundaries(level, center=3, heights=range(1, 6)):
    """All outer hexagon heights (h0 = center) with every step admissible."""
    steps = _steps(level)
    hs = set(heights)
    out = []
    for h1 in (center + x for x in steps):
        for h2 in (h1 + x for x in steps):
            for h3 in (h2 + x for x in steps):
                for k1 in (center + x for x in steps):
                    for k2 in (k1 + x for x in steps):
                        if k2 - h3 in steps and {h1, h2, h3, k1, k2} <= hs:
                            out.append((center, h1, h2, h3, k1, k2))
    return out
