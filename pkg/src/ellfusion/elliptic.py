"""Theta functions, Jacobi elliptic functions, q-products and the bracket [u].

Conventions
-----------
``theta(1, u, tau)`` is the odd theta function with period 1 in ``u``::

    theta_1(u|tau) = 2 p^(1/8) (p; p)_inf sin(pi u)
                     * prod_{n>=1} (1 - 2 p^n cos(2 pi u) + p^(2n)),   p = exp(2 pi i tau)

and the other three are obtained by half-period shifts::

    theta_0(u) = -i exp(pi i (u + tau/4)) theta_1(u + tau/2)
    theta_2(u) = theta_1(u + 1/2)
    theta_3(u) = exp(pi i (u + tau/4)) theta_1(u + (tau + 1)/2)

so ``theta_0`` is what most references call theta_4.  All evaluation is in
double precision with a fixed product truncation ``cutoff``.
"""

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import ArgumentError, DomainError, PoleError

DEFAULT_CUTOFF = 32
DEFAULT_TOL = 1e-9
# relative size below which a denominator counts as a zero
POLE_RTOL = 1e-12
_ADAPTIVE_STOP = 1e-18
_ADAPTIVE_MAX = 10_000


def nome(tau_m):
    """exp(2 pi i tau_m), computed from the exponent."""
    return cmath.exp(2j * cmath.pi * tau_m)


def _check_tau(tau_m):
    if complex(tau_m).imag <= 0:
        raise DomainError(f"modular parameter {tau_m!r} must have positive imaginary part")


def _check_cutoff(cutoff):
    if int(cutoff) != cutoff or cutoff < 1:
        raise ArgumentError(f"cutoff must be a positive integer, got {cutoff!r}")


@lru_cache(maxsize=1 << 16)
def _theta1_over_sin(u, tau_m, cutoff, adaptive):
    p = nome(tau_m)
    c2 = cmath.cos(2 * cmath.pi * u)
    acc = 2 * cmath.exp(1j * cmath.pi * tau_m / 4)
    pn = 1.0 + 0j
    n_max = _ADAPTIVE_MAX if adaptive else cutoff
    for _ in range(n_max):
        pn *= p
        factor = (1 - pn) * (1 - 2 * pn * c2 + pn * pn)
        acc *= factor
        if adaptive and abs(factor - 1) < _ADAPTIVE_STOP:
            break
    return acc


def _theta1(u, tau_m, cutoff, adaptive):
    return cmath.sin(cmath.pi * u) * _theta1_over_sin(u, tau_m, cutoff, adaptive)


def theta1_over_sin(u, tau_m, cutoff=DEFAULT_CUTOFF):
    """theta_1(u|tau_m) / sin(pi u): the product part, regular at u = 0."""
    _check_tau(tau_m)
    _check_cutoff(cutoff)
    return _theta1_over_sin(complex(u), complex(tau_m), int(cutoff), False)


def theta(k, u, tau_m, cutoff=DEFAULT_CUTOFF, adaptive=False):
    """Evaluate theta_k(u | tau_m) for k in {0, 1, 2, 3}.

    ``adaptive=True`` ignores ``cutoff`` and multiplies product factors until
    one differs from 1 by less than 1e-18.
    """
    _check_tau(tau_m)
    _check_cutoff(cutoff)
    u = complex(u)
    tau_m = complex(tau_m)
    cutoff = int(cutoff)
    if k == 1:
        return _theta1(u, tau_m, cutoff, adaptive)
    if k == 2:
        return _theta1(u + 0.5, tau_m, cutoff, adaptive)
    if k == 0:
        phase = cmath.exp(1j * cmath.pi * (u + tau_m / 4))
        return -1j * phase * _theta1(u + tau_m / 2, tau_m, cutoff, adaptive)
    if k == 3:
        phase = cmath.exp(1j * cmath.pi * (u + tau_m / 4))
        return phase * _theta1(u + (tau_m + 1) / 2, tau_m, cutoff, adaptive)
    raise ArgumentError(f"theta index must be 0, 1, 2 or 3, got {k!r}")


def qpochhammer(a, q, cutoff=DEFAULT_CUTOFF):
    """Truncated (a; q)_inf = prod_{m < cutoff} (1 - a q^m)."""
    if abs(q) >= 1:
        raise DomainError(f"base {q!r} must satisfy |q| < 1")
    _check_cutoff(cutoff)
    powers = complex(q) ** np.arange(int(cutoff))
    return complex(np.prod(1 - complex(a) * powers))


def triple_product(a, q1, q2, cutoff=DEFAULT_CUTOFF, skip_origin=False):
    """Truncated double-base product (a; q1, q2)_inf over 0 <= m, n < cutoff.

    ``skip_origin`` leaves out the (m, n) = (0, 0) factor 1 - a.
    """
    if abs(q1) >= 1 or abs(q2) >= 1:
        raise DomainError(f"bases ({q1!r}, {q2!r}) must both lie in the unit disc")
    _check_cutoff(cutoff)
    idx = np.arange(int(cutoff))
    factors = 1 - complex(a) * np.outer(complex(q1) ** idx, complex(q2) ** idx)
    if skip_origin:
        factors[0, 0] = 1
    return complex(np.prod(factors))


def big_theta(z, q, cutoff=DEFAULT_CUTOFF):
    """Theta_q(z) = (z; q)_inf (q/z; q)_inf (q; q)_inf."""
    return (qpochhammer(z, q, cutoff) * qpochhammer(q / z, q, cutoff)
            * qpochhammer(q, q, cutoff))


@dataclass(frozen=True)
class EllipticContext:
    """Parameter bundle (r, tau) plus truncation order and tolerance.

    Everything downstream takes a context; derived quantities are computed
    once on first access.
    """

    r: float = 6.0
    tau: complex = 1.2j
    cutoff: int = DEFAULT_CUTOFF
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not (isinstance(self.r, (int, float)) and math.isfinite(self.r)) or self.r <= 2:
            raise DomainError(f"r must be a real number > 2, got {self.r!r}")
        object.__setattr__(self, "tau", complex(self.tau))
        _check_tau(self.tau)
        _check_cutoff(self.cutoff)
        if not self.tol > 0:
            raise ArgumentError(f"tol must be positive, got {self.tol!r}")
        if abs(nome(self.tau)) >= 1 or abs(self.p) >= 1:
            raise DomainError("nomes must lie inside the unit disc")
        rel = abs(self.power_x(2 * self.r) - self.p) / abs(self.p)
        if rel > 10 * np.finfo(float).eps:
            raise DomainError(f"x^(2r) and p disagree (relative {rel:.3e})")

    @cached_property
    def log_x(self):
        return -1j * cmath.pi / (self.r * self.tau)

    @cached_property
    def x(self):
        return cmath.exp(self.log_x)

    @cached_property
    def p(self):
        return cmath.exp(-2j * cmath.pi / self.tau)

    @cached_property
    def tau_half(self):
        return self.tau / 2

    @cached_property
    def C(self):
        return (cmath.exp(-self.r / 4 * self.log_x) * cmath.exp(-1j * cmath.pi / 4)
                * cmath.sqrt(self.tau))

    def power_x(self, e):
        """x**e through the fixed branch log x = -i pi / (r tau)."""
        return cmath.exp(e * self.log_x)

    def th(self, k, u):
        """theta_k(u | tau) with this context's cutoff."""
        return theta(k, u, self.tau, self.cutoff)

    def thh(self, k, u):
        """theta_k(u | tau/2) with this context's cutoff."""
        return theta(k, u, self.tau_half, self.cutoff)


def check_pole(value, scale, what, argument=None):
    """Raise PoleError when ``value`` is negligible relative to ``scale``."""
    if abs(value) <= POLE_RTOL * max(abs(scale), 1e-300):
        raise PoleError(f"{what} vanishes at {argument!r}", argument)
    return value


def jacobi(kind, u, ctx):
    """sn, cn or dn of lambda*u written as theta ratios at argument u/r."""
    v = complex(u) / ctx.r
    den0 = check_pole(ctx.th(0, v), ctx.th(0, 0), "theta_0(u/r)", u)
    if kind == "sn":
        return ctx.th(3, 0) * ctx.th(1, v) / (ctx.th(2, 0) * den0)
    if kind == "cn":
        return ctx.th(0, 0) * ctx.th(2, v) / (ctx.th(2, 0) * den0)
    if kind == "dn":
        return ctx.th(0, 0) * ctx.th(3, v) / (ctx.th(3, 0) * den0)
    raise ArgumentError(f"unknown Jacobi function {kind!r}")


def bracket(u, ctx):
    """[u] = C theta_1(u/r | tau)."""
    return ctx.C * ctx.th(1, complex(u) / ctx.r)


def bracket_product(u, ctx):
    """[u] through the product form x^(u^2/r - u) Theta_{x^{2r}}(x^{2u})."""
    u = complex(u)
    return (ctx.power_x(u * u / ctx.r - u)
            * big_theta(ctx.power_x(2 * u), ctx.p, ctx.cutoff))
