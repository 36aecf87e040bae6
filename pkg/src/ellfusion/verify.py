"""Identity catalogue, suite runner and report writers for the CLI."""

import json
import sys
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import face, fusion, intertwiners, vertex
from .elliptic import DEFAULT_CUTOFF, EllipticContext, bracket, bracket_product, theta
from .errors import ArgumentError, DomainError, PoleError
from .sampling import Guards, point_stream

# thresholds are multiples of the base tolerance (1e-9 by default)
SINGLE = 1.0
PRODUCT = 10.0
CHOICE = 0.1
EXCLUSION_WARNING = 0.10

# a generic probe used only to drop height configurations that sit on a pole
_PROBE = (0.37 + 0.013j, 0.11 - 0.021j)


@dataclass(frozen=True)
class SuiteConfig:
    r: float = 6.0
    tau_im: float = 1.2
    cutoff: int = DEFAULT_CUTOFF
    tol: float = 1e-9
    points: int = 25
    seed: int = 42
    suites: tuple = ()
    json_path: str = None
    stable: bool = False

    def __post_init__(self):
        if not self.tau_im > 0:
            raise ArgumentError(f"tau_im must be positive, got {self.tau_im}")
        if not self.r > 2:
            raise ArgumentError(f"r must exceed 2, got {self.r}")
        if self.points < 1:
            raise ArgumentError(f"points must be at least 1, got {self.points}")
        if not 0 <= self.seed < 2 ** 64:
            raise ArgumentError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ArgumentError(f"unknown suite(s): {', '.join(unknown)}")

    def context(self):
        return EllipticContext(r=self.r, tau=1j * self.tau_im, cutoff=self.cutoff, tol=self.tol)


@dataclass
class IdentityReport:
    identity: str
    index: int
    params: dict
    residual: float = None
    threshold: float = 0.0
    passed: bool = None
    ms: float = None
    excluded: bool = False
    note: str = ""

    @property
    def status(self):
        if self.excluded:
            return "excluded"
        return "pass" if self.passed else "FAIL"


@dataclass(frozen=True)
class Identity:
    name: str
    suite: str
    check: object
    scale: float = SINGLE
    takes: str = "u"            # "u", "uv" or "none"
    cap: int = None             # at most this many points
    fixed_threshold: float = None
    doc: str = ""


@dataclass
class _Worst:
    value: float = 0.0
    params: dict = field(default_factory=dict)

    def add(self, value, **params):
        if value >= self.value or not self.params:
            self.value, self.params = float(value), params


# --- height configurations -------------------------------------------------

@lru_cache(maxsize=None)
def _regular(name, ctx):
    """Height configurations for ``name`` that are pole-free at the probe point."""
    configs, probe = _CONFIGS[name]
    out = []
    for cfg in configs(ctx):
        try:
            probe(cfg, *_PROBE, ctx)
        except (PoleError, DomainError):
            continue
        out.append(cfg)
    return tuple(out)


def _in_range(ctx):
    return range(1, int(np.ceil(ctx.r)))


def _face_choice_configs(ctx):
    hs = set(_in_range(ctx))
    out = [(21,) + sq for sq in face.w21_squares(hs) if sq[0] == sq[1]]
    for a in sorted(hs):
        for b in (a - 2, a, a + 2):
            for d in (a - 2, a, a + 2):
                if {b, d} <= hs and b - d in (2, 0, -2):
                    out.append((22, a, b, d, b))
    return out


def _crossing_configs(ctx):
    hs = sorted(_in_range(ctx))
    out = []
    for a in hs:
        for b in (a - 2, a, a + 2):
            for d in (a - 2, a, a + 2):
                for c in (b - 2, b, b + 2):
                    if {b, c, d} <= set(hs) and c - d in (2, 0, -2):
                        out.append((a, b, c, d))
    return out


def _duality_configs(ctx):
    hs = list(_in_range(ctx))
    return [(a, b) for a in hs for b in (a - 2, a, a + 2) if b in hs]


def _intertwiner_pairs(ctx):
    return _duality_configs(ctx)


_CONFIGS = {
    "face.choice": (_face_choice_configs,
                    lambda cfg, u, v, ctx: face.choice_residual(cfg, u, ctx)),
    "face.unitarity22": (lambda ctx: [(3, c) for c in (1, 3, 5)],
                         lambda cfg, u, v, ctx: face.unitarity22_residual(*cfg, u, ctx)),
    "face.crossing22": (_crossing_configs,
                        lambda cfg, u, v, ctx: face.crossing22_face_residual(*cfg, u, ctx)),
    "face.ybe1": (lambda ctx: face.boundaries(1, 3, _in_range(ctx)),
                  lambda cfg, u, v, ctx: face.ybe_residual(cfg, u - v, v, ctx, 1)),
    "face.ybe22": (lambda ctx: face.boundaries(22, 3, _in_range(ctx)),
                   lambda cfg, u, v, ctx: face.ybe_residual(cfg, u - v, v, ctx, 22)),
    "intertwiners.inversion": (lambda ctx: list(_in_range(ctx))[1:-1],
                               lambda b, u, v, ctx: intertwiners.inversion_residual(u, b, ctx)),
    "intertwiners.inversion-fused": (
        lambda ctx: list(_in_range(ctx)),
        lambda b, u, v, ctx: intertwiners.inversion_residual(u, b, ctx, fused=True)),
    "intertwiners.psi2-closed-form": (
        _intertwiner_pairs,
        lambda cfg, u, v, ctx: intertwiners.closed_form_residual(u, *cfg, ctx)),
    "intertwiners.dual-closed-form": (
        _intertwiner_pairs,
        lambda cfg, u, v, ctx: intertwiners.closed_form_residual(u, *cfg, ctx, dual=True)),
    "intertwiners.choice": (_intertwiner_pairs,
                            lambda cfg, u, v, ctx: intertwiners.choice_residual(u, *cfg, ctx)),
    "intertwiners.symmetric-dual": (
        _intertwiner_pairs,
        lambda cfg, u, v, ctx: intertwiners.symmetric_dual_residual(u, *cfg, ctx)),
    "duality.q-shift": (_duality_configs,
                        lambda cfg, u, v, ctx: intertwiners.dual_shift_residual(u, *cfg, ctx)),
}

for _kind in intertwiners.VERTEX_FACE_KINDS:
    _CONFIGS[f"vertex-face.{_kind}"] = (
        (lambda k: lambda ctx: intertwiners.vertex_face_configs(k, 3, _in_range(ctx)))(_kind),
        (lambda k: lambda cfg, u, v, ctx: intertwiners.vertex_face_residual(k, u, v, *cfg, ctx))(_kind),
    )

_HEIGHT_NAMES = {
    "face.choice": ("level", "a", "b", "d", "c"),
    "face.unitarity22": ("a", "c"),
    "face.crossing22": ("a", "b", "c", "d"),
    "face.ybe1": ("h0", "h1", "h2", "h3", "k1", "k2"),
    "face.ybe22": ("h0", "h1", "h2", "h3", "k1", "k2"),
    "intertwiners.inversion": ("b",),
    "intertwiners.inversion-fused": ("b",),
    "duality.q-shift": ("a", "b"),
}


def _heights(name, cfg):
    if not isinstance(cfg, tuple):
        cfg = (cfg,)
    names = _HEIGHT_NAMES.get(name, ("a", "b", "c"))
    return {k: int(h) for k, h in zip(names, cfg)}


def _over_configs(name, evaluate=None):
    """Worst residual over all regular height configurations of ``name``."""
    def check(ctx, u, v, index):
        worst = _Worst()
        configs = _regular(name, ctx)
        if not configs:
            raise DomainError(f"{name}: no pole-free height configuration")
        fn = evaluate or _CONFIGS[name][1]
        for cfg in configs:
            worst.add(fn(cfg, u, v, ctx), **_heights(name, cfg))
        worst.params["configs"] = len(configs)
        return worst.value, worst.params
    return check


def _cycled(name):
    """One height configuration per point, cycling through the regular ones."""
    def check(ctx, u, v, index):
        configs = _regular(name, ctx)
        if not configs:
            raise DomainError(f"{name}: no pole-free height configuration")
        cfg = configs[index % len(configs)]
        return _CONFIGS[name][1](cfg, u, v, ctx), _heights(name, cfg)
    return check


@lru_cache(maxsize=None)
def orientation(kind, ctx):
    """Whether the correspondence ``kind`` holds with the R-matrix contracted by rows.

    Both orientations are tried at the probe point over the regular
    configurations; the one with the smaller residual is returned.
    """
    configs = _regular(f"vertex-face.{kind}", ctx)
    res = {}
    for transpose in (False, True):
        res[transpose] = max(intertwiners.vertex_face_residual(kind, *_PROBE, *cfg, ctx, transpose)
                             for cfg in configs)
    return res[True] < res[False]


def _vertex_face(kind):
    name = f"vertex-face.{kind}"

    def check(ctx, u, v, index):
        t = orientation(kind, ctx)
        value, params = _over_configs(
            name, lambda cfg, uu, vv, c: intertwiners.vertex_face_residual(kind, uu, vv, *cfg, c, t)
        )(ctx, u, v, index)
        params["transpose"] = int(t)
        return value, params
    return check


# --- single-point identities -------------------------------------------------

def _u(fn):
    return lambda ctx, u, v, index: (fn(u, ctx), {})


def _uv(fn):
    return lambda ctx, u, v, index: (fn(u, v, ctx), {})


def _theta_quasi(ctx, u, v, index):
    w = u / ctx.r
    a = theta(1, w + 1, ctx.tau, ctx.cutoff)
    b = -theta(1, w, ctx.tau, ctx.cutoff)
    return abs(a - b) / max(abs(a), abs(b)), {}


def _theta_duplication(ctx, u, v, index):
    w = u / (2 * ctx.r)
    lhs = ctx.thh(1, w) * ctx.thh(2, w)
    rhs = ctx.th(0, 0) * ctx.th(1, u / ctx.r)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs)), {}


def _bracket_two_form(ctx, u, v, index):
    a, b = bracket_product(u, ctx), bracket(u, ctx)
    return abs(a - b) / max(abs(a), abs(b)), {}


def _vertex_initial(ctx, u, v, index):
    return vertex.initial_residual(ctx)[0], {}


def _vertex_limit(ctx, u, v, index):
    return vertex.initial_residual(ctx)[1], {}


def _gauge_all_signs(u, ctx):
    return max(fusion.gauge_residual(u, ctx, s) for s in ((1, 1), (1, -1), (-1, 1), (-1, -1)))


def _face_initial(ctx, u, v, index):
    return face.initial_residual(ctx, _in_range(ctx)), {}


def _w21_vanishing(ctx, u, v, index):
    return face.w21_vanishing(ctx, face.w21_squares(_in_range(ctx))), {}


def _q_matrix(ctx, u, v, index):
    return fusion.q_residual(ctx), {}


def _q_half_middle(ctx, u, v, index):
    return fusion.q_residual(ctx, half_middle=True), {}


def _crossing22_half_middle_q(ctx, u, v, index):
    return fusion.crossing22_residual(u, ctx, q=fusion.q_half_middle(ctx)), {}


CATALOGUE = (
    Identity("theta.quasi-periodicity", "theta-core", _theta_quasi, cap=20,
             doc="theta_1(w+1) = -theta_1(w)"),
    Identity("theta.duplication", "theta-core", _theta_duplication, cap=20,
             doc="theta_1 theta_2 at (u/2r | tau/2) = theta_0(0) theta_1(u/r)"),
    Identity("theta.bracket-two-form", "theta-core", _bracket_two_form, cap=20,
             doc="x^(u^2/r-u) Theta_{x^2r}(x^2u) = C theta_1(u/r)"),
    Identity("vertex.unitarity", "vertex", _u(vertex.unitarity_residual),
             doc="R(u) P R(-u) P = id"),
    Identity("vertex.crossing", "vertex", _u(vertex.crossing_residual),
             doc="R(-u-1) = -(sy x 1)^-1 (P R(u) P)^t1 (sy x 1)"),
    Identity("vertex.initial", "vertex", _vertex_initial, takes="none", doc="R(0) = P"),
    Identity("vertex.limit", "vertex", _vertex_limit, takes="none", fixed_threshold=1e-4,
             doc="R(-1 + 1e-6) ~ P - id"),
    Identity("vertex.ybe", "vertex", _uv(vertex.ybe_residual), PRODUCT, "uv", cap=10,
             doc="Yang-Baxter equation on V x V x V"),
    Identity("vertex.symmetry", "vertex", _u(vertex.symmetry_residual), doc="R = R^t"),
    Identity("fusion.r21-closed-form", "fusion",
             _u(lambda u, ctx: fusion.closed_form_residual(u, ctx, 21)),
             doc="R^(2,1): fusion product vs closed form"),
    Identity("fusion.r21-prefactor", "fusion", _u(fusion.prefactor21_residual),
             doc="R_0(u+1) R_0(u) = -[u+1]/[u]"),
    Identity("fusion.r21-split", "fusion", _u(fusion.split21_residual), CHOICE,
             doc="weight-0 component sum is split independent"),
    Identity("fusion.absorption", "fusion", _u(fusion.absorption_residual),
             doc="Pi R13(u+1) R23(u) Pi = Pi R13(u+1) R23(u)"),
    Identity("fusion.r22-closed-form", "fusion",
             _u(lambda u, ctx: fusion.closed_form_residual(u, ctx, 22)),
             doc="R^(2,2): fusion product vs closed form"),
    Identity("fusion.r22-invariance", "fusion", _u(fusion.invariance22_residual),
             doc="P-invariance and Z2 symmetry of R^(2,2)"),
    Identity("fusion.ybe22", "fusion", _uv(fusion.ybe22_residual), PRODUCT, "uv", cap=10,
             doc="Yang-Baxter equation on V2 x V2 x V2"),
    Identity("gauge.equivalence", "gauge", _u(_gauge_all_signs),
             doc="R_F = (U x U) R^(2,2) (U x U)^-1, all four root signs"),
    Identity("gauge.q-matrix", "gauge", _q_matrix, 1e-3, "none",
             doc="U^t U against the closed form of Q (x^2 in the middle)"),
    Identity("gauge.crossing22", "gauge", _u(fusion.crossing22_residual), PRODUCT,
             doc="R^(2,2)(-u-1) = (Q^-1 x 1)(P2 R^(2,2)(u) P2)^t1 (Q x 1)"),
    Identity("gauge.fateev-symmetry", "gauge", _u(fusion.fateev_symmetry_residual),
             doc="T- and P-invariance and crossing of R_F"),
    Identity("ftilde.reflection", "ftilde", _u(fusion.ftilde_reflection_residual),
             doc="F(u) = F(-u-1)"),
    Identity("ftilde.inversion", "ftilde", _u(fusion.ftilde_inversion_residual),
             doc="F(u) F(-u) = sn^2 u / (sn^2 u - sn^2 2)"),
    Identity("face.initial", "face", _face_initial, takes="none", doc="W(a b; d c | 0) = delta_bd"),
    Identity("face.w21-vanishing", "face", _w21_vanishing, takes="none",
             doc="W21(. | -1) = 0, heights in range"),
    Identity("face.choice", "face", _over_configs("face.choice"), CHOICE,
             doc="a' in W21 and b' in W22 are immaterial"),
    Identity("face.unitarity22", "face", _over_configs("face.unitarity22"), PRODUCT,
             doc="sum_s W22(a s; d c | -u) W22(a b; s c | u) = delta_bd"),
    Identity("face.crossing22", "face", _over_configs("face.crossing22"), PRODUCT,
             doc="W22 crossing with (b,c)_2 g_a g_c / ((a,d)_2 g_b g_d)"),
    Identity("face.ybe1", "face", _over_configs("face.ybe1"), PRODUCT, "uv", cap=5,
             doc="face YBE for W, boundaries around height 3"),
    Identity("face.ybe22", "face", _over_configs("face.ybe22"), PRODUCT, "uv", cap=5,
             doc="face YBE for W22, boundaries around height 3"),
    Identity("vertex-face.level1", "vertex-face", _vertex_face("level1"), PRODUCT, "uv", cap=10,
             doc="R psi psi = sum W psi psi"),
    Identity("vertex-face.dual", "vertex-face", _vertex_face("dual"), PRODUCT, "uv", cap=10,
             doc="R psi* psi* = sum psi* psi* W(c b'; b a)"),
    Identity("vertex-face.fused", "vertex-face", _vertex_face("fused"), PRODUCT, "uv", cap=10,
             doc="R^(2,2) psi2 psi2 = sum W22 psi2 psi2"),
    Identity("vertex-face.fused-dual", "vertex-face", _vertex_face("fused-dual"), PRODUCT, "uv",
             cap=10, doc="R^(2,2) psi2* psi2* = sum psi2* psi2* W22(c b'; b a)"),
    Identity("intertwiners.inversion", "intertwiners", _over_configs("intertwiners.inversion"),
             doc="level-1 inversion relations"),
    Identity("intertwiners.inversion-fused", "intertwiners",
             _over_configs("intertwiners.inversion-fused"), doc="fused inversion relations"),
    Identity("intertwiners.psi2-closed-form", "intertwiners",
             _over_configs("intertwiners.psi2-closed-form"),
             doc="psi^(2): fusion vs closed form"),
    Identity("intertwiners.dual-closed-form", "intertwiners",
             _over_configs("intertwiners.dual-closed-form"),
             doc="psi*^(2): fusion vs closed form"),
    Identity("intertwiners.choice", "intertwiners", _over_configs("intertwiners.choice"), CHOICE,
             doc="c in psi^(2) and the spin split in psi*^(2) are immaterial"),
    Identity("intertwiners.symmetric-dual", "intertwiners",
             _over_configs("intertwiners.symmetric-dual"), 0.1,
             doc="Pi psi*^(2) = psi*^(2) Pi"),
    Identity("duality.q-shift", "duality", _cycled("duality.q-shift"), PRODUCT,
             doc="psi*^(2)(u) in terms of Q psi^(2)(u-1)"),
    # sign and factor variants that contradict the rest; expected to fail, not run by default
    Identity("variants.unitarity-same-sign", "variants",
             _u(lambda u, ctx: vertex.unitarity_residual(u, ctx, variant=True)),
             doc="R(u) P R(u) P = id"),
    Identity("variants.crossing-no-sign", "variants",
             _u(lambda u, ctx: vertex.crossing_residual(u, ctx, variant=True)),
             doc="R(-u-1) = (sy x 1)^-1 (P R(u) P)^t1 (sy x 1)"),
    Identity("variants.q-half-middle", "variants", _q_half_middle, 1e-3, "none",
             doc="U^t U against Q with 1/2 x^2 in the middle"),
    Identity("variants.crossing22-half-middle-q", "variants", _crossing22_half_middle_q, PRODUCT,
             doc="R^(2,2) crossing using Q with x^2/2 in the middle"),
)

SUITES = tuple(dict.fromkeys(i.suite for i in CATALOGUE))
DEFAULT_SUITES = tuple(s for s in SUITES if s != "variants")
_BY_NAME = {i.name: i for i in CATALOGUE}


def identity_names(suites=None):
    suites = DEFAULT_SUITES if not suites else suites
    return sorted(i.name for i in CATALOGUE if i.suite in suites)


def _threshold(ident, tol):
    if ident.fixed_threshold is not None:
        return ident.fixed_threshold
    return ident.scale * tol


def _run_identity(ident, config, ctx):
    n = 1 if ident.takes == "none" else min(config.points, ident.cap or config.points)
    stream = point_stream(config.seed, Guards(r=ctx.r, tau=ctx.tau))
    threshold = _threshold(ident, config.tol)
    reports = []
    index = 0
    attempts = 0
    while index < n:
        u, v = next(stream)
        attempts += 1
        if ident.takes == "none":
            params = {}
        elif ident.takes == "u":
            params = {"u": u}
        else:
            params = {"u": u, "v": v}
        start = time.perf_counter()
        try:
            value, extra = ident.check(ctx, u, v, index)
        except (PoleError, DomainError) as exc:
            reports.append(IdentityReport(ident.name, index, params, threshold=threshold,
                                          excluded=True, note=str(exc)))
            if attempts > 10 * n + 10:
                break
            continue
        ms = (time.perf_counter() - start) * 1e3
        params.update(extra)
        reports.append(IdentityReport(ident.name, index, params, float(value), threshold,
                                      bool(value < threshold), ms))
        index += 1
    return reports


def run_suite(config):
    """Evaluate every identity of the selected suites; reports sorted by identity and point."""
    ctx = config.context()
    reports = []
    for name in identity_names(config.suites):
        reports.extend(_run_identity(_BY_NAME[name], config, ctx))
    # excluded draws sort after the accepted report with the same index
    reports.sort(key=lambda r: (r.identity, r.index, not r.excluded))
    return reports


def exclusion_fraction(reports):
    if not reports:
        return 0.0
    return sum(r.excluded for r in reports) / len(reports)


def exit_code(reports):
    return 0 if all(r.passed for r in reports if not r.excluded) else 1


def _encode(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def report_dicts(reports, stable=False):
    out = []
    for r in reports:
        out.append({
            "identity": r.identity,
            "params": {k: _encode(v) for k, v in r.params.items()},
            "residual": r.residual,
            "threshold": r.threshold,
            "pass": None if r.excluded else r.passed,
            "ms": None if (stable or r.ms is None) else round(r.ms, 3),
        })
    return out


def _fmt_params(params):
    parts = []
    for k, v in params.items():
        if isinstance(v, complex):
            parts.append(f"{k}={v.real:.4f}{v.imag:+.4f}i")
        else:
            parts.append(f"{k}={v}")
    return " ".join(parts)


def format_text(reports):
    rows = [("identity", "point", "params", "residual", "threshold", "status")]
    for r in reports:
        res = "-" if r.residual is None else f"{r.residual:.15e}"
        rows.append((r.identity, str(r.index), _fmt_params(r.params), res,
                     f"{r.threshold:.1e}", r.status))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    total = sum(not r.excluded for r in reports)
    failed = sum(not r.excluded and not r.passed for r in reports)
    lines.append(f"{total - failed}/{total} passed, {sum(r.excluded for r in reports)} excluded")
    if exclusion_fraction(reports) > EXCLUSION_WARNING:
        lines.append("warning: more than 10% of sampled points were excluded; "
                     "check r, tau and the sampling window")
    return "\n".join(lines) + "\n"


def emit_report(reports, fmt="text", path=None, stable=False):
    """Write reports as an aligned table or as a json array; ``path=None`` means stdout."""
    if fmt == "json":
        text = json.dumps(report_dicts(reports, stable), indent=1) + "\n"
        if not reports:
            text = "[]\n"
    elif fmt == "text":
        text = format_text(reports)
    else:
        raise ArgumentError(f"format must be 'text' or 'json', got {fmt!r}")
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
