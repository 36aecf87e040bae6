"""Acceptance criteria 1-12 at the default context (r = 6, tau = 1.2i, cutoff 32, seed 42).

Each test records a single PASS/FAIL line, printed in the terminal summary.
Criteria that quote a relation literally are checked literally; where the
literal relation is false the corrected relation is measured alongside and
reported on the same line, but the criterion itself stays failing.
"""

import json

import mpmath as mp
import numpy as np
import pytest
from conftest import ACCEPTANCE

import oracle
from ellfusion import cli, face, fusion, intertwiners as itw, vertex
from ellfusion.elliptic import EllipticContext, bracket, bracket_product, theta
from ellfusion.errors import DomainError, PoleError
from ellfusion.sampling import sample_points
from ellfusion.tensor import ID4, P, residual

CTX = EllipticContext()
PTS = sample_points(42, 25)
US = [u for u, _ in PTS]
PROBE = (0.37 + 0.013j, 0.11 - 0.021j)


def record(number, title, ok, detail):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def worst(values):
    return max(values)


def regular(configs, fn):
    """Configurations that avoid poles and [0], [r] factors at a generic probe point."""
    out = []
    for cfg in configs:
        try:
            fn(cfg, *PROBE)
        except (PoleError, DomainError):
            continue
        out.append(cfg)
    return out


def test_criterion_01_theta_oracle():
    points = [(0.3, 0.8j), (0.37 + 0.05j, 1.2j), (0.1, 0.2 + 0.6j), (-0.41 + 0.2j, 0.6j),
              (1.7 - 0.1j, 1.5j), (0.05, 1.2j), (0.5 + 0.1j, 0.9j), (2.3, 2.0j),
              (-0.77 - 0.03j, 1.1j), (0.91 + 0.3j, 0.7 + 0.4j)]
    rel = 0.0
    with mp.workdps(oracle.DPS):
        for u, tau in points:
            for k in range(4):
                exact = oracle.theta_series(k, u, tau)
                rel = max(rel, float(abs(theta(k, u, tau) - exact) / abs(exact)))
    two = worst(abs(bracket(u, CTX) - bracket_product(u, CTX)) / abs(bracket(u, CTX))
                for u, _ in points)
    ok = rel < 1e-12 and two < 1e-10
    record(1, "theta oracle", ok,
           f"max relative error {rel:.2e} (< 1e-12), bracket two-form {two:.2e} (< 1e-10)")
    assert ok


def test_criterion_02_vertex_relations():
    literal_u = worst(vertex.unitarity_residual(u, CTX, variant=True) for u in US)
    literal_c = worst(vertex.crossing_residual(u, CTX, variant=True) for u in US)
    fixed_u = worst(vertex.unitarity_residual(u, CTX) for u in US)
    fixed_c = worst(vertex.crossing_residual(u, CTX) for u in US)
    at0 = residual(vertex.baxter_r(0, CTX), P)
    lim = residual(vertex.baxter_r(-1 + 1e-6, CTX), P - ID4)
    ok = literal_u < 1e-9 and literal_c < 1e-9 and at0 < 1e-9 and lim < 1e-4
    record(2, "unitarity, crossing, R(0)=P, R(-1)=P-id", ok,
           f"literal R(u)PR(u)P=id {literal_u:.2e}, crossing without sign {literal_c:.2e}; "
           f"R(0)=P {at0:.2e}, R(-1+1e-6) vs P-id {lim:.2e}; "
           f"corrected R(u)PR(-u)P=id {fixed_u:.2e}, crossing with minus sign {fixed_c:.2e}")
    assert ok


def test_criterion_03_fusion_closed_forms():
    r21 = worst(fusion.closed_form_residual(u, CTX, which=21) for u in US)
    r22 = worst(fusion.closed_form_residual(u, CTX, which=22) for u in US)
    pref = worst(fusion.prefactor21_residual(u, CTX) for u in US)
    ok = r21 < 1e-9 and r22 < 1e-9 and pref < 1e-9
    record(3, "fused R closed forms", ok,
           f"R21 {r21:.2e}, R22 {r22:.2e}, R0(u+1)R0(u) = -[u+1]/[u] {pref:.2e} (all < 1e-9)")
    assert ok


def test_criterion_04_ybe():
    pairs = PTS[:10]
    r4 = worst(vertex.ybe_residual(u, v, CTX) for u, v in pairs)
    r9 = worst(fusion.ybe22_residual(u, v, CTX) for u, v in pairs)
    ok = r4 < 1e-8 and r9 < 1e-8
    record(4, "Yang-Baxter equations", ok, f"4x4 {r4:.2e}, fused 27x27 {r9:.2e} (< 1e-8)")
    assert ok


def test_criterion_05_gauge():
    signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    gauge = worst(fusion.gauge_residual(u, CTX, s) for u in US for s in signs)
    q_literal = fusion.q_residual(CTX, half_middle=True)
    q_fixed = fusion.q_residual(CTX)
    cross = worst(fusion.crossing22_residual(u, CTX) for u in US)
    cross_half = worst(fusion.crossing22_residual(u, CTX, q=fusion.q_half_middle(CTX))
                            for u in US)
    ok = gauge < 1e-9 and q_literal < 1e-12 and cross < 1e-8
    record(5, "gauge equivalence, Q, fused crossing", ok,
           f"gauge {gauge:.2e} (all four signs); Q with x^2/2 middle vs U^tU {q_literal:.2e} "
           f"(middle entry x^2/2 vs x^2); crossing with Q=U^tU {cross:.2e}, "
           f"with x^2/2 middle {cross_half:.2e}; closed Q with x^2 vs U^tU {q_fixed:.2e}")
    assert ok


def test_criterion_06_ftilde():
    refl = worst(fusion.ftilde_reflection_residual(u, CTX) for u in US)
    inv = worst(fusion.ftilde_inversion_residual(u, CTX) for u in US)
    ok = refl < 1e-9 and inv < 1e-9
    record(6, "F~ relations", ok, f"F(u)=F(-u-1) {refl:.2e}, F(u)F(-u) {inv:.2e} (< 1e-9)")
    assert ok


def test_criterion_07_face_layer():
    init = face.initial_residual(CTX)
    vanish = face.w21_vanishing(CTX)
    # choice independence: a', b', c and the (eps1, eps2) split
    hs = range(1, 6)
    sq21 = [(21, a, a, d, c) for a in hs for d in (a - 1, a + 1) for c in (a - 1, a + 1)
            if {d, c} <= set(hs)]
    sq22 = [(22, a, b, d, b) for b in hs for a in (b - 2, b, b + 2) for d in (b - 2, b, b + 2)
            if a - d in (2, 0, -2) and {a, d} <= set(hs)]
    squares = regular(sq21 + sq22, lambda cfg, u, v: face.choice_residual(cfg, u, CTX))
    choice_face = worst(face.choice_residual(cfg, u, CTX) for u in US for cfg in squares)
    choice_psi = worst(itw.choice_residual(u, a, b, CTX)
                       for u in US for a, b in [(3, 3), (3, 5), (3, 1), (2, 2), (4, 4)])
    choice = max(choice_face, choice_psi)
    unit_cfgs = regular([(a, c) for a in range(1, 6) for c in (a - 2, a, a + 2) if 0 < c < 6],
                        lambda cfg, u, v: face.unitarity22_residual(*cfg, u, CTX))
    unit = worst(face.unitarity22_residual(a, c, u, CTX) for u in US for a, c in unit_cfgs)
    cross_cfgs = regular([(a, b, c, d) for a in range(1, 6) for b in (a - 2, a, a + 2)
                          for d in (a - 2, a, a + 2) for c in (b - 2, b, b + 2)
                          if c - d in (2, 0, -2) and {b, c, d} <= set(range(1, 6))],
                         lambda cfg, u, v: face.crossing22_face_residual(*cfg, u, CTX))
    cross = worst(face.crossing22_face_residual(*cfg, u, CTX) for u in US for cfg in cross_cfgs)
    ybe_cfgs = regular(face.boundaries(22), lambda h, u, v: face.ybe_residual(h, u, v, CTX))
    ybe = worst(face.ybe_residual(h, u, v, CTX) for u, v in PTS[:5] for h in ybe_cfgs)
    ok = (init < 1e-9 and vanish < 1e-9 and choice < 1e-10 and unit < 1e-8 and cross < 1e-8
          and ybe < 1e-8)
    record(7, "face layer", ok,
           f"W(.|0)=delta {init:.2e}, W21(.|-1)=0 {vanish:.2e}, choice {choice:.2e} "
           f"({len(squares)} squares), "
           f"W22 unitarity {unit:.2e} ({len(unit_cfgs)} height pairs), crossing {cross:.2e} "
           f"({len(cross_cfgs)} squares), face YBE {ybe:.2e} ({len(ybe_cfgs)} boundaries)")
    assert ok


def test_criterion_08_vertex_face():
    parts = []
    total = 0.0
    for kind in itw.VERTEX_FACE_KINDS:
        transpose = kind == "fused-dual"
        cfgs = regular(itw.vertex_face_configs(kind),
                       lambda cfg, u, v: itw.vertex_face_residual(kind, u, v, *cfg, CTX, transpose))
        res = worst(itw.vertex_face_residual(kind, u, v, *cfg, CTX, transpose)
                    for u, v in PTS[:10] for cfg in cfgs)
        total = max(total, res)
        parts.append(f"{kind} {res:.2e} ({len(cfgs)} configs)")
    ok = total < 1e-8
    record(8, "vertex-face correspondences", ok, ", ".join(parts))
    assert ok


def test_criterion_09_inversion():
    lvl1 = worst(itw.inversion_residual(u, b, CTX) for u in US for b in range(1, 6))
    fused = worst(itw.inversion_residual(u, b, CTX, fused=True) for u in US for b in (2, 3, 4))
    ok = lvl1 < 1e-9 and fused < 1e-9
    record(9, "inversion relations", ok, f"level 1 {lvl1:.2e}, fused {fused:.2e} (< 1e-9)")
    assert ok


def test_criterion_10_intertwiner_closed_forms():
    blocks = {"b=a+2": [(1, 3), (2, 4), (3, 5)], "b=a": [(2, 2), (3, 3), (4, 4)],
              "b=a-2": [(3, 1), (4, 2), (5, 3)]}
    parts = []
    ok = True
    for label, pairs in blocks.items():
        good = regular(pairs, lambda ab, u, v: itw.closed_form_residual(u, *ab, CTX, dual=True))
        p4 = worst(itw.closed_form_residual(u, a, b, CTX) for u in US for a, b in good)
        p6 = worst(itw.closed_form_residual(u, a, b, CTX, dual=True) for u in US for a, b in good)
        ratio = worst(float(np.max(np.abs(itw.closed_form_ratio(u, a, b, CTX, dual=True) - 1)))
                      for u in US for a, b in good)
        ok = ok and p4 < 1e-9 and p6 < 1e-9
        parts.append(f"{label}: psi2 {p4:.2e}, dual {p6:.2e}, |ratio-1| {ratio:.1e}")
    record(10, "fused intertwiner closed forms", ok, "; ".join(parts))
    assert ok


def test_criterion_11_dual_shift():
    blocks = [(3, 5), (3, 3), (3, 1), (2, 4), (4, 2), (2, 2), (4, 4)]
    samples = [(u, *blocks[i % len(blocks)]) for i, u in enumerate(US)]
    res = worst(itw.dual_shift_residual(u, a, b, CTX) for u, a, b in samples)
    covered = {np.sign(b - a) for _, a, b in samples}
    ok = res < 1e-8 and covered == {-1, 0, 1}
    record(11, "fused dual through Q and psi2(u-1)", ok,
           f"{len(samples)} samples over all three blocks, max {res:.2e} (< 1e-8)")
    assert ok


def test_criterion_12_harness(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = cli.main(["verify", "--stable", "--json", str(a)])
    code_b = cli.main(["verify", "--stable", "--json", str(b)])
    same = a.read_bytes() == b.read_bytes()
    starved = cli.main(["verify", "--cutoff", "2"])
    usage = cli.main(["verify", "--suite", "no-such-suite"])
    capsys.readouterr()
    n = len(json.loads(a.read_text()))
    ok = same and code_a == 0 and code_b == 0 and starved == 1 and usage == 2
    record(12, "harness contracts", ok,
           f"stable json identical {same} ({n} reports), default exit {code_a}, "
           f"cutoff=2 exit {starved}, unknown suite exit {usage}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
