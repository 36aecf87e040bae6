import itertools

import pytest
from conftest import PAIRS, POINTS

import oracle
from ellfusion import face
from ellfusion.errors import AdmissibilityError, ArgumentError, DomainError, PoleError


def squares(heights=range(1, 6)):
    for a in heights:
        for b, d in itertools.product((a - 1, a + 1), repeat=2):
            for c in (b - 1, b + 1):
                if abs(d - c) == 1:
                    yield a, b, d, c


def test_level1_against_oracle(ctx):
    u = 0.37 + 0.02j
    for sq in squares():
        exact = complex(oracle.w_face(*sq, u))
        assert abs(face.w_face(*sq, u, ctx) - exact) < 1e-12 * max(1, abs(exact)), sq


def test_level1_examples(ctx):
    u = 0.41 - 0.03j
    from ellfusion.vertex import r0_scalar
    for n in (1, 2, 3):
        assert face.w_face(n, n + 1, n + 1, n + 2, u, ctx) == r0_scalar(u, ctx)
    assert face.w_face(3, 5, 4, 4, u, ctx) == 0
    assert face.initial_residual(ctx) < 1e-12


def test_continuous_at_minus_one(ctx):
    # [1+u] cancels against R_0(u), so u = -1 itself is a regular point
    for sq in [(3, 4, 2, 3), (3, 4, 4, 3), (3, 2, 2, 3), (2, 3, 3, 4)]:
        at = face.w_face(*sq, -1, ctx)
        near = face.w_face(*sq, -1 + 1e-8, ctx)
        assert abs(at - near) < 1e-6 * max(1, abs(at)), sq


def test_singular_height(ctx):
    with pytest.raises(PoleError):
        face.w_face(0, 1, 1, 0, 0.3, ctx)


def test_admissible():
    assert face.admissible(3, 4, 4, 5)
    assert not face.admissible(3, 5, 4, 4)
    assert face.admissible(3, 5, 3, 3, step=2)
    assert not face.admissible(3, 4, 3, 3, step=2)


class TestW21:
    def test_direct_sum(self, ctx):
        # a' = 4 is the only height adjacent to both 3 and 5; d' runs over 3 and 5
        u = 0.37
        expect = sum(oracle.w_face(3, 4, 4, dp, u + 1) * oracle.w_face(4, 5, dp, 6, u)
                     for dp in (3, 5))
        assert abs(face.w21(3, 5, 4, 6, u, ctx) - complex(expect)) < 1e-12

    def test_choice(self, ctx):
        for d, c in [(2, 1), (2, 3), (4, 3), (4, 5), (2, 2 + 0)]:
            if abs(3 - c) != 1:
                continue
            assert face.choice_residual((21, 3, 3, d, c), 0.37, ctx) < 1e-10

    def test_bad_choice(self, ctx):
        with pytest.raises(AdmissibilityError):
            face.w21(3, 5, 4, 6, 0.3, ctx, aprime=2)

    def test_vanishing(self, ctx):
        assert len(face.w21_squares()) > 20
        assert face.w21_vanishing(ctx) < 1e-9

    def test_nonadmissible_is_zero(self, ctx):
        assert face.w21(3, 4, 4, 5, 0.3, ctx) == 0


class TestW22:
    def test_bprime_independence(self, ctx):
        a = face.w22(3, 3, 3, 3, 0.37, ctx, bprime=2)
        b = face.w22(3, 3, 3, 3, 0.37, ctx, bprime=4)
        assert abs(a - b) / abs(a) < 1e-10

    @pytest.mark.parametrize("a,c", [(3, 3), (3, 5), (3, 1), (2, 2), (4, 2)])
    def test_unitarity(self, ctx, a, c):
        for u in POINTS[:3]:
            assert face.unitarity22_residual(a, c, u, ctx) < 1e-8

    @pytest.mark.parametrize("corners", [(3, 3, 3, 3), (3, 5, 3, 1), (2, 2, 4, 4), (3, 1, 3, 3),
                                         (4, 2, 2, 4)])
    def test_crossing(self, ctx, corners):
        for u in POINTS[:3]:
            assert face.crossing22_face_residual(*corners, u, ctx) < 1e-8


class TestHeights:
    def test_epsilon_sequence(self):
        assert [face.epsilon(a) for a in range(1, 6)] == [1, -1, -1, 1, 1]
        for a in range(1, 9):
            assert face.epsilon(a) * face.epsilon(a + 1) == (-1) ** a

    def test_g_height(self, ctx):
        from ellfusion.elliptic import bracket
        for a in range(1, 6):
            assert abs(face.g_height(a, ctx) ** 2 - bracket(a, ctx)) < 1e-15
        with pytest.raises(DomainError):
            face.g_height(6, ctx)
        with pytest.raises(DomainError):
            face.g_height(0, ctx)

    def test_pairing_symmetric(self, ctx):
        for a, b, m in [(3, 5, 2), (2, 4, 2), (3, 3, 2), (2, 3, 1), (1, 2, 1)]:
            assert face.pairing(a, b, m, ctx) == face.pairing(b, a, m, ctx)

    def test_pairing_errors(self, ctx):
        with pytest.raises(DomainError):
            face.pairing(1, 1, 2, ctx)
        with pytest.raises(DomainError):
            face.pairing(5, 5, 2, ctx)
        with pytest.raises(ArgumentError):
            face.pairing(3, 4, 2, ctx)
        with pytest.raises(ArgumentError):
            face.pairing(1, 5, 2, ctx)

    def test_products(self, ctx):
        from ellfusion.elliptic import bracket
        assert face.bracket_range(4, 3, ctx) == 1
        assert abs(face.bracket_range(2, 3, ctx) - bracket(2, ctx) * bracket(3, ctx)) < 1e-15
        assert abs(face.qbinomial(2, 1, ctx) - bracket(2, ctx) / bracket(1, ctx)) < 1e-15
        assert face.qbinomial(4, 0, ctx) == 1
        with pytest.raises(ArgumentError):
            face.qbinomial(2, 3, ctx)


class TestYBE:
    def test_boundary_counts(self):
        assert len(face.boundaries(1)) == 18
        assert len(face.boundaries(22)) == 99

    @pytest.mark.parametrize("s,t", PAIRS)
    def test_level1(self, ctx, s, t):
        worst = max(face.ybe_residual(h, s, t, ctx, level=1) for h in face.boundaries(1))
        assert worst < 1e-8

    @pytest.mark.parametrize("heights", [(3, 3, 3, 3, 3, 3), (3, 5, 3, 3, 1, 3),
                                         (3, 3, 5, 3, 5, 3), (3, 5, 3, 1, 1, 3)])
    def test_level22(self, ctx, heights):
        for s, t in PAIRS[:2]:
            assert face.ybe_residual(heights, s, t, ctx) < 1e-8

    def test_level22_all_regular_boundaries(self, ctx):
        s, t = PAIRS[0]
        regular, worst = 0, 0.0
        for h in face.boundaries(22):
            try:
                worst = max(worst, face.ybe_residual(h, s, t, ctx))
            except PoleError:
                # an internal height 0 or r = 6 puts [0] or [r] in a denominator
                continue
            regular += 1
        assert regular == 34
        assert worst < 1e-8

    def test_detects_swapped_arguments(self, ctx):
        h = (3, 4, 3, 2, 2, 3)
        s, t = 0.37 + 0.01j, 0.12
        good = face.ybe_residual(h, s, t, ctx, level=1)
        # swapping which face carries s + t breaks the equation
        w = face.w_face
        lhs = sum(w(3, 4, g, 3, s + t, ctx) * w(g, 3, 3, 2, s, ctx) * w(3, g, 2, 3, t, ctx)
                  for g in (2, 4))
        rhs = sum(w(4, 3, g, 2, t, ctx) * w(3, 4, 2, g, s + t, ctx) * w(2, g, 3, 2, s, ctx)
                  for g in (3, 5))
        assert good < 1e-10
        assert abs(lhs - rhs) > 1e-4
