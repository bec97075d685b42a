"""Robin analogue: explicit model energies and the convex-cone upper bound."""

import math

import numpy as np
import pytest

from conebounds import (BoundaryProfile, Disc, DomainError, Polygon,
                        ProfilePiece, UsageError, centroid,
                        robin_best_axis_bound, robin_cone_upper_bound,
                        robin_model_energy, robin_scaling_exponent)

from conftest import random_star_polygon


def circular_cone_section(alpha):
    """Plane section of the circular cone with opening alpha."""
    return Disc(center=(0.0, 0.0), radius=math.tan(alpha / 2.0))


def profile_radius(prof, phi):
    """Evaluate a profile at phi, wrapping into the pieces' angular window."""
    for piece in prof.pieces:
        for cand in (phi, phi + 2.0 * math.pi, phi - 2.0 * math.pi):
            if piece.phi_lo - 1e-9 <= cand <= piece.phi_hi + 1e-9:
                return piece.b(cand)
    raise AssertionError(f"no piece covers phi={phi}")


class TestModelEnergies:
    def test_half_space(self):
        assert robin_model_energy("halfSpace") == -1.0

    def test_right_wedge(self):
        # -1/sin^2(pi/4) = -2
        assert robin_model_energy("wedge", math.pi / 2.0) == pytest.approx(
            -2.0, rel=1e-14)

    def test_flat_wedge_is_half_space(self):
        assert robin_model_energy("wedge", math.pi) == -1.0

    def test_reflex_branch_is_flat(self):
        assert robin_model_energy("wedge", 1.5 * math.pi) == -1.0
        assert robin_model_energy("wedge", 1.9 * math.pi) == -1.0

    def test_continuity_at_pi(self):
        below = robin_model_energy("wedge", math.pi - 1e-7)
        above = robin_model_energy("wedge", math.pi + 1e-7)
        assert below == pytest.approx(-1.0, abs=1e-6)
        assert above == -1.0

    def test_monotone_blowup_for_sharp_wedges(self):
        alphas = np.linspace(0.1, math.pi, 40)
        vals = [robin_model_energy("wedge", a) for a in alphas]
        assert all(v <= -1.0 for v in vals)
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        assert robin_model_energy("wedge", 0.01) < -4e4

    def test_alpha_out_of_range(self):
        for bad in (0.0, -0.3, 2.0 * math.pi, 7.0):
            with pytest.raises(DomainError):
                robin_model_energy("wedge", bad)

    def test_unknown_kind(self):
        with pytest.raises(UsageError):
            robin_model_energy("cone", 1.0)

    def test_wedge_needs_alpha(self):
        with pytest.raises(UsageError):
            robin_model_energy("wedge")


class TestProfileConstruction:
    def test_centered_disc_profile_is_constant(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=1.7))
        assert len(prof.pieces) == 1
        piece = prof.pieces[0]
        assert piece.phi_hi - piece.phi_lo == pytest.approx(2.0 * math.pi)
        for phi in np.linspace(piece.phi_lo, piece.phi_hi, 9):
            assert piece.b(phi) == pytest.approx(1.7, rel=1e-14)
            assert piece.db(phi) == pytest.approx(0.0, abs=1e-14)

    def test_off_center_disc_profile(self):
        # r = b(phi) solves |r e(phi) - c| = R about an interior axis point
        disc = Disc(center=(0.3, -0.1), radius=1.0)
        prof = BoundaryProfile.from_disc(disc, axis=(0.0, 0.0))
        rng = np.random.default_rng(5)
        for phi in rng.uniform(0.0, 2.0 * math.pi, 25):
            r = profile_radius(prof, phi)
            x = r * math.cos(phi) - 0.3
            y = r * math.sin(phi) + 0.1
            assert math.hypot(x, y) == pytest.approx(1.0, rel=1e-12)

    def test_disc_profile_derivative_matches_difference_quotient(self):
        disc = Disc(center=(0.3, -0.1), radius=1.0)
        prof = BoundaryProfile.from_disc(disc, axis=(0.0, 0.0))
        piece = prof.pieces[0]
        h = 1e-6
        for phi in np.linspace(piece.phi_lo + 0.1, piece.phi_hi - 0.1, 7):
            fd = (piece.b(phi + h) - piece.b(phi - h)) / (2.0 * h)
            assert piece.db(phi) == pytest.approx(fd, abs=1e-7)

    def test_square_profile_has_one_piece_per_edge(self):
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        prof = BoundaryProfile.from_polygon(square)
        assert len(prof.pieces) == 4
        spans = [p.phi_hi - p.phi_lo for p in prof.pieces]
        assert sum(spans) == pytest.approx(2.0 * math.pi, abs=1e-12)

    def test_square_profile_values(self):
        # edge x = 1 seen from the origin: b(phi) = 1/cos(phi)
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        prof = BoundaryProfile.from_polygon(square, axis=(0.0, 0.0))
        for phi in (-0.5, 0.0, 0.4):
            assert profile_radius(prof, phi) == pytest.approx(
                1.0 / math.cos(phi), rel=1e-12)

    def test_polygon_profile_hits_vertices(self):
        tri = Polygon([(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)])
        prof = BoundaryProfile.from_polygon(tri)
        cx, cy = centroid(tri)
        for vx, vy in [(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)]:
            phi = math.atan2(vy - cy, vx - cx)
            want = math.hypot(vx - cx, vy - cy)
            assert profile_radius(prof, phi) == pytest.approx(want, abs=1e-9)

    def test_star_polygons_about_centroid(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            poly = random_star_polygon(rng, n_vertices=7)
            prof = BoundaryProfile.from_polygon(poly)
            total = sum(p.phi_hi - p.phi_lo for p in prof.pieces)
            assert total == pytest.approx(2.0 * math.pi, abs=1e-9)

    def test_nonconvex_polygon_bad_axis(self):
        # arrow: centroid sits outside the star-shaped kernel of the notch
        arrow = Polygon([(0.0, 0.0), (4.0, 0.0), (1.0, 1.0), (0.0, 4.0)])
        with pytest.raises(DomainError):
            BoundaryProfile.from_polygon(arrow, axis=(2.0, 2.0))

    def test_axis_on_polygon_vertex(self):
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        with pytest.raises(DomainError):
            BoundaryProfile.from_polygon(square, axis=(1.0, 1.0))

    def test_axis_outside_polygon(self):
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        with pytest.raises(DomainError):
            BoundaryProfile.from_polygon(square, axis=(3.0, 0.0))

    def test_disc_axis_on_or_outside_rim(self):
        disc = Disc(center=(0.0, 0.0), radius=1.0)
        for axis in ((1.0, 0.0), (1.5, 0.0)):
            with pytest.raises(DomainError):
                BoundaryProfile.from_disc(disc, axis=axis)

    def test_axis_shape_checked(self):
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        with pytest.raises(UsageError):
            BoundaryProfile.from_polygon(square, axis=(1.0, 2.0, 3.0))

    def test_from_section_dispatch(self):
        assert len(BoundaryProfile.from_section(
            Disc(center=(0.0, 0.0), radius=1.0)).pieces) == 1
        tri = Polygon([(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)])
        assert len(BoundaryProfile.from_section(tri).pieces) == 3
        with pytest.raises(UsageError):
            BoundaryProfile.from_section("disc")

    def test_constructor_rejects_empty(self):
        with pytest.raises(UsageError):
            BoundaryProfile([])

    def test_constructor_rejects_gap(self):
        one = lambda phi: 1.0
        zero = lambda phi: 0.0
        pieces = [ProfilePiece(0.0, math.pi, one, zero),
                  ProfilePiece(math.pi + 0.1, 2.0 * math.pi + 0.1, one, zero)]
        with pytest.raises(UsageError):
            BoundaryProfile(pieces)

    def test_constructor_rejects_partial_cover(self):
        one = lambda phi: 1.0
        zero = lambda phi: 0.0
        with pytest.raises(DomainError):
            BoundaryProfile([ProfilePiece(0.0, math.pi, one, zero)])

    def test_constructor_rejects_nonpositive_b(self):
        b = lambda phi: math.cos(phi)  # changes sign on the circle
        zero = lambda phi: 0.0
        with pytest.raises(DomainError):
            BoundaryProfile([ProfilePiece(0.0, 2.0 * math.pi, b, zero)])

    def test_scaled_profile(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=2.0))
        small = prof.scaled(0.25)
        assert small.pieces[0].b(1.0) == pytest.approx(0.5, rel=1e-14)
        with pytest.raises(DomainError):
            prof.scaled(0.0)


class TestConeUpperBound:
    def test_circular_cone_closed_form(self):
        # constant b = tan(alpha/2): sigma = 1/sin(alpha/2) and the
        # averages collapse, so the bound is exactly -1/sin(alpha/2)^2
        for alpha in (math.pi / 6.0, math.pi / 3.0, math.pi / 2.0):
            prof = BoundaryProfile.from_section(circular_cone_section(alpha))
            want = -1.0 / math.sin(alpha / 2.0) ** 2
            assert robin_cone_upper_bound(prof) == pytest.approx(want,
                                                                 rel=1e-10)

    def test_right_circular_cone_matches_right_wedge_value(self):
        prof = BoundaryProfile.from_section(
            circular_cone_section(math.pi / 2.0))
        assert robin_cone_upper_bound(prof) == pytest.approx(-2.0, rel=1e-10)

    def test_square_below_half_space(self):
        square = Polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
        bound = robin_cone_upper_bound(BoundaryProfile.from_polygon(square))
        assert bound <= -1.0

    def test_always_below_half_space(self):
        # sigma >= 1 pointwise, so the averaged quotient is >= 1
        rng = np.random.default_rng(23)
        sections = [Disc(center=(0.0, 0.0), radius=0.3),
                    Disc(center=(0.2, -0.5), radius=2.0),
                    Polygon([(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)])]
        sections += [random_star_polygon(rng, n_vertices=6)
                     for _ in range(5)]
        for section in sections:
            prof = BoundaryProfile.from_section(section)
            assert robin_cone_upper_bound(prof) <= -1.0

    def test_rotation_invariance(self):
        tri = Polygon([(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)])
        base = robin_cone_upper_bound(BoundaryProfile.from_polygon(tri))
        for theta in (0.4, 1.9, 3.5):
            c, s = math.cos(theta), math.sin(theta)
            rot = Polygon([(c * x - s * y, s * x + c * y)
                           for x, y in [(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)]])
            val = robin_cone_upper_bound(BoundaryProfile.from_polygon(rot))
            assert val == pytest.approx(base, rel=1e-12)

    def test_off_center_axis_same_disc(self):
        # same geometric cone, different parametrization axis: the bound is
        # axis-dependent but must stay a valid upper bound below -1 and
        # degrade (not improve) away from the symmetric axis
        disc = Disc(center=(0.0, 0.0), radius=1.0)
        centered = robin_cone_upper_bound(BoundaryProfile.from_disc(disc))
        shifted = robin_cone_upper_bound(
            BoundaryProfile.from_disc(disc, axis=(0.4, 0.0)))
        assert shifted <= -1.0
        assert centered == pytest.approx(-2.0, rel=1e-10)
        assert shifted <= centered + 1e-12

    def test_shrinking_sections_blow_up(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=1.0))
        vals = [robin_cone_upper_bound(prof.scaled(eps))
                for eps in (1.0, 0.5, 0.25)]
        assert vals[0] > vals[1] > vals[2]
        # constant profile: bound(eps) = -(1 + 1/eps^2) exactly
        assert vals[2] == pytest.approx(-17.0, rel=1e-10)


class TestScalingExponent:
    def test_small_disc_ladder(self):
        # |bound(eps)| = 1 + 1/(eps*R)^2; R small keeps the additive 1
        # from polluting the slope
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=0.2))
        expo = robin_scaling_exponent(prof, [1.0, 0.5, 0.25, 0.1])
        assert expo == pytest.approx(-2.0, abs=0.05)

    def test_small_square_ladder(self):
        square = Polygon([(-0.2, -0.2), (0.2, -0.2), (0.2, 0.2), (-0.2, 0.2)])
        prof = BoundaryProfile.from_polygon(square)
        expo = robin_scaling_exponent(prof, [1.0, 0.5, 0.25, 0.1])
        assert expo == pytest.approx(-2.0, abs=0.1)

    def test_exponent_sharpens_for_smaller_sections(self):
        ladder = [1.0, 0.5, 0.25, 0.1]
        expos = []
        for radius in (1.0, 0.3, 0.1):
            prof = BoundaryProfile.from_disc(
                Disc(center=(0.0, 0.0), radius=radius))
            expos.append(robin_scaling_exponent(prof, ladder))
        diffs = [abs(e + 2.0) for e in expos]
        assert diffs[0] > diffs[1] > diffs[2]
        assert diffs[2] < 0.01

    def test_too_few_points(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=0.2))
        with pytest.raises(UsageError):
            robin_scaling_exponent(prof, [1.0, 0.1])

    def test_degenerate_ladder(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=0.2))
        with pytest.raises(UsageError):
            robin_scaling_exponent(prof, [1.0, 1.0, 1.0])

    def test_narrow_ladder(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=0.2))
        with pytest.raises(UsageError):
            robin_scaling_exponent(prof, [1.0, 0.7, 0.5])

    def test_nonpositive_epsilon(self):
        prof = BoundaryProfile.from_disc(Disc(center=(0.0, 0.0), radius=0.2))
        with pytest.raises(DomainError):
            robin_scaling_exponent(prof, [1.0, 0.5, -0.1])


class TestBestAxis:
    def test_never_worse_than_centroid(self):
        tri = Polygon([(0.0, 0.0), (2.0, 0.0), (0.0, 1.0)])
        centroid_bound = robin_cone_upper_bound(
            BoundaryProfile.from_polygon(tri))
        best, axis = robin_best_axis_bound(tri, refine=4)
        assert best <= centroid_bound + 1e-12
        assert np.asarray(axis).shape == (2,)

    def test_symmetric_disc_keeps_center(self):
        disc = Disc(center=(0.5, -0.2), radius=1.0)
        best, axis = robin_best_axis_bound(disc)
        assert best == pytest.approx(-2.0, rel=1e-10)
        assert np.allclose(axis, [0.5, -0.2], atol=1e-9)
