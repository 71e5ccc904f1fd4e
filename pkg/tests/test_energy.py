import numpy as np
import pytest

from coldwave.errors import SpecInvalid
from coldwave.grid import Domain, Grid2D
from coldwave.multipliers import (BoundaryReport, MixedMultiplierSpec,
                                  MultiplierSpec, boundary_admissible,
                                  random_interior_bump,
                                  verify_energy_inequality)


@pytest.fixture
def unit_square():
    return Domain.rectangle(-1, 1, -1, 1)


def grid_bump(grid, fn):
    X, Y = grid.meshgrid()
    u = fn(X, Y)
    u[grid.boundary] = 0.0
    return u


class TestMultiplierSpec:
    def test_regime_selection(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        assert MultiplierSpec.from_kappa(1.5, g).regime == "kappa_high"
        assert MultiplierSpec.from_kappa(0.5, g).regime == "kappa_low"

    def test_kappa_low_default_N_is_midpoint(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        spec = MultiplierSpec.from_kappa(0.5, g)
        lo = 1.05 / 2.5
        hi = 0.95 / 1.5
        assert spec.N == pytest.approx(0.5 * (lo + hi))

    def test_kappa_low_N_range_enforced(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        with pytest.raises(SpecInvalid):
            MultiplierSpec.from_kappa(0.5, g, N=0.99)
        with pytest.raises(SpecInvalid):
            MultiplierSpec.from_kappa(0.95, g)  # interval empty at 0.05

    def test_invalid_parameters(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        with pytest.raises(SpecInvalid):
            MultiplierSpec.from_kappa(2.5, g)
        with pytest.raises(SpecInvalid):
            MultiplierSpec.from_kappa(1.0, g, delta=0.0)

    def test_exponential_branch_values(self, unit_square):
        g = Grid2D(unit_square, 65, 65)
        spec = MultiplierSpec.from_kappa(1.0, g, delta=0.01)
        # continuous across the cut, different branches away from it
        assert spec.b(0.0, 0.0, +1) == pytest.approx(1.0)
        assert spec.b(0.0, 0.0, -1) == pytest.approx(1.0)
        assert spec.b(1.0, 0.0, +1) <= spec.Q1
        assert spec.b(-1.0, 1.0, -1) > spec.Q2  # delta small enough here
        assert spec.warnings == ()

    def test_large_delta_warns_not_raises(self, unit_square):
        g = Grid2D(unit_square, 65, 65)
        spec = MultiplierSpec.from_kappa(1.0, g, delta=0.05)
        assert spec.warnings  # exponential bound fails on [-1,1]^2

    def test_kappa_low_b_vanishes_on_cut(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        spec = MultiplierSpec.from_kappa(0.0, g)
        assert spec.b(0.25, 0.5, +1) == 0.0
        assert spec.b(0.25, 0.5, -1) == 0.0


class TestVerifyEnergyInequality:
    def test_zero_field_flagged(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        spec = MultiplierSpec.from_kappa(1.0, g)
        rep = verify_energy_inequality(np.zeros((33, 33)), 1.0, spec, g)
        assert rep.lhs == 0.0 and rep.rhs == 0.0
        assert rep.ratio is None
        assert not rep.satisfied

    def test_boundary_support_rejected(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        spec = MultiplierSpec.from_kappa(1.0, g)
        with pytest.raises(ValueError):
            verify_energy_inequality(np.ones((33, 33)), 1.0, spec, g)

    def test_regime_kappa_mismatch(self, unit_square):
        g = Grid2D(unit_square, 33, 33)
        spec = MultiplierSpec.from_kappa(1.5, g)
        with pytest.raises(SpecInvalid):
            verify_energy_inequality(np.zeros((33, 33)), 0.5, spec, g)

    def test_polynomial_bump_kappa_one(self, unit_square):
        # two-resolution quadrature comparison certifies the ratio bound
        ratios = []
        for n in (65, 129):
            g = Grid2D(unit_square, n, n)
            spec = MultiplierSpec.from_kappa(1.0, g, delta=0.05)
            u = grid_bump(g, lambda X, Y: (1 - X ** 2) ** 2 * (1 - Y ** 2) ** 2)
            rep = verify_energy_inequality(u, 1.0, spec, g)
            ratios.append(rep.ratio)
        assert min(ratios) >= 0.05 * 0.9
        assert abs(ratios[0] - ratios[1]) < 0.1 * min(ratios)

    def test_polynomial_bump_kappa_half(self, unit_square):
        g = Grid2D(unit_square, 65, 65)
        spec = MultiplierSpec.from_kappa(0.5, g)
        u = grid_bump(g, lambda X, Y: (1 - X ** 2) ** 2 * (1 - Y ** 2) ** 2)
        rep = verify_energy_inequality(u, 0.5, spec, g)
        assert rep.ratio > 0.0

    def test_random_bumps_clear_bound(self, unit_square):
        g = Grid2D(unit_square, 65, 65)
        rng = np.random.default_rng(11)
        for kappa in (0.0, 1.0, 2.0):
            spec = MultiplierSpec.from_kappa(kappa, g)
            for _ in range(5):
                u = grid_bump(g, random_interior_bump(unit_square, rng))
                rep = verify_energy_inequality(u, kappa, spec, g)
                assert rep.ratio >= spec.ratio_bound * 0.9


class TestMixedMultiplierSpec:
    def test_auto_positivity(self):
        dom = Domain.rectangle(0.0, 1.0, 0.0, 0.75)
        spec = MixedMultiplierSpec.auto(dom)
        xs = np.linspace(0, 1, 41)
        ys = np.linspace(0, 0.75, 41)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        K = X - Y ** 2
        b = spec.b(X, Y)
        c = spec.c(Y)
        assert (b > 0).all()
        assert (2 * c * Y + spec.s_const > 0).all()
        assert (b * b + K * c * c > 0).all()
        assert (c < 0).all()

    def test_matrix_shape(self):
        spec = MixedMultiplierSpec.auto(Domain.rectangle(0, 1, 0, 0.75))
        M = spec.matrix(0.5, 0.25)
        K = 0.5 - 0.25 ** 2
        assert M[0, 0] == M[1, 1]
        assert M[1, 0] == pytest.approx(-K * M[0, 1])

    def test_invalid(self):
        with pytest.raises(SpecInvalid):
            MixedMultiplierSpec(mu=-1.0, t=1.0, s_const=1.0)
        with pytest.raises(SpecInvalid):
            MixedMultiplierSpec(mu=1.0, t=1.0, s_const=1.0, delta=2.0)


class TestBoundaryAdmissible:
    def test_first_quadrant_box(self):
        dom = Domain.rectangle(0.0, 1.0, 0.0, 0.75)
        spec = MixedMultiplierSpec.auto(dom)
        report = boundary_admissible(dom, ("top", "left"), spec)
        assert isinstance(report, BoundaryReport)
        assert report.admissible

    def test_conormal_lens_box(self):
        # corners on the sonic curve: x-range [y0^2, y1^2]
        dom = Domain.rectangle(0.25, 1.0, 0.5, 1.0)
        spec = MixedMultiplierSpec.auto(dom)
        report = boundary_admissible(dom, (), spec)
        assert report.admissible
        assert all(not seg.in_G for seg in report.segments)

    def test_orientation_flip_fails(self):
        dom = Domain.rectangle(0.0, 1.0, 0.0, 0.75)
        spec = MixedMultiplierSpec.auto(dom)
        assert boundary_admissible(dom, ("top", "left"), spec).admissible
        flipped = boundary_admissible(dom, ("top", "left"), spec,
                                      orientation=-1)
        assert not flipped.admissible

    def test_orientation_covariance(self):
        dom = Domain.rectangle(0.0, 1.0, 0.0, 0.75)
        spec = MixedMultiplierSpec.auto(dom)
        fwd = boundary_admissible(dom, ("top",), spec)
        rev = boundary_admissible(dom, ("top",), spec, orientation=-1)
        for a, b in zip(fwd.segments, rev.segments):
            assert a.min_value == pytest.approx(-b.max_value, rel=1e-12)
            assert a.max_value == pytest.approx(-b.min_value, rel=1e-12)

    def test_bad_G_inadmissible(self):
        dom = Domain.rectangle(0.0, 1.0, 0.0, 0.75)
        spec = MixedMultiplierSpec.auto(dom)
        # bottom has b dy - c dx = -c dx > 0, so it cannot sit in G
        report = boundary_admissible(dom, ("bottom",), spec)
        assert not report.admissible
