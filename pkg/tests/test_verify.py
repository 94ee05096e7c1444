import math

import pytest

from toruscap.specfun import SeriesConfig, Tau
from toruscap.verify import (
    ALL_SUITES,
    DEFAULT_OFFSETS,
    WARN_ONLY_SUITES,
    CheckReport,
    _polygon_log_integral,
    check_capacity_limit,
    check_laplacian,
    check_mean_zero,
    check_theta_identity,
    run_suite,
)

CFG = SeriesConfig()


class TestLaplacian:
    def test_two_i(self):
        (report,) = check_laplacian(Tau(0.0, 2.0), [0.3 + 0.4j], 1e-3, CFG)
        assert report.passed
        assert report.expected == pytest.approx(-math.pi, rel=1e-15)
        assert report.observed == pytest.approx(-math.pi, abs=1e-4)

    def test_square_torus(self):
        (report,) = check_laplacian(Tau(0.0, 1.0), [0.5 + 0j], 1e-3, CFG)
        assert report.passed
        assert report.observed == pytest.approx(-2 * math.pi, abs=1e-4)

    def test_offset_too_close(self):
        with pytest.raises(ValueError, match="exclusion"):
            check_laplacian(Tau(0.0, 2.0), [1e-3 + 0j], 1e-3, CFG)

    def test_stencil_size_guard(self):
        with pytest.raises(ValueError, match="h <= 1e-2"):
            check_laplacian(Tau(0.0, 2.0), [0.3 + 0.4j], 0.1, CFG)

    def test_default_offsets_pass_everywhere(self):
        for tau in (Tau(0.0, 1.0), Tau(0.0, 2.0), Tau(0.5, 1.91)):
            reports = check_laplacian(tau, DEFAULT_OFFSETS, 1e-3, CFG)
            assert len(reports) == len(DEFAULT_OFFSETS)
            assert all(r.passed for r in reports)


class TestCapacityLimit:
    def test_two_i(self):
        report = check_capacity_limit(Tau(0.0, 2.0), cfg=CFG)
        assert report.passed
        assert abs(report.observed - report.expected) <= 1e-6

    def test_near_optimum(self):
        report = check_capacity_limit(Tau(0.5, 1.91), cfg=CFG)
        assert report.passed

    def test_empty_radii_rejected(self):
        with pytest.raises(ValueError, match="radius|radii"):
            check_capacity_limit(Tau(0.0, 2.0), radii=(), cfg=CFG)

    def test_radii_order_and_size_guards(self):
        with pytest.raises(ValueError, match="descending"):
            check_capacity_limit(Tau(0.0, 2.0), radii=(1e-4, 1e-3), cfg=CFG)
        with pytest.raises(ValueError, match="0.05"):
            check_capacity_limit(Tau(0.0, 2.0), radii=(0.2, 1e-3), cfg=CFG)


class TestThetaIdentity:
    def test_two_hundred_samples(self):
        report = check_theta_identity(200, seed=42, cfg=CFG)
        assert report.passed
        assert report.observed <= 1e-10

    def test_single_sample_is_anchor(self):
        report = check_theta_identity(1, seed=42, cfg=CFG)
        assert report.observed <= 1e-12

    def test_zero_samples_rejected(self):
        with pytest.raises(ValueError, match="sample_count"):
            check_theta_identity(0, seed=42, cfg=CFG)

    def test_deterministic_given_seed(self):
        a = check_theta_identity(50, seed=7, cfg=CFG)
        b = check_theta_identity(50, seed=7, cfg=CFG)
        assert a == b


class TestPolygonLogIntegral:
    def test_square(self):
        # int log|z| over [-1,1]^2; reference from 2D quadrature
        square = [1 - 1j, 1 + 1j, -1 + 1j, -1 - 1j]
        assert _polygon_log_integral(square) == pytest.approx(
            -1.472112985290316, abs=1e-12
        )

    def test_disk_like_scaling(self):
        # halving the polygon shifts the average by log(1/2)
        big = [1 - 1j, 1 + 1j, -1 + 1j, -1 - 1j]
        small = [0.5 * v for v in big]
        avg_big = _polygon_log_integral(big) / 4.0
        avg_small = _polygon_log_integral(small) / 1.0
        assert avg_small - avg_big == pytest.approx(math.log(0.5), abs=1e-12)


class TestMeanZero:
    def test_two_i(self):
        report = check_mean_zero(Tau(0.0, 2.0), 128, CFG)
        assert report.passed
        assert abs(report.observed) <= 1e-3

    def test_square_torus(self):
        report = check_mean_zero(Tau(0.0, 1.0), 128, CFG)
        assert report.passed

    def test_coarse_grid_rejected(self):
        with pytest.raises(ValueError, match="quad_points"):
            check_mean_zero(Tau(0.0, 2.0), 8, CFG)


class TestReports:
    def test_pass_flag_recomputable(self):
        reports = []
        reports += check_laplacian(Tau(0.0, 2.0), DEFAULT_OFFSETS[:3], 1e-3, CFG)
        reports.append(check_capacity_limit(Tau(0.0, 2.0), cfg=CFG))
        reports.append(check_theta_identity(25, seed=1, cfg=CFG))
        for r in reports:
            assert r.passed == (abs(r.observed - r.expected) <= r.tolerance)

    def test_report_fields(self):
        r = CheckReport("demo", True, 1.0, 1.0, 0.5, "x")
        assert (r.name, r.detail) == ("demo", "x")


class TestSuites:
    def test_known_names(self):
        assert set(ALL_SUITES) == {"theta", "laplacian", "capacity", "meanzero"}
        assert WARN_ONLY_SUITES == {"meanzero"}

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("bogus")

    def test_theta_suite_deterministic(self):
        assert run_suite("theta", seed=42) == run_suite("theta", seed=42)

    def test_capacity_suite_passes(self):
        assert all(r.passed for r in run_suite("capacity"))
