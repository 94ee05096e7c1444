import math

import numpy as np
import pytest

from toruscap.optimize import (
    FSurface,
    grid_min,
    matlab_grid_min,
    minimize,
    parity_f,
    parity_scan,
    sweep,
)
from toruscap.specfun import IM_FLOOR, NonConvergenceError, SeriesConfig, Tau
from toruscap.torus import bergman_density, capacity, f_ratio


class TestSweep:
    def test_corners_match_direct_evaluation(self):
        surf = sweep((-1.0, 1.0), (1.0, 2.0), 2, 2)
        for i, t in enumerate((1.0, 2.0)):
            for j, r in enumerate((-1.0, 1.0)):
                assert surf.values[i, j] == f_ratio(Tau(r, t)).f

    def test_mirror_symmetry_in_re(self):
        left = sweep((-1.0, 0.0), (1.0, 2.0), 6, 5)
        right = sweep((0.0, 1.0), (1.0, 2.0), 6, 5)
        assert np.allclose(left.values, right.values[:, ::-1], atol=1e-10, rtol=0)

    def test_period_columns_agree(self):
        surf = sweep((-1.0, 1.0), (1.4, 2.2), 4, 5)
        # columns at re = -1, 0 and 0, 1 are one period apart
        assert np.allclose(surf.values[:, 0], surf.values[:, 2], atol=1e-10, rtol=0)
        assert np.allclose(surf.values[:, 2], surf.values[:, 4], atol=1e-10, rtol=0)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            sweep((1.0, -1.0), (1.0, 2.0), 4, 4)
        with pytest.raises(ValueError):
            sweep((-1.0, 1.0), (0.0, 2.0), 4, 4)  # below IM_FLOOR
        with pytest.raises(ValueError):
            sweep((-1.0, 1.0), (1.0, 2.0), 1, 4)

    def test_nonconvergence_carries_node(self):
        cramped = SeriesConfig(tol=1e-14, max_terms=2)
        with pytest.raises(NonConvergenceError, match="node"):
            sweep((-1.0, 1.0), (IM_FLOOR, 2.0), 3, 3, cramped)

    def test_full_grid_reproduces_known_minimum(self):
        surf = sweep((-1.0, 1.0), (0.05, 4.0), 100, 100)
        tau, val = grid_min(surf)
        assert val == pytest.approx(-1.8251, abs=2e-3)
        assert tau.im == pytest.approx(1.9, abs=0.05)


class TestGridMin:
    def test_single_minimum(self):
        surf = FSurface(
            re_grid=np.array([0.0, 1.0]),
            im_grid=np.array([1.0, 2.0]),
            values=np.array([[4.0, 3.0], [2.0, 1.0]]),
        )
        tau, val = grid_min(surf)
        assert (tau.re, tau.im, val) == (1.0, 2.0, 1.0)

    def test_tie_breaks_smallest_im_then_re(self):
        surf = FSurface(
            re_grid=np.array([-0.5, 0.5]),
            im_grid=np.array([1.0, 2.0]),
            values=np.array([[7.0, 1.0], [1.0, 9.0]]),
        )
        tau, val = grid_min(surf)
        assert (tau.re, tau.im) == (0.5, 1.0)

    def test_matlab_tie_break_prefers_first_column(self):
        # same tie: column-major scan finds the re = -0.5 node first
        surf = FSurface(
            re_grid=np.array([-0.5, 0.5]),
            im_grid=np.array([1.0, 2.0]),
            values=np.array([[7.0, 1.0], [1.0, 9.0]]),
        )
        tau, val = matlab_grid_min(surf)
        assert (tau.re, tau.im) == (-0.5, 2.0)

    def test_surface_validation(self):
        with pytest.raises(ValueError):
            FSurface(
                re_grid=np.array([0.0, 1.0]),
                im_grid=np.array([1.0]),
                values=np.zeros((2, 2)),
            )
        with pytest.raises(ValueError):
            FSurface(
                re_grid=np.array([1.0, 0.0]),
                im_grid=np.array([1.0, 2.0]),
                values=np.zeros((2, 2)),
            )
        with pytest.raises(ValueError):
            FSurface(
                re_grid=np.array([0.0, 1.0]),
                im_grid=np.array([1.0, 2.0]),
                values=np.array([[1.0, 2.0], [3.0, math.inf]]),
            )


@pytest.fixture(scope="module")
def result():
    return minimize((-1.0, 1.0), (0.05, 4.0), 100, 100, refine=True)


class TestMinimize:
    def test_reproduces_known_constants(self, result):
        assert result.f_min == pytest.approx(-1.8251, abs=1e-3)
        assert result.exp_f_min == pytest.approx(0.1612, abs=5e-4)
        assert result.alpha == pytest.approx(6.2034, abs=5e-3)

    def test_refined_im_brackets_stationary_point(self, result):
        # stationary point of -2 log t + (pi/3) t is 6/pi; the q-sum shifts
        # it down by ~3e-4 along the Re = 1/2 line
        assert 1.905 <= result.tau_star.im <= 1.915

    def test_refinement_never_increases(self, result):
        assert result.f_min <= result.grid_min[1]

    def test_alpha_consistency(self, result):
        assert abs(result.alpha * result.exp_f_min - 1.0) <= 1e-15
        tau = result.tau_star
        lhs = result.alpha * math.pi * bergman_density(tau)
        rhs = capacity(tau) ** 2
        assert lhs >= rhs * (1.0 - 1e-9)

    def test_determinism(self, result):
        again = minimize((-1.0, 1.0), (0.05, 4.0), 100, 100, refine=True)
        assert again == result  # dataclass equality covers evaluations too

    def test_halfstrip_equals_fullstrip(self, result):
        half = minimize((0.0, 1.0), (0.05, 4.0), 100, 100, refine=True)
        assert half.f_min == pytest.approx(result.f_min, abs=1e-9)

    def test_grid_only_path(self):
        res = minimize((-1.0, 1.0), (1.5, 2.5), 20, 20, refine=False)
        assert res.refined is False
        assert res.f_min == res.grid_min[1]
        assert res.evaluations == 400

    def test_nested_refinement_never_increases_grid_min(self):
        # 2N-1 linspace contains every coarse node, so the min can't rise
        coarse = minimize((-1.0, 1.0), (0.05, 4.0), 25, 25, refine=False)
        fine = minimize((-1.0, 1.0), (0.05, 4.0), 49, 49, refine=False)
        assert fine.f_min <= coarse.f_min

    def test_iteration_cap_raises_with_best(self):
        with pytest.raises(NonConvergenceError) as excinfo:
            minimize((-1.0, 1.0), (1.5, 2.5), 10, 10, refine=True, max_iter=2)
        best = excinfo.value.best
        assert best[1] <= -1.7  # carries a sensible best-so-far


class TestParity:
    def test_raw_f_matches_certified_path_when_converged(self):
        # at Im = 1.9 a 100-term raw sum is fully converged
        raw = parity_f(0.5, 1.9, 100)
        lib = f_ratio(Tau(0.5, 1.9)).f
        assert raw == pytest.approx(lib, abs=1e-13)

    def test_scan_clamps_bottom_row(self):
        res = parity_scan(1.0, 4.0, 100, 10, 10)
        assert res.clamped_rows == 1
        assert res.im_grid[0] == IM_FLOOR

    def test_scan_matches_library_grid_min(self):
        res = parity_scan(1.0, 4.0, 100, 100, 100)
        # evaluate the certified path on the identical clamped mesh
        values = np.empty_like(res.values)
        for i, t in enumerate(res.im_grid):
            for j, r in enumerate(res.re_grid):
                values[i, j] = f_ratio(Tau(float(r), float(t))).f
        k = int(values.argmin())
        i, j = divmod(k, values.shape[1])
        assert res.f == pytest.approx(float(values[i, j]), abs=1e-12)
        assert res.tau.im == pytest.approx(float(res.im_grid[i]), abs=1e-12)

    def test_scan_validation(self):
        with pytest.raises(ValueError):
            parity_scan(-1.0, 4.0, 100)
        with pytest.raises(ValueError):
            parity_scan(1.0, 4.0, 0)
