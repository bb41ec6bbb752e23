"""Unit tests for the 1D finite-volume driver."""
import numpy as np
import pytest

from hemogrp.grid1d import (
    Grid1D,
    StepReport,
    apply_boundaries,
    cfl_dt,
    minmod_slope,
    reconstruct_interface,
    write_snapshot,
)
from hemogrp.model import ConstantProfile, LinearProfile, ModelParams, SineRampProfile

P = ModelParams()


class TestMinmod:
    def test_hand_values(self):
        # minmod(0.9*1, 2, 0.9*3) = 0.9 for alpha = 0.9
        assert minmod_slope(0.9, 1.0, 2.0, 3.0) == pytest.approx(0.9)
        assert minmod_slope(1.0, 1.0, 2.0, 3.0) == pytest.approx(1.0)
        assert minmod_slope(0.9, -1.0, -2.0, -3.0) == pytest.approx(-0.9)
        # sign change kills the slope
        assert minmod_slope(0.9, -1.0, 2.0, 3.0) == 0.0
        assert minmod_slope(0.9, 1.0, 0.0, 3.0) == 0.0

    def test_center_can_be_smallest(self):
        assert minmod_slope(2.0, 1.0, 0.5, 1.0) == pytest.approx(0.5)

    def test_vectorized(self):
        out = minmod_slope(1.0, np.array([1.0, -1.0]), np.array([2.0, 2.0]),
                           np.array([3.0, 3.0]))
        np.testing.assert_allclose(out, [1.0, 0.0])


def _periodic_grid(N=64, k=6.0, alpha=0.9):
    grid = Grid1D(0.0, 1.0, N, ConstantProfile(k), P, boundary="periodic",
                  alpha=alpha)
    x = grid.centers()
    A = 1.0 + 0.25 * np.sin(2.0 * np.pi * x)
    u = 0.3 + 0.1 * np.cos(2.0 * np.pi * x)
    grid.set_state(A, u)
    return grid


class TestConstruction:
    def test_rejects_bad_domain(self):
        with pytest.raises(ValueError):
            Grid1D(1.0, 0.0, 10, ConstantProfile(6.0), P)
        with pytest.raises(ValueError):
            Grid1D(0.0, 1.0, 3, ConstantProfile(6.0), P)

    def test_set_state_validates(self):
        grid = _periodic_grid()
        with pytest.raises(ValueError):
            grid.set_state(-np.ones(grid.N), np.zeros(grid.N))

    def test_step_guard_rejects_large_dt(self):
        grid = _periodic_grid()
        with pytest.raises(ValueError, match="stability bound"):
            grid.step(10.0 * cfl_dt(grid, 1.0))

    def test_cfl_dt_range_check(self):
        grid = _periodic_grid()
        with pytest.raises(ValueError):
            cfl_dt(grid, 0.0)
        with pytest.raises(ValueError):
            cfl_dt(grid, 1.5)


class TestConservationAndEquilibrium:
    @pytest.mark.parametrize("scheme", ["step", "godunov_step"])
    def test_periodic_constant_k_conserves(self, scheme):
        grid = _periodic_grid()
        mass0 = grid.A.sum() * grid.dx
        mom0 = grid.q.sum() * grid.dx
        advance = getattr(grid, scheme)
        for _ in range(100):
            advance(cfl_dt(grid, 0.5))
        assert abs(grid.A.sum() * grid.dx - mass0) <= 1e-13 * abs(mass0)
        assert abs(grid.q.sum() * grid.dx - mom0) <= 1e-13 * max(abs(mom0), 1.0)

    @pytest.mark.parametrize("scheme", ["step", "godunov_step"])
    def test_rest_state_is_well_balanced(self, scheme):
        """(Ae, 0) must survive a varying-stiffness profile untouched."""
        grid = Grid1D(0.0, 4.0, 200, SineRampProfile(), P, boundary="outflow")
        grid.set_state(np.full(200, P.Ae), np.zeros(200))
        advance = getattr(grid, scheme)
        for _ in range(100):
            advance(cfl_dt(grid, 0.5))
        assert np.max(np.abs(grid.A - P.Ae)) <= 1e-10
        assert np.max(np.abs(grid.u)) <= 1e-10

    def test_uniform_state_constant_k_is_exact(self):
        grid = Grid1D(0.0, 1.0, 32, ConstantProfile(6.0), P, boundary="periodic")
        grid.set_state(np.full(32, 1.3), np.full(32, 0.7))
        for _ in range(10):
            grid.step(cfl_dt(grid, 0.5))
        np.testing.assert_allclose(grid.A, 1.3, rtol=1e-14)
        np.testing.assert_allclose(grid.u, 0.7, rtol=1e-13)


class TestStepMechanics:
    def test_report_contents(self):
        grid = _periodic_grid()
        report = grid.step(cfl_dt(grid, 0.5))
        assert isinstance(report, StepReport)
        assert report.dt > 0.0
        assert report.max_speed > 0.0
        assert sum(report.case_counts.values()) == grid.N + 1

    def test_advection_direction(self):
        """A smooth rightward pulse moves right within a few steps."""
        grid = Grid1D(0.0, 1.0, 128, ConstantProfile(6.0), P, boundary="periodic")
        x = grid.centers()
        A = 1.0 + 0.3 * np.exp(-200.0 * (x - 0.3) ** 2)
        grid.set_state(A, np.full(128, 2.5))
        peak0 = x[np.argmax(grid.A)]
        for _ in range(20):
            grid.step(cfl_dt(grid, 0.5))
        assert x[np.argmax(grid.A)] > peak0

    def test_boundary_extension_policies(self):
        grid = _periodic_grid()
        lo, hi = apply_boundaries(grid)
        assert lo[0] == grid.A[-1] and hi[0] == grid.A[0]
        grid2 = Grid1D(0.0, 1.0, 16, ConstantProfile(6.0), P, boundary="outflow")
        grid2.set_state(np.linspace(1.0, 2.0, 16), np.zeros(16))
        lo2, hi2 = apply_boundaries(grid2)
        assert lo2[0] == grid2.A[0] and hi2[0] == grid2.A[-1]
        assert lo2[2] == 0.0  # outflow ghosts carry no slope

    def test_reconstruct_interface_exposes_sloped_states(self):
        grid = _periodic_grid()
        grid.sA[:] = 0.1
        inp = reconstruct_interface(grid, 5)
        assert inp.A_left == pytest.approx(grid.A[4] + 0.5 * grid.dx * 0.1)
        assert inp.A_right == pytest.approx(grid.A[5] - 0.5 * grid.dx * 0.1)
        assert inp.k0 == 6.0

    def test_positivity_guard_reported(self):
        grid = Grid1D(0.0, 1.0, 16, ConstantProfile(6.0), P, boundary="periodic")
        A = np.full(16, 0.01)
        grid.set_state(A, np.zeros(16))
        grid.sA[:] = 10.0  # extrapolation would cross zero
        report = grid.step(1e-6)
        assert report.positivity_fixes > 0

    def test_varying_k_runs_and_moves_off_nonequilibrium(self):
        grid = Grid1D(0.0, 1.0, 64, LinearProfile(6.0, 2.0), P, boundary="outflow")
        grid.set_state(np.full(64, 1.5), np.zeros(64))
        grid.step(cfl_dt(grid, 0.5))
        assert np.max(np.abs(grid.u)) > 0.0  # k' pushes the fluid


class TestSnapshot:
    def test_format_and_determinism(self, tmp_path):
        grid = _periodic_grid(N=8)
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        write_snapshot(grid, p1)
        write_snapshot(grid, p2)
        text = p1.read_text()
        lines = text.strip().splitlines()
        assert lines[0] == "x,A,u"
        assert len(lines) == 9
        first = lines[1].split(",")
        assert float(first[0]) == pytest.approx(grid.centers()[0])
        # round-trip at full precision
        assert float(first[1]) == grid.A[0]
        assert text == p2.read_text()
