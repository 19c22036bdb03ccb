import math

import numpy as np
import pytest

from psilab import constants as const
from psilab.counterexample import (
    asymptotic_check,
    find_lambda_bar,
    resolve_jobs,
    sweep,
    sweep_to_csv,
)
from psilab.errors import is_divergent
from psilab.mesh import total_mean_curvature
from psilab.analytic import make_sphere


class TestResolveJobs:
    def test_explicit_argument_wins(self, monkeypatch):
        monkeypatch.setenv("PSILAB_JOBS", "8")
        assert resolve_jobs(3) == 3

    def test_environment_variable(self, monkeypatch):
        monkeypatch.setenv("PSILAB_JOBS", "4")
        assert resolve_jobs() == 4

    def test_default_and_garbage(self, monkeypatch):
        monkeypatch.delenv("PSILAB_JOBS", raising=False)
        assert resolve_jobs() == 1
        monkeypatch.setenv("PSILAB_JOBS", "many")
        assert resolve_jobs() == 1


class TestSweep:
    def test_argument_checks(self):
        with pytest.raises(ValueError):
            sweep(0.5, [10.0])
        with pytest.raises(ValueError):
            sweep(1.5, [0.5])

    def test_divergent_rows_for_p2(self):
        rows = sweep(2.0, [5.0, 50.0])
        for row in rows:
            assert is_divergent(row.plane_grad_p)
            assert math.isinf(row.ratio)

    def test_subcritical_ratio_grows(self):
        rows = sweep(1.5, [10.0, 100.0, 1000.0])
        ratios = [r.ratio for r in rows]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))

    def test_p1_full_ratio_limit(self):
        # plane -> 4 pi while surface -> 0 and the curvature term -> 8 pi,
        # so the full quotient settles at one half
        (row,) = sweep(1.0, [1e5])
        assert row.ratio == pytest.approx(0.5, rel=1e-3)
        assert row.plane_grad_p == pytest.approx(4.0 * math.pi, rel=1e-3)

    def test_gradient_ratio_slope_is_p(self):
        p = 1.5
        lams = [10.0 ** k for k in range(1, 5)]
        rows = sweep(p, lams)
        x = np.log([r.lam for r in rows])
        y = np.log([r.gradient_ratio for r in rows])
        slope = np.polyfit(x, y, 1)[0]
        assert abs(slope - p) / p < 0.1

    def test_threaded_sweep_matches_serial(self):
        lams = [2.0, 5.0, 9.0]
        serial = sweep(1.5, lams, jobs=1)
        parallel = sweep(1.5, lams, jobs=3)
        for a, b in zip(serial, parallel):
            assert a.plane_grad_p == b.plane_grad_p

    def test_mesh_cross_check(self):
        rows = sweep(1.5, [2.0, 30.0], mesh_check=True, subdiv=5)
        assert rows[0].mesh_surface is not None
        assert abs(rows[0].mesh_surface - rows[0].surface_grad_p) / rows[0].surface_grad_p < 0.05
        assert not rows[0].flagged
        assert rows[1].flagged  # lambda beyond what the mesh resolves

    def test_csv_output(self):
        text = sweep_to_csv(sweep(2.0, [3.0]))
        header, row = text.strip().split("\n")
        assert header.startswith("lambda,p,")
        assert "divergent" in row
        assert "inf" in row


class TestLambdaBar:
    def test_argument_checks(self):
        with pytest.raises(ValueError):
            find_lambda_bar(1.0, 1.0)
        with pytest.raises(ValueError):
            find_lambda_bar(0.0, 1.5)

    def test_supercritical_threshold_is_one(self):
        assert find_lambda_bar(10.0, 2.0) == 1.0
        assert find_lambda_bar(1e6, 3.0) == 1.0

    def test_finite_and_monotone_in_n(self):
        bars = [find_lambda_bar(N, 1.5) for N in (1.0, 10.0, 100.0)]
        assert all(math.isfinite(b) for b in bars)
        assert bars[0] < bars[1] < bars[2]

    def test_threshold_actually_crosses(self):
        N, p = 10.0, 1.5
        bar = find_lambda_bar(N, p)
        (above,) = sweep(p, [bar * 1.01])
        (below,) = sweep(p, [bar * 0.99])
        assert above.ratio > N
        assert below.ratio < N


class TestAsymptoticCheck:
    def test_corrected_constant_matches(self):
        surface_ratio, plane_ratio, plane_corrected = asymptotic_check(1.5, 1e5)
        assert surface_ratio == pytest.approx(1.0, rel=1e-4)
        assert plane_corrected == pytest.approx(1.0, rel=1e-3)
        # the printed constant is off by a fixed power of two
        assert abs(plane_ratio - 1.0) > 0.1

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            asymptotic_check(2.5, 10.0)
        with pytest.raises(ValueError):
            asymptotic_check(1.5, 0.5)


class TestSphereExclusion:
    def test_sphere_curvature_exceeds_admissible_bound(self):
        tc = total_mean_curvature(make_sphere(4))
        limit = 1.0 / const.brendle_constant(2, 1)
        assert limit == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-12)
        assert tc == pytest.approx(4.0 * math.sqrt(math.pi), rel=0.02)
        assert tc > limit
