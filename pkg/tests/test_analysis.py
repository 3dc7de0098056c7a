import numpy as np
import pytest
from scipy.optimize import brentq

from twinbeam.analysis import (
    Model,
    SweepSpec,
    model_squeezing,
    optimal_gain,
    optimal_probe_transmission_bs,
    squeezing_threshold_gain,
    sweep,
)
from twinbeam.media import OPERATIONAL, bs_model_squeezing, dgl_model_squeezing


class TestOptimalGain:
    def test_t15(self):
        opt = optimal_gain(0.15, 1.0, Model.DGL)
        assert opt.g == pytest.approx(2.0, abs=0.2)
        assert not opt.at_boundary

    def test_t40(self):
        opt = optimal_gain(0.40, 1.0, Model.DGL)
        assert opt.g == pytest.approx(3.8, abs=0.3)

    @pytest.mark.parametrize("t", [0.15, 0.4])
    def test_eta_invariance(self, t):
        gs = [optimal_gain(t, eta, Model.DGL).g for eta in (0.3, 0.5, 1.0)]
        assert max(gs) - min(gs) <= 1e-4

    @pytest.mark.parametrize("model, t", [(Model.DGL, 0.15), (Model.DGL, 0.4), (Model.BS, 0.5)])
    def test_local_minimum_certificate(self, model, t):
        opt = optimal_gain(t, 0.5, model)
        for dg in (-1e-3, 1e-3):
            assert model_squeezing(model, opt.g + dg, t, 0.5) >= opt.s

    def test_matches_fine_scan(self):
        gs = np.linspace(1.5, 2.5, 1001)
        s = [dgl_model_squeezing(g, 0.15, 1.0, slices=2000) for g in gs]
        assert optimal_gain(0.15).g == pytest.approx(gs[int(np.argmin(s))], abs=2e-3)

    def test_bs_near_lossless_hits_boundary(self):
        opt = optimal_gain(0.999, 1.0, Model.BS, g_max=10)
        assert opt.at_boundary
        assert opt.g == 10.0

    def test_operational_convention_shifts_optimum(self):
        # same physics, different gain axis: the optimum noise agrees
        a = optimal_gain(0.15)
        b = optimal_gain(0.15, convention=OPERATIONAL)
        assert b.g < a.g
        assert b.s == pytest.approx(a.s, abs=1e-6)

    @pytest.mark.parametrize("t", [1.0, 0.0])
    def test_rejects_t(self, t):
        with pytest.raises(ValueError):
            optimal_gain(t)


class TestThreshold:
    def test_bs_t15(self):
        g = squeezing_threshold_gain(0.15, 0.5, Model.BS)
        assert g == pytest.approx(1 / 0.85**2, rel=1e-14)
        assert 1.38 <= g <= 1.39

    @pytest.mark.parametrize("t", np.round(np.arange(0.1, 1.0, 0.1), 2))
    @pytest.mark.parametrize("eta", [0.3, 1.0])
    def test_bs_formula_is_root(self, t, eta):
        numeric = brentq(lambda g: bs_model_squeezing(g, t, eta) - 1, 1 + 1e-9, 1e4, xtol=1e-13, rtol=1e-15)
        assert squeezing_threshold_gain(t, eta, Model.BS, g_max=1e4) == pytest.approx(numeric, abs=1e-9)

    def test_bs_lossless_has_none(self):
        assert squeezing_threshold_gain(1.0, 1.0, Model.BS, g_max=1e9) is None
        assert squeezing_threshold_gain(0.99, 1.0, Model.BS, g_max=100) is None

    def test_dgl_t15_none_over_plotted_range(self):
        assert squeezing_threshold_gain(0.15, 0.5, Model.DGL, g_max=4.0) is None

    def test_dgl_t15_crossing_is_a_root(self):
        g = squeezing_threshold_gain(0.15, 0.5, Model.DGL, g_max=10.0)
        assert g is not None and 4 < g < 10
        assert dgl_model_squeezing(g - 1e-3, 0.15, 0.5) < 1 < dgl_model_squeezing(g + 1e-3, 0.15, 0.5)

    def test_dgl_t40_none(self):
        assert squeezing_threshold_gain(0.4, 0.5, Model.DGL, g_max=10.0) is None


class TestOptimalTransmission:
    def test_interior(self):
        t_star, s_star = optimal_probe_transmission_bs(2.0, 1.0)
        assert t_star < 1
        assert s_star < bs_model_squeezing(2.0, 1.0, 1.0)

    @pytest.mark.parametrize("g", [1.01, 1.5, 2.0, 4.0, 20.0])
    def test_stationary_condition(self, g):
        # dS/dt = 0  <=>  g s^2 + (4g - 2) s + 1 = 0 with s = t - 1
        roots = np.roots([g, 4 * g - 2, 1]).real
        s = roots[np.argmin(np.abs(roots))]
        t_star, _ = optimal_probe_transmission_bs(g, 1.0)
        assert t_star == pytest.approx(1 + s, abs=1e-6)

    def test_eta_independent(self):
        a, _ = optimal_probe_transmission_bs(2.0, 1.0)
        b, _ = optimal_probe_transmission_bs(2.0, 0.5)
        assert a == pytest.approx(b, abs=1e-6)

    def test_optimal_loss_shrinks_with_gain(self):
        t_low, _ = optimal_probe_transmission_bs(1.01)
        t_mid, _ = optimal_probe_transmission_bs(2.0)
        t_high, _ = optimal_probe_transmission_bs(20.0)
        assert t_low < t_mid < t_high < 1
        assert 0.95 < t_high < 0.99

    def test_rejects_no_gain(self):
        with pytest.raises(ValueError):
            optimal_probe_transmission_bs(1.0)


class TestSweep:
    def test_bs_lossless(self):
        rows = sweep(SweepSpec(Model.BS, 1.0, 3.0, 0.5, [1.0], 1.0))
        assert [r.g for r in rows] == [1.0, 1.5, 2.0, 2.5, 3.0]
        for r in rows:
            assert r.s_linear == pytest.approx(1 / (2 * r.g - 1), rel=1e-14)
            assert r.s_db == pytest.approx(10 * np.log10(r.s_linear), abs=1e-12)

    def test_dgl_t15_below_snl(self):
        rows = sweep(SweepSpec(Model.DGL, 1.1, 4.0, 0.1, [0.15], 0.5))
        assert all(r.s_linear < 1 for r in rows)

    def test_single_point(self):
        rows = sweep(SweepSpec(Model.DGL, 2.0, 2.0, 0.1, [0.3], 0.5))
        assert len(rows) == 1
        assert rows[0].s_linear == pytest.approx(dgl_model_squeezing(2.0, 0.3, 0.5, slices=2000), abs=1e-15)

    def test_ordering_and_determinism(self):
        spec = SweepSpec("dgl", 1.0, 2.0, 0.25, [0.4, 0.15], 0.5)
        rows = sweep(spec)
        assert [r.t for r in rows] == [0.15] * 5 + [0.4] * 5
        assert rows == sweep(spec)

    def test_grid_endpoint_inclusive(self):
        assert len(SweepSpec(Model.BS, 1.0, 4.0, 0.02, [0.15], 0.5).gains()) == 151

    @pytest.mark.parametrize("kwargs", [
        dict(g_start=0.5), dict(g_stop=0.9), dict(g_step=0.0), dict(t_values=[]),
    ])
    def test_invalid(self, kwargs):
        base = dict(model=Model.BS, g_start=1.0, g_stop=2.0, g_step=0.5, t_values=[0.5], eta=0.5)
        base.update(kwargs)
        with pytest.raises(ValueError):
            SweepSpec(**base)
