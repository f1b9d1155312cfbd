import math

import pytest

import bohmlab as bl

C = math.sqrt(2.0) / 2.0


def test_velocity_and_psi():
    m = bl.Model.harmonic3(1.0, 1.0, C)
    vx, vy = m.velocity(0.5, -0.3, 1.2)
    assert math.isfinite(vx) and math.isfinite(vy)
    psi = m.psi(0.5, -0.3, 1.2)
    assert abs(psi) > 0


def test_stationary_trajectory():
    m = bl.Model.harmonic3(0.0, 0.0, C)
    cfg = bl.IntegratorConfig()
    cfg.dt = 0.01
    cfg.t_end = 5.0
    rec = bl.integrate(m, 1.0, 1.0, cfg)
    t, x, y = rec.samples[-1]
    assert x == pytest.approx(1.0, abs=1e-12)
    assert y == pytest.approx(1.0, abs=1e-12)


def test_nodal_point_is_a_zero():
    m = bl.Model.harmonic3(1.0, 1.0, C)
    xn, yn = m.nodal_point(0.7)
    with pytest.raises(bl.NodeSingularity):
        m.psi(xn, yn, 0.7)
    assert abs(m.psi(xn + 0.5, yn + 0.5, 0.7)) > 0


def test_series_extrema_table_row():
    sol = bl.outer_series(1.0, 1.0, C, 3.4, 3.4, 15)
    x_min, x_max, y_min, y_max = bl.series_extrema(sol)
    assert x_max == pytest.approx(3.412, abs=5e-3)
    assert y_min == pytest.approx(2.996, abs=5e-3)
    assert len(bl.dump_series(sol).splitlines()) > 10


def test_relaxation_smoke():
    m = bl.Model.harmonic3(1.0, 1.0, C)
    ens = bl.sample_born(m, 0.0, 500, 7)
    assert len(ens) == 500
    cfg = bl.IntegratorConfig()
    cfg.dt = 0.02
    cfg.t_end = 1.0
    rows = bl.relaxation_run(m, ens, cfg, [0.0, 1.0])
    assert len(rows) == 2
    t0, d0, h0, dbar = rows[0]
    assert 2.0 < d0 < 10.0
    assert dbar is None


def test_hh_spectrum_ground_state():
    rows = bl.hh_spectrum(epsilon=0.0, K=60, n_lowest=1)
    n, mq, e = rows[0]
    assert (n, mq) == (0, 0)
    assert e == pytest.approx((1.0 + C) / 2.0, abs=1e-12)


def test_lyapunov_classification_smoke():
    m = bl.Model.harmonic3(0.75, 0.75, C)
    cfg = bl.IntegratorConfig()
    cfg.dt = 0.01
    cfg.t_end = 200.0
    res = bl.lyapunov(m, 0.0, 0.0, cfg)
    assert math.isfinite(res.chi_end)
    assert res.classification in (
        bl.TrajectoryClass.Ordered,
        bl.TrajectoryClass.Chaotic,
        bl.TrajectoryClass.Inconclusive,
    )
