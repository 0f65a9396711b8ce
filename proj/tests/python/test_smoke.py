import math

import numpy as np
import pytest

import emlab


def test_dirac_1d():
    d = emlab.Domain.unit_box(1, 0.25)
    r = emlab.solve_linear(d, emlab.Measure.dirac(d, [0.5]))
    np.testing.assert_allclose(r["u"], [0.125, 0.25, 0.125], atol=1e-14)
    assert r["residual_linf"] < 1e-12


def test_measure_text_and_density():
    mu = emlab.Measure.from_text("2 1/8 0 1 0 1\natom 0.5 0.5 2 singular\n")
    assert mu.domain.size == 49
    assert mu.tv_norm() == pytest.approx(2.0)
    d = mu.domain
    nu = emlab.Measure(d, density=np.ones(d.size))
    assert (mu + nu).total_mass() == pytest.approx(2.0 + 49 / 64)
    with pytest.raises(ValueError):
        emlab.Measure(d, density=np.ones(3))


def test_kato_and_nonlinear_routes():
    d = emlab.Domain.centered_ball(2, 1.0, 1 / 8)
    rng = np.random.default_rng(1)
    u = rng.uniform(-1, 1, d.size)
    mu = emlab.Measure(d, density=rng.uniform(-3, 3, d.size))
    g = emlab.Nonlinearity("power:3")
    sols = [emlab.solve_nonlinear(d, g, mu, route) for route in ("energy", "bracket", "contraction")]
    assert all(s["converged"] for s in sols)
    h2 = d.h ** 2
    for s in sols[1:]:
        assert np.abs(s["u"] - sols[0]["u"]).sum() * h2 < 1e-5
    assert np.abs(sols[0]["g_u"]).sum() * h2 <= mu.tv_norm() + 1e-6
    z = emlab.solve_linear(d, emlab.Measure(d, density=u))["u"]
    # Delta = -L, so Delta z = -u
    assert emlab.check_kato(d, z, -u - 1e-9).passed


def test_reduced_and_threshold():
    d = emlab.Domain.centered_ball(2, 1.0, 1 / 16)
    r = emlab.reduced_measure(d, emlab.Nonlinearity("tanh"), emlab.Measure.dirac(d, [0, 0], 1.0, True))
    assert r["complete"] and r["good"]
    i = emlab.exponential_integral(2 * math.pi, 1 / 64)
    assert abs(i - 2 * math.pi) < 0.1 * 2 * math.pi
    assert i <= emlab.brezis_merle_bound(2 * math.pi, 2.0)


def test_geometry():
    value, balls = emlab.hausdorff_cover(2, [[0, 0], [1, 0], [0, 1]], 0.0, 0.4)
    assert value == 3.0 and len(balls) == 3
    assert emlab.omega(2) == pytest.approx(math.pi)
    assert emlab.frostman_check(2, [[0.5, 0.5]], [1.0], 1.0, 0.0)
    assert not emlab.frostman_check(2, [[0.5, 0.5]], [2.0], 1.0, 0.0)
    assert emlab.greedy_decompose(2, [[0, 0]], [2.0], 1.0, 0.0) == []


def test_capacity():
    d = emlab.Domain.unit_box(2, 1 / 32)
    r = emlab.capacitary_potential(d, [d.nearest_node([0.5, 0.5])])
    assert r["u"].max() == 1.0 and r["u"].min() >= 0.0
    assert r["nu_mass"] == pytest.approx(r["cap"], rel=1e-9)
    assert all(c.passed for c in r["equivalence"])
