import math

import numpy as np
import pytest

from ballspaces.carleson import (DiscreteMeasure, ProbeGrid, TailError, bergman_dist, berezin, berezin_sup,
                                 carleson_constant, embedding_probe, forelli_rudin, forelli_rudin_mc, mass_D,
                                 mass_Q, mobius, muhat, one_minus_phi2, random_measure, report_csv,
                                 shell_measure)
from ballspaces.functions import PowerAtom
from ballspaces.norms import SpaceParams
from ballspaces.quadrature import QuadratureSpec


def _pts(rng, count, n, rmax=0.99):
    P = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    P /= np.linalg.norm(P, axis=1)[:, None]
    return P * (rmax * rng.random(count) ** (1 / (2 * n)))[:, None]


def test_mobius_examples():
    z = np.array([0.3 + 0.1j])
    assert np.allclose(mobius([0], z), -z)
    a = np.array([0.2, -0.5j])
    assert np.allclose(mobius(a, a), 0, atol=1e-15)
    assert np.allclose(mobius(a, np.zeros(2)), a)
    d = one_minus_phi2([0.5], [0.5j])[0]
    assert d == pytest.approx(0.5625 / 1.0625, rel=1e-14)
    phi = mobius([0.5], [0.5j])
    assert 1 - abs(phi[0]) ** 2 == pytest.approx(d, rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_mobius_identity_and_involution(n, rng):
    A = _pts(rng, 1000, n)
    Z = _pts(rng, 1000, n)
    for a, z in zip(A, Z):
        w = mobius(a, z)
        lhs = 1 - np.vdot(w, w).real
        rhs = (1 - np.vdot(a, a).real) * (1 - np.vdot(z, z).real) / abs(1 - np.vdot(a, z)) ** 2
        assert abs(lhs - rhs) <= 1e-12
    assert np.allclose(mobius(A[0], mobius(A[0], Z)), Z, atol=1e-10)


def test_bergman_dist(rng):
    assert bergman_dist([0], [0]) == 0
    w = np.array([0.6j])
    assert bergman_dist([0], w) == pytest.approx(0.5 * math.log(1.6 / 0.4))
    Z, W = _pts(rng, 100, 2, 0.999), _pts(rng, 100, 2, 0.999)
    for z, w in zip(Z, W):
        assert abs(bergman_dist(z, w) - bergman_dist(w, z)) <= 1e-12 * max(1, bergman_dist(z, w))
        assert bergman_dist(z, z) == pytest.approx(0, abs=1e-7)


def test_mass_examples():
    mu = DiscreteMeasure.dirac([0], 2.5)
    assert mass_Q(mu, [1], 1.0) == 0
    assert mass_Q(mu, [1j], 1.01) == 2.5
    for R in (1e-3, 1, 10):
        assert mass_D(mu, [0], R) == 2.5
    two = DiscreteMeasure(1, [[0.9], [-0.9]], [1, 1])
    assert mass_Q(two, [1], 0.2) == 1
    with pytest.raises(ValueError):
        mass_Q(two, [0.5], 0.2)


def test_measure_validation_and_json(rng):
    with pytest.raises(ValueError):
        DiscreteMeasure(1, [[0.1]], [0])
    with pytest.raises(ValueError):
        DiscreteMeasure(1, [[1.0]], [1])
    mu = random_measure(2, 10, rng)
    back = DiscreteMeasure.from_json(mu.to_json())
    assert np.array_equal(back.points, mu.points) and np.array_equal(back.masses, mu.masses)


def test_carleson_examples():
    grid = ProbeGrid(1, np.array([[1 + 0j]]), np.array([1.01, 2.0]), np.zeros((0, 1)))
    assert carleson_constant(DiscreteMeasure.empty(1), 0, grid) == 0
    c = carleson_constant(DiscreteMeasure.dirac([0]), 0, grid)
    assert c == pytest.approx(1 / 1.01 ** 2)
    assert round(c, 3) == 0.980


def test_carleson_shell_stabilizes(rng):
    # surface-like atoms: mu(Q_r) ~ r^n for the sphere measure, so use alpha = -1
    vals = []
    for eps in (0.02, 0.01, 0.005):
        mu = shell_measure(1, eps, 400, np.random.default_rng(3))
        vals.append(carleson_constant(mu, -1, ProbeGrid.default(1, seed=5).with_atoms(mu)))
    assert abs(vals[1] / vals[0] - 1) < 0.25 and abs(vals[2] / vals[1] - 1) < 0.25


def test_berezin_dirac():
    mu = DiscreteMeasure.dirac([0])
    z = np.array([[0.3], [0.5j], [-0.9]])
    assert np.allclose(berezin(mu, 1.5, 0.0, z), (1 - np.abs(z[:, 0]) ** 2) ** 1.5)
    R = 0.5
    inside = bergman_dist([0], z) < R
    expect = np.where(inside, (1 - np.abs(z[:, 0]) ** 2) ** -(2 + 0.3), 0)
    assert np.allclose(muhat(mu, R, 0.3, z), expect)


def test_muhat_dominated_by_berezin(rng):
    mu = random_measure(1, 50, rng)
    pts = ProbeGrid.default(1, n_zeta=40).berezin_points(mu)[:1000]
    mh = muhat(mu, 0.5, 0.0, pts)
    B = berezin(mu, 1.0, 0.0, pts)
    C = np.max(mh / B)
    assert np.isfinite(C) and C > 0


@pytest.mark.parametrize("seed", range(5))
def test_carleson_vs_berezin_sup(seed):
    rng = np.random.default_rng(seed)
    mu = random_measure(1, 40, rng)
    alpha, s = 0.0, 1.0
    grid = ProbeGrid.default(1, seed=seed).with_atoms(mu)
    assert carleson_constant(mu, alpha, grid) <= 2 ** (2 + alpha + s) * berezin_sup(mu, s, alpha, grid)


def test_forelli_rudin_basics():
    assert forelli_rudin(0, 0, 1, n=1).value == pytest.approx(1)
    assert forelli_rudin(0, 1.5, -0.3, n=2).value == pytest.approx(
        math.factorial(2) * math.gamma(2.5) / math.gamma(4.5))
    vals = [forelli_rudin(r, 0, -0.5).value for r in (0.9, 0.99, 0.999)]
    assert vals[0] < vals[1] < vals[2]
    assert vals[2] - vals[1] < vals[1] - vals[0]


def test_forelli_rudin_slope():
    rhos = [0.9, 0.95, 0.99, 0.995, 0.999]
    for t in (0.5, 1.0):
        x = [-math.log(1 - r * r) for r in rhos]
        y = [math.log(forelli_rudin(r, -0.9, t).value) for r in rhos]
        slope = np.polyfit(x, y, 1)[0]
        assert abs(slope - t) <= 0.05 * t


def test_forelli_rudin_log_case():
    a, b = (forelli_rudin(r, 0, 0).value / -math.log(1 - r * r) for r in (0.99, 0.999))
    assert abs(a / b - 1) < 0.1


def test_forelli_rudin_vs_quadrature():
    for n, s, t in [(1, 0.5, 0.7), (2, 0.0, -0.4)]:
        ser = forelli_rudin(0.6, s, t, n=n).value
        q = forelli_rudin_mc(0.6, s, t, n, QuadratureSpec(samples=2 ** 15))
        assert abs(ser - q.value) <= max(6 * q.stderr, 1e-9 * ser)


def test_forelli_rudin_errors():
    with pytest.raises(ValueError):
        forelli_rudin(0.5, -1, 0)
    with pytest.raises(TailError):
        forelli_rudin(0.999999, 0, 1, max_terms=10_000)


def test_embedding_probe():
    sp = SpaceParams(1, 2, 0)
    fam = [PowerAtom((a,), (2 + 0.5) / 2) for a in (0.5, 0.9, 0.99)]
    rep = embedding_probe(DiscreteMeasure.empty(1), sp, 2, 0, fam)
    assert rep.ratios == [0, 0, 0] and rep.statistic == 0
    a = 0.6
    rep = embedding_probe(DiscreteMeasure.dirac([a]), sp, 2, 0, fam, R=0.1)
    assert rep.branch == "p<=q"
    assert rep.statistic == pytest.approx((1 - a * a) ** -2)
    assert max(rep.ratios) < 10 * rep.statistic
    rep = embedding_probe(DiscreteMeasure.dirac([0.3]), SpaceParams(1, 2, 0), 1, 0, fam[:1],
                          quad=QuadratureSpec(radial_nodes=16))
    assert rep.branch == "q<p" and rep.statistic > 0


def test_report_csv():
    out = report_csv([("carleson", "g1", 0.25, 7)])
    assert out.splitlines() == ["statistic,grid-id,value,seed", "carleson,g1,0.25,7"]
