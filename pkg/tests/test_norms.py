import math

import numpy as np
import pytest

from ballspaces.functions import PowerAtom
from ballspaces.norms import (SpaceParams, SupGrid, bergman_norm, bergman_norm_p2, hardy_norm_homog,
                              lipschitz_norm, pairing_gamma, pairing_volume, pointwise_bound_probe, smallest_N)
from ballspaces.quadrature import QuadratureSpec
from ballspaces.series import TaylorPolynomial, random_polynomial

T = TaylorPolynomial
z = T.coordinate(0, 1)


def test_smallest_N():
    assert smallest_N(1, 0) == 0
    assert smallest_N(2, -3) == 2
    assert smallest_N(0.5, -2) == 3
    assert SpaceParams(1, 0.5, -2).N == 3


def test_norm_p2_examples():
    assert bergman_norm_p2(T.constant(3 + 4j, 1), SpaceParams(1, 2, 0)) == pytest.approx(5)
    assert bergman_norm_p2(z, SpaceParams(1, 2, 0)) == pytest.approx(math.sqrt(0.5))
    assert bergman_norm_p2(z, SpaceParams(1, 2, -3)) == pytest.approx(math.sqrt(1 / 6))


def test_norm_normalized():
    assert bergman_norm_p2(z, SpaceParams(1, 2, 1), normalized=True) == pytest.approx(
        math.sqrt(2 * 1 / 6))


def test_quadrature_norm_matches_exact(rng):
    for n, alpha in ((1, 0.0), (1, -3.0), (2, 0.5)):
        f = random_polynomial(rng, n, 4)
        sp = SpaceParams(n, 2, alpha)
        est = bergman_norm(f, sp, QuadratureSpec(samples=10 ** 5))
        assert est.value == pytest.approx(bergman_norm_p2(f, sp), rel=1e-3)


def test_quadrature_norm_p1():
    assert bergman_norm(z, SpaceParams(1, 1, 0)).value == pytest.approx(2 / 3, rel=1e-10)
    assert bergman_norm(T.zero(1), SpaceParams(1, 1, 0)).value == 0


def test_closed_form_atom_norm():
    # (1 - z conj(a))^-2 has Taylor coefficients (k+1) conj(a)^k
    a = 0.6
    f = PowerAtom((a,), 2.0)
    series = T(1, 200, {(k,): (k + 1) * a ** k for k in range(201)})
    sp = SpaceParams(1, 2, 1.0)
    assert bergman_norm(f, sp).value == pytest.approx(bergman_norm_p2(series, sp), rel=1e-9)


def test_hardy_norm_homog():
    for k in (0, 3, 10):
        assert hardy_norm_homog((k,), 1.3) == pytest.approx(1)
    assert hardy_norm_homog((1, 1), 2) ** 2 == pytest.approx(1 / 6)


def test_lipschitz_norm():
    assert lipschitz_norm(T.constant(2j, 1), 0.5).value == pytest.approx(2)
    est = lipschitz_norm(z, 0.0, SupGrid(radii=4000))
    assert est.value == pytest.approx(2 / (3 * math.sqrt(3)), rel=1e-4)
    geo = T(1, 200, {(k,): 1 for k in range(201)})
    assert lipschitz_norm(geo, -1.0, SupGrid(r_max=0.99)).value <= 3.0


def test_pairings():
    one = T.constant(1, 2)
    assert pairing_volume(one, one) == pytest.approx(1)
    assert pairing_volume(T.coordinate(0, 2), T.coordinate(1, 2)) == 0
    for k in range(5):
        assert pairing_volume(T.monomial((k,)), T.monomial((k,))) == pytest.approx(1 / (k + 1))
    f = T(1, 2, {(0,): 2, (1,): 1, (2,): 3})
    assert pairing_gamma(f, T.constant(1, 1), 1, 0.0) == pytest.approx(2)
    assert pairing_gamma(z, z, 1, 0.0) == pytest.approx(1 / 12)
    assert pairing_gamma(f, 1j * f, 1, 0.0) == pytest.approx(-1j * pairing_gamma(f, f, 1, 0.0))


def test_pointwise_probe():
    sp = SpaceParams(1, 2, 0)
    c = pointwise_bound_probe(T.constant(1, 1), sp)
    assert c.profile[0] == pytest.approx(c.constant)
    assert c.profile[-1] < 0.01
    geo = T(1, 400, {(k,): 1 for k in range(401)})
    pr = pointwise_bound_probe(geo, sp, SupGrid(r_max=0.99))
    assert np.all(np.isfinite(pr.profile)) and pr.constant < 2
    poly = pointwise_bound_probe(T(1, 3, {(1,): 1, (3,): 2}), sp, SupGrid(r_max=0.9999))
    assert poly.profile[-1] < 1e-3
