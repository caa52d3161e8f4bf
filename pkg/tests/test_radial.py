import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ballspaces.gamma import FracOpParams
from ballspaces.radial import (euler_radial, frac_radial, partial_derivative, power_multiplier, radial_antipower,
                               radial_derivative, radial_power, rst, rst_inv)
from ballspaces.series import TaylorPolynomial, random_polynomial

T = TaylorPolynomial


def test_radial_power():
    assert radial_power(T.monomial((1, 2)), 1).allclose(T.monomial((1, 2), 3))
    assert radial_power(T.constant(5, 2), 1).is_zero()
    f = T(1, 2, {(1,): 1, (2,): 1})
    assert radial_power(f, 2).allclose(T(1, 2, {(1,): 1, (2,): 4}))


def test_radial_antipower(rng):
    f = random_polynomial(rng, 2, 5)
    assert radial_antipower(radial_power(f, 2), 2).allclose(f - f.constant_term)
    assert radial_antipower(T.monomial((3,)), 2).allclose(T.monomial((3,), 1 / 9))
    assert radial_antipower(T.constant(7, 1), 1).is_zero()


def test_frac_radial(rng):
    f = random_polynomial(rng, 2, 5)
    assert frac_radial(f, 1).allclose(radial_derivative(f))
    assert frac_radial(T.monomial((4,)), 0.5).allclose(T.monomial((4,), 2.0))
    assert frac_radial(frac_radial(f, 1), -1).allclose(f - f.constant_term)


def test_rst():
    P = FracOpParams(1, 0, 1)
    assert rst(T.constant(1, 1), P).allclose(T.constant(1, 1))
    for k in range(6):
        assert rst(T.monomial((k,)), P).allclose(T.monomial((k,), (k + 2) / 2))


def test_partial_derivative():
    assert partial_derivative(T.monomial((2, 1)), (1, 0)).allclose(T.monomial((1, 1), 2))
    assert partial_derivative(T.monomial((1, 0)), (0, 2)).is_zero()


def test_euler_identity(rng):
    for n in (1, 2, 3):
        f = random_polynomial(rng, n, 5)
        assert euler_radial(f).allclose(radial_derivative(f), rtol=1e-13)


def test_power_multiplier(rng):
    f = random_polynomial(rng, 2, 5)
    assert power_multiplier(f, 0) is f
    g = power_multiplier(T.monomial((2, 2)), -1)
    assert g[(2, 2)] == pytest.approx(0.25)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2), st.floats(-5, 5), st.floats(-5, 5), st.integers(0, 2 ** 32 - 1))
def test_rst_inverse_property(n, s, t, seed):
    P = FracOpParams(n, s, t)
    if not P.valid:
        return
    f = random_polynomial(np.random.default_rng(seed), n, 8)
    assert rst_inv(rst(f, P), P).allclose(f, rtol=1e-11)
    # R_{s,t} is R^{s+t,-t}
    assert rst_inv(f, P).allclose(rst(f, P.inverse()), rtol=1e-11)
