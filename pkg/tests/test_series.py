import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ballspaces.series import (BallPoint, SeriesFormatError, TaylorPolynomial, add, evaluate, evaluate_many,
                               herm_pair, log_kernel_series, mi_factorial, multi_indices_upto,
                               multiply_truncated, power_kernel_series, random_polynomial, scale,
                               series_from_json, series_to_json)

z1 = TaylorPolynomial.coordinate(0, 2)
z2 = TaylorPolynomial.coordinate(1, 2)


def test_herm_pair():
    assert herm_pair((0.5, 0), (0, 0.5)) == 0
    assert herm_pair((0.6, 0), (0.6, 0)) == pytest.approx(0.36)
    assert herm_pair((0.3 + 0.4j, 0), (0.1, 0)) == pytest.approx(0.03 + 0.04j)


def test_ball_point_rejects_boundary():
    BallPoint((0.6, 0.79))
    with pytest.raises(ValueError):
        BallPoint((0.6, 0.8))


def test_add_scale():
    s = add(z1, z2)
    assert s[(1, 0)] == 1 and s[(0, 1)] == 1
    assert scale(z1, 0).is_zero()
    assert add(s, scale(s, -1)).is_zero()


def test_multiply():
    one = TaylorPolynomial.constant(1, 1, 2)
    x = TaylorPolynomial.coordinate(0, 1, 2)
    p = multiply_truncated(one + x, one - x, 2)
    assert p.allclose(TaylorPolynomial(1, 2, {(0,): 1, (2,): -1}))
    f = random_polynomial(np.random.default_rng(1), 2, 4)
    assert multiply_truncated(f, TaylorPolynomial.constant(1, 2), 4).allclose(f)
    geo = TaylorPolynomial(1, 4, {(k,): 1 for k in range(5)})
    assert multiply_truncated(geo, one - x, 4).allclose(TaylorPolynomial.constant(1, 1, 4), atol=1e-15)


def test_multiply_brute_force(rng):
    f = random_polynomial(rng, 2, 5)
    g = random_polynomial(rng, 2, 5)
    h = multiply_truncated(f, g, 6)
    ref = {}
    for m, a in f.items():
        for k, b in g.items():
            s = tuple(x + y for x, y in zip(m, k))
            if sum(s) <= 6:
                ref[s] = ref.get(s, 0) + a * b
    assert h.allclose(TaylorPolynomial(2, 6, ref), atol=1e-13)


def test_evaluate():
    f = TaylorPolynomial.monomial((1, 1))
    assert evaluate(f, (0.5, 0.5j)) == pytest.approx(0.25j)
    assert evaluate(TaylorPolynomial.constant(3, 2), (0.1, 0.2)) == 3
    geo = TaylorPolynomial(1, 50, {(k,): 1 for k in range(51)})
    assert abs(evaluate(geo, (0.5,)) - 2.0) < 1e-14


def test_evaluate_many_matches_scalar(rng):
    f = random_polynomial(rng, 2, 6)
    pts = 0.5 * (rng.standard_normal((20, 2)) + 1j * rng.standard_normal((20, 2))) / 3
    vals = evaluate_many(f, pts)
    for p, v in zip(pts, vals):
        assert v == pytest.approx(evaluate(f, tuple(p)), rel=1e-12)


def test_power_kernel_series():
    w = (0.3 + 0.1j,)
    f = power_kernel_series(2.0, w, 10)
    for k in range(11):
        assert f[(k,)] == pytest.approx((k + 1) * np.conj(w[0]) ** k)
    g = power_kernel_series(1.7, (0.2, 0.4j), 3)
    assert g[(0, 0)] == 1
    assert g[(1, 0)] == pytest.approx(1.7 * 0.2)


def test_log_kernel_series():
    w = (0.5,)
    f = log_kernel_series(w, 8)
    assert f[(0,)] == 1
    for k in range(1, 9):
        assert f[(k,)] == pytest.approx(0.5 ** k / k)
    g = log_kernel_series((0.3, 0.2j), 4)
    assert g[(1, 1)] == pytest.approx(np.conj(0.3 * 0.2j))


def test_mi_factorial_large():
    m = (30, 25)
    assert mi_factorial(m) == pytest.approx(math.factorial(30) * math.factorial(25), rel=1e-12)


def test_json_roundtrip(rng):
    f = random_polynomial(rng, 3, 4, density=0.5)
    assert series_from_json(series_to_json(f)).allclose(f, rtol=0)


@pytest.mark.parametrize("text, idx", [
    ('{"n": 1, "degree": 2, "terms": [{"m": [1], "re": 1}, {"m": [5]}]}', 1),
    ('{"n": 2, "degree": 2, "terms": [{"m": [1]}]}', 0),
    ('{"n": 1, "degree": 2, "terms": [{"m": [1], "re": "x"}]}', 0),
])
def test_json_errors_name_term(text, idx):
    with pytest.raises(SeriesFormatError) as ei:
        series_from_json(text)
    assert ei.value.term_index == idx
    assert f"term {idx}" in str(ei.value)


def test_json_malformed():
    with pytest.raises(SeriesFormatError):
        series_from_json("{not json")


def test_multi_indices_count():
    assert len(list(multi_indices_upto(3, 4))) == math.comb(3 + 4, 4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.integers(0, 5), st.integers(0, 2 ** 32 - 1))
def test_product_evaluates_to_product(n, d, seed):
    rng = np.random.default_rng(seed)
    f, g = random_polynomial(rng, n, d), random_polynomial(rng, n, d)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z *= 0.7 / np.linalg.norm(z)
    lhs = evaluate(multiply_truncated(f, g, 2 * d), z)
    assert lhs == pytest.approx(evaluate(f, z) * evaluate(g, z), rel=1e-10, abs=1e-10)
