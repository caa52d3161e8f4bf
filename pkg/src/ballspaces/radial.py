"""Diagonal operators on truncated series.

Every operator here multiplies the homogeneous part ``f_k`` by a scalar
depending only on ``k`` (or, for partial derivatives, acts term by term),
so no numerical differentiation happens anywhere.
"""

from __future__ import annotations

from typing import Sequence

from .gamma import FracOpParams, frac_coeff
from .series import TaylorPolynomial, multiply_truncated, unit_index


def radial_power(f: TaylorPolynomial, k: int = 1) -> TaylorPolynomial:
    """``R^k f``: ``f_j -> j^k f_j``; kills the constant term for ``k >= 1``."""
    if k < 0:
        raise ValueError("use radial_antipower for negative powers")
    if k == 0:
        return f
    return f.map_orders(lambda j: float(j) ** k)


def radial_derivative(f: TaylorPolynomial) -> TaylorPolynomial:
    return radial_power(f, 1)


def radial_antipower(f: TaylorPolynomial, k: int = 1) -> TaylorPolynomial:
    """``R^{-k} f``: ``f_j -> j^{-k} f_j`` for ``j >= 1``, constant term sent to 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return f.map_orders(lambda j: float(j) ** -k if j else 0.0)


def frac_radial(f: TaylorPolynomial, t: float) -> TaylorPolynomial:
    """``R^t f = sum_{j>=1} j^t f_j``; the constant term survives only for ``t = 0``."""
    if t == 0:
        return f
    return f.map_orders(lambda j: float(j) ** t if j else 0.0)


def rst(f: TaylorPolynomial, params: FracOpParams) -> TaylorPolynomial:
    """``R^{s,t} f``."""
    params.check()
    return f.map_orders(lambda j: frac_coeff(params, j))


def rst_inv(f: TaylorPolynomial, params: FracOpParams) -> TaylorPolynomial:
    """``R_{s,t} f``, the inverse of :func:`rst`."""
    params.check()
    return f.map_orders(lambda j: 1.0 / frac_coeff(params, j))


def partial_derivative(f: TaylorPolynomial, m: Sequence[int]) -> TaylorPolynomial:
    """``d^{|m|} f / dz_1^{m_1} ... dz_n^{m_n}``, term by term."""
    m = tuple(m)
    if len(m) != f.n:
        raise ValueError(f"multi-index {m} does not match dimension {f.n}")
    out = {}
    for e, a in f.coeffs.items():
        if any(ei < mi for ei, mi in zip(e, m)):
            continue
        c = a
        for ei, mi in zip(e, m):
            for j in range(mi):
                c *= ei - j
        out[tuple(ei - mi for ei, mi in zip(e, m))] = c
    return TaylorPolynomial(f.n, max(f.degree - sum(m), 0), out)


def euler_radial(f: TaylorPolynomial) -> TaylorPolynomial:
    """``R f`` computed as ``sum_i z_i * df/dz_i`` instead of by the degree multiplier."""
    total = TaylorPolynomial.zero(f.n, f.degree)
    for i in range(f.n):
        d = partial_derivative(f, unit_index(f.n, i))
        zi = TaylorPolynomial.coordinate(i, f.n)
        total = total + multiply_truncated(zi, d, f.degree)
    return total


def power_multiplier(f: TaylorPolynomial, e: float) -> TaylorPolynomial:
    """``f(0) + sum_{|m|>0} |m|^e a_m z^m``."""
    if e == 0:
        return f
    return f.map_orders(lambda j: float(j) ** e if j else 1.0)


__all__ = [
    "euler_radial", "frac_radial", "partial_derivative", "power_multiplier", "radial_antipower",
    "radial_derivative", "radial_power", "rst", "rst_inv",
]
