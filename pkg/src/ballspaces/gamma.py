"""Gamma-function ratios and the closed-form constants built from them.

Everything that involves a gamma function elsewhere in the package goes
through here.  Ratios are formed in log space (or as finite products of
linear factors) and exponentiated once, so arguments well beyond 170 are
fine as long as the ratio itself is representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

#: distance to a pole of Gamma below which we refuse to evaluate
POLE_TOL = 1e-12
#: distance to a negative integer below which operator parameters are invalid
PARAM_TOL = 1e-9


class GammaPoleError(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


def _pole_distance(x: float) -> float:
    """Distance from ``x`` to the nearest nonpositive integer."""
    if x > 0.5:
        return x
    return abs(x - round(x)) if round(x) <= 0 else abs(x)


def log_gamma(x: float) -> tuple[float, int]:
    """``(log|Gamma(x)|, sign(Gamma(x)))``.

    Positive arguments use the C library ``lgamma``; negative ones go through
    the reflection formula ``Gamma(x) Gamma(1-x) = pi / sin(pi x)``.
    """
    x = float(x)
    if _pole_distance(x) <= POLE_TOL:
        raise GammaPoleError(f"Gamma has a pole at {round(x)} (argument {x!r})")
    if x > 0:
        return math.lgamma(x), 1
    # reduce before taking sin so that large |x| keeps full accuracy
    s = abs(math.sin(math.pi * (x - round(x))))
    value = math.log(math.pi) - math.log(s) - math.lgamma(1.0 - x)
    # sign of Gamma(x) on (-k-1, -k) is (-1)^(k+1)
    sign = -1 if math.floor(x) % 2 else 1
    return value, sign


def gamma_ratio(a: float, b: float) -> float:
    """``Gamma(a) / Gamma(b)``."""
    la, sa = log_gamma(a)
    lb, sb = log_gamma(b)
    return sa * sb * math.exp(la - lb)


def log_gamma_ratio(a: float, b: float) -> tuple[float, int]:
    la, sa = log_gamma(a)
    lb, sb = log_gamma(b)
    return la - lb, sa * sb


def rising_ratio(a: float, b: float, k: int) -> float:
    """``Gamma(a+k) Gamma(b) / (Gamma(a) Gamma(b+k))`` for integer ``k >= 0``.

    Products of ``k`` linear factors for moderate ``k``; log-gamma beyond.
    """
    if k == 0:
        return 1.0
    if k <= 500:
        out = 1.0
        for j in range(k):
            out *= (a + j) / (b + j)
        return out
    la, sa = log_gamma_ratio(a + k, a)
    lb, sb = log_gamma_ratio(b + k, b)
    return sa * sb * math.exp(la - lb)


# ---------------------------------------------------------------------------
# fractional radial operator symbols
# ---------------------------------------------------------------------------

def _near_negative_integer(x: float, tol: float = PARAM_TOL) -> bool:
    r = round(x)
    return r <= -1 and abs(x - r) <= tol


@dataclass(frozen=True)
class FracOpParams:
    """Parameters ``(n, s, t)`` of the operator pair ``R^{s,t}`` / ``R_{s,t}``."""

    n: int
    s: float
    t: float

    @property
    def valid(self) -> bool:
        return not (_near_negative_integer(self.n + self.s) or _near_negative_integer(self.n + self.s + self.t))

    def check(self) -> FracOpParams:
        if not self.valid:
            raise InvalidParameters(
                f"n+s = {self.n + self.s} or n+s+t = {self.n + self.s + self.t} is a negative integer")
        return self

    def inverse(self) -> FracOpParams:
        """Parameters of ``R^{s+t,-t}``, which is the inverse operator ``R_{s,t}``."""
        return FracOpParams(self.n, self.s + self.t, -self.t)


def frac_coeff(params: FracOpParams, k: int) -> float:
    """Symbol of ``R^{s,t}`` on homogeneous polynomials of degree ``k``.

    ``Gamma(n+1+s) Gamma(n+1+k+s+t) / (Gamma(n+1+s+t) Gamma(n+1+k+s))``.
    """
    params.check()
    if k < 0:
        raise ValueError("order must be nonnegative")
    a = params.n + 1 + params.s + params.t
    b = params.n + 1 + params.s
    return rising_ratio(a, b, k)


def stirling_ratio(params: FracOpParams, k: int) -> float:
    """``Gamma(n+1+k+s+t) / (Gamma(n+1+k+s) k^t)``, which tends to 1.

    This is ``frac_coeff(params, k) / k**t`` with the constant
    ``Gamma(n+1+s) / Gamma(n+1+s+t)`` divided out, so that the limit is 1 for
    every valid parameter set.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    params.check()
    if params.t == 0:
        return 1.0
    a = params.n + 1 + params.s + params.t
    b = params.n + 1 + params.s
    lr, sr = log_gamma_ratio(a + k, b + k)
    return sr * math.exp(lr - params.t * math.log(k))


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def normalization_c(n: int, gamma: float) -> float:
    """``c_gamma = Gamma(n+gamma+1) / (n! Gamma(gamma+1))``.

    ``c_gamma (1-|z|^2)^gamma dv`` is a probability measure when ``dv`` is
    the volume measure normalized so that ``v(B_n) = 1``.
    """
    if gamma <= -1:
        raise ValueError(f"weight exponent must exceed -1, got {gamma}")
    return math.exp(math.lgamma(n + gamma + 1) - math.lgamma(n + 1) - math.lgamma(gamma + 1))


def log_monomial_mass(m: Sequence[int], gamma: float, normalized: bool = False) -> float:
    if gamma <= -1:
        raise ValueError(f"weight exponent must exceed -1, got {gamma}")
    n, k = len(m), sum(m)
    log_mf = math.fsum(math.lgamma(mi + 1) for mi in m)
    if normalized:
        return log_mf + math.lgamma(n + gamma + 1) - math.lgamma(n + k + gamma + 1)
    return math.lgamma(n + 1) + math.lgamma(gamma + 1) + log_mf - math.lgamma(n + k + gamma + 1)


def monomial_mass(m: Sequence[int], gamma: float, normalized: bool = False) -> float:
    """``int |z^m|^2 (1-|z|^2)^gamma dv(z)``, optionally times ``c_gamma``.

    Unnormalized: ``n! Gamma(gamma+1) m! / Gamma(n+|m|+gamma+1)``.
    Normalized:   ``m! Gamma(n+gamma+1) / Gamma(n+|m|+gamma+1)``.
    """
    return math.exp(log_monomial_mass(m, gamma, normalized))


def sphere_monomial_mass(m: Sequence[int]) -> float:
    """``int_S |zeta^m|^2 dsigma = (n-1)! m! / (n-1+|m|)!``."""
    n, k = len(m), sum(m)
    return math.exp(math.lgamma(n) + math.fsum(math.lgamma(mi + 1) for mi in m) - math.lgamma(n + k))


def lgamma_array(x) -> np.ndarray:
    """Vectorized ``log|Gamma|`` for arrays."""
    return gammaln(np.asarray(x, dtype=float))


__all__ = [
    "FracOpParams", "GammaPoleError", "InvalidParameters", "PARAM_TOL", "POLE_TOL", "frac_coeff",
    "gamma_ratio", "lgamma_array", "log_gamma", "log_gamma_ratio", "log_monomial_mass", "monomial_mass",
    "normalization_c", "rising_ratio", "sphere_monomial_mass", "stirling_ratio",
]
