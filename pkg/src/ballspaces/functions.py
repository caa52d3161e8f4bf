"""Closed-form holomorphic test functions that are not polynomials.

Anything with ``n``, ``constant_term``, ``__call__`` on ``(P, n)`` arrays and
``radial_eval(points, k)`` (values of ``R^k f``) can be fed to the quadrature
norms in :mod:`ballspaces.norms`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import poch, stirling2

from .series import TaylorPolynomial, evaluate_many


@lru_cache(maxsize=None)
def _stirling_row(k: int) -> tuple[int, ...]:
    return tuple(int(stirling2(k, j, exact=True)) for j in range(k + 1))


def radial_power_of_power(x: np.ndarray, b: float, k: int) -> np.ndarray:
    """``(x d/dx)^k (1-x)^{-b}`` at complex ``x`` with ``|x| < 1``.

    ``R`` acts on a function of ``x = <z, a>`` as ``x d/dx``, and
    ``(x d/dx)^k = sum_j S(k, j) x^j (d/dx)^j`` (Stirling numbers of the
    second kind), with ``(d/dx)^j (1-x)^{-b} = (b)_j (1-x)^{-b-j}``.
    """
    x = np.asarray(x, dtype=complex)
    base = 1 - x
    if k == 0:
        return base ** (-b)
    out = np.zeros_like(x)
    for j, s in enumerate(_stirling_row(k)):
        if s:
            out += s * poch(b, j) * x ** j * base ** (-b - j)
    return out


@dataclass(frozen=True)
class PowerAtom:
    """``f(z) = scale * (1 - <z, a>)^{-b}``."""

    a: tuple[complex, ...]
    b: float
    scale: complex = 1.0

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def constant_term(self) -> complex:
        return complex(self.scale)

    def _x(self, points) -> np.ndarray:
        Z = np.asarray(points, dtype=complex).reshape(-1, self.n)
        return Z @ np.conj(np.asarray(self.a, dtype=complex))

    def __call__(self, points) -> np.ndarray:
        return self.scale * (1 - self._x(points)) ** (-self.b)

    def radial_eval(self, points, k: int) -> np.ndarray:
        return self.scale * radial_power_of_power(self._x(points), self.b, k)


@dataclass(frozen=True)
class FunctionSum:
    """Finite linear combination of test functions (atoms or polynomials)."""

    terms: tuple

    @property
    def n(self) -> int:
        return self.terms[0].n

    @property
    def constant_term(self) -> complex:
        return sum((complex(t.constant_term) for t in self.terms), 0j)

    def __call__(self, points) -> np.ndarray:
        return sum(evaluate_fn(t, points) for t in self.terms)

    def radial_eval(self, points, k: int) -> np.ndarray:
        return sum(radial_eval_fn(t, points, k) for t in self.terms)


def evaluate_fn(f, points) -> np.ndarray:
    """Values of a polynomial or closed-form test function at ``(P, n)`` points."""
    if isinstance(f, TaylorPolynomial):
        return evaluate_many(f, points)
    return np.asarray(f(points), dtype=complex)


def radial_eval_fn(f, points, k: int) -> np.ndarray:
    """Values of ``R^k f``."""
    if isinstance(f, TaylorPolynomial):
        from .radial import radial_power
        return evaluate_many(radial_power(f, k) if k else f, points)
    return np.asarray(f.radial_eval(points, k), dtype=complex)


def point_array(points, n: int) -> np.ndarray:
    if hasattr(points, "coords"):
        return np.asarray(points.coords, dtype=complex).reshape(1, n)
    arr = np.asarray(points, dtype=complex)
    if arr.ndim == 1 and arr.shape[0] == n and n > 1:
        return arr.reshape(1, n)
    return arr.reshape(-1, n)


__all__ = [
    "FunctionSum", "PowerAtom", "evaluate_fn", "point_array", "radial_eval_fn", "radial_power_of_power",
]
