"""Reproducing kernels of A^2_alpha in all four weight regimes.

With ``c = n + 1 + alpha`` the kernel is ``Q(z, w) + sum_k b_k <z, w>^k``:

=============  ======================  =====================================
regime         condition               principal part
=============  ======================  =====================================
Standard       ``c > 0``               ``(1 - x)^{-c}``
Log            ``c = 0``               ``1 + log 1/(1 - x)``
FracNeg(N)     ``-N < c < -N + 1``     ``(-1)^N (1 - x)^{-c}``
IntNeg(N)      ``c = -N``              ``(x - 1)^N log 1/(1 - x)``
=============  ======================  =====================================

``Q = sum_{|m| <= N} omega_m z^m conj(w)^m`` only appears in the last two.
The matching inner product is diagonal in the monomials: weight
``m! / (|m|! b_|m|)`` above order ``N`` and ``c_m = 1/(omega_m + b_|m| |m|!/m!)``
at or below it.  By default ``c_m = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gamma import log_gamma_ratio
from .series import (
    MultiIndex, TaylorPolynomial, as_coords, evaluate, herm_pair, inner_power_series, mi_abs,
    mi_log_factorial, multi_indices_upto,
)

REGIME_TOL = 1e-12


class RegimeKind(str, enum.Enum):
    STANDARD = "standard"
    LOG = "log"
    FRAC_NEG = "frac-neg"
    INT_NEG = "int-neg"


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    N: int = 0

    def __str__(self):
        return self.kind.value if self.kind in (RegimeKind.STANDARD, RegimeKind.LOG) else f"{self.kind.value}({self.N})"


def kernel_regime(n: int, alpha: float) -> Regime:
    c = n + 1 + alpha
    if abs(c) <= REGIME_TOL:
        return Regime(RegimeKind.LOG)
    if c > 0:
        return Regime(RegimeKind.STANDARD)
    N = int(round(-c))
    if N >= 1 and abs(c + N) <= REGIME_TOL:
        return Regime(RegimeKind.INT_NEG, N)
    return Regime(RegimeKind.FRAC_NEG, int(math.floor(-c)) + 1)


@lru_cache(maxsize=64)
def _a_coeffs_exact(N: int, K: int) -> tuple[Fraction, ...]:
    poly = [Fraction(math.comb(N, j) * (-1) ** (N - j)) for j in range(N + 1)]
    out = []
    for k in range(K + 1):
        s = Fraction(0)
        for j, pj in enumerate(poly):
            if k - j >= 1:
                s += pj / (k - j)
        out.append(s)
    return tuple(out)


def a_coeffs(N: int, K: int, exact: bool = False) -> list:
    """Taylor coefficients ``A_0..A_K`` of ``(z - 1)^N log 1/(1 - z)``.

    Exact rational convolution of ``(z-1)^N`` with ``sum z^k / k``, so the
    heavy cancellation for ``k >> N`` costs nothing.
    """
    if N < 0 or K < 0:
        raise ValueError("N and K must be nonnegative")
    vals = _a_coeffs_exact(N, K)
    return list(vals) if exact else [float(v) for v in vals]


def principal_coeffs(n: int, alpha: float, degree: int) -> list[float]:
    """``b_0..b_degree`` of the principal part as a series in ``x = <z, w>``."""
    reg = kernel_regime(n, alpha)
    c = n + 1 + alpha
    if reg.kind is RegimeKind.LOG:
        return [1.0] + [1.0 / k for k in range(1, degree + 1)]
    if reg.kind is RegimeKind.INT_NEG:
        return a_coeffs(reg.N, degree)
    out = []
    for k in range(degree + 1):
        lg, sg = log_gamma_ratio(c + k, c)
        out.append(sg * math.exp(lg - math.lgamma(k + 1)))
    if reg.kind is RegimeKind.FRAC_NEG:
        sgn = (-1) ** reg.N
        out = [sgn * b for b in out]
    return out


def _principal_log_weight(n: int, alpha: float, reg: Regime, k: int) -> tuple[float, int]:
    """``log |b_k|`` and sign, computed in log space for large ``k``."""
    c = n + 1 + alpha
    if reg.kind is RegimeKind.LOG:
        return (0.0, 1) if k == 0 else (-math.log(k), 1)
    if reg.kind is RegimeKind.INT_NEG:
        a = _a_coeffs_exact(reg.N, k)[k]
        if a == 0:
            return (-math.inf, 0)
        return math.log(abs(float(a))), (1 if a > 0 else -1)
    lg, sg = log_gamma_ratio(c + k, c)
    if reg.kind is RegimeKind.FRAC_NEG:
        sg *= (-1) ** reg.N
    return lg - math.lgamma(k + 1), sg


@dataclass(frozen=True)
class KernelSpec:
    n: int
    alpha: float
    regime: Regime
    omega: dict = field(default_factory=dict)   # MultiIndex -> omega_m, |m| <= N
    default_q: bool = True

    @classmethod
    def make(cls, n: int, alpha: float, omega: dict | None = None) -> KernelSpec:
        reg = kernel_regime(n, alpha)
        spec = cls(n, float(alpha), reg, {}, omega is None)
        if reg.kind in (RegimeKind.FRAC_NEG, RegimeKind.INT_NEG):
            full = {}
            for m in multi_indices_upto(n, reg.N):
                if omega is not None and m in omega:
                    full[m] = float(omega[m])
                else:
                    full[m] = 1.0 - spec.principal_monomial_coeff(m)
            spec = cls(n, float(alpha), reg, full, omega is None)
            spec.check()
        elif omega:
            raise ValueError(f"Q coefficients only apply to frac-neg / int-neg regimes, not {reg}")
        return spec

    @property
    def N(self) -> int:
        return self.regime.N

    @property
    def has_q(self) -> bool:
        return self.regime.kind in (RegimeKind.FRAC_NEG, RegimeKind.INT_NEG)

    def principal_monomial_coeff(self, m: MultiIndex) -> float:
        """Coefficient of ``z^m conj(w)^m`` in the principal part: ``b_|m| |m|!/m!``."""
        k = mi_abs(m)
        lb, sg = _principal_log_weight(self.n, self.alpha, self.regime, k)
        if sg == 0:
            return 0.0
        return sg * math.exp(lb + math.lgamma(k + 1) - mi_log_factorial(m))

    def check(self) -> KernelSpec:
        """Admissibility of ``Q``: ``omega_m + b_|m| |m|!/m! > 0``."""
        for m, w in self.omega.items():
            if w + self.principal_monomial_coeff(m) <= 0:
                raise ValueError(f"inadmissible Q coefficient omega_{m} = {w}")
        return self

    def log_weight(self, m: MultiIndex) -> float:
        """``log`` of the inner product weight ``<z^m, z^m>``."""
        k = mi_abs(m)
        if self.has_q and k <= self.N:
            return -math.log(self.omega[tuple(m)] + self.principal_monomial_coeff(m))
        lb, sg = _principal_log_weight(self.n, self.alpha, self.regime, k)
        if sg <= 0:
            raise ArithmeticError(f"non-positive principal coefficient at order {k}")
        return mi_log_factorial(m) - math.lgamma(k + 1) - lb

    def weight(self, m: MultiIndex) -> float:
        return math.exp(self.log_weight(m))

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha": self.alpha, "regime": str(self.regime), "default_q": self.default_q,
                "omega": [{"m": list(m), "omega": w} for m, w in sorted(self.omega.items())]}


def stirling_bridge_ratio(m: MultiIndex, alpha: float) -> float:
    """Coefficient-condition weight ``m! e^|m| / |m|^{n+|m|+alpha+1/2}`` over the regime weight.

    For ``alpha > -(n+1)`` the regime weight is ``m! Gamma(n+1+alpha)/Gamma(n+|m|+alpha+1)``.
    """
    n = len(m)
    k = mi_abs(m)
    if k == 0:
        raise ValueError("order must be positive")
    spec = KernelSpec.make(n, alpha)
    log18 = mi_log_factorial(m) + k - (n + k + alpha + 0.5) * math.log(k)
    return math.exp(log18 - spec.log_weight(m))


# -- evaluation ---------------------------------------------------------------

def q_eval(spec: KernelSpec, z, w) -> complex:
    zc, wc = as_coords(z), as_coords(w)
    total = 0j
    for m, om in sorted(spec.omega.items(), key=lambda t: (sum(t[0]), t[0])):
        term = complex(om)
        for a, b, e in zip(zc, wc, m):
            if e:
                term *= (a * b.conjugate()) ** e
        total += term
    return total


def kernel_eval(spec: KernelSpec, z, w) -> complex:
    """Closed-form ``K(z, w)`` (principal branches; ``Re(1 - <z,w>) > 0`` on the ball)."""
    x = herm_pair(z, w)
    one_minus = 1 - x
    if one_minus.real <= 0:
        raise ValueError("points must lie in the ball")
    kind = spec.regime.kind
    c = spec.n + 1 + spec.alpha
    if kind is RegimeKind.STANDARD:
        return complex(np.power(one_minus, -c))
    if kind is RegimeKind.LOG:
        return 1 - complex(np.log(one_minus))
    if kind is RegimeKind.FRAC_NEG:
        return q_eval(spec, z, w) + (-1) ** spec.N * complex(np.power(one_minus, -c))
    return q_eval(spec, z, w) + (x - 1) ** spec.N * (-complex(np.log(one_minus)))


def kernel_series(spec: KernelSpec, w, degree: int) -> TaylorPolynomial:
    """Truncated expansion of ``K(., w)`` in ``z``."""
    b = principal_coeffs(spec.n, spec.alpha, degree)
    f = inner_power_series(b, w, degree)
    if not spec.has_q:
        return f
    wc = as_coords(w)
    extra = {}
    for m, om in spec.omega.items():
        if sum(m) > degree:
            continue
        cw = complex(om)
        for x, e in zip(wc, m):
            if e:
                cw *= complex(x).conjugate() ** e
        extra[m] = cw
    return f + TaylorPolynomial(spec.n, degree, extra)


def inner_product(f: TaylorPolynomial, g: TaylorPolynomial, spec: KernelSpec) -> complex:
    """Regime inner product ``sum_m weight_m a_m conj(b_m)``."""
    if f.n != spec.n or g.n != spec.n:
        raise ValueError("dimension mismatch between series and kernel spec")
    total = 0j
    for m, a in f.items():
        b = g[m]
        if b:
            total += spec.weight(m) * a * b.conjugate()
    return total


def orthonormal_basis(spec: KernelSpec, degree: int) -> list[TaylorPolynomial]:
    """``e_m = weight_m^{-1/2} z^m`` for ``|m| <= degree`` in summation order."""
    return [TaylorPolynomial.monomial(m, math.exp(-0.5 * spec.log_weight(m)), degree)
            for m in multi_indices_upto(spec.n, degree)]


def reproduce_check(f: TaylorPolynomial, spec: KernelSpec, w, degree: int) -> float:
    """``|<f, K(., w)> - f(w)|`` with the kernel truncated at ``degree``."""
    if f.max_order() > degree:
        raise ValueError("degree must be at least the degree of f")
    K = kernel_series(spec, w, degree)
    return abs(inner_product(f, K, spec) - evaluate(f, w))


# -- natural inner product ------------------------------------------------------

def natural_inner_product(f: TaylorPolynomial, g: TaylorPolynomial, alpha: float, k: int) -> complex:
    """``f(0) conj g(0) + int R^k f conj(R^k g) dv_{2k+alpha}`` with normalized ``dv_{2k+alpha}``."""
    if 2 * k + alpha <= -1:
        raise ValueError("need 2k + alpha > -1")
    n = f.n
    gam = 2 * k + alpha
    total = f.constant_term * g.constant_term.conjugate()
    for m, a in f.items():
        d = mi_abs(m)
        if d == 0:
            continue
        b = g[m]
        if b:
            lw = mi_log_factorial(m) + math.lgamma(n + gam + 1) - math.lgamma(n + d + gam + 1)
            total += d ** (2 * k) * math.exp(lw) * a * b.conjugate()
    return total


class TailBoundError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float
    terms: int


def natural_kernel_eval(n: int, alpha: float, k: int, z, w, degree: int | None = None,
                        tol: float = 1e-12, max_terms: int = 2_000_000) -> SeriesValue:
    """``1 + sum_{j>=1} (c)_j/j! j^{-2k} <z,w>^j`` with ``c = n+1+alpha+2k``.

    ``degree=None`` sums until the ratio-test tail bound drops below ``tol``;
    an explicit ``degree`` whose tail bound exceeds ``tol`` raises.
    """
    c = n + 1 + alpha + 2 * k
    if 2 * k + alpha <= -1:
        raise ValueError("need 2k + alpha > -1")
    x = herm_pair(z, w)
    ax = abs(x)
    if ax >= 1:
        raise ValueError("need |<z,w>| < 1")
    if ax == 0:
        return SeriesValue(1 + 0j, 0.0, 0)
    limit = max_terms if degree is None else degree
    total = 1 + 0j
    b = 1.0          # (c)_j / j!
    xp = 1 + 0j
    tail = math.inf
    j = 0
    while j < limit:
        j += 1
        b *= (c + j - 1) / j
        xp *= x
        t = b * j ** (-2 * k) * xp
        total += t
        # every later term ratio is ax (c+i)/(i+1) (i/(i+1))^{2k} with the
        # second factor below 1 and the first monotone toward 1
        q = ax * max((c + j) / (j + 1), 1.0)
        if q < 1:
            tail = abs(t) * q / (1 - q)
            if degree is None and tail < tol:
                break
    if tail > tol:
        raise TailBoundError(f"tail bound {tail:.3g} exceeds tol {tol:.3g} after {j} terms")
    return SeriesValue(total, tail, j)


__all__ = [
    "KernelSpec", "Regime", "RegimeKind", "SeriesValue", "TailBoundError", "a_coeffs", "inner_product",
    "kernel_eval", "kernel_regime", "kernel_series", "natural_inner_product", "natural_kernel_eval",
    "orthonormal_basis", "principal_coeffs", "q_eval", "reproduce_check", "stirling_bridge_ratio",
]
