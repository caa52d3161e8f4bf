"""Space parameters, Bergman / Hardy / Lipschitz norms, pairings and probes.

Weighted measures are unnormalized by default: ``dv_a = (1-|z|^2)^a dv``
with ``v(B_n) = 1``.  Pass ``normalized=True`` (only meaningful for
``a > -1``) to multiply by ``c_a`` and get a probability measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .functions import evaluate_fn, radial_eval_fn
from .gamma import log_monomial_mass, monomial_mass, normalization_c
from .quadrature import DEFAULT_SEED, Estimate, QuadratureSpec, geometric_radii, integrate_ball
from .radial import radial_power
from .series import TaylorPolynomial, evaluate_many, mi_abs

TIE_TOL = 1e-12


def smallest_N(p: float, alpha: float) -> int:
    """Smallest integer ``N >= 0`` with ``p N + alpha > -1`` (ties round up)."""
    if p <= 0:
        raise ValueError("p must be positive")
    N = 0
    if p * N + alpha <= -1 + TIE_TOL:
        N = max(int(math.floor((-1 - alpha) / p)), 0)
        while p * N + alpha <= -1 + TIE_TOL:
            N += 1
    return N


def lipschitz_k(alpha: float) -> int:
    """Smallest nonnegative integer strictly greater than ``alpha``."""
    return max(int(math.floor(alpha)) + 1, 0)


@dataclass(frozen=True)
class SpaceParams:
    n: int
    p: float
    alpha: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.p > 0:
            raise ValueError("p must be positive")

    @property
    def N(self) -> int:
        return smallest_N(self.p, self.alpha)

    @property
    def weight_exponent(self) -> float:
        """``p N + alpha``, the exponent of ``1-|z|^2`` under the integral."""
        return self.p * self.N + self.alpha

    @property
    def lipschitz_k(self) -> int:
        return lipschitz_k(self.alpha)


def _check_n(f: TaylorPolynomial, sp: SpaceParams):
    if f.n != sp.n:
        raise ValueError(f"dimension mismatch: series n={f.n}, space n={sp.n}")


def _norm_factor(n: int, alpha: float, normalized: bool) -> float:
    if not normalized:
        return 1.0
    if alpha <= -1:
        raise ValueError("normalized measure requires alpha > -1")
    return normalization_c(n, alpha)


# ---------------------------------------------------------------------------
# Bergman norms
# ---------------------------------------------------------------------------

def bergman_norm_p2(f: TaylorPolynomial, sp: SpaceParams, normalized: bool = False) -> float:
    """Exact ``p = 2`` norm by monomial orthogonality."""
    if sp.p != 2:
        raise ValueError("bergman_norm_p2 requires p = 2")
    _check_n(f, sp)
    N = sp.N
    gam = 2 * N + sp.alpha
    total = 0.0
    for m, a in f.items():
        k = mi_abs(m)
        if k == 0:
            continue
        total += abs(a) ** 2 * k ** (2 * N) * monomial_mass(m, gam)
    total *= _norm_factor(sp.n, sp.alpha, normalized)
    return abs(f.constant_term) + math.sqrt(total)


def bergman_integral(f, sp: SpaceParams, q: QuadratureSpec | None = None,
                     N: int | None = None, normalized: bool = False) -> Estimate:
    """``int (1-|z|^2)^{pN} |R^N f|^p dv_alpha`` by quadrature (no p-th root).

    ``f`` is a :class:`TaylorPolynomial` or a closed-form test function from
    :mod:`ballspaces.functions`.
    """
    _check_n(f, sp)
    q = q or QuadratureSpec()
    N = sp.N if N is None else N
    expo = sp.p * N + sp.alpha
    if expo <= -1:
        raise ValueError(f"weight exponent pN+alpha = {expo} <= -1: the integral diverges")
    if isinstance(f, TaylorPolynomial):
        g = radial_power(f, N) if N else f - f.constant_term
        if g.is_zero():
            return Estimate(0.0, 0.0, "exact", q.seed)
        values = lambda Z: evaluate_many(g, Z)  # noqa: E731
    else:
        c0 = f.constant_term if N == 0 else 0.0
        values = lambda Z: radial_eval_fn(f, Z, N) - c0  # noqa: E731
    p = sp.p

    def integrand(Z):
        return np.abs(values(Z)) ** p

    est = integrate_ball(integrand, sp.n, expo, q)
    fac = _norm_factor(sp.n, sp.alpha, normalized)
    return Estimate(est.value * fac, est.stderr * fac, est.method, q.seed)


def bergman_norm(f, sp: SpaceParams, q: QuadratureSpec | None = None,
                 normalized: bool = False, N: int | None = None) -> Estimate:
    """Quasi-norm ``|f(0)| + [int (1-|z|^2)^{pN} |R^N f|^p dv_alpha]^{1/p}``.

    ``N`` defaults to the smallest admissible integer; a larger ``N`` gives an
    equivalent norm.  For ``N = 0`` the integrand uses ``f - f(0)``.
    """
    q = q or QuadratureSpec()
    I = bergman_integral(f, sp, q, N, normalized)
    root = I.value ** (1.0 / sp.p) if I.value > 0 else 0.0
    # delta method for the p-th root
    err = root * I.stderr / (sp.p * I.value) if I.value > 0 else 0.0
    return Estimate(abs(f.constant_term) + root, err, I.method, q.seed)


# ---------------------------------------------------------------------------
# Hardy norms of monomials
# ---------------------------------------------------------------------------

def log_hardy_norm_homog_p(m, p: float) -> float:
    """``log ||zeta^m||_{H^p}^p`` on the unit sphere."""
    if p <= 0:
        raise ValueError("p must be positive")
    n = len(m)
    s = math.lgamma(n) + sum(math.lgamma(mi * p / 2 + 1) for mi in m)
    return s - math.lgamma(mi_abs(m) * p / 2 + n)


def hardy_norm_homog(m, p: float) -> float:
    """``||zeta^m||_{H^p}`` (the p-th root of the closed form)."""
    return math.exp(log_hardy_norm_homog_p(m, p) / p)


# ---------------------------------------------------------------------------
# Lipschitz norms on a grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupGrid:
    """Radial x direction grid for sup-type estimates (a lower bound only)."""

    radii: int = 64
    directions: int = 128
    r_max: float = 0.995
    seed: int = DEFAULT_SEED

    def points(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """``(radii, points)`` with points of shape ``(R, M, n)``."""
        r = geometric_radii(self.radii, self.r_max)
        return r, r[:, None, None] * self.unit_directions(n)[None, :, :]

    def unit_directions(self, n: int) -> np.ndarray:
        if n == 1:
            theta = 2 * np.pi * np.arange(self.directions) / self.directions
            return np.exp(1j * theta)[:, None]
        rng = np.random.default_rng(self.seed)
        # coordinate axes first, then seeded pseudo-uniform directions
        axes = np.eye(n, dtype=complex)[: min(n, self.directions)]
        extra = self.directions - len(axes)
        g = rng.standard_normal((max(extra, 0), 2 * n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return np.vstack([axes, g[:, :n] + 1j * g[:, n:]])

    def to_dict(self) -> dict:
        return {"radii": self.radii, "directions": self.directions, "r_max": self.r_max, "seed": self.seed}


@dataclass
class SupEstimate:
    value: float
    argmax: tuple
    grid: SupGrid
    profile: np.ndarray = field(repr=False, default=None)  # max over directions, per radius
    radii: np.ndarray = field(repr=False, default=None)
    kind: str = "grid-lower-bound"

    def __float__(self):
        return float(self.value)


def weighted_sup(g, weight, grid: SupGrid | None = None) -> SupEstimate:
    """``sup weight(|z|) |g(z)|`` over the grid, with the per-radius profile."""
    grid = grid or SupGrid()
    r, pts = grid.points(g.n)
    R, M, n = pts.shape
    vals = np.abs(evaluate_fn(g, pts.reshape(-1, n))).reshape(R, M)
    w = np.asarray(weight(r), dtype=float)
    prof_all = vals * w[:, None]
    profile = prof_all.max(axis=1)
    i, j = np.unravel_index(int(np.argmax(prof_all)), prof_all.shape)
    return SupEstimate(float(prof_all[i, j]), tuple(complex(x) for x in pts[i, j]), grid, profile, r)


@dataclass(frozen=True)
class _RadialView:
    f: object
    k: int

    @property
    def n(self) -> int:
        return self.f.n

    def __call__(self, points):
        return radial_eval_fn(self.f, points, self.k)


def lipschitz_norm(f, alpha: float, grid: SupGrid | None = None) -> SupEstimate:
    """``|f(0)| + sup (1-|z|^2)^{k-alpha} |R^k f|`` over the grid (a lower bound)."""
    k = lipschitz_k(alpha)
    if isinstance(f, TaylorPolynomial):
        g = radial_power(f, k) if k else f
    else:
        g = _RadialView(f, k)
    est = weighted_sup(g, lambda r: (1 - r ** 2) ** (k - alpha), grid)
    est.value += abs(f.constant_term)
    return est


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def _check_pair(f: TaylorPolynomial, g: TaylorPolynomial):
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")


def pairing_volume(f: TaylorPolynomial, g: TaylorPolynomial) -> complex:
    """``lim_{r->1} int f(rz) conj(g(rz)) dv`` for polynomials."""
    _check_pair(f, g)
    total = 0j
    for m, a in f.items():
        b = g[m]
        if b:
            total += a * b.conjugate() * monomial_mass(m, 0.0, normalized=True)
    return total


def pairing_gamma(f: TaylorPolynomial, g: TaylorPolynomial, k: int, gamma: float,
                  normalized: bool = False) -> complex:
    """``f(0) conj g(0) + int (1-|z|^2)^{2k} R^k f conj(R^k g) dv_gamma``."""
    _check_pair(f, g)
    if k < 0 or 2 * k + gamma <= -1:
        raise ValueError(f"need k >= 0 and 2k + gamma > -1 (got k={k}, gamma={gamma})")
    fac = _norm_factor(f.n, gamma, normalized)
    total = f.constant_term * g.constant_term.conjugate()
    for m, a in f.items():
        d = mi_abs(m)
        if d == 0:
            continue
        b = g[m]
        if b:
            total += d ** (2 * k) * a * b.conjugate() * math.exp(log_monomial_mass(m, 2 * k + gamma)) * fac
    return total


# ---------------------------------------------------------------------------
# pointwise estimate probe
# ---------------------------------------------------------------------------

@dataclass
class ProbeResult:
    constant: float
    regime: str
    norm: float
    radii: np.ndarray = field(repr=False)
    profile: np.ndarray = field(repr=False)
    grid: SupGrid = None


def pointwise_bound_probe(f: TaylorPolynomial, sp: SpaceParams, grid: SupGrid | None = None,
                          norm: float | None = None, q: QuadratureSpec | None = None) -> ProbeResult:
    """Empirical constant in the pointwise growth estimate for ``A^p_alpha``.

    Power regime (``n+1+alpha > 0``): ``|f(z)| (1-|z|^2)^{(n+1+alpha)/p} / ||f||``.
    Log regime (``n+1+alpha = 0``, ``p > 1``): ``|f(z)| / log(2/(1-|z|^2))^{1/q} / ||f||``
    with ``1/p + 1/q = 1``.
    """
    _check_n(f, sp)
    c = sp.n + 1 + sp.alpha
    if c > TIE_TOL:
        regime = "power"
        weight = lambda r: (1 - r ** 2) ** (c / sp.p)  # noqa: E731
    elif abs(c) <= TIE_TOL and sp.p > 1:
        regime = "log"
        qexp = sp.p / (sp.p - 1)
        weight = lambda r: np.log(2 / (1 - r ** 2)) ** (-1 / qexp)  # noqa: E731
    else:
        raise ValueError(f"no pointwise estimate regime for n+1+alpha={c}, p={sp.p}")
    if norm is None:
        norm = bergman_norm_p2(f, sp) if sp.p == 2 else bergman_norm(f, sp, q).value
    if norm == 0:
        raise ValueError("zero function has no normalized profile")
    est = weighted_sup(f, weight, grid)
    return ProbeResult(est.value / norm, regime, norm, est.radii, est.profile / norm, est.grid)


__all__ = [
    "ProbeResult", "SpaceParams", "SupEstimate", "SupGrid", "bergman_integral", "bergman_norm",
    "bergman_norm_p2", "hardy_norm_homog", "lipschitz_k", "lipschitz_norm", "log_hardy_norm_homog_p",
    "pairing_gamma", "pairing_volume", "pointwise_bound_probe", "smallest_N", "weighted_sup",
]
