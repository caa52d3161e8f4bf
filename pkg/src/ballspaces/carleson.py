"""Ball geometry, discrete measures, Carleson conditions and Berezin transforms.

Measures are finitely supported: ``mu = sum_j m_j delta_{z_j}``.  Every
condition is then an exact finite sum; sups over the ball are replaced by
sups over explicit, seeded probe grids and reported as lower bounds.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .functions import radial_eval_fn
from .norms import SpaceParams, bergman_norm, bergman_norm_p2
from .quadrature import DEFAULT_SEED, Estimate, QuadratureSpec, integrate_ball, sphere_points
from .series import BALL_MARGIN, SeriesFormatError, TaylorPolynomial

UNIT_TOL = 1e-12


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def _arr(z) -> np.ndarray:
    if hasattr(z, "coords"):
        return np.asarray(z.coords, dtype=complex)
    return np.atleast_1d(np.asarray(z, dtype=complex))


def mobius(a, z) -> np.ndarray:
    """The involutive automorphism ``phi_a`` exchanging ``a`` and 0.

    ``phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>)`` with ``P_a`` the
    projection onto ``C a``, ``Q_a = I - P_a`` and ``s_a = sqrt(1-|a|^2)``.
    ``z`` may be a single point or an array of shape ``(P, n)``.
    """
    a = _arr(a)
    Z = np.asarray(z.coords if hasattr(z, "coords") else z, dtype=complex)
    single = Z.ndim == 1
    Z = Z.reshape(-1, a.shape[0])
    a2 = float(np.vdot(a, a).real)
    za = Z @ np.conj(a)
    if a2 == 0.0:
        out = -Z
    else:
        P = za[:, None] * a[None, :] / a2
        s = math.sqrt(1 - a2)
        out = (a[None, :] - P - s * (Z - P)) / (1 - za)[:, None]
    return out[0] if single else out


def one_minus_phi2(a, z) -> np.ndarray:
    """``1 - |phi_a(z)|^2 = (1-|a|^2)(1-|z|^2)/|1-<z,a>|^2`` without cancellation."""
    a = _arr(a)
    Z = np.asarray(z.coords if hasattr(z, "coords") else z, dtype=complex).reshape(-1, a.shape[0])
    za = Z @ np.conj(a)
    num = (1 - float(np.vdot(a, a).real)) * (1 - np.sum(np.abs(Z) ** 2, axis=1))
    return num / np.abs(1 - za) ** 2


def bergman_dist(z, w) -> np.ndarray | float:
    """``beta(z, w) = (1/2) log((1+|phi_z(w)|)/(1-|phi_z(w)|))``; vectorized over ``w``.

    Evaluated as ``log(1+rho) - log(1-rho^2)/2`` with ``1 - rho^2`` from the
    symmetric identity, so that ``beta(z, w) = beta(w, z)`` to rounding even
    near the sphere.
    """
    w_arr = np.asarray(w.coords if hasattr(w, "coords") else w, dtype=complex)
    single = w_arr.ndim == 1
    d = np.clip(one_minus_phi2(z, w_arr), 0.0, 1.0)
    rho = np.sqrt(1 - d)
    with np.errstate(divide="ignore"):
        beta = np.log1p(rho) - 0.5 * np.log(d)
    return float(beta[0]) if single else beta


# ---------------------------------------------------------------------------
# discrete measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    n: int
    points: np.ndarray          # (K, n) complex
    masses: np.ndarray          # (K,) positive

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex).reshape(-1, self.n)
        ms = np.asarray(self.masses, dtype=float).reshape(-1)
        if len(pts) != len(ms):
            raise ValueError("points and masses differ in length")
        if np.any(ms <= 0) or not np.all(np.isfinite(ms)):
            raise ValueError("masses must be positive and finite")
        if len(pts) and np.max(np.sum(np.abs(pts) ** 2, axis=1)) >= (1 - BALL_MARGIN) ** 2:
            raise ValueError("atom outside the open ball")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", ms)

    @classmethod
    def empty(cls, n: int) -> DiscreteMeasure:
        return cls(n, np.zeros((0, n), dtype=complex), np.zeros(0))

    @classmethod
    def dirac(cls, a, mass: float = 1.0) -> DiscreteMeasure:
        a = _arr(a)
        return cls(len(a), a.reshape(1, -1), np.array([mass]))

    def __len__(self):
        return len(self.masses)

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def to_dict(self) -> dict:
        return {"n": self.n,
                "atoms": [{"z": [[float(c.real), float(c.imag)] for c in p], "mass": float(m)}
                          for p, m in zip(self.points, self.masses)]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data) -> DiscreteMeasure:
        if not isinstance(data, dict) or "n" not in data or "atoms" not in data:
            raise SeriesFormatError("measure must be an object with 'n' and 'atoms'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise SeriesFormatError("'n' must be a positive integer")
        pts, ms = [], []
        for i, atom in enumerate(data["atoms"]):
            try:
                z = [complex(float(re), float(im)) for re, im in atom["z"]]
                mass = float(atom["mass"])
            except (KeyError, TypeError, ValueError):
                raise SeriesFormatError("atom must have 'z': [[re, im], ...] and numeric 'mass'", i) from None
            if len(z) != n:
                raise SeriesFormatError(f"atom has {len(z)} coordinates, expected {n}", i)
            if not mass > 0:
                raise SeriesFormatError("mass must be positive", i)
            if sum(abs(c) ** 2 for c in z) >= (1 - BALL_MARGIN) ** 2:
                raise SeriesFormatError("atom lies outside the open ball", i)
            pts.append(z)
            ms.append(mass)
        return cls(n, np.array(pts, dtype=complex).reshape(-1, n), np.array(ms))

    @classmethod
    def from_json(cls, text: str) -> DiscreteMeasure:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SeriesFormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)


def random_measure(n: int, count: int, rng: np.random.Generator, r_max: float = 0.99,
                   boundary_bias: float = 2.0) -> DiscreteMeasure:
    """Atoms at seeded random points; radii pushed toward the sphere by ``boundary_bias``."""
    dirs = sphere_points(n, count, rng)
    r = r_max * rng.random(count) ** (1.0 / boundary_bias)
    masses = rng.random(count) + 0.1
    return DiscreteMeasure(n, r[:, None] * dirs, masses)


def shell_measure(n: int, eps: float, count: int, rng: np.random.Generator, total: float = 1.0) -> DiscreteMeasure:
    """``count`` equal atoms of total mass ``total`` near the sphere ``|z| = 1 - eps``."""
    if n == 1:
        theta = 2 * np.pi * (np.arange(count) + rng.random()) / count
        dirs = np.exp(1j * theta)[:, None]
    else:
        dirs = sphere_points(n, count, rng)
    return DiscreteMeasure(n, (1 - eps) * dirs, np.full(count, total / count))


# ---------------------------------------------------------------------------
# masses of regions and Carleson constants
# ---------------------------------------------------------------------------

def _unit(zeta) -> np.ndarray:
    z = _arr(zeta)
    if abs(np.linalg.norm(z) - 1) > UNIT_TOL:
        raise ValueError("zeta must be a unit vector")
    return z


def mass_Q(mu: DiscreteMeasure, zeta, r: float) -> float:
    """``mu(Q_r(zeta))``, ``Q_r(zeta) = {|1 - <z, zeta>| < r}``."""
    zeta = _unit(zeta)
    if r <= 0:
        raise ValueError("r must be positive")
    if len(mu) == 0:
        return 0.0
    d = np.abs(1 - mu.points @ np.conj(zeta))
    return float(mu.masses[d < r].sum())


def mass_D(mu: DiscreteMeasure, a, R: float) -> float:
    """``mu(D(a, R))`` for the Bergman-metric ball of radius ``R``."""
    if R <= 0:
        raise ValueError("R must be positive")
    if len(mu) == 0:
        return 0.0
    beta = bergman_dist(a, mu.points)
    return float(mu.masses[beta < R].sum())


@dataclass(frozen=True)
class ProbeGrid:
    """Seeded probe grid: directions ``zeta``, radii ``r`` and extra ball points."""

    n: int
    zetas: np.ndarray = field(repr=False)
    rs: np.ndarray = field(repr=False)
    extra: np.ndarray = field(repr=False)
    seed: int = DEFAULT_SEED
    grid_id: str = "default"

    @classmethod
    def default(cls, n: int, seed: int = DEFAULT_SEED, n_zeta: int = 256, n_r: int = 24,
                n_extra: int = 128, r_lo: float = 1e-3, r_hi: float = 2.0) -> ProbeGrid:
        rng = np.random.default_rng(seed)
        zetas = sphere_points(n, n_zeta, rng)
        rs = np.geomspace(r_lo, r_hi, n_r)
        dirs = sphere_points(n, n_extra, rng)
        extra = (rng.random(n_extra) ** (1 / (2 * n)))[:, None] * dirs * 0.999
        gid = f"n{n}-z{n_zeta}-r{n_r}-x{n_extra}-seed{seed}"
        return cls(n, zetas, rs, extra, seed, gid)

    def with_atoms(self, mu: DiscreteMeasure) -> ProbeGrid:
        """Aim directions at the atoms too: ``zeta = a/|a|`` for every atom."""
        pts = mu.points
        nrm = np.linalg.norm(pts, axis=1)
        dirs = pts[nrm > 0] / nrm[nrm > 0][:, None]
        return ProbeGrid(self.n, np.vstack([self.zetas, dirs]), self.rs, self.extra, self.seed,
                         self.grid_id + f"+atoms{len(dirs)}")

    def berezin_points(self, mu: DiscreteMeasure | None = None) -> np.ndarray:
        """Origin, ``(1-r) zeta`` for ``r < 1``, the extra points and (optionally) the atoms."""
        rs = self.rs[self.rs < 1]
        tent = ((1 - rs)[None, :, None] * self.zetas[:, None, :]).reshape(-1, self.n)
        parts = [np.zeros((1, self.n), dtype=complex), tent, self.extra]
        if mu is not None and len(mu):
            parts.append(mu.points)
        return np.vstack(parts)

    def to_dict(self) -> dict:
        return {"grid_id": self.grid_id, "n": self.n, "zetas": len(self.zetas), "rs": len(self.rs),
                "extra": len(self.extra), "r_range": [float(self.rs[0]), float(self.rs[-1])], "seed": self.seed}


def carleson_constant(mu: DiscreteMeasure, alpha: float, grid: ProbeGrid) -> float:
    """``max mu(Q_r(zeta)) / r^{n+1+alpha}`` over the grid (a lower bound for the best C)."""
    c = mu.n + 1 + alpha
    if c <= 0:
        raise ValueError("Carleson condition needs n + 1 + alpha > 0")
    if len(mu) == 0:
        return 0.0
    d = np.abs(1 - grid.zetas @ np.conj(mu.points).T)       # (Z, K)
    best = 0.0
    for r in grid.rs:
        masses = (d < r).astype(float) @ mu.masses
        best = max(best, float(masses.max()) / r ** c)
    return best


def berezin(mu: DiscreteMeasure, s: float, gamma: float, z) -> np.ndarray | float:
    """``B_{s,gamma}(mu)(z) = sum_j m_j (1-|z|^2)^s / |1 - <z, w_j>|^{n+1+s+gamma}``."""
    Z = np.asarray(z.coords if hasattr(z, "coords") else z, dtype=complex)
    single = Z.ndim == 1 and (mu.n > 1 or Z.shape == (1,))
    Z = Z.reshape(-1, mu.n)
    if len(mu) == 0:
        out = np.zeros(len(Z))
    else:
        e = mu.n + 1 + s + gamma
        d = np.abs(1 - Z @ np.conj(mu.points).T)
        out = (1 - np.sum(np.abs(Z) ** 2, axis=1)) ** s * ((d ** (-e)) @ mu.masses)
    return float(out[0]) if single else out


def muhat(mu: DiscreteMeasure, R: float, gamma: float, z) -> np.ndarray | float:
    """``mu(D(z, R)) / (1-|z|^2)^{n+1+gamma}``."""
    Z = np.asarray(z.coords if hasattr(z, "coords") else z, dtype=complex)
    single = Z.ndim == 1 and (mu.n > 1 or Z.shape == (1,))
    Z = Z.reshape(-1, mu.n)
    out = np.zeros(len(Z))
    if len(mu):
        for i, zi in enumerate(Z):
            out[i] = mass_D(mu, zi, R)
        out /= (1 - np.sum(np.abs(Z) ** 2, axis=1)) ** (mu.n + 1 + gamma)
    return float(out[0]) if single else out


def berezin_sup(mu: DiscreteMeasure, s: float, gamma: float, grid: ProbeGrid) -> float:
    return float(np.max(berezin(mu, s, gamma, grid.berezin_points(mu))))


# ---------------------------------------------------------------------------
# Forelli-Rudin integral
# ---------------------------------------------------------------------------

class TailError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FRValue:
    value: float
    tail_bound: float
    terms: int


def forelli_rudin(rho: float, s: float, t: float, n: int = 1, tol: float = 1e-12,
                  max_terms: int = 10_000_000) -> FRValue:
    """``I(z) = int (1-|w|^2)^s / |1 - <z, w>|^{n+1+s+t} dv(w)`` at ``|z| = rho``.

    Unitary invariance reduces it to ``n! Gamma(s+1) sum_k [(c/2)_k / k!]^2
    k! / Gamma(n+k+s+1) rho^{2k}`` with ``c = n+1+s+t``; the sum stops when a
    rigorous ratio-test tail bound is below ``tol`` times the partial sum.
    """
    if s <= -1:
        raise ValueError("need s > -1")
    if not 0 <= rho < 1:
        raise ValueError("need 0 <= rho < 1")
    a = (n + 1 + s + t) / 2
    b = n + s + 1
    lead = math.lgamma(n + 1) + math.lgamma(s + 1)
    if rho == 0:
        return FRValue(math.exp(lead - math.lgamma(b)), 0.0, 1)
    x = rho * rho
    A = abs(2 * a - 1 - b)
    B = abs(a * a - b)
    total = 0.0
    k0 = 0
    chunk = 4096
    run = 0.0           # log |(a)_{k0}| carried across chunks when a <= 0
    while k0 < max_terms:
        k = np.arange(k0, k0 + chunk, dtype=float)
        if a > 0:
            logpoch = gammaln(a + k) - gammaln(a)
        else:
            # (a)_k = prod_{j<k} (a + j); it vanishes for good once a + j hits 0
            with np.errstate(divide="ignore"):
                steps = np.log(np.abs(a + k))
            logpoch = run + np.concatenate([[0.0], np.cumsum(steps[:-1])])
            run = logpoch[-1] + steps[-1]
        # [(a)_k / k!]^2 k! / Gamma(b + k) rho^{2k}; the square removes signs
        logt = 2 * logpoch - gammaln(k + 1) - gammaln(b + k) + k * math.log(x)
        terms = np.exp(lead + logt)
        total += float(np.sum(terms))
        kl = k0 + chunk - 1
        q = x * (1 + A / (kl + b) + B / ((kl + 1) * (kl + b)))
        if q < 1:
            tail = float(terms[-1]) * q / (1 - q)
            if tail <= tol * abs(total):
                return FRValue(total, tail, kl + 1)
        k0 += chunk
        chunk = min(chunk * 2, 1 << 20)
    raise TailError(f"series at rho={rho} did not reach tol={tol} within {max_terms} terms")


def forelli_rudin_mc(rho: float, s: float, t: float, n: int, q: QuadratureSpec | None = None) -> Estimate:
    """Direct quadrature of the same integral (cross-check)."""
    z = np.zeros(n, dtype=complex)
    z[0] = rho
    e = n + 1 + s + t
    return integrate_ball(lambda W: np.abs(1 - W @ np.conj(z)) ** (-e), n, s, q)


# ---------------------------------------------------------------------------
# embedding probes
# ---------------------------------------------------------------------------

@dataclass
class EmbeddingReport:
    branch: str
    ratios: list
    statistic: float
    params: dict

    def to_dict(self) -> dict:
        return {"branch": self.branch, "ratios": self.ratios, "statistic": self.statistic, "params": self.params}


def embedding_probe(mu: DiscreteMeasure, sp: SpaceParams, q: float, k: int, family: list,
                    R: float = 0.5, quad: QuadratureSpec | None = None) -> EmbeddingReport:
    """Ratios ``int |R^k f|^q dmu / ||f||^q`` plus the matching geometric statistic.

    ``p <= q``: ``sup_a mu(D(a,R)) / (1-|a|^2)^{(n+1+alpha+kp) q/p}`` over atom
    locations.  ``q < p``: ``int muhat_{R,gamma}^{p/(p-q)} dv_gamma`` with
    ``gamma = alpha + kp``.
    """
    if mu.n != sp.n:
        raise ValueError("dimension mismatch")
    p = sp.p
    gamma = sp.alpha + k * p
    if gamma <= -1:
        raise ValueError("need alpha + k p > -1")
    quad = quad or QuadratureSpec()
    ratios = []
    for f in family:
        if len(mu) == 0:
            ratios.append(0.0)
            continue
        vals = np.abs(radial_eval_fn(f, mu.points, k)) ** q
        lhs = float(vals @ mu.masses)
        if isinstance(f, TaylorPolynomial) and p == 2:
            nrm = bergman_norm_p2(f, sp)
        else:
            nrm = bergman_norm(f, sp, quad).value
        ratios.append(lhs / nrm ** q)
    params = {"n": sp.n, "p": p, "alpha": sp.alpha, "q": q, "k": k, "R": R}
    if p <= q:
        branch = "p<=q"
        if len(mu) == 0:
            stat = 0.0
        else:
            expo = (sp.n + 1 + gamma) * q / p
            stat = max(mass_D(mu, a, R) / (1 - float(np.sum(np.abs(a) ** 2))) ** expo for a in mu.points)
    else:
        branch = "q<p"
        r = p / (p - q)
        stat = 0.0 if len(mu) == 0 else integrate_ball(
            lambda Z: muhat(mu, R, gamma, Z) ** r, sp.n, gamma, quad).value
    return EmbeddingReport(branch, ratios, float(stat), params)


def report_csv(rows: list[tuple]) -> str:
    """CSV with columns ``statistic, grid-id, value, seed``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statistic", "grid-id", "value", "seed"])
    for stat, gid, value, seed in rows:
        w.writerow([stat, gid, format(float(value), ".17g"), seed])
    return buf.getvalue()


__all__ = [
    "DiscreteMeasure", "EmbeddingReport", "FRValue", "ProbeGrid", "TailError", "bergman_dist", "berezin",
    "berezin_sup", "carleson_constant", "embedding_probe", "forelli_rudin", "forelli_rudin_mc", "mass_D",
    "mass_Q", "mobius", "muhat", "one_minus_phi2", "random_measure", "report_csv", "shell_measure",
]
