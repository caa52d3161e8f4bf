"""Inclusions among weighted Bergman and Lipschitz spaces, witnesses, atoms.

Inclusion decisions are exact: they come from the parameter inequalities of
the classification theorems, not from numerics.  Witness functions give a
concrete member of one space that is not in another, and the synthesis side
of the atomic decomposition builds functions from lattice atoms.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .carleson import bergman_dist
from .functions import FunctionSum, PowerAtom, radial_power_of_power
from .lacunary import BlockGrowth, GeometricGaps, Membership, lacunary_bergman_test, lacunary_lipschitz_test
from .norms import TIE_TOL, SpaceParams, bergman_norm, bergman_norm_p2
from .quadrature import DEFAULT_SEED, Estimate, QuadratureSpec, sphere_points
from .radial import power_multiplier
from .series import TaylorPolynomial, as_coords, binomial_series_coeffs


class Relation(str, enum.Enum):
    EQUAL = "equal"
    SUBSET = "strict-subset"
    SUPERSET = "strict-superset"
    NEITHER = "neither"

    def flipped(self) -> Relation:
        return {Relation.SUBSET: Relation.SUPERSET, Relation.SUPERSET: Relation.SUBSET}.get(self, self)


class InadmissibleExponent(ValueError):
    pass


# ---------------------------------------------------------------------------
# inclusion decisions
# ---------------------------------------------------------------------------

def _check_p(*ps):
    for p in ps:
        if not p > 0:
            raise ValueError(f"p must be positive (got {p})")


def bergman_subset(p: float, alpha: float, q: float, beta: float, n: int) -> bool:
    """Is ``A^p_alpha`` contained in ``A^q_beta``?"""
    _check_p(p, q)
    if p <= q:
        return (n + 1 + alpha) / p <= (n + 1 + beta) / q + TIE_TOL
    return (1 + alpha) / p < (1 + beta) / q - TIE_TOL


def inclusion_bergman(sp1: tuple[float, float], sp2: tuple[float, float], n: int) -> Relation:
    """Relation of ``A^{p}_{alpha}`` to ``A^{q}_{beta}`` for ``sp1 = (p, alpha)``, ``sp2 = (q, beta)``.

    Distinct parameter pairs always give distinct spaces, so every inclusion
    between them is strict.
    """
    (p, a), (q, b) = sp1, sp2
    _check_p(p, q)
    if p == q and a == b:
        return Relation.EQUAL
    sub = bergman_subset(p, a, q, b, n)
    sup = bergman_subset(q, b, p, a, n)
    if sub and sup:  # only reachable through the tie tolerance
        raise ArithmeticError(f"parameters {sp1} and {sp2} are too close to separate")
    if sub:
        return Relation.SUBSET
    return Relation.SUPERSET if sup else Relation.NEITHER


def inclusion_lipschitz(alpha: float, beta: float) -> Relation:
    """``Lambda_alpha`` versus ``Lambda_beta``: larger index, smaller space."""
    if alpha == beta:
        return Relation.EQUAL
    return Relation.SUBSET if alpha > beta else Relation.SUPERSET


def bergman_vs_lipschitz(p: float, alpha: float, gamma: float, n: int = 1) -> Relation:
    """Relation of the growth space ``Lambda_{-gamma}`` to ``A^p_alpha``.

    ``Lambda_{-gamma}`` sits inside iff ``gamma < (1+alpha)/p``; ``A^p_alpha``
    sits inside iff ``gamma >= (n+1+alpha)/p``.  Both bounds are sharp.
    """
    _check_p(p)
    if gamma < (1 + alpha) / p - TIE_TOL:
        return Relation.SUBSET
    if gamma >= (n + 1 + alpha) / p - TIE_TOL:
        return Relation.SUPERSET
    return Relation.NEITHER


@dataclass(frozen=True)
class Stretch:
    stretch: float
    lower: float
    upper: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.stretch, self.lower, self.upper)


def lipschitz_stretch(p: float, alpha: float, n: int) -> Stretch:
    """Stretch ``1/p`` with the sandwich bounds ``(1+alpha)/p`` and ``(n+1+alpha)/p``.

    The stretch is reported as the infimum ``1/p``; ``upper - lower`` equals
    ``n/p`` and is returned alongside without reconciling the two.
    """
    _check_p(p)
    return Stretch(1 / p, (1 + alpha) / p, (n + 1 + alpha) / p)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def witness_ft(t: float, k: int, degree: int, n: int = 1) -> TaylorPolynomial:
    """Truncation of ``R^{-k}[(1 - z_1)^{-t-k} - 1]``.

    The coefficient of ``z_1^j`` is ``Gamma(t+k+j) / (j! Gamma(t+k)) j^{-k}``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    b = binomial_series_coeffs(t + k, degree)
    e1 = [0] * n
    coeffs = {}
    for j in range(1, degree + 1):
        e1[0] = j
        if b[j]:
            coeffs[tuple(e1)] = b[j] * float(j) ** (-k)
    return TaylorPolynomial(n, degree, coeffs)


@dataclass(frozen=True)
class WitnessFt:
    """Closed form of the same function, for quadrature norms.

    Only ``R^j f_t`` with ``j >= k`` is available in closed form.
    """

    t: float
    k: int
    n: int = 1

    @property
    def constant_term(self) -> complex:
        return 0j

    def _x(self, points) -> np.ndarray:
        return np.asarray(points, dtype=complex).reshape(-1, self.n)[:, 0]

    def radial_eval(self, points, j: int) -> np.ndarray:
        if j < self.k:
            raise NotImplementedError(f"R^{j} f_t has no closed form below k = {self.k}")
        out = radial_power_of_power(self._x(points), self.t + self.k, j - self.k)
        return out - 1 if j == self.k else out

    def __call__(self, points) -> np.ndarray:
        return self.radial_eval(points, 0)


def ft_in_bergman(t: float, sp: SpaceParams) -> bool:
    """``f_t`` lies in ``A^p_alpha`` iff ``t < (n+1+alpha)/p``."""
    return t < (sp.n + 1 + sp.alpha) / sp.p - TIE_TOL


def ft_in_lipschitz(t: float, gamma: float) -> bool:
    """``f_t`` lies in ``Lambda_{-gamma}`` iff ``t <= gamma``."""
    return t <= gamma + TIE_TOL


@dataclass(frozen=True)
class LacunaryWitness:
    """``sum_k 2^{k e} k^{-c} z^{2^k}`` on the disk (``n = 1``)."""

    exponent: float
    log_power: float = 0.0

    @property
    def gaps(self) -> GeometricGaps:
        return GeometricGaps(1.0, 2.0)

    @property
    def growth(self) -> BlockGrowth:
        # coefficient 2^{k e} = m_k^e, and ||z^m||_{H^p} = 1 on the circle
        return BlockGrowth(0.0, -self.log_power, self.exponent)

    def series(self, K: int) -> TaylorPolynomial:
        coeffs = {(2 ** k,): 2.0 ** (k * self.exponent) * float(k) ** (-self.log_power) for k in range(1, K + 1)}
        return TaylorPolynomial(1, 2 ** K if K else 0, coeffs)

    def member(self, sp: SpaceParams) -> Membership:
        return lacunary_bergman_test(self.gaps, self.growth, sp)

    def lipschitz_class(self, alpha: float):
        return lacunary_lipschitz_test(self.gaps, self.growth, alpha)


def lacunary_witness(p: float, alpha: float, K: int, n: int = 1) -> TaylorPolynomial:
    """``sum_{k=1}^K 2^{k(1+alpha)/p} z^{2^k}``: in ``Lambda_{-(1+alpha)/p}``, not in ``A^p_alpha``."""
    if n != 1:
        raise ValueError("the lacunary witness is constructive only for n = 1")
    _check_p(p)
    return LacunaryWitness((1 + alpha) / p).series(K)


@dataclass(frozen=True)
class Witness:
    """A function in the source space but not in the target space."""

    kind: str                 # "f_t" or "lacunary"
    params: tuple             # (t, k) or (exponent, log_power)

    @property
    def id(self) -> str:
        if self.kind == "f_t":
            return "f_t(t={:.17g},k={})".format(*self.params)
        return "lacunary(e={:.17g},c={:.17g})".format(*self.params)

    def member(self, sp: SpaceParams) -> bool:
        if self.kind == "f_t":
            return ft_in_bergman(self.params[0], sp)
        return LacunaryWitness(*self.params).member(sp) == Membership.MEMBER

    def series(self, degree: int) -> TaylorPolynomial:
        if self.kind == "f_t":
            return witness_ft(self.params[0], self.params[1], degree)
        K = max(int(math.floor(math.log2(max(degree, 1)))), 0)
        return LacunaryWitness(*self.params).series(K)


def find_witness(sp1: tuple[float, float], sp2: tuple[float, float], n: int = 1) -> Witness | None:
    """Witness for ``A^p_alpha`` not inside ``A^q_beta`` (``n = 1``), or ``None`` if included.

    ``p <= q`` failing: ``f_t`` with ``(2+beta)/q <= t < (2+alpha)/p``.
    ``q < p`` failing: the lacunary series ``sum m_k^{(1+beta)/q} k^{-1/q} z^{m_k}``,
    whose terms are ``k^{-p/q}`` in the source and ``k^{-1}`` in the target.
    """
    if n != 1:
        raise ValueError("witnesses are constructive only for n = 1")
    (p, a), (q, b) = sp1, sp2
    if bergman_subset(p, a, q, b, n):
        return None
    if p <= q:
        t = (n + 1 + b) / q
        return Witness("f_t", (t, max(int(math.floor(-t)) + 1, 0)))
    return Witness("lacunary", ((1 + b) / q, 1 / q))


# ---------------------------------------------------------------------------
# atoms and lattices
# ---------------------------------------------------------------------------

def eq12_bound(sp: SpaceParams) -> float:
    return sp.n * max(1.0, 1.0 / sp.p) + (sp.alpha + 1) / sp.p


@dataclass(frozen=True)
class AtomSpec:
    a: tuple[complex, ...]
    b: float

    def __post_init__(self):
        a = as_coords(self.a)
        if sum(abs(x) ** 2 for x in a) >= 1:
            raise ValueError("atom center must lie in the open ball")
        object.__setattr__(self, "a", a)
        if self.b == 0 or (self.b < 0 and float(self.b).is_integer()):
            raise InadmissibleExponent(f"b = {self.b} must be neither 0 nor a negative integer")

    @property
    def n(self) -> int:
        return len(self.a)

    def check(self, sp: SpaceParams) -> AtomSpec:
        bound = eq12_bound(sp)
        if not self.b > bound + TIE_TOL:
            raise InadmissibleExponent(f"b = {self.b} must exceed n max(1, 1/p) + (alpha+1)/p = {bound}")
        return self

    def normalized(self, sp: SpaceParams, c: complex = 1.0) -> PowerAtom:
        """``c (1-|a|^2)^{b-(n+1+alpha)/p} (1 - <z,a>)^{-b}``."""
        r2 = sum(abs(x) ** 2 for x in self.a)
        return PowerAtom(self.a, self.b, c * (1 - r2) ** (self.b - (sp.n + 1 + sp.alpha) / sp.p))


def atom_eval(spec: AtomSpec, z) -> complex:
    """``(1 - <z, a>)^{-b}``."""
    zc = as_coords(z)
    x = sum(zi * ai.conjugate() for zi, ai in zip(zc, spec.a))
    return complex((1 - x) ** (-spec.b))


def atom_norm_asymptote(spec: AtomSpec, sp: SpaceParams) -> float:
    """Size of ``||(1 - <z,a>)^{-b}||_{p,alpha}``: ``(1-|a|^2)^{(n+1+alpha)/p - b}``."""
    r2 = sum(abs(x) ** 2 for x in spec.a)
    return (1 - r2) ** ((sp.n + 1 + sp.alpha) / sp.p - spec.b)


@dataclass(frozen=True, eq=False)
class Lattice:
    points: np.ndarray      # (K, n) complex
    separation: float       # target delta; pairs are at least delta/2 apart
    shells: int
    shell_index: np.ndarray = field(repr=False, default=None)
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return len(self.points)

    def shell_counts(self) -> list[int]:
        return [int(np.sum(self.shell_index == j)) for j in range(1, self.shells + 1)]

    def min_separation(self) -> float:
        best = math.inf
        for i in range(len(self.points) - 1):
            best = min(best, float(np.min(bergman_dist(self.points[i], self.points[i + 1:]))))
        return best


def lattice_generate(n: int, delta: float, J: int, seed: int = DEFAULT_SEED,
                     max_candidates: int = 4096) -> Lattice:
    """Shells ``|a| = 1 - 2^{-j}`` thinned greedily to Bergman separation ``delta/2``.

    Candidates per shell scale like ``2^{jn}`` (the Bergman volume of a shell),
    with extra oversampling for small ``delta``.
    """
    if not delta > 0 or J < 1:
        raise ValueError("need delta > 0 and J >= 1")
    rng = np.random.default_rng(seed)
    half = delta / 2
    pts: list[np.ndarray] = []
    shell: list[int] = []
    for j in range(1, J + 1):
        r = 1 - 2.0 ** -j
        count = int(min(max_candidates, math.ceil(8 * max(1.0, 1 / delta) ** (2 * n - 1) * 2 ** (j * n))))
        for z in r * sphere_points(n, count, rng):
            if not pts or float(np.min(bergman_dist(z, np.array(pts)))) >= half:
                pts.append(z)
                shell.append(j)
    lat = Lattice(np.array(pts, dtype=complex).reshape(-1, n), delta, J, np.array(shell), seed)
    if len(lat) > 1 and lat.min_separation() < half * (1 - 1e-12):
        raise AssertionError("lattice separation check failed")
    return lat


@dataclass
class Synthesis:
    function: FunctionSum
    b: float
    sp: SpaceParams
    lp_sum: float                      # sum |c_k|^p
    norm: Estimate | None = None       # quasi-norm ||f||_{p,alpha}
    ratio: float | None = None         # ||f||^p / sum |c_k|^p

    def __call__(self, points):
        return self.function(points)

    def to_dict(self) -> dict:
        return {"n": self.sp.n, "p": self.sp.p, "alpha": self.sp.alpha, "b": self.b, "atoms": len(self.function.terms),
                "lp_sum": self.lp_sum, "norm": None if self.norm is None else self.norm.to_dict(),
                "ratio": self.ratio}


def atomic_synthesize(coeffs: Sequence[complex], lattice: Lattice, b: float, sp: SpaceParams,
                      quad: QuadratureSpec | None = None, estimate: bool = True) -> Synthesis:
    """``f = sum_k c_k (1-|a_k|^2)^{b-(n+1+alpha)/p} (1 - <z, a_k>)^{-b}`` with a norm report.

    ``b`` must be strictly above ``n max(1, 1/p) + (alpha+1)/p``.
    """
    if lattice.n != sp.n:
        raise ValueError("dimension mismatch")
    c = np.asarray(coeffs, dtype=complex)
    if len(c) > len(lattice):
        raise ValueError(f"{len(c)} coefficients but only {len(lattice)} lattice points")
    AtomSpec(tuple(np.zeros(sp.n)), b).check(sp)
    terms = tuple(AtomSpec(tuple(a), b).normalized(sp, ck) for a, ck in zip(lattice.points, c) if ck != 0)
    if not terms:
        terms = (TaylorPolynomial.zero(sp.n),)
    f = FunctionSum(terms)
    lp = float(np.sum(np.abs(c) ** sp.p))
    out = Synthesis(f, b, sp, lp)
    if estimate:
        if lp == 0:
            out.norm = Estimate(0.0, 0.0, "exact")
        else:
            out.norm = bergman_norm(f, sp, quad)
        out.ratio = out.norm.value ** sp.p / lp if lp else 0.0
    return out


# ---------------------------------------------------------------------------
# coefficient multipliers
# ---------------------------------------------------------------------------

@dataclass
class MultiplierProbe:
    ratio: float
    ratios: list
    exponent: float
    method: str

    def to_dict(self) -> dict:
        return {"ratio": self.ratio, "ratios": self.ratios, "exponent": self.exponent, "method": self.method}


def multiplier_bound_probe(p: float, alpha: float, beta: float, family: Sequence[TaylorPolynomial],
                           quad: QuadratureSpec | None = None) -> MultiplierProbe:
    """``max_f ||M f||_{p,beta} / ||f||_{p,alpha}`` with ``M: a_m -> |m|^{(beta-alpha)/p} a_m``.

    ``p = 2`` uses the exact orthogonal norms, otherwise quadrature.
    """
    _check_p(p)
    e = (beta - alpha) / p
    ratios = []
    for f in family:
        spa, spb = SpaceParams(f.n, p, alpha), SpaceParams(f.n, p, beta)
        g = power_multiplier(f, e)
        if p == 2:
            num, den = bergman_norm_p2(g, spb), bergman_norm_p2(f, spa)
        else:
            num, den = bergman_norm(g, spb, quad).value, bergman_norm(f, spa, quad).value
        ratios.append(num / den if den else math.nan)
    finite = [r for r in ratios if not math.isnan(r)]
    return MultiplierProbe(max(finite) if finite else math.nan, ratios, e, "exact" if p == 2 else "quad")


def monomial_multiplier_ratios(alpha: float, beta: float, n: int, degree: int) -> list[float]:
    """Exact ``p = 2`` ratios on ``z_1^j``, ``j = 1..degree``."""
    e = (beta - alpha) / 2
    spa, spb = SpaceParams(n, 2, alpha), SpaceParams(n, 2, beta)
    out = []
    for j in range(1, degree + 1):
        m = (j,) + (0,) * (n - 1)
        f = TaylorPolynomial.monomial(m)
        out.append(bergman_norm_p2(power_multiplier(f, e), spb) / bergman_norm_p2(f, spa))
    return out


# ---------------------------------------------------------------------------
# classification tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassRow:
    p1: float
    alpha1: float
    p2: float
    alpha2: float
    relation: Relation
    witness: str
    stretch1: float
    stretch2: float


def classify_pairs(pairs: Sequence[tuple[tuple[float, float], tuple[float, float]]], n: int) -> list[ClassRow]:
    rows = []
    for sp1, sp2 in pairs:
        rel = inclusion_bergman(sp1, sp2, n)
        wid = ""
        if n == 1 and rel in (Relation.SUPERSET, Relation.NEITHER):
            wid = find_witness(sp1, sp2, n).id
        rows.append(ClassRow(sp1[0], sp1[1], sp2[0], sp2[1], rel, wid,
                             lipschitz_stretch(sp1[0], sp1[1], n).stretch,
                             lipschitz_stretch(sp2[0], sp2[1], n).stretch))
    return rows


def classification_csv(rows: Sequence[ClassRow]) -> str:
    """Columns ``p1, alpha1, p2, alpha2, relation, witness-id, stretch1, stretch2``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p1", "alpha1", "p2", "alpha2", "relation", "witness-id", "stretch1", "stretch2"])
    g = lambda x: format(float(x), ".17g")  # noqa: E731
    for r in rows:
        w.writerow([g(r.p1), g(r.alpha1), g(r.p2), g(r.alpha2), r.relation.value, r.witness,
                    g(r.stretch1), g(r.stretch2)])
    return buf.getvalue()


__all__ = [
    "AtomSpec", "ClassRow", "InadmissibleExponent", "LacunaryWitness", "Lattice", "MultiplierProbe", "Relation",
    "Stretch", "Synthesis", "Witness", "WitnessFt", "atom_eval", "atom_norm_asymptote", "atomic_synthesize",
    "bergman_subset", "bergman_vs_lipschitz", "classification_csv", "classify_pairs", "eq12_bound",
    "find_witness", "ft_in_bergman", "ft_in_lipschitz", "inclusion_bergman", "inclusion_lipschitz",
    "lacunary_witness", "lattice_generate", "lipschitz_stretch", "monomial_multiplier_ratios",
    "multiplier_bound_probe", "witness_ft",
]
