"""Membership of lacunary series in Bergman and Lipschitz spaces.

Convergence of an infinite series cannot be decided from finitely many
floating point terms, so the tests here work on symbolic growth data.  A
lacunary expansion ``f = sum_k f_{m_k}`` is described by

* geometric gaps ``m_k = m_0 * lam^k`` (``lam > 1``), and
* a :class:`BlockGrowth` for the block size: ``|size_k| ~ C e^{k log_ratio}
  k^power m_k^order_power``, optionally decaying faster than any geometric
  sequence (``superdecay``).

Every criterion reduces to the behaviour of a sequence of that form, which
is decided exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .norms import SpaceParams, log_hardy_norm_homog_p

RATIO_TOL = 1e-12


class NonLacunaryError(ValueError):
    pass


class Membership(str, enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    INCONCLUSIVE = "inconclusive"


class LipschitzClass(str, enum.Enum):
    LITTLE = "little-oh"        # in Lambda_{alpha,0}, hence also in Lambda_alpha
    BIG = "big-oh"              # in Lambda_alpha but not Lambda_{alpha,0}
    NEITHER = "neither"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GeometricGaps:
    """Orders ``m_k = round(m0 * ratio^k)``, ``k = 1, 2, ...``."""

    m0: float = 1.0
    ratio: float = 2.0

    def __post_init__(self):
        if not self.ratio > 1:
            raise NonLacunaryError(f"gap ratio {self.ratio} must exceed 1")
        if self.m0 <= 0:
            raise ValueError("m0 must be positive")

    @property
    def log_ratio(self) -> float:
        return math.log(self.ratio)

    def orders(self, K: int) -> list[int]:
        return [int(round(self.m0 * self.ratio ** k)) for k in range(1, K + 1)]

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> GeometricGaps:
        """Recognize an explicit geometric order list (exactly ``m_{k+1} = lam m_k``)."""
        ms = [int(m) for m in orders]
        if len(ms) < 2:
            raise ValueError("need at least two orders to read off a gap ratio")
        ratios = [b / a for a, b in zip(ms, ms[1:])]
        if min(ratios) <= 1:
            raise NonLacunaryError(f"orders are not lacunary: inf m_(k+1)/m_k = {min(ratios)}")
        if max(ratios) - min(ratios) > 1e-12 * max(ratios):
            raise ValueError("orders are lacunary but not geometric; supply a GeometricGaps descriptor")
        return cls(ms[0] / ratios[0], ratios[0])


def check_lacunary(orders: Sequence[int]) -> float:
    """``inf m_{k+1}/m_k`` over a finite prefix; raises unless it exceeds 1."""
    ms = list(orders)
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise NonLacunaryError("orders must be strictly increasing")
    lam = min((b / a for a, b in zip(ms, ms[1:])), default=math.inf)
    if lam <= 1:
        raise NonLacunaryError(f"gap ratio {lam} must exceed 1")
    return lam


@dataclass(frozen=True)
class BlockGrowth:
    """Symbolic size ``C e^{k log_ratio} k^power m_k^order_power``.

    ``power=None`` means the polynomial correction is unknown.
    """

    log_ratio: float = 0.0
    power: float | None = 0.0
    order_power: float = 0.0
    superdecay: bool = False

    @classmethod
    def zero(cls) -> BlockGrowth:
        return cls(superdecay=True)

    @classmethod
    def geometric(cls, ratio: float, power: float = 0.0) -> BlockGrowth:
        return cls(math.log(ratio), power)

    def resolve(self, gaps: GeometricGaps) -> BlockGrowth:
        """Fold the ``m_k`` power into the geometric rate."""
        return BlockGrowth(self.log_ratio + self.order_power * gaps.log_ratio, self.power, 0.0, self.superdecay)

    def pow(self, p: float) -> BlockGrowth:
        return BlockGrowth(p * self.log_ratio, None if self.power is None else p * self.power,
                           p * self.order_power, self.superdecay)

    def times(self, other: BlockGrowth) -> BlockGrowth:
        power = None if self.power is None or other.power is None else self.power + other.power
        return BlockGrowth(self.log_ratio + other.log_ratio, power, self.order_power + other.order_power,
                           self.superdecay or other.superdecay)


# -- exact decisions on sequences e^{k r} k^a --------------------------------

def series_converges(g: BlockGrowth) -> Membership:
    """Does ``sum_k e^{k r} k^a`` converge?  (``order_power`` must be resolved.)"""
    if g.order_power:
        raise ValueError("resolve order_power against the gaps first")
    if g.superdecay:
        return Membership.MEMBER
    if g.log_ratio < -RATIO_TOL:
        return Membership.MEMBER
    if g.log_ratio > RATIO_TOL:
        return Membership.NON_MEMBER
    if g.power is None:
        return Membership.INCONCLUSIVE
    return Membership.MEMBER if g.power < -1 else Membership.NON_MEMBER


def sequence_class(g: BlockGrowth) -> LipschitzClass:
    """Bounded / null behaviour of ``e^{k r} k^a``."""
    if g.order_power:
        raise ValueError("resolve order_power against the gaps first")
    if g.superdecay or g.log_ratio < -RATIO_TOL:
        return LipschitzClass.LITTLE
    if g.log_ratio > RATIO_TOL:
        return LipschitzClass.NEITHER
    if g.power is None:
        return LipschitzClass.INCONCLUSIVE
    if g.power < 0:
        return LipschitzClass.LITTLE
    return LipschitzClass.BIG if g.power == 0 else LipschitzClass.NEITHER


# -- Bergman spaces -----------------------------------------------------------

def _as_gaps(gaps) -> GeometricGaps | None:
    if isinstance(gaps, GeometricGaps):
        return gaps
    gaps = list(gaps)
    if len(gaps) <= 1:
        return None  # finite sum: nothing to decide
    return GeometricGaps.from_orders(gaps)


def bergman_term_growth(gaps: GeometricGaps, hp_norms: BlockGrowth, sp: SpaceParams) -> BlockGrowth:
    """Growth of ``m_k^{-1-alpha} ||f_{m_k}||_{H^p}^p``."""
    weight = BlockGrowth(order_power=-1 - sp.alpha)
    return hp_norms.pow(sp.p).times(weight).resolve(gaps)


def lacunary_bergman_test(gaps, hp_norms: BlockGrowth, sp: SpaceParams) -> Membership:
    """Membership of a lacunary homogeneous expansion in ``A^p_alpha``.

    ``gaps`` is a :class:`GeometricGaps` or an explicit geometric order list;
    an empty or single-block list is a polynomial and always a member.
    """
    g = _as_gaps(gaps)
    if g is None:
        return Membership.MEMBER
    return series_converges(bergman_term_growth(g, hp_norms, sp))


@dataclass(frozen=True)
class MonomialBlocks:
    """Lacunary series ``sum_k a_k z^{m_k}`` with ``m_k ~ direction * |m_k|``.

    ``direction`` holds the limiting proportions ``m_{k,i}/|m_k|`` (any
    positive scaling); ``coeffs`` is the symbolic growth of ``|a_k|``.
    """

    gaps: GeometricGaps
    direction: tuple[float, ...]
    coeffs: BlockGrowth = BlockGrowth()

    def __post_init__(self):
        if not self.direction or min(self.direction) < 0 or sum(self.direction) <= 0:
            raise ValueError("direction must be nonnegative and nonzero")

    @property
    def n(self) -> int:
        return len(self.direction)

    @property
    def theta(self) -> tuple[float, ...]:
        s = sum(self.direction)
        return tuple(d / s for d in self.direction)

    @property
    def entropy(self) -> float:
        return -sum(t * math.log(t) for t in self.theta if t > 0)

    @property
    def support(self) -> int:
        return sum(1 for t in self.theta if t > 0)

    def indices(self, K: int) -> list[tuple[int, ...]]:
        """Concrete multi-indices for the first ``K`` blocks (largest-remainder rounding)."""
        out = []
        for M in self.gaps.orders(K):
            raw = [t * M for t in self.theta]
            m = [int(math.floor(x)) for x in raw]
            rest = M - sum(m)
            order = sorted(range(self.n), key=lambda i: (m[i] - raw[i], i))
            for i in order[:rest]:
                m[i] += 1
            out.append(tuple(m))
        return out


def hardy_monomial_growth(blocks: MonomialBlocks, p: float) -> BlockGrowth:
    """Asymptotic size of ``||zeta^{m_k}||_{H^p}^p`` along the blocks.

    Stirling: ``x^{(J+1)/2 - n} e^{-x H}`` with ``x = |m| p / 2``, ``J`` the
    number of nonzero proportions and ``H`` their entropy.
    """
    if blocks.entropy > RATIO_TOL:
        return BlockGrowth(superdecay=True)
    return BlockGrowth(order_power=(blocks.support + 1) / 2 - blocks.n)


def lacunary_monomial_test(blocks: MonomialBlocks, sp: SpaceParams) -> Membership:
    """Membership of a lacunary monomial series in ``A^p_alpha``."""
    if blocks.n != sp.n:
        raise ValueError("dimension mismatch")
    coeff_p = blocks.coeffs.pow(sp.p)
    growth = coeff_p.times(hardy_monomial_growth(blocks, sp.p)).times(BlockGrowth(order_power=-1 - sp.alpha))
    return series_converges(growth.resolve(blocks.gaps))


def monomial_series_terms(indices: Sequence[Sequence[int]], coeffs: Sequence[complex], sp: SpaceParams) -> list[float]:
    """The actual terms ``|a_k|^p ||zeta^{m_k}||_p^p / |m_k|^{1+alpha}`` (diagnostic)."""
    out = []
    for m, a in zip(indices, coeffs):
        M = sum(m)
        if a == 0:
            out.append(0.0)
            continue
        lt = sp.p * math.log(abs(a)) + log_hardy_norm_homog_p(m, sp.p) - (1 + sp.alpha) * math.log(M)
        out.append(math.exp(lt))
    return out


# -- Lipschitz spaces ----------------------------------------------------------

def monomial_sup_norm(m: Sequence[int]) -> float:
    """``sup_{|zeta|=1} |zeta^m| = sqrt(prod m_i^{m_i} / |m|^{|m|})``."""
    M = sum(m)
    if M == 0:
        return 1.0
    s = sum(mi * math.log(mi) for mi in m if mi > 0) - M * math.log(M)
    return math.exp(0.5 * s)


def lacunary_lipschitz_test(gaps, sup_norms: BlockGrowth | None, alpha: float) -> LipschitzClass:
    """Classify via ``m_k^alpha ||f_{m_k}||_inf``: bounded, null, or neither.

    ``gaps`` may also be a :class:`MonomialBlocks`, in which case the block sup
    norm is ``|a_k|`` times the monomial radical and ``sup_norms`` is ignored.
    """
    if isinstance(gaps, MonomialBlocks):
        blocks = gaps
        radical = BlockGrowth(superdecay=True) if blocks.entropy > RATIO_TOL else BlockGrowth()
        sup_norms = blocks.coeffs.times(radical)
        gaps = blocks.gaps
    g = _as_gaps(gaps)
    if g is None:
        return LipschitzClass.LITTLE
    growth = sup_norms.times(BlockGrowth(order_power=alpha)).resolve(g)
    return sequence_class(growth)


__all__ = [
    "BlockGrowth", "GeometricGaps", "LipschitzClass", "Membership", "MonomialBlocks", "NonLacunaryError",
    "bergman_term_growth", "check_lacunary", "hardy_monomial_growth", "lacunary_bergman_test",
    "lacunary_lipschitz_test", "lacunary_monomial_test", "monomial_series_terms", "monomial_sup_norm",
    "sequence_class", "series_converges",
]
