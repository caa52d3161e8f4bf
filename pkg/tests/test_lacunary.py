import math

import pytest

from ballspaces.lacunary import (BlockGrowth, GeometricGaps, LipschitzClass, Membership, MonomialBlocks,
                                 NonLacunaryError, check_lacunary, lacunary_bergman_test, lacunary_lipschitz_test,
                                 lacunary_monomial_test, monomial_series_terms, monomial_sup_norm,
                                 series_converges)
from ballspaces.norms import SpaceParams

G2 = GeometricGaps(1, 2)


def test_unit_norms_converge():
    assert lacunary_bergman_test(G2, BlockGrowth(), SpaceParams(1, 2, 0)) is Membership.MEMBER
    assert lacunary_bergman_test([2, 4, 8, 16], BlockGrowth(), SpaceParams(1, 1, 0)) is Membership.MEMBER


@pytest.mark.parametrize("p,alpha", [(2, 0), (1, -0.5), (0.5, 3), (3, -1.5)])
def test_critical_witness_fails(p, alpha):
    # blocks of H^p size m_k^{(1+alpha)/p}: every term is of size one
    g = BlockGrowth(order_power=(1 + alpha) / p)
    assert lacunary_bergman_test(G2, g, SpaceParams(1, p, alpha)) is Membership.NON_MEMBER
    # a k^{-2/p} damping restores convergence
    g = BlockGrowth(power=-2 / p, order_power=(1 + alpha) / p)
    assert lacunary_bergman_test(G2, g, SpaceParams(1, p, alpha)) is Membership.MEMBER


def test_trivial_series():
    sp = SpaceParams(1, 2, 0)
    assert lacunary_bergman_test([], BlockGrowth(order_power=9), sp) is Membership.MEMBER
    assert lacunary_bergman_test([5], BlockGrowth(order_power=9), sp) is Membership.MEMBER
    assert lacunary_bergman_test(G2, BlockGrowth.zero(), sp) is Membership.MEMBER


def test_inconclusive_without_power():
    g = BlockGrowth(power=None, order_power=0.5)
    assert lacunary_bergman_test(G2, g, SpaceParams(1, 2, 0)) is Membership.INCONCLUSIVE


def test_non_lacunary_rejected():
    with pytest.raises(NonLacunaryError):
        GeometricGaps(1, 1)
    with pytest.raises(NonLacunaryError):
        check_lacunary([1, 2, 3, 3])
    with pytest.raises(NonLacunaryError):
        lacunary_bergman_test([4, 4, 4], BlockGrowth(), SpaceParams(1, 2, 0))
    assert check_lacunary([1, 3, 9, 27]) == 3


def test_series_converges_power_boundary():
    assert series_converges(BlockGrowth(power=-1)) is Membership.NON_MEMBER
    assert series_converges(BlockGrowth(power=-1.01)) is Membership.MEMBER
    assert series_converges(BlockGrowth(log_ratio=-1e-3, power=5)) is Membership.MEMBER


@pytest.mark.parametrize("p,alpha", [(2, 0), (1, 1), (0.7, -0.5)])
def test_monomial_reduces_to_bergman_n1(p, alpha):
    sp = SpaceParams(1, p, alpha)
    for coeffs in (BlockGrowth(), BlockGrowth(order_power=(1 + alpha) / p), BlockGrowth(power=-3, order_power=(1 + alpha) / p)):
        blocks = MonomialBlocks(G2, (1.0,), coeffs)
        assert lacunary_monomial_test(blocks, sp) is lacunary_bergman_test(G2, coeffs, sp)


def test_monomial_single_coordinate_n2():
    # a_k = [Gamma(Mp/2+2)/Gamma(Mp/2+1)]^{1/p} 2^{k(1+alpha)/p} ~ M^{1/p} M^{(1+alpha)/p}
    p, alpha = 2, 0.5
    sp = SpaceParams(2, p, alpha)
    blocks = MonomialBlocks(G2, (1.0, 0.0), BlockGrowth(order_power=(2 + alpha) / p))
    assert lacunary_monomial_test(blocks, sp) is Membership.NON_MEMBER
    idx = blocks.indices(12)
    coeffs = [math.exp((math.lgamma(sum(m) * p / 2 + 2) - math.lgamma(sum(m) * p / 2 + 1)) / p) * 2 ** (k * (1 + alpha) / p)
              for k, m in enumerate(idx, 1)]
    terms = monomial_series_terms(idx, coeffs, sp)
    assert terms == pytest.approx([1.0] * 12, rel=1e-9)


def test_balanced_direction_superdecay():
    # equal proportions: ||zeta^m||_{H^p} decays geometrically, so polynomial growth is harmless
    blocks = MonomialBlocks(G2, (1.0, 1.0), BlockGrowth(order_power=3))
    assert lacunary_monomial_test(blocks, SpaceParams(2, 2, 0)) is Membership.MEMBER


def test_lipschitz_examples():
    alpha = 0.7
    g = BlockGrowth(order_power=-alpha)
    assert lacunary_lipschitz_test(G2, g, alpha) is LipschitzClass.BIG
    assert lacunary_lipschitz_test(G2, BlockGrowth(power=-1, order_power=-alpha), alpha) is LipschitzClass.LITTLE
    assert lacunary_lipschitz_test(G2, BlockGrowth.zero(), alpha) is LipschitzClass.LITTLE
    assert lacunary_lipschitz_test(G2, BlockGrowth(order_power=0.1 - alpha), alpha) is LipschitzClass.NEITHER
    blocks = MonomialBlocks(G2, (1.0,), BlockGrowth(order_power=-alpha))
    assert lacunary_lipschitz_test(blocks, None, alpha) is LipschitzClass.BIG


def test_monomial_sup_norm():
    assert monomial_sup_norm((7,)) == 1
    assert monomial_sup_norm((1, 1)) == pytest.approx(0.5)
    assert monomial_sup_norm((0, 0)) == 1
