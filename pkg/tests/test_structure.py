import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from ballspaces.lacunary import LipschitzClass, Membership
from ballspaces.norms import SpaceParams, SupGrid, bergman_norm
from ballspaces.quadrature import QuadratureSpec
from ballspaces.series import TaylorPolynomial, binomial_series_coeffs, random_polynomial
from ballspaces.radial import radial_power
from ballspaces.structure import (AtomSpec, InadmissibleExponent, LacunaryWitness, Relation, WitnessFt,
                                  atom_eval, atom_norm_asymptote, atomic_synthesize, bergman_vs_lipschitz,
                                  classification_csv, classify_pairs, eq12_bound, find_witness,
                                  inclusion_bergman, inclusion_lipschitz, lacunary_witness, lattice_generate,
                                  lipschitz_stretch, monomial_multiplier_ratios, multiplier_bound_probe,
                                  witness_ft)

def _separated(p, a, q, b, n):
    """Both threshold gaps clear of the rounding tolerance."""
    return (abs((n + 1 + a) / p - (n + 1 + b) / q) > 1e-6
            and abs((1 + a) / p - (1 + b) / q) > 1e-6)


S = Relation.SUBSET
P = Relation.SUPERSET


def test_inclusion_examples():
    assert inclusion_bergman((1, 0), (2, 1), 1) is Relation.NEITHER
    assert inclusion_bergman((2, -1), (2, 0.5), 2) is S
    assert inclusion_bergman((2, 0.5), (2, -1), 2) is P
    assert inclusion_bergman((2, -3), (2, -3), 1) is Relation.EQUAL


def test_inclusion_unresolvable_pair_raises():
    with pytest.raises(ArithmeticError):
        inclusion_bergman((1, 1e-14), (1, 0), 1)


def test_inclusion_branches():
    # p <= q: (n+1+alpha)/p <= (n+1+beta)/q, non-strict
    assert inclusion_bergman((1, 0), (2, 2), 1) is S
    assert inclusion_bergman((1, 0), (2, 1.99), 1) is Relation.NEITHER
    # q < p: (1+alpha)/p < (1+beta)/q, strict
    assert inclusion_bergman((2, 1), (1, 0.5), 1) is S
    assert inclusion_bergman((2, 1), (1, 0), 1) is Relation.NEITHER


@settings(max_examples=200, deadline=None)
@given(st.floats(0.2, 5), st.floats(-4, 4), st.floats(0.2, 5), st.floats(-4, 4), st.integers(1, 3))
def test_inclusion_antisymmetric(p, a, q, b, n):
    assume(_separated(p, a, q, b, n) or (p, a) == (q, b))
    r = inclusion_bergman((p, a), (q, b), n)
    assert inclusion_bergman((q, b), (p, a), n) is r.flipped()
    if (p, a) != (q, b):
        assert r is not Relation.EQUAL


def test_partial_order_sample(rng):
    pts = [(float(rng.uniform(0.3, 4)), float(rng.uniform(-3, 3))) for _ in range(50)]
    for n in (1, 2):
        R = {(i, j): inclusion_bergman(pts[i], pts[j], n) for i in range(50) for j in range(50)}
        sub = {(i, j) for (i, j), r in R.items() if r in (S, Relation.EQUAL)}
        for i, j in sub:
            for k in range(50):
                if (j, k) in sub:
                    assert (i, k) in sub


@settings(max_examples=100, deadline=None)
@given(st.floats(0.25, 4), st.floats(-3, 3), st.floats(0.25, 4), st.floats(-3, 3))
def test_witness_coherence(p, a, q, b):
    assume(_separated(p, a, q, b, 1))
    r = inclusion_bergman((p, a), (q, b), 1)
    w = find_witness((p, a), (q, b))
    if r in (S, Relation.EQUAL):
        assert w is None
    else:
        assert w.member(SpaceParams(1, p, a)) and not w.member(SpaceParams(1, q, b))


def test_lipschitz_relations():
    assert inclusion_lipschitz(1, 0) is S
    assert inclusion_lipschitz(0.5, 0.5) is Relation.EQUAL
    p, a = 2, 1
    assert bergman_vs_lipschitz(p, a, (1 + a) / p) is not S
    assert bergman_vs_lipschitz(p, a, (1 + a) / p - 0.01) is S
    assert bergman_vs_lipschitz(p, a, (1 + 1 + a) / p, 1) is P


def test_stretch():
    assert lipschitz_stretch(2, 0, 1).as_tuple() == (0.5, 0.5, 1.0)
    assert lipschitz_stretch(1, -2, 1).as_tuple() == (1, -1, 0)
    assert lipschitz_stretch(1, 0, 1).stretch != lipschitz_stretch(2, 0, 1).stretch


def test_witness_ft_identity():
    t, k, D = 0.7, 2, 30
    f = witness_ft(t, k, D)
    Rk = radial_power(f, k)
    c = binomial_series_coeffs(t + k, D)       # (1 - x)^{-(t+k)}
    for j in range(1, D + 1):
        assert Rk[(j,)] == pytest.approx(c[j], rel=1e-12)
    assert Rk[(0,)] == 0


def test_witness_ft_lipschitz_profile():
    gamma = 0.8
    for t, grows in ((0.6, False), (1.2, True)):
        k = 1
        w = WitnessFt(t, k)
        x = 1 - np.geomspace(1e-1, 1e-5, 5)
        prof = (1 - x ** 2) ** (k + gamma) * np.abs(w.radial_eval(x[:, None], k))
        if grows:
            assert np.all(np.diff(prof) > 0) and prof[-1] > 5 * prof[0]
        else:
            assert prof[-1] < 2 * prof[0]


def test_witness_ft_boundary_norm_grows():
    sp = SpaceParams(1, 2, 0)
    w = WitnessFt(1.0, 0)
    vals = [bergman_norm(w, sp, QuadratureSpec(r_max=r)).value for r in (0.9, 0.99, 0.999)]
    assert vals[0] < vals[1] < vals[2]


def test_lacunary_witness():
    p, a = 2, 0.5
    f = lacunary_witness(p, a, 5)
    assert f[(4,)] == pytest.approx(2 ** (2 * 1.5 / 2))
    assert lacunary_witness(p, a, 0).max_order() <= 0 and not any(f for _, f in lacunary_witness(p, a, 0).items())
    lw = LacunaryWitness((1 + a) / p)
    assert lw.member(SpaceParams(1, p, a)) is Membership.NON_MEMBER
    assert lw.lipschitz_class(-(1 + a) / p) is LipschitzClass.BIG
    with pytest.raises(ValueError):
        lacunary_witness(p, a, 3, n=2)


def test_atoms():
    sp = SpaceParams(1, 1, 0)
    spec = AtomSpec((0,), 3)
    assert atom_eval(spec, (0.5,)) == 1
    assert atom_norm_asymptote(spec, sp) == 1
    with pytest.raises(InadmissibleExponent):
        AtomSpec((0.1,), 0)
    with pytest.raises(InadmissibleExponent):
        AtomSpec((0.1,), -2)
    AtomSpec((0.1,), -2.5)
    assert atom_eval(AtomSpec((0.5,), 2), (0.5,)) == pytest.approx(1 / 0.75 ** 2)


def test_eq12_guard():
    sp = SpaceParams(1, 0.5, 0)
    bound = eq12_bound(sp)
    assert bound == 4
    lat = lattice_generate(1, 0.5, 3, seed=1)
    with pytest.raises(InadmissibleExponent):
        atomic_synthesize([1.0], lat, bound, sp)
    with pytest.raises(InadmissibleExponent):
        atomic_synthesize([1.0], lat, bound - 0.5, sp)
    atomic_synthesize([1.0], lat, bound + 1e-6, sp, estimate=False)


def test_normalized_atom_norm_ratio():
    sp = SpaceParams(1, 1, 0)
    ratios = [bergman_norm(AtomSpec((a,), 3).normalized(sp), sp).value for a in (0.3, 0.7, 0.9)]
    c = max(max(ratios), 1 / min(ratios))
    assert c < 5


def test_factorization_exponents():
    b, p, q = 3.0, 1.0, 1.5
    r = 1 / (1 / p - 1 / q)
    assert b * p / q + b * p / r == pytest.approx(b)
    z, a = (0.2 + 0.1j,), (0.6,)
    lhs = atom_eval(AtomSpec(a, b * p / q), z) * atom_eval(AtomSpec(a, b * p / r), z)
    assert lhs == pytest.approx(atom_eval(AtomSpec(a, b), z))


@pytest.mark.parametrize("n", [1, 2])
def test_lattice_separation(n):
    lat = lattice_generate(n, 0.8 if n == 2 else 0.5, 4, seed=11)
    assert lat.min_separation() >= lat.separation / 2 * (1 - 1e-12)
    assert np.all(np.sum(np.abs(lat.points) ** 2, axis=1) < 1)


def test_lattice_growth():
    counts = lattice_generate(1, 0.5, 7, seed=0).shell_counts()
    ratios = [b / a for a, b in zip(counts[2:], counts[3:])]
    assert all(1 <= r <= 4 for r in ratios)


def test_lattice_large_delta():
    assert len(lattice_generate(1, 50.0, 1, seed=3)) == 1


def test_synthesis_examples():
    sp = SpaceParams(1, 1, 0)
    lat = lattice_generate(1, 0.5, 3, seed=2)
    zero = atomic_synthesize(np.zeros(5), lat, 3, sp)
    assert zero.norm.value == 0 and evaluate_at(zero, [[0.3]])[0] == 0
    single = atomic_synthesize([2.0], lat, 3, sp, estimate=False)
    a = lat.points[0]
    z = np.array([[0.1 + 0.2j]])
    expect = 2 * (1 - abs(a[0]) ** 2) ** (3 - 2) * atom_eval(AtomSpec(tuple(a), 3), z[0])
    assert evaluate_at(single, z)[0] == pytest.approx(expect)


def evaluate_at(syn, z):
    return syn(np.asarray(z, dtype=complex))


def test_synthesis_constant_stable():
    sp = SpaceParams(1, 1, 0)
    ratios = []
    for seed in range(3):
        rng = np.random.default_rng(seed)
        lat = lattice_generate(1, 0.5, 5, seed=seed)
        c = rng.standard_normal(min(100, len(lat)))
        ratios.append(atomic_synthesize(c, lat, 3, sp, QuadratureSpec(radial_nodes=24)).ratio)
    assert max(ratios) / min(ratios) <= 1.2 / 0.8


def test_multiplier():
    rng = np.random.default_rng(4)
    fam = [random_polynomial(rng, 1, 8) for _ in range(20)]
    fam0 = [f - TaylorPolynomial.constant(f.constant_term, 1) for f in fam]
    assert multiplier_bound_probe(2, 0.5, 0.5, fam0).ratios == pytest.approx([1.0] * 20)
    probe = multiplier_bound_probe(2, 0, -2, fam)
    assert math.isfinite(probe.ratio) and probe.method == "exact"
    r = monomial_multiplier_ratios(0, -2, 1, 400)
    assert max(r[:50]) < 10
    assert abs(r[399] / r[199] - 1) < 0.01


def test_classify_grid():
    ps = [(0.5, -1), (1, 0), (2, -3), (2, 1), (3, 0.5)]
    rows = classify_pairs([(a, b) for a in ps for b in ps], 1)
    assert len(rows) == 25
    table = {((r.p1, r.alpha1), (r.p2, r.alpha2)): r.relation for r in rows}
    for (x, y), rel in table.items():
        assert table[(y, x)] is rel.flipped()
        assert (rel is Relation.EQUAL) == (x == y)
    csv_text = classification_csv(rows)
    assert len(csv_text.splitlines()) == 26
    assert csv_text.splitlines()[0].startswith("p1,alpha1,p2,alpha2,relation,witness-id")
