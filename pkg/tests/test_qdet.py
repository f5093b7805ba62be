import random

import pytest

from helpers import DIAMOND, load_fixture, random_block_regular, random_labeling, random_mobile
from linext import oracle
from linext.errors import NonPolynomialError, NotMobileTreeError, NotPartitionedRegularError, UnsupportedLabelingError
from linext.labeling import LabeledPoset, natural_labeling
from linext.mobile import Anchor, MobileSpec, count_mobile, realize
from linext.poset import chain
from linext.qdet import (
    _polynomial, component_blocks, inv_det_applies, is_sigma_partitioned_regular, poly_lcm, q_alternating_sum, q_det_engine, q_inv_det,
    q_maj_det, sigma_partitioned_regular_labeling,
)
from linext.qpoly import QFraction, QPoly, q_factorial, q_int


def tree_fixture():
    doc = load_fixture("mobile_tree.pos")
    return doc.values["M"].realization, doc.values["L"].labeled.omega


def test_poly_lcm():
    assert poly_lcm(q_int(2), q_int(3)) == q_int(2) * q_int(3)
    assert poly_lcm(q_int(2), q_int(4)) == q_int(4)
    assert poly_lcm(q_int(6), q_int(4)) * q_int(2) == q_int(6) * q_int(4)


def test_q_det_engine_ribbon():
    # q-analogue of the MacMahon determinant for descents {3, 5} of a 6-ribbon
    s = [0, 3, 5, 6]
    det = q_det_engine(2, lambda i, j: QFraction(1, q_factorial(s[j + 1] - s[i])))
    poly = (det * q_factorial(6)).to_poly()
    assert poly.at_one() == 35


def test_fixture_polynomials():
    real, omega = tree_fixture()
    assert str(q_maj_det(real, omega)) == "q^4+2q^5+q^6+q^8+3q^9+3q^10+q^11"
    assert str(q_inv_det(real, omega)) == "q^6+3q^7+4q^8+3q^9+q^10"
    lp = LabeledPoset(real.poset, omega)
    assert q_maj_det(real, omega) == oracle.stat_gen_poly(lp, "maj")
    assert q_inv_det(real, omega) == oracle.stat_gen_poly(lp, "inv")


def test_fixture_blocks():
    real, omega = tree_fixture()
    blocks = component_blocks(real)
    assert [len(b) for b in blocks] == [1, 4, 1]
    assert is_sigma_partitioned_regular(real, omega)


def test_inv_rejects_other_labelings():
    real, _ = tree_fixture()
    with pytest.raises(NotPartitionedRegularError):
        q_inv_det(real, tuple(range(real.poset.n, 0, -1)))
    with pytest.raises(NotMobileTreeError):
        q_inv_det(MobileSpec.build(2, (), {1: [DIAMOND]}), tuple(range(1, 7)))


def test_maj_on_diamond_mobile_needs_natural_labeling():
    spec = MobileSpec.build(3, {1}, {3: [DIAMOND]}, Anchor(2, chain(1), 0))
    real = realize(spec)
    lp = natural_labeling(real.poset)
    assert q_maj_det(real, lp.omega) == oracle.stat_gen_poly(lp, "maj")
    reverse = tuple(range(real.poset.n, 0, -1))
    with pytest.raises(UnsupportedLabelingError):
        q_maj_det(real, reverse)
    forced = q_maj_det(real, reverse, check=False)
    assert forced != oracle.stat_gen_poly(LabeledPoset(real.poset, reverse), "maj")


def test_maj_random_labeled_mobile_trees():
    rng = random.Random(31)
    for _ in range(40):
        spec = random_mobile(rng, 8, trees_only=True)
        real = realize(spec)
        lp = random_labeling(rng, real.poset)
        assert q_maj_det(real, lp.omega) == oracle.stat_gen_poly(lp, "maj")


def test_maj_naturally_labeled_mobiles():
    rng = random.Random(32)
    for _ in range(30):
        real = realize(random_mobile(rng, 8))
        lp = natural_labeling(real.poset)
        assert q_maj_det(real, lp.omega) == oracle.stat_gen_poly(lp, "maj")


def test_inv_random_entry_regular_labelings():
    rng = random.Random(33)
    checked = 0
    for _ in range(200):
        real = realize(random_mobile(rng, 8, trees_only=True))
        omega = random_block_regular(rng, real.poset, component_blocks(real))
        assert is_sigma_partitioned_regular(real, omega)
        if not inv_det_applies(real, omega):
            with pytest.raises(NotPartitionedRegularError):
                q_inv_det(real, omega)
            continue
        checked += 1
        assert q_inv_det(real, omega) == oracle.stat_gen_poly(LabeledPoset(real.poset, omega), "inv")
    assert checked > 100


def test_block_regularity_alone_is_not_enough():
    # blocks {z1}, {z2, a, b}, {z3}; every block-regular labeling misses the oracle
    spec = MobileSpec.build(3, {1}, anchor=Anchor(2, chain(2), 1))
    real = realize(spec)
    omega = (1, 2, 5, 3, 4)
    assert is_sigma_partitioned_regular(real, omega) and not inv_det_applies(real, omega)
    unchecked = q_inv_det(real, omega, check=False)
    assert str(unchecked) == "q+2q^2+4q^3+4q^4+4q^5+2q^6+q^7"
    assert str(oracle.stat_gen_poly(LabeledPoset(real.poset, omega), "inv")) == "q+2q^2+4q^3+5q^4+4q^5+2q^6"
    with pytest.raises(NotPartitionedRegularError):
        sigma_partitioned_regular_labeling(real)


def test_constructed_labeling_is_valid():
    rng = random.Random(34)
    found = 0
    for _ in range(40):
        real = realize(random_mobile(rng, 9, trees_only=True))
        try:
            lp = sigma_partitioned_regular_labeling(real)
        except NotPartitionedRegularError:
            continue
        found += 1
        assert is_sigma_partitioned_regular(real, lp.omega) and inv_det_applies(real, lp.omega)
    assert found > 30


def test_q_equals_one_recovers_count():
    rng = random.Random(35)
    for _ in range(20):
        spec = random_mobile(rng, 8, trees_only=True)
        real = realize(spec)
        try:
            lp = sigma_partitioned_regular_labeling(real)
        except NotPartitionedRegularError:
            continue
        assert q_maj_det(real, lp.omega).at_one() == q_inv_det(real, lp.omega).at_one() == count_mobile(spec)


def test_q_alternating_sum_identity():
    rng = random.Random(36)
    for _ in range(20):
        real = realize(random_mobile(rng, 7))
        lp = random_labeling(rng, real.poset)
        folds = real.folds()
        for stat in ("maj", "inv"):
            assert q_alternating_sum(lp, folds, stat) == oracle.stat_gen_poly(lp, stat)


def test_non_polynomial_value_is_refused():
    value = q_det_engine(0, lambda i, j: QFraction(QPoly([1]), q_int(2)))
    with pytest.raises(NonPolynomialError):
        _polynomial(value, 1)
