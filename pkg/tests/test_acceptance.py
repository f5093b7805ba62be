"""Acceptance checks.  Each test prints one PASS/FAIL line, then asserts.

Run alone with ``pytest tests/test_acceptance.py -s -q``.
"""

import random
import time
from itertools import combinations
from math import comb

import pytest

from helpers import (
    BRIDGED, DIAMOND, X_POSET, load_fixture, random_block_regular, random_connected_poset, random_labeling, random_mobile,
    random_rooted_tree, random_tree, shifted_diagram, young_diagram,
)
from linext import oracle
from linext.atkinson import atkinson_spectrum, compatible_labeling, q_atkinson_spectrum
from linext.counting import count
from linext.dcomplete import (
    double_tailed_diamond, hook_count, is_d_complete, q_hook_maj, top_tree_and_acyclic,
)
from linext.errors import NonIntegralError, NotPartitionedRegularError
from linext.folding import alternating_sum_count, component_tree, det_count, path_orders
from linext.labeling import LabeledPoset, natural_labeling
from linext.mobile import (
    Anchor, MobileSpec, count_mobile, descent_polynomial, euler_family, euler_spec, macmahon_count, realize,
)
from linext.poset import chain, full_fold, ominus, slant_sum
from linext.qdet import (
    component_blocks, inv_det_applies, q_inv_det, q_maj_det, sigma_partitioned_regular_labeling,
)
from linext.qpoly import q_binomial, q_multinomial

EX_DIAMOND = MobileSpec.build(5, {1, 3}, {4: [DIAMOND]}, Anchor(3, chain(1), 0))
EX_TREE = MobileSpec.build(3, {1}, {2: [chain(1), chain(1)]}, Anchor(2, chain(1), 0))


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        return ok
    return emit


def test_1_constants(report):
    start = time.perf_counter()
    folds = [(2, 4), (3, 6)]
    got = {
        "ribbon": macmahon_count(6, {3, 5}),
        "bridged": det_count(BRIDGED, folds),
        "split c<e": (oracle.count(ominus(BRIDGED, [(2, 4)])), oracle.count(full_fold(BRIDGED, [(2, 4)]))),
        "split a<c": (oracle.count(ominus(BRIDGED, [(0, 2)])), oracle.count(full_fold(BRIDGED, [(0, 2)]))),
        "diamond mobile": count_mobile(EX_DIAMOND),
        "mobile tree": count_mobile(EX_TREE),
        "x poset": count(X_POSET, "det"),
    }
    elapsed = time.perf_counter() - start
    want = {"ribbon": 35, "bridged": 77, "split c<e": (105, 28), "split a<c": (117, 40),
            "diamond mobile": 240, "mobile tree": 12, "x poset": 4}
    ok = got == want and elapsed < 1.0
    report("1 constants", ok, f"{got} in {elapsed:.3f}s")
    assert got == want
    assert elapsed < 1.0


def test_2_sequences(report):
    start = time.perf_counter()
    c1 = [euler_family("chain", 1, k)[1] for k in range(1, 6)]
    a2 = [euler_family("antichain", 2, k)[1] for k in range(1, 6)]
    c0 = [euler_family("chain", 0, k)[1] for k in range(1, 5)]
    elapsed = time.perf_counter() - start
    c0_oracle = [oracle.count(euler_family("chain", 0, k)[0]) for k in range(1, 5)]
    ok = (c1 == [1, 16, 1036, 174664, 60849880]
          and a2 == [2, 220, 163800, 445021200, 3214652032800]
          and c0 == [1, 5, 61, 1385] == c0_oracle
          and elapsed < 5.0)
    report("2 sequences", ok, f"C_1 {c1}; A_2 {a2}; C_0 {c0} (oracle {c0_oracle}) in {elapsed:.2f}s")
    assert ok


def test_3_q_polynomials(report):
    doc = load_fixture("mobile_tree.pos")
    real, omega = doc["M"].realization, doc["L"].labeled.omega
    assert count_mobile(real) == 12
    maj = q_maj_det(real, omega)
    inv = q_inv_det(real, omega)
    ok = str(maj) == "q^4+2q^5+q^6+q^8+3q^9+3q^10+q^11" and str(inv) == "q^6+3q^7+4q^8+3q^9+q^10"
    report("3 q-polynomials", ok, f"maj {maj}; inv {inv}")
    assert ok


def test_4_descent_polynomials(report):
    polys = [str(descent_polynomial(euler_spec("chain", 1, k), check_points=1)) for k in (1, 2, 3)]
    ok = polys == ["1", "binom(N,3) - 4", "16*binom(N,6) - 4*binom(N,3) + 28"]
    report("4 descent polynomials", ok, "; ".join(polys) + " (one extra sample point verified each)")
    assert ok


def test_5a_folding_and_mobiles(report):
    rng = random.Random(2024)
    posets = fold_sets = 0
    bad = []
    while posets < 500:
        n = rng.randint(2, 7)
        p = random_connected_poset(rng, n) if posets % 2 else random_tree(rng, n)
        bridges = [c for c in sorted(p.covers) if p.is_bridge(c)]
        if not bridges:
            continue
        posets += 1
        want = oracle.count(p)
        for c in bridges:
            if oracle.count(ominus(p, [c])) - oracle.count(full_fold(p, [c])) != want:
                bad.append(("single fold", p, c))
        for size in range(len(bridges) + 1):
            for folds in combinations(bridges, size):
                fold_sets += 1
                if alternating_sum_count(p, folds) != want:
                    bad.append(("alternating sum", p, folds))
    mobiles = 0
    while mobiles < 200:
        spec = random_mobile(rng, 9)
        mobiles += 1
        if count_mobile(spec) != oracle.count(realize(spec).poset):
            bad.append(("mobile", spec))
    ok = not bad
    report("5a fold identities and mobiles", ok,
           f"{posets} posets, {fold_sets} bridge fold sets, {mobiles} mobiles, {len(bad)} mismatches")
    assert not bad


def test_5a_labeled_mobiles_as_stated(report):
    """maj for arbitrary labelings; inv for labelings that are regular on each block."""
    rng = random.Random(77)
    maj_bad = inv_bad = 0
    maj_total = inv_total = 0
    while maj_total < 100:
        real = realize(random_mobile(rng, 8))
        lp = random_labeling(rng, real.poset)
        maj_total += 1
        maj_bad += q_maj_det(real, lp.omega, check=False) != oracle.stat_gen_poly(lp, "maj")
    while inv_total < 100:
        real = realize(random_mobile(rng, 8, trees_only=True))
        if len(component_blocks(real)) < 2:
            continue
        omega = random_block_regular(rng, real.poset, component_blocks(real))
        inv_total += 1
        got = q_inv_det(real, omega, check=False)
        inv_bad += got != oracle.stat_gen_poly(LabeledPoset(real.poset, omega), "inv")
    ok = maj_bad == 0 and inv_bad == 0
    report("5a labeled mobiles, hypotheses as stated", ok,
           f"maj {maj_bad}/{maj_total} mismatches (random labelings), "
           f"inv {inv_bad}/{inv_total} mismatches (block-regular labelings)")
    assert ok


def test_5a_labeled_mobiles_supported(report):
    """The same pipelines inside the domain their guards accept."""
    rng = random.Random(78)
    maj_total = inv_total = 0
    bad = 0
    no_labeling = 0
    while maj_total < 100:
        trees = maj_total % 2 == 0
        real = realize(random_mobile(rng, 8, trees_only=trees))
        lp = random_labeling(rng, real.poset) if trees else natural_labeling(real.poset)
        maj_total += 1
        bad += q_maj_det(real, lp.omega) != oracle.stat_gen_poly(lp, "maj")
    while inv_total < 100:
        real = realize(random_mobile(rng, 8, trees_only=True))
        omega = random_block_regular(rng, real.poset, component_blocks(real))
        if not inv_det_applies(real, omega):
            try:
                omega = sigma_partitioned_regular_labeling(real).omega
            except NotPartitionedRegularError:
                no_labeling += 1
                continue
        inv_total += 1
        bad += q_inv_det(real, omega) != oracle.stat_gen_poly(LabeledPoset(real.poset, omega), "inv")
    ok = bad == 0
    report("5a labeled mobiles, supported labelings", ok,
           f"{maj_total} maj (mobile trees any labeling, others natural), {inv_total} inv "
           f"(regular on every array entry), {bad} mismatches; {no_labeling} mobile trees admit no such labeling")
    assert ok


def test_5b_atkinson(report):
    rng = random.Random(91)
    trees = spectra = q_spectra = 0
    bad = 0
    while trees < 200:
        t = random_tree(rng, rng.randint(1, 9))
        trees += 1
        for a in range(t.n):
            spectra += 1
            bad += atkinson_spectrum(t, a) != oracle.spectrum(t, a)
        a = rng.randrange(t.n)
        lp = compatible_labeling(t, a)
        q_spec = q_atkinson_spectrum(lp, a)
        q_spectra += 1
        bad += q_spec != oracle.q_spectrum(lp, a)
        bad += tuple(s.at_one() for s in q_spec) != atkinson_spectrum(t, a)
    # q = 1 on the other q operations
    ones = [q_binomial(m, k).at_one() == comb(m, k) for m in range(9) for k in range(m + 1)]
    ones.append(q_multinomial(6, (1, 2, 3)).at_one() == 60)
    for _ in range(30):
        real = realize(random_mobile(rng, 8, trees_only=True))
        lp = random_labeling(rng, real.poset)
        e = oracle.count(real.poset)
        ones.append(q_maj_det(real, lp.omega).at_one() == e)
        try:
            good = sigma_partitioned_regular_labeling(real)
        except NotPartitionedRegularError:
            continue
        ones.append(q_inv_det(real, good.omega).at_one() == e)
    for p in (DIAMOND, double_tailed_diamond(5), young_diagram((3, 2, 2))):
        ones.append(q_hook_maj(natural_labeling(p)).at_one() == hook_count(p))
    ok = bad == 0 and all(ones)
    report("5b atkinson", ok,
           f"{trees} trees, {spectra} spectra, {q_spectra} q-spectra, {bad} mismatches; "
           f"q=1 checks {sum(ones)}/{len(ones)}")
    assert ok


def _d_complete_fixtures():
    out = [chain(k) for k in range(1, 11)]
    out += [double_tailed_diamond(k) for k in range(3, 7)]
    out += [DIAMOND, young_diagram((3, 2)), young_diagram((3, 3)), young_diagram((4, 3, 2, 1)),
            shifted_diagram((3, 2, 1)), shifted_diagram((4, 3, 1)), shifted_diagram((4, 3, 2, 1))]
    rng = random.Random(5)
    out += [random_rooted_tree(rng, rng.randint(2, 10)) for _ in range(20)]
    out.append(slant_sum(DIAMOND, 1, DIAMOND, 3))
    out.append(slant_sum(double_tailed_diamond(4), 2, chain(3), 2))
    return out


def test_5c_d_complete(report):
    fixtures = _d_complete_fixtures()
    bad = [p for p in fixtures if not is_d_complete(p) or hook_count(p) != oracle.count(p)]
    rng = random.Random(13)
    pool = [DIAMOND, double_tailed_diamond(4), young_diagram((2, 2, 1)), shifted_diagram((3, 1)), chain(2)]
    closures = 0
    closure_bad = 0
    while closures < 50:
        p1 = rng.choice(pool)
        p2 = rng.choice(pool) if rng.random() < 0.6 else random_rooted_tree(rng, rng.randint(1, 3))
        if p1.n + p2.n > 12:
            continue
        _, acyclic1 = top_tree_and_acyclic(p1)
        y = rng.choice(sorted(acyclic1))
        (x,) = p2.maximal()
        p = slant_sum(p1, y, p2, x)
        closures += 1
        _, acyclic = top_tree_and_acyclic(p)
        _, acyclic2 = top_tree_and_acyclic(p2)
        kept = acyclic1 | {p1.n + z for z in acyclic2}
        closure_bad += not is_d_complete(p) or not kept <= acyclic
        if p.n <= 10:
            closure_bad += hook_count(p) != oracle.count(p)
        if p.n <= 9 and rng.random() < 0.5:
            pool.append(p)
    ok = not bad and closure_bad == 0
    report("5c d-complete", ok,
           f"{len(fixtures)} fixtures, {len(bad)} hook mismatches; {closures} slant-sum closures, {closure_bad} failures")
    assert ok


def test_5d_determinant_engine(report):
    rng = random.Random(55)
    instances = unequal = nonintegral = 0
    while instances < 300:
        if instances % 2:
            real = realize(random_mobile(rng, 9))
            p, folds = real.poset, real.folds()
        else:
            p = random_connected_poset(rng, rng.randint(2, 7))
            bridges = [c for c in sorted(p.covers) if p.is_bridge(c)]
            folds = [c for c in bridges if rng.random() < 0.6]
        orders = path_orders(component_tree(p, folds))
        if not orders:
            continue
        instances += 1
        values = set()
        for order in orders:
            try:
                values.add(det_count(p, folds, order))
            except NonIntegralError:
                nonintegral += 1
        unequal += len(values) != 1 or values != {oracle.count(p)}
    ok = unequal == 0 and nonintegral == 0
    report("5d determinant engine", ok,
           f"{instances} instances, {unequal} with path orders disagreeing or off the oracle, "
           f"{nonintegral} integrality failures")
    assert ok
