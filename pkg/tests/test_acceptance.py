"""Acceptance criteria, one or more tests per criterion.

Each test records its verdict; the terminal summary prints one PASS/FAIL
line per criterion.
"""

import random
import time
from fractions import Fraction

from tiedtrace import algebra, braid as br
from tiedtrace.algebra import AlgebraElement, TiePartition
from tiedtrace.braid import BraidWord, parse_braid
from tiedtrace.catalog import (
    load_catalog,
    lookup,
    reference_differences,
    reference_homflypt,
    reference_theta,
    reference_values,
)
from tiedtrace.esystem import e_value, make_solution, residuals, verify
from tiedtrace.invariants import (
    clear_caches,
    compare,
    e_k,
    homflypt,
    mu,
    stirling,
    theta_closed,
    theta_skein,
    theta_trace,
    two_component_decomposition_check,
)
from tiedtrace.invariants import e_minus_one, set_partitions
from tiedtrace.scalar import ScalarValue, TracePolynomial
from tiedtrace.validation import mixed_skein_holds, self_crossing_defect

SEED = 20240601


def _random_word(rng, max_strands=4, max_length=10, min_strands=1):
    return br.random_braid(rng, max_strands, max_length, min_strands=min_strands)


def _with_components(rng, count, max_strands=4, max_length=10):
    while True:
        w = _random_word(rng, max_strands, max_length, min_strands=count)
        if br.components(w).count == count:
            return w


def test_criterion_1_trace_micro_values(acceptance):
    z, E = TracePolynomial.z(), TracePolynomial.E()
    delta = TracePolynomial({(1, 0, 0): 1, (-1, 0, 0): -1})
    start = time.perf_counter()
    ok = (
        algebra.trace(parse_braid("{1}")) == z
        and algebra.trace(parse_braid("{1,1}")) == 1 + delta * z
        and algebra.trace(parse_braid("{-1}")) == z - delta * E
    )
    for n in range(1, 7):
        for blocks in set_partitions(n):
            P = TiePartition(tuple(tuple(b) for b in blocks))
            ok &= AlgebraElement(n, {(P, ()): 1}).trace() == E ** (n - len(P))
    ok &= time.perf_counter() - start < 1.0
    acceptance(1, "trace micro-values", ok)
    assert ok


def test_criterion_2_knot_homflypt(acceptance):
    names = reference_values()["homflypt"]
    assert set(names) == {"3_1", "3_1*", "6_2*", "5_2*", "8_20"}
    assert lookup("5_2*").braid == "{-1,2,-1,-2,-2,-2}"
    assert lookup("8_20").braid == "{-2,1,-2,-1,2,-1,-2,1}"
    ok = True
    for name in names:
        clear_caches()
        start = time.perf_counter()
        value = homflypt(lookup(name).word())
        ok &= value == reference_homflypt(name) and time.perf_counter() - start < 1.0
    acceptance(2, "knot Homflypt values", ok)
    assert ok


def test_criterion_3_twelve_link_theta_values(acceptance):
    clear_caches()
    start = time.perf_counter()
    wrong = [
        name
        for name in reference_values()["theta"]
        if theta_trace(lookup(name).word()) != reference_theta(name)
    ]
    elapsed = time.perf_counter() - start
    ok = not wrong and len(reference_values()["theta"]) == 12 and elapsed <= 15 * 60
    acceptance(3, "twelve reference Theta values", ok)
    assert not wrong
    assert elapsed <= 15 * 60


def test_criterion_4_reference_difference_formulas(acceptance):
    mismatched = []
    for first, second, reference in reference_differences():
        report = compare(lookup(first).word(), lookup(second).word(), "trace")
        if report.theta_difference != reference:
            mismatched.append(f"{first} - {second}")
    acceptance(4, "compare() equals the six reference difference formulas", not mismatched)
    assert not mismatched, mismatched


def test_criterion_4_reference_formulas_match_reversed_difference():
    # informative: the reference formulas agree with Theta(second) - Theta(first)
    for first, second, reference in reference_differences():
        report = compare(lookup(second).word(), lookup(first).word(), "trace")
        assert report.theta_difference == reference


def test_criterion_4_difference_shape(acceptance):
    factor = e_minus_one()
    ok = len(reference_differences()) == 6
    for first, second, _ in reference_differences():
        report = compare(lookup(first).word(), lookup(second).word(), "trace")
        diff = report.theta_difference
        ok &= report.p_equal
        ok &= diff.divide_exact(factor) is not None
        ok &= diff.specialize_E(1).is_zero()
        ok &= not report.specializations["1/2"].is_zero()
        ok &= not report.specializations["1/3"].is_zero()
        ok &= report.specializations["1/3"] == diff.specialize_E(Fraction(1, 3))
    acceptance(4, "differences divisible by (E-1), zero at E=1, nonzero at 1/2 and 1/3", ok)
    assert ok


def test_criterion_5_engine_agreement(acceptance):
    clear_caches()
    rng = random.Random(SEED)
    start = time.perf_counter()
    bad = []
    for _ in range(200):
        w = _random_word(rng)
        assert w.strands <= 4 and len(w) <= 10
        if not (theta_trace(w) == theta_skein(w) == theta_closed(w)):
            bad.append(w.canonical())
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 120
    acceptance(5, "engine agreement on 200 random braids", ok)
    assert not bad, bad[:5]
    assert elapsed <= 120


def _move(rng, w):
    kind = rng.choice(("cycle", "conjugate", "stabilize+", "stabilize-"))
    if kind == "cycle":
        return br.cycle(w)
    if kind == "conjugate" and w.strands > 1:
        return br.conjugate(w, rng.choice((1, -1)) * rng.randint(1, w.strands - 1))
    if kind == "stabilize-":
        return br.stabilize(w, -1)
    return br.stabilize(w, 1)


def test_criterion_6_markov_invariance(acceptance):
    rng = random.Random(SEED + 1)
    bad = []
    for _ in range(200):
        w = _random_word(rng)
        moved = w
        for _ in range(rng.randint(1, 4)):
            moved = _move(rng, moved)
        if theta_trace(moved) != theta_trace(w):
            bad.append(f"{w.canonical()} -> {moved.canonical()}")
    acceptance(6, "Markov invariance on 200 random move sequences", not bad)
    assert not bad, bad[:5]


def test_criterion_7_knots_are_E_free(acceptance):
    rng = random.Random(SEED + 2)
    ok = True
    for _ in range(50):
        w = _with_components(rng, 1)
        value = theta_trace(w)
        ok &= not value.has_E() and value == homflypt(w)
    acceptance(7, "knots give E-free Theta equal to P", ok)
    assert ok


def test_criterion_7_disjoint_knots(acceptance):
    rng = random.Random(SEED + 3)
    ok = True
    for _ in range(20):
        knots = [_with_components(rng, 1, 3, 6) for _ in range(rng.randint(2, 3))]
        w = knots[0]
        for k in knots[1:]:
            w = br.compose(w, k, "disjoint")
        ok &= theta_trace(w) == ScalarValue.E(1 - len(knots)) * homflypt(w)
    acceptance(7, "k disjoint knots give E^(1-k) P", ok)
    assert ok


def test_criterion_7_two_component_identity(acceptance):
    rng = random.Random(SEED + 4)
    words = [_with_components(rng, 2) for _ in range(30)]
    ok = all(two_component_decomposition_check(w) for w in words)
    acceptance(7, "two-component identity on 30 random braids", ok)
    assert ok


def test_criterion_7_mixed_skein_identity(acceptance):
    rng = random.Random(SEED + 5)
    tested, ok = 0, True
    while tested < 40:
        w = _random_word(rng, min_strands=2)
        mixed = [p for p in range(len(w)) if len(set(br.crossing_components(w, p)[:2])) == 2]
        if mixed:
            tested += 1
            ok &= mixed_skein_holds(w, rng.choice(mixed))
    acceptance(7, "skein identity at mixed crossings", ok)
    assert ok


def test_criterion_7_self_crossing_witness(acceptance):
    defect = self_crossing_defect(lookup("3_1").word(), 0)
    ok = not defect.is_zero() and defect.has_E()
    acceptance(7, "skein identity fails at a knot self-crossing", ok)
    assert ok


def test_criterion_7_mirror_symmetry(acceptance):
    bad = [
        e.name
        for e in load_catalog().values()
        if theta_trace(br.mirror(e.word())) != theta_trace(e.word()).mirror()
    ]
    acceptance(7, "mirror symmetry on the catalog", not bad)
    assert not bad


def test_criterion_7_connected_sum(acceptance):
    rng = random.Random(SEED + 6)
    ok = True
    for _ in range(20):
        k1, k2 = _with_components(rng, 1, 3, 6), _with_components(rng, 1, 3, 6)
        ok &= theta_trace(br.compose(k1, k2, "connected_sum")) == theta_trace(k1) * theta_trace(k2)
    acceptance(7, "connected sum is multiplicative", ok)
    assert ok


def test_criterion_8_stirling(acceptance):
    ok = all(
        sum((e_k(k) * stirling(n, k) for k in range(1, n + 1)), ScalarValue(0)) == ScalarValue.E(1 - n)
        for n in range(1, 9)
    )
    for n in range(1, 6):
        w = BraidWord(n, ())
        expected = (mu() * ScalarValue.E(-1)) ** (n - 1)
        ok &= theta_trace(w) == theta_skein(w) == theta_closed(w) == expected
    acceptance(8, "Stirling identity and unlinks", ok)
    assert ok


def test_criterion_9_esystem(acceptance):
    ok = True
    for d in range(1, 9):
        for m in range(d):
            c = make_solution(d, "singleton", m=m)
            ok &= max(abs(residuals(c)), default=0) < 1e-9 and abs(e_value(c) - 1) < 1e-9
        c = make_solution(d, "trivial")
        ok &= max(abs(residuals(c)), default=0) < 1e-9 and abs(e_value(c) - 1 / d) < 1e-9
    for d in range(1, 7):
        for mask in range(1, 2**d):
            D = [k for k in range(d) if mask >> k & 1]
            c = make_solution(d, "subset", subset=D)
            ok &= verify(c, 1e-9) and abs(e_value(c) - 1 / len(D)) < 1e-9
    acceptance(9, "E-system solutions", ok)
    assert ok
