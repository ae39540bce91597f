import json
import random

import pytest

from elliptwin import fp, twin
from elliptwin.counting import AbortPolicy
from elliptwin.errors import NoData, OutOfRange
from elliptwin.twin import (
    CompositeOrder,
    GapSample,
    PrimeOrderOnly,
    ScanReport,
    Skipped,
    Twin,
    TwinRecord,
    classify_j,
    estimate,
    homogeneity,
    mean_gap_estimate,
    prob_all,
    prob_any,
    prob_none,
    sample_gaps,
    scan_range,
)


@pytest.fixture(scope="module")
def m1009():
    return fp.PrimeModulus(1009)


def test_classify_skips_special_invariants(m1009):
    assert isinstance(classify_j(m1009, 0), Skipped)
    assert isinstance(classify_j(m1009, 1728 % 1009), Skipped)
    with pytest.raises(ValueError):
        classify_j(m1009, 1009)


def test_classify_matches_enumeration(m1009, sweep_1009):
    for j in range(1, 1009):
        expected = sweep_1009[j]
        outcome = classify_j(m1009, j)
        if expected is None:
            assert isinstance(outcome, Skipped)
        elif expected[1]:
            assert isinstance(outcome, Twin)
            rec = outcome.record
            assert rec.l + rec.r == 2 * 1009 + 2
        elif expected[0]:
            assert isinstance(outcome, PrimeOrderOnly)
        else:
            assert isinstance(outcome, CompositeOrder)


def test_classify_abort_maps_to_composite(m1009):
    policy = AbortPolicy.curve_or_twist()
    outcome = classify_j(m1009, 1, policy)
    # under the joint abort policy almost every composite-order curve
    # reports the certifying small factor
    if isinstance(outcome, CompositeOrder):
        assert outcome.factor is not None


def test_twin_record_validation():
    with pytest.raises(ValueError):
        TwinRecord(p=1009, j=5, a=1, b=2, l=7, r=11)  # wrong complement
    with pytest.raises(ValueError):
        TwinRecord(p=1009, j=5, a=1, b=2, l=1009, r=1011)  # l = p
    with pytest.raises(ValueError):
        TwinRecord(p=1009, j=5, a=1, b=2, l=1024, r=996)  # composite


def test_scan_empty_range(m1009):
    rep = scan_range(m1009, 5, 5)
    assert rep.n_examined == rep.n_pi == rep.n_twin == 0
    assert rep.records == ()


def test_scan_matches_enumeration(m1009, sweep_1009):
    rep = scan_range(m1009, 1, 1009, seed=0)
    want_pi = sum(1 for v in sweep_1009.values() if v and v[0])
    want_twin = sum(1 for v in sweep_1009.values() if v and v[1])
    assert rep.n_examined == 1008
    assert rep.n_skipped == 1
    assert (rep.n_pi, rep.n_twin) == (want_pi, want_twin)
    assert [t.j for t in rep.records] == [
        j for j, v in sorted(sweep_1009.items()) if v and v[1]
    ]
    assert rep.ratio == rep.n_twin / rep.n_pi
    # bin counts fold back to the totals
    assert sum(b[0] for b in rep.bin_counts) == rep.n_examined
    assert sum(b[1] for b in rep.bin_counts) == rep.n_pi
    assert sum(b[2] for b in rep.bin_counts) == rep.n_twin


def test_scan_parallelism_invariance(m1009):
    one = scan_range(m1009, 1, 700, seed=3, parallelism=1)
    blob = json.dumps(one.to_dict(), sort_keys=True)
    for workers in (4, 16):
        again = scan_range(m1009, 1, 700, seed=3, parallelism=workers)
        assert json.dumps(again.to_dict(), sort_keys=True) == blob


def test_scan_bounds(m1009):
    with pytest.raises(ValueError):
        scan_range(m1009, 0, 10)
    with pytest.raises(ValueError):
        scan_range(m1009, 10, 2000)


def test_gap_walks_verify(m1009):
    run = sample_gaps(m1009, 25, seed=42)
    assert not run.partial and len(run.samples) == 25
    for s in run.samples:
        assert isinstance(classify_j(m1009, s.twin_j), Twin)
        assert s.twin_j == (s.start_j + s.steps) % 1009
        for k in range(min(s.steps, 40)):  # spot-check the walk prefix
            assert not isinstance(
                classify_j(m1009, (s.start_j + k) % 1009), Twin
            )


def test_gap_walk_starting_on_twin(m1009, sweep_1009):
    twin_j = next(j for j, v in sweep_1009.items() if v and v[1])
    sample = twin._walk_to_twin(m1009, twin_j, AbortPolicy.none(), seed=0)
    assert sample.steps == 0 and sample.twin_j == twin_j
    assert sample.prime_order_seen == 1


def test_gap_run_deterministic(m1009):
    a = sample_gaps(m1009, 10, seed=7)
    b = sample_gaps(m1009, 10, seed=7)
    assert a == b


def test_gap_budget_marks_partial(m1009):
    run = sample_gaps(m1009, 50, seed=1, budget_twins=5)
    assert run.partial and len(run.samples) == 5


def test_mean_gap_tracks_exact_expectation(sweep_4003):
    # exact expected walk length from the enumerated twin positions: for a
    # uniform start in [1, p), E[steps + 1] is the mean distance (inclusive)
    # to the next twin along the wrapped j-line
    p = 4003
    twins = {j for j, v in sweep_4003.items() if v and v[1]}
    dist = [None] * p
    nxt = None
    for j in range(2 * p - 1, -1, -1):  # two passes around the wrapped line
        if (j % p) in twins:
            nxt = j
        if nxt is not None and j < p:
            dist[j] = nxt - j + 1
    support = [dist[j] for j in range(1, p)]
    exact_mean = sum(support) / len(support)
    exact_var = sum(d * d for d in support) / len(support) - exact_mean**2

    m = fp.PrimeModulus(p)
    run = sample_gaps(m, 80, j_domain_hi=p, seed=12)
    mean_trials, density = mean_gap_estimate(run.samples)
    se = (exact_var / len(run.samples)) ** 0.5
    assert abs(mean_trials - exact_mean) <= 3 * se
    assert density == pytest.approx(1 / mean_trials)


def test_estimate_point_and_interval():
    rep = ScanReport(
        p=9973, j_lo=1, j_hi=9973, mode="none", trial_primes=(), seed=0,
        n_examined=9972, n_skipped=1, n_pi=1000, n_twin=10,
        records=(), abort_histogram=(), bin_counts=(),
    )
    est = estimate(scans=[rep], resamples=10_000, seed=1)
    assert est.point_estimate == 0.01
    assert est.ci_lo <= 0.01 <= est.ci_hi
    assert est.trials == 1000 and est.successes == 10


def test_estimate_zero_twins_degenerate():
    rep = ScanReport(
        p=9973, j_lo=1, j_hi=9973, mode="none", trial_primes=(), seed=0,
        n_examined=9972, n_skipped=1, n_pi=500, n_twin=0,
        records=(), abort_histogram=(), bin_counts=(),
    )
    est = estimate(scans=[rep], resamples=1000, seed=2)
    assert est.point_estimate == 0.0 and est.ci_lo == 0.0


def test_estimate_requires_data():
    with pytest.raises(NoData):
        estimate(scans=[], gaps=[], resamples=1000)
    with pytest.raises(ValueError):
        estimate(scans=[], gaps=[], resamples=10)


def test_estimate_deterministic(m1009):
    rep = scan_range(m1009, 1, 400, seed=5)
    run = sample_gaps(m1009, 8, seed=5)
    first = estimate(scans=[rep], gaps=[run], resamples=2000, seed=9)
    second = estimate(scans=[rep], gaps=[run], resamples=2000, seed=9)
    assert json.dumps(first.to_dict(), sort_keys=True) == json.dumps(
        second.to_dict(), sort_keys=True
    )


def test_probability_arithmetic():
    ratios = [0.011, 0.008, 0.018]
    assert prob_none(ratios) == pytest.approx(0.989 * 0.992 * 0.982)
    assert prob_all(ratios) == pytest.approx(0.011 * 0.008 * 0.018)
    assert prob_none(ratios) + prob_any(ratios) == pytest.approx(1.0)
    assert prob_none([]) == 1.0 and prob_any([]) == 0.0 and prob_all([]) == 1.0
    with pytest.raises(OutOfRange):
        prob_none([0.5, 1.2])
    with pytest.raises(OutOfRange):
        prob_all([-0.1])
    rng = random.Random(25)
    probs = [rng.random() for _ in range(6)]
    assert prob_none(probs) + prob_any(probs) == pytest.approx(1.0)


def test_homogeneity_advisory(m1009):
    rep = scan_range(m1009, 1, 1009, seed=0)
    result = homogeneity(rep)
    if result is not None:
        assert result["dof"] >= 1
        assert 0.0 <= result["p_value"] <= 1.0


def test_gap_sample_fields_roundtrip():
    s = GapSample(start_j=10, steps=3, twin_j=13, prime_order_seen=2)
    assert s.start_j + s.steps == s.twin_j


def test_classify_at_group_order_tier(p40):
    # the dispatcher routes a 40-bit field to the joint-sampling tier; the
    # classification must still satisfy the complement identity
    from elliptwin.counting import count
    from elliptwin.ecurve import curve_from_j

    m = fp.PrimeModulus(p40)
    rng = random.Random(27)
    for _ in range(6):
        j = rng.randrange(2, 1 << 20)
        outcome = classify_j(m, j)
        order = count(curve_from_j(m, j), rng=random.Random(j)).order
        from elliptwin import nt

        if isinstance(outcome, Twin):
            assert outcome.record.l == order
            assert nt.is_prime(order) and nt.is_prime(2 * p40 + 2 - order)
        elif isinstance(outcome, PrimeOrderOnly):
            assert outcome.order == order and nt.is_prime(order)
        elif isinstance(outcome, CompositeOrder):
            assert not nt.is_prime(order)
