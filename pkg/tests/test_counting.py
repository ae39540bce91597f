import random

import pytest

from elliptwin import fp
from elliptwin.counting import (
    AbortPolicy,
    count,
    count_bsgs,
    count_naive,
    count_schoof,
)
from elliptwin.ecurve import Curve, curve_from_j, twist_of
from elliptwin.errors import ThresholdExceeded

from conftest import chi_table, enum_order


def test_naive_tiny_frozen_values():
    # y^2 = x^3 + x + 1 over F_7 (p = 5 sits below the field floor, so the
    # hand-checkable cases run over 7 and 11 instead)
    m7 = fp.PrimeModulus(7)
    c = Curve(m7, 1, 1)
    res = count_naive(c)
    assert res.order == enum_order(7, 1, 1)
    assert res.trace == 7 + 1 - res.order
    tw = twist_of(c)
    assert count_naive(tw).order == 2 * 7 + 2 - res.order
    # j = 1728 model
    c1728 = Curve(m7, 1, 0)
    res2 = count_naive(c1728)
    assert res2.order == enum_order(7, 1, 0)
    assert res2.trace**2 <= 4 * 7


def test_naive_matches_enumeration_sweep():
    p = 1009
    m = fp.PrimeModulus(p)
    chi = chi_table(p)
    for j in range(0, p, 7):
        c = curve_from_j(m, j)
        assert count_naive(c).order == enum_order(p, c.a, c.b, chi)


def test_naive_threshold():
    with pytest.raises(ThresholdExceeded):
        count_naive(Curve(fp.named_modulus("p224"), -3, 1))


def test_bsgs_bounds():
    m = fp.PrimeModulus(449)  # below the uniqueness floor
    with pytest.raises(ThresholdExceeded):
        count_bsgs(Curve(m, 1, 1), random.Random(0))
    with pytest.raises(ThresholdExceeded):
        count_bsgs(Curve(fp.named_modulus("p224"), -3, 1), random.Random(0))


def test_bsgs_matches_naive():
    p = 1009
    m = fp.PrimeModulus(p)
    rng = random.Random(21)
    for _ in range(150):
        j = rng.randrange(0, p)
        c = curve_from_j(m, j)
        assert count_bsgs(c, random.Random(j)).order == count_naive(c).order


def test_bsgs_self_certifies_at_forty_bits(p40):
    m = fp.PrimeModulus(p40)
    rng = random.Random(22)
    for k in range(8):
        c = curve_from_j(m, rng.randrange(2, 1 << 20))
        res = count_bsgs(c, random.Random(k))
        assert res.trace**2 <= 4 * p40
        for i in range(5):
            pt = c.random_point(random.Random(1000 + i))
            assert c.mul(res.order, pt).is_infinity
        tw_res = count_bsgs(twist_of(c), random.Random(k + 500))
        assert res.order + tw_res.order == 2 * p40 + 2


def test_dispatcher_routing(p40):
    c_small = Curve(fp.PrimeModulus(7), 1, 1)
    assert count(c_small).method == "naive"
    c_mid = curve_from_j(fp.PrimeModulus(p40), 77)
    assert count(c_mid, rng=random.Random(0)).method == "bsgs"
    assert count(c_mid, force_tier="schoof").method == "schoof"
    with pytest.raises(ThresholdExceeded):
        count(c_mid, force_tier="naive")


def test_synthetic_abort_matches_schoof_abort():
    p = 1009
    m = fp.PrimeModulus(p)
    policy = AbortPolicy.curve_or_twist()
    for j in range(1, 240):
        if j == 0 or j == 1728 % p:
            continue
        c = curve_from_j(m, j)
        via_naive = count(c, policy, force_tier="naive")
        via_schoof = count_schoof(c, policy)
        assert via_naive.aborted == via_schoof.aborted, j
        if via_naive.aborted is None:
            assert via_naive.order == via_schoof.order


def test_synthetic_abort_is_sound():
    p = 1009
    m = fp.PrimeModulus(p)
    chi = chi_table(p)
    policy = AbortPolicy.curve_or_twist()
    rng = random.Random(23)
    for _ in range(60):
        j = rng.randrange(1, p)
        c = curve_from_j(m, j)
        res = count(c, policy)
        order = enum_order(p, c.a, c.b, chi)
        if res.aborted is None:
            assert res.order == order
        else:
            target = order if res.aborted.side == "curve" else 2 * p + 2 - order
            assert target % res.aborted.factor == 0
            assert res.order is None and res.trace is None


def test_curve_only_mode_ignores_twist_factors():
    p = 1009
    m = fp.PrimeModulus(p)
    chi = chi_table(p)
    policy = AbortPolicy.curve_only()
    rng = random.Random(24)
    for _ in range(40):
        j = rng.randrange(1, p)
        c = curve_from_j(m, j)
        res = count(c, policy)
        if res.aborted is not None:
            assert res.aborted.side == "curve"
            assert enum_order(p, c.a, c.b, chi) % res.aborted.factor == 0


def test_classification_tier_equivalence_p2003():
    # every invariant classifies identically whether the dispatcher picked
    # the sweep tier or the trace tier (the trace tier re-checks the full
    # trial-prime list after completing, so late factors match too)
    p = 2003
    m = fp.PrimeModulus(p)
    policy = AbortPolicy.curve_or_twist()
    for j in range(p):
        c = curve_from_j(m, j)
        via_naive = count(c, policy, force_tier="naive")
        via_schoof = count(c, policy, force_tier="schoof")
        assert via_naive.aborted == via_schoof.aborted, j
        assert via_naive.order == via_schoof.order, j


def test_bsgs_tier_synthetic_abort_matches_schoof(p40):
    m = fp.PrimeModulus(p40)
    policy = AbortPolicy.curve_or_twist()
    rng = random.Random(26)
    for k in range(12):
        c = curve_from_j(m, rng.randrange(2, 1 << 20))
        via_bsgs = count(c, policy, rng=random.Random(k))  # dispatcher: bsgs
        via_schoof = count(c, policy, force_tier="schoof")
        assert via_bsgs.method == "bsgs" and via_schoof.method == "schoof"
        assert via_bsgs.aborted == via_schoof.aborted
        if via_bsgs.aborted is None:
            assert via_bsgs.order == via_schoof.order


def test_abort_policy_validation():
    with pytest.raises(ValueError):
        AbortPolicy("sometimes")
    with pytest.raises(ValueError):
        AbortPolicy("both", (3, 2))
    with pytest.raises(ValueError):
        AbortPolicy("both", (2, 3, 4))


def test_count_result_twist_order():
    res = count_naive(Curve(fp.PrimeModulus(7), 1, 1))
    assert res.order + res.twist_order == 2 * 7 + 2
