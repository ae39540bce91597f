"""Point counting in three tiers, with a small-prime-factor abort policy.

Tiers by field size: a character-sum sweep for small p, baby-step/giant-step
order finding on the curve and its twist jointly (so the order is certified
unique) in the mid range, and the division-polynomial trace algorithm above
that.  The abort policy terminates the trace computation as soon as partial
CRT information proves a small prime divides the curve order (mode "curve")
or either the curve or twist order (mode "both").  The cheaper tiers compute
the full order first and then report the same abort a trace run would have
found, so scan statistics do not depend on which tier ran.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, lcm

import numpy as np

from . import nt, schoof
from .ecurve import Curve, INFINITY, twist_of
from .errors import AmbiguousOrder, ThresholdExceeded

NAIVE_LIMIT = 1 << 22
BSGS_LIMIT = 1 << 50
BSGS_FLOOR = 457  # joint curve/twist sampling is provably unambiguous above

MODE_NONE = "none"
MODE_CURVE = "curve"
MODE_BOTH = "both"

_DEFAULT_TRIAL_PRIMES = tuple(nt.primes_below(100))


@dataclass(frozen=True)
class AbortPolicy:
    """Which orders may trigger an early abort, and on which trial primes."""

    mode: str = MODE_NONE
    trial_primes: tuple = _DEFAULT_TRIAL_PRIMES

    def __post_init__(self):
        if self.mode not in (MODE_NONE, MODE_CURVE, MODE_BOTH):
            raise ValueError(f"unknown abort mode {self.mode!r}")
        primes = tuple(self.trial_primes)
        if list(primes) != sorted(set(primes)):
            raise ValueError("trial primes must be strictly ascending")
        if any(q < 2 or not nt.is_prime(q) for q in primes):
            raise ValueError("trial primes must all be prime")
        object.__setattr__(self, "trial_primes", primes)

    @classmethod
    def none(cls):
        return cls(MODE_NONE)

    @classmethod
    def curve_only(cls, trial_primes=_DEFAULT_TRIAL_PRIMES):
        return cls(MODE_CURVE, tuple(trial_primes))

    @classmethod
    def curve_or_twist(cls, trial_primes=_DEFAULT_TRIAL_PRIMES):
        return cls(MODE_BOTH, tuple(trial_primes))


@dataclass(frozen=True)
class Abort:
    side: str  # "curve" | "twist"
    factor: int


@dataclass(frozen=True)
class CountResult:
    """Order and trace of one curve, or the abort that preempted them."""

    p: int
    method: str  # "naive" | "bsgs" | "schoof"
    order: int | None = None
    trace: int | None = None
    aborted: Abort | None = None

    @property
    def twist_order(self):
        if self.order is None:
            return None
        return 2 * self.p + 2 - self.order

    def _check(self):
        if self.aborted is None:
            assert self.order == self.p + 1 - self.trace
            assert self.trace * self.trace <= 4 * self.p, "Hasse bound violated"
        else:
            assert self.order is None and self.trace is None
        return self


def _synthetic_abort(order, p, policy):
    """The abort a trace run would have reported, derived from a full order."""
    if policy.mode == MODE_NONE:
        return None
    twist = 2 * p + 2 - order
    for q in policy.trial_primes:
        if order % q == 0:
            return Abort("curve", q)
        if policy.mode == MODE_BOTH and twist % q == 0:
            return Abort("twist", q)
    return None


def _apply_policy(result, policy):
    ab = _synthetic_abort(result.order, result.p, policy)
    if ab is None:
        return result
    return CountResult(p=result.p, method=result.method, aborted=ab)._check()


# -- tier 1: character-sum sweep ---------------------------------------------


@lru_cache(maxsize=4)
def _chi_table(p):
    # chi[z] = quadratic character of z; chi[0] = 0
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int64)
    chi[x * x % p] = 1
    chi[0] = 0
    return chi


def count_naive(curve: Curve, limit=NAIVE_LIMIT) -> CountResult:
    """#E = p + 1 + sum over x of chi(x^3 + ax + b); exact, never aborts."""
    p = curve.p
    if p >= limit:
        raise ThresholdExceeded(f"p = {p} is beyond the sweep limit {limit}")
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    fx = ((x * x % p) * x + curve.a * x + curve.b) % p
    order = p + 1 + int(chi[fx].sum())
    return CountResult(
        p=p, method="naive", order=order, trace=p + 1 - order
    )._check()


# -- tier 2: baby-step/giant-step with joint twist sampling ------------------


def _point_key(point):
    return None if point.is_infinity else (point.x, point.y)


def _any_annihilator(curve, point, lo, width):
    """Some m in [lo, lo + width) with m * point = infinity (always exists)."""
    step = isqrt(width) + 1
    baby = {}
    r = INFINITY
    for j in range(step):
        baby.setdefault(_point_key(r), j)
        r = curve.add(r, point)
    giant = curve.mul(step, point)
    s = curve.mul(lo, point)
    for i in range((width + step - 1) // step + 1):
        key = _point_key(curve.neg(s))
        if key in baby:
            return lo + i * step + baby[key]
        s = curve.add(s, giant)
    raise AmbiguousOrder("no annihilator found in the Hasse interval")


def _exact_order(curve, point, multiple):
    fac = nt.factor(multiple)
    assert fac.residual is None, "annihilator exceeded the factoring budget"
    order = multiple
    for q, _ in fac.pairs():
        while order % q == 0 and curve.mul(order // q, point).is_infinity:
            order //= q
    return order


def _crt_pair(r1, m1, r2, m2):
    g = gcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    l = lcm(m1, m2)
    step = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * step) % l, l


def count_bsgs(curve: Curve, rng, limit=BSGS_LIMIT) -> CountResult:
    """Exact order in the Hasse interval via Mestre's joint-twist method.

    Random points are sampled alternately on the curve and its twist; the
    lcm of their orders narrows the candidates for #E (which must also
    complement the twist candidates to 2p + 2) to a single value.  For
    p > 457 this provably terminates; failure to converge is an internal
    error, not a property of the curve.
    """
    p = curve.p
    if p >= limit:
        raise ThresholdExceeded(f"p = {p} is beyond the group-order limit {limit}")
    if p <= BSGS_FLOOR:
        raise ThresholdExceeded(f"joint sampling requires p > {BSGS_FLOOR}")
    halfwidth = isqrt(4 * p)
    lo = p + 1 - halfwidth
    width = 2 * halfwidth + 1
    sides = (curve, twist_of(curve))
    known = [1, 1]  # lcm of observed point orders, per side
    order = None
    for attempt in range(256):
        side = attempt % 2
        pt = sides[side].random_point(rng)
        annihilator = _any_annihilator(sides[side], pt, lo, width)
        known[side] = lcm(known[side], _exact_order(sides[side], pt, annihilator))
        combined = _crt_pair(0, known[0], (2 * p + 2) % known[1], known[1])
        if combined is None:
            raise AmbiguousOrder("curve and twist constraints are inconsistent")
        residue, modulus = combined
        first = lo + (residue - lo) % modulus
        if first >= lo + width:
            raise AmbiguousOrder("no candidate order in the Hasse interval")
        if first + modulus >= lo + width:
            order = first
            break
    if order is None:
        raise AmbiguousOrder("joint sampling did not converge")
    return CountResult(
        p=p, method="bsgs", order=order, trace=p + 1 - order
    )._check()


# -- tier 3: division-polynomial trace ----------------------------------------


def count_schoof(curve: Curve, policy=None, max_l=100) -> CountResult:
    """Trace via division polynomials, honoring the early-abort policy.

    On completion the full trial-prime list is re-checked against the
    computed orders so that the classification matches what the cheaper
    tiers report.
    """
    policy = policy or AbortPolicy.none()
    p = curve.p
    trace, aborted = schoof.schoof_trace(
        curve.a, curve.b, p, policy.mode, policy.trial_primes, max_l
    )
    if aborted is not None:
        return CountResult(
            p=p, method="schoof", aborted=Abort(*aborted)
        )._check()
    result = CountResult(
        p=p, method="schoof", order=p + 1 - trace, trace=trace
    )._check()
    return _apply_policy(result, policy)


# -- dispatcher ----------------------------------------------------------------


def count(
    curve: Curve,
    policy=None,
    rng=None,
    force_tier=None,
    naive_limit=NAIVE_LIMIT,
    bsgs_limit=BSGS_LIMIT,
) -> CountResult:
    """Count by the cheapest applicable tier; abort policy is tier-independent.

    The trace tier aborts early for real; the lower tiers compute the full
    order and then report the abort it implies, so downstream statistics are
    identical whichever tier ran.
    """
    policy = policy or AbortPolicy.none()
    p = curve.p
    tier = force_tier
    if tier is None:
        if p < naive_limit:
            tier = "naive"
        elif p < bsgs_limit:
            tier = "bsgs"
        else:
            tier = "schoof"
    if tier == "schoof":
        return count_schoof(curve, policy)
    if tier == "naive":
        result = count_naive(curve, limit=naive_limit)
    elif tier == "bsgs":
        result = count_bsgs(curve, rng or random.Random(0), limit=bsgs_limit)
    else:
        raise ValueError(f"unknown tier {tier!r}")
    return _apply_policy(result, policy)
