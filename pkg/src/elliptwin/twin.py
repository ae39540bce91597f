"""Twin classification, range scans, gap sampling, and density estimation.

A j-invariant is a "twin" when the curve with that invariant has prime
order l and its quadratic twist has prime order r; the two always satisfy
l + r = 2p + 2 and neither may equal p.  ``scan_range`` classifies every j
in an interval, ``sample_gaps`` walks pseudorandom start points forward to
the nearest twin, and ``estimate`` fuses both kinds of observation into a
single conditional Bernoulli sequence (twin, given prime order) whose rate
gets a percentile-bootstrap confidence interval.

Everything stochastic takes an explicit seed; the per-j classification RNG
is derived from (seed, j), so reports are identical no matter how many
worker processes share the scan.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .counting import MODE_NONE, AbortPolicy, count
from .ecurve import curve_from_j
from .errors import InternalLimit, NoData, OutOfRange
from .fp import PrimeModulus
from . import nt

SCAN_BINS = 16  # fixed sub-range histogram used by the homogeneity advisory


# -- classification outcomes --------------------------------------------------


@dataclass(frozen=True)
class Skipped:
    reason: str


@dataclass(frozen=True)
class CompositeOrder:
    side: str  # "curve" | "twist"
    factor: int | None  # smallest trial-prime factor, when one is known


@dataclass(frozen=True)
class PrimeOrderOnly:
    order: int
    twist_factor: int | None  # smallest trial-prime factor of the twist order


@dataclass(frozen=True)
class TwinRecord:
    p: int
    j: int
    a: int
    b: int
    l: int  # curve order, prime
    r: int  # twist order, prime

    def __post_init__(self):
        if self.l + self.r != 2 * self.p + 2:
            raise ValueError("orders do not complement to 2p + 2")
        if self.l == self.p or self.r == self.p or self.l < 2 or self.r < 2:
            raise ValueError("twin orders may not equal p or drop below 2")
        if not (nt.is_prime(self.l) and nt.is_prime(self.r)):
            raise ValueError("twin orders must both be prime")


@dataclass(frozen=True)
class Twin:
    record: TwinRecord


def _rng_for(seed, j):
    return random.Random((seed << 512) + j)


def _smallest_trial_factor(n, trial_primes):
    for q in trial_primes:
        if n % q == 0:
            return q
    return None


def classify_j(modulus: PrimeModulus, j, policy=None, rng=None):
    """Classify one j-invariant: Skipped, CompositeOrder, PrimeOrderOnly, Twin.

    j = 0 and j = 1728 are excluded up front (their extra automorphisms put
    them outside the scan population).  An abort from the counting policy
    maps directly to CompositeOrder; otherwise both orders are tested for
    primality.
    """
    policy = policy or AbortPolicy.none()
    p = modulus.p
    if not 0 <= j < p:
        raise ValueError("j must lie in [0, p)")
    if j == 0 or j == 1728 % p:
        return Skipped("j in {0, 1728} excluded from the scan population")
    if rng is None:
        rng = _rng_for(0, j)
    curve = curve_from_j(modulus, j)
    result = count(curve, policy, rng)
    if result.aborted is not None:
        return CompositeOrder(result.aborted.side, result.aborted.factor)
    l = result.order
    r = 2 * p + 2 - l
    if not nt.is_prime(l):
        return CompositeOrder("curve", _smallest_trial_factor(l, policy.trial_primes))
    if nt.is_prime(r) and l != p and r != p:
        return Twin(TwinRecord(p=p, j=j, a=curve.a, b=curve.b, l=l, r=r))
    return PrimeOrderOnly(l, _smallest_trial_factor(r, policy.trial_primes))


# -- range scans ---------------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    p: int
    j_lo: int
    j_hi: int
    mode: str
    trial_primes: tuple
    seed: int
    n_examined: int
    n_skipped: int
    n_pi: int  # prime-order curves (twins included)
    n_twin: int
    records: tuple  # TwinRecord, ascending by j
    abort_histogram: tuple  # ((factor, count), ...) ascending by factor
    bin_counts: tuple  # SCAN_BINS triples (examined, pi, twin) for advisories

    @property
    def ratio(self):
        return self.n_twin / self.n_pi if self.n_pi else 0.0

    def to_dict(self):
        return {
            "p": self.p,
            "j_lo": self.j_lo,
            "j_hi": self.j_hi,
            "abort_mode": self.mode,
            "trial_primes": list(self.trial_primes),
            "seed": self.seed,
            "n_examined": self.n_examined,
            "n_skipped": self.n_skipped,
            "n_pi": self.n_pi,
            "n_twin": self.n_twin,
            "ratio": self.ratio,
            "records": [
                {"j": t.j, "a": t.a, "b": t.b, "l": t.l, "r": t.r}
                for t in self.records
            ],
            "abort_histogram": {str(k): v for k, v in self.abort_histogram},
            "bin_counts": [list(b) for b in self.bin_counts],
        }


def _scan_chunk(args):
    (p, form, j_start, j_end, mode, trial_primes, seed, j_lo, j_hi) = args
    modulus = PrimeModulus(p, form)
    policy = AbortPolicy(mode, trial_primes)
    span = j_hi - j_lo
    bins = [[0, 0, 0] for _ in range(SCAN_BINS)]
    records = []
    hist: dict[int, int] = {}
    n_pi = n_twin = n_skipped = 0
    for j in range(j_start, j_end):
        outcome = classify_j(modulus, j, policy, _rng_for(seed, j))
        b = bins[(j - j_lo) * SCAN_BINS // span]
        b[0] += 1
        if isinstance(outcome, Skipped):
            n_skipped += 1
        elif isinstance(outcome, CompositeOrder):
            if outcome.factor is not None:
                hist[outcome.factor] = hist.get(outcome.factor, 0) + 1
        elif isinstance(outcome, PrimeOrderOnly):
            n_pi += 1
            b[1] += 1
        else:
            n_pi += 1
            n_twin += 1
            b[1] += 1
            b[2] += 1
            records.append(outcome.record)
    return n_pi, n_twin, n_skipped, records, hist, bins


def scan_range(
    modulus: PrimeModulus,
    j_lo,
    j_hi,
    policy=None,
    parallelism=1,
    seed=0,
    progress=None,
) -> ScanReport:
    """Classify every j in [j_lo, j_hi) and aggregate the totals.

    The aggregation is an order-independent fold over per-j results, so the
    report is bit-identical for any worker count.  ``progress``, if given,
    is called with (done, total) as chunks complete.
    """
    p = modulus.p
    policy = policy or AbortPolicy.none()
    if not 0 < j_lo <= j_hi <= p:
        raise ValueError("need 0 < j_lo <= j_hi <= p")
    span = j_hi - j_lo
    if span == 0:
        return ScanReport(
            p, j_lo, j_hi, policy.mode, policy.trial_primes, seed,
            0, 0, 0, 0, (), (), tuple((0, 0, 0) for _ in range(SCAN_BINS)),
        )
    chunk = max(16, min(4096, span // (max(1, parallelism) * 8) or span))
    tasks = [
        (p, modulus.form, start, min(start + chunk, j_hi),
         policy.mode, policy.trial_primes, seed, j_lo, j_hi)
        for start in range(j_lo, j_hi, chunk)
    ]
    if parallelism > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            parts = []
            for done, part in enumerate(pool.map(_scan_chunk, tasks), 1):
                parts.append(part)
                if progress:
                    progress(min(done * chunk, span), span)
    else:
        parts = []
        for done, task in enumerate(tasks, 1):
            parts.append(_scan_chunk(task))
            if progress:
                progress(min(done * chunk, span), span)
    n_pi = n_twin = n_skipped = 0
    records = []
    hist: dict[int, int] = {}
    bins = [[0, 0, 0] for _ in range(SCAN_BINS)]
    for part_pi, part_twin, part_skip, part_records, part_hist, part_bins in parts:
        n_pi += part_pi
        n_twin += part_twin
        n_skipped += part_skip
        records.extend(part_records)
        for k, v in part_hist.items():
            hist[k] = hist.get(k, 0) + v
        for i, triple in enumerate(part_bins):
            for c in range(3):
                bins[i][c] += triple[c]
    records.sort(key=lambda t: t.j)
    return ScanReport(
        p=p,
        j_lo=j_lo,
        j_hi=j_hi,
        mode=policy.mode,
        trial_primes=policy.trial_primes,
        seed=seed,
        n_examined=span,
        n_skipped=n_skipped,
        n_pi=n_pi,
        n_twin=n_twin,
        records=tuple(records),
        abort_histogram=tuple(sorted(hist.items())),
        bin_counts=tuple(tuple(b) for b in bins),
    )


# -- gap sampling --------------------------------------------------------------


@dataclass(frozen=True)
class GapSample:
    start_j: int
    steps: int  # increments until the twin (skipped j's count as steps)
    twin_j: int
    prime_order_seen: int  # prime-order classifications on the walk, twin included


@dataclass(frozen=True)
class GapRun:
    p: int
    domain_hi: int
    seed: int
    mode: str
    requested_starts: int
    samples: tuple
    partial: bool  # a twin or wall-clock budget stopped the run early

    def to_dict(self):
        return {
            "p": self.p,
            "domain_hi": self.domain_hi,
            "seed": self.seed,
            "abort_mode": self.mode,
            "requested_starts": self.requested_starts,
            "partial": self.partial,
            "samples": [
                {
                    "start_j": s.start_j,
                    "steps": s.steps,
                    "twin_j": s.twin_j,
                    "prime_order_seen": s.prime_order_seen,
                }
                for s in self.samples
            ],
        }


def _walk_to_twin(modulus, start, policy, seed):
    p = modulus.p
    j = start
    steps = 0
    prime_order = 0
    for _ in range(4 * p):
        outcome = classify_j(modulus, j, policy, _rng_for(seed, j))
        if isinstance(outcome, Twin):
            return GapSample(start, steps, j, prime_order + 1)
        if isinstance(outcome, PrimeOrderOnly):
            prime_order += 1
        steps += 1
        j = (j + 1) % p
    raise InternalLimit(f"no twin found within {4 * p} increments of {start}")


def sample_gaps(
    modulus: PrimeModulus,
    n_starts,
    j_domain_hi=None,
    policy=None,
    seed=0,
    budget_twins=None,
    budget_seconds=None,
    progress=None,
) -> GapRun:
    """Walk pseudorandom start invariants forward until each hits a twin.

    Start points are uniform on (0, j_domain_hi); walks increment j mod p,
    counting every increment (including skipped and composite-order j's) as
    a step.  ``budget_twins`` stops the run once that many walks finished;
    ``budget_seconds`` is a wall-clock cutoff checked between walks.  Either
    budget marks the run partial and returns the samples completed so far.
    """
    p = modulus.p
    policy = policy or AbortPolicy.none()
    if n_starts < 1:
        raise ValueError("need at least one start")
    domain_hi = j_domain_hi if j_domain_hi is not None else min(1 << 20, p)
    if not 1 < domain_hi <= p:
        raise ValueError("domain bound must lie in (1, p]")
    start_rng = random.Random((seed << 64) ^ 0x9E3779B97F4A7C15)
    starts = [start_rng.randrange(1, domain_hi) for _ in range(n_starts)]
    deadline = time.monotonic() + budget_seconds if budget_seconds else None
    samples = []
    for i, start in enumerate(starts):
        if budget_twins is not None and len(samples) >= budget_twins:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
        samples.append(_walk_to_twin(modulus, start, policy, seed))
        if progress:
            progress(i + 1, n_starts)
    return GapRun(
        p=p,
        domain_hi=domain_hi,
        seed=seed,
        mode=policy.mode,
        requested_starts=n_starts,
        samples=tuple(samples),
        partial=len(samples) < n_starts,
    )


def mean_gap_estimate(samples):
    """Mean number of j's tried per twin; its inverse estimates the per-j
    twin density (walk lengths are geometric)."""
    if not samples:
        raise NoData("no gap samples")
    mean_trials = sum(s.steps + 1 for s in samples) / len(samples)
    return mean_trials, 1.0 / mean_trials


# -- combined estimation --------------------------------------------------------


@dataclass(frozen=True)
class EstimateReport:
    """Conditional twin rate (twin | prime order) with a bootstrap interval."""

    point_estimate: float
    ci_level: float
    ci_lo: float
    ci_hi: float
    resamples: int
    seed: int
    trials: int
    successes: int
    scans: tuple
    gaps: tuple

    def to_dict(self):
        return {
            "point_estimate": self.point_estimate,
            "ci_level": self.ci_level,
            "ci_lo": self.ci_lo,
            "ci_hi": self.ci_hi,
            "resamples": self.resamples,
            "seed": self.seed,
            "trials": self.trials,
            "successes": self.successes,
            "scans": [s.to_dict() for s in self.scans],
            "gap_runs": [g.to_dict() for g in self.gaps],
        }


def estimate(scans=(), gaps=(), resamples=10_000, ci_level=0.99, seed=0):
    """Pool scans and gap walks into one Bernoulli sequence and bootstrap it.

    Each scan contributes n_pi trials with n_twin successes; each completed
    gap walk contributes its prime-order classifications as trials, the
    final twin being the lone success.  The percentile bootstrap resamples
    that pooled sequence ``resamples`` times.
    """
    if resamples < 100:
        raise ValueError("need at least 100 bootstrap resamples")
    if not 0 < ci_level < 1:
        raise ValueError("ci_level must be in (0, 1)")
    gap_runs = tuple(gaps)
    scans = tuple(scans)
    trials = sum(s.n_pi for s in scans)
    successes = sum(s.n_twin for s in scans)
    for run in gap_runs:
        trials += sum(s.prime_order_seen for s in run.samples)
        successes += len(run.samples)
    if trials == 0:
        raise NoData("no prime-order observations to estimate from")
    point = successes / trials
    rng = np.random.default_rng(seed)
    draws = rng.binomial(trials, point, size=resamples) / trials
    alpha = 1.0 - ci_level
    ci_lo = float(np.quantile(draws, alpha / 2))
    ci_hi = float(np.quantile(draws, 1 - alpha / 2))
    report = EstimateReport(
        point_estimate=point,
        ci_level=ci_level,
        ci_lo=ci_lo,
        ci_hi=ci_hi,
        resamples=resamples,
        seed=seed,
        trials=trials,
        successes=successes,
        scans=scans,
        gaps=gap_runs,
    )
    assert report.ci_lo <= report.point_estimate <= report.ci_hi
    return report


# -- probability arithmetic ------------------------------------------------------


def _validated(probs):
    probs = [float(q) for q in probs]
    if any(q < 0 or q > 1 for q in probs):
        raise OutOfRange("probabilities must lie in [0, 1]")
    return probs


def prob_none(probs):
    """Probability that none of the independent events occurs."""
    out = 1.0
    for q in _validated(probs):
        out *= 1.0 - q
    return out


def prob_any(probs):
    """Probability that at least one of the independent events occurs."""
    return 1.0 - prob_none(probs)


def prob_all(probs):
    """Probability that all of the independent events occur."""
    out = 1.0
    for q in _validated(probs):
        out *= q
    return out


# -- advisory: local uniformity ----------------------------------------------------


def homogeneity(scan: ScanReport):
    """Chi-square check that the twin rate is flat across scan sub-ranges.

    Advisory only: the scan's headline ratio silently assumes the twin rate
    does not drift with j at the scale of the scanned window.  Returns None
    when there are not enough prime-order curves per bin to test.
    """
    from scipy.stats import chi2

    cells = [(pi, twin) for _, pi, twin in scan.bin_counts if pi > 0]
    total_pi = sum(pi for pi, _ in cells)
    total_twin = sum(twin for _, twin in cells)
    if len(cells) < 2 or total_twin == 0 or total_twin == total_pi:
        return None
    rate = total_twin / total_pi
    stat = 0.0
    for pi, twin in cells:
        expected = pi * rate
        stat += (twin - expected) ** 2 / expected
        stat += ((pi - twin) - (pi - expected)) ** 2 / (pi - expected)
    dof = len(cells) - 1
    return {
        "statistic": stat,
        "dof": dof,
        "p_value": float(chi2.sf(stat, dof)),
    }
