"""Primality testing and integer factorization.

``is_prime`` is deterministic Miller-Rabin with a fixed 12-base set below
2**64 (exact there) and Baillie-PSW above (a base-2 strong probable-prime
test combined with a strong Lucas test using Selfridge's parameters; no
counterexample is known, so reports on inputs above 2**64 are technically
"probable prime").

``factor`` runs trial division up to a bound, then Brent's variant of
Pollard rho with a deterministic polynomial-offset sequence, so the output
is identical from run to run.  Budget exhaustion is reported through the
``residual`` field of the result, never as an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

# These bases make Miller-Rabin deterministic for all n < 3.3e24 > 2**64
# (Sorenson & Webster).
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_RHO_MAX_OFFSETS = 8  # polynomial offsets c = 1..8 tried per composite
_RHO_BATCH = 512  # products accumulated between gcd calls

_sieve_flags = bytearray()  # _sieve_flags[i] == 1 iff i is prime, i < len
_sieve_primes: list[int] = []


def _ensure_sieve(limit):
    global _sieve_flags, _sieve_primes
    if len(_sieve_flags) >= limit:
        return
    limit = max(limit, 1 << 17)
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit - 1) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    _sieve_flags = flags
    _sieve_primes = [i for i in range(limit) if flags[i]]


def primes_below(n):
    """Ascending list of all primes < n (sieve-backed, cached)."""
    _ensure_sieve(n)
    if n >= len(_sieve_flags):
        return list(_sieve_primes)
    import bisect

    return _sieve_primes[: bisect.bisect_left(_sieve_primes, n)]


def _mr_round(n, a, d, s):
    # one strong-probable-prime round; True means "passes" (no witness)
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a, n):
    """Jacobi symbol (a | n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol requires odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _is_perfect_square(n):
    r = isqrt(n)
    return r * r == n


def _lucas_uv(k, d_param, q_param, n):
    # U_k, V_k, Q^k (mod n) for P = 1, by the binary double-and-add chain
    u, v, qk = 1, 1, q_param % n
    d_mod = d_param % n
    for bit in bin(k)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            # index step k -> k + 1 (P = 1); halve mod odd n by parity fix
            u, v = u + v, d_mod * u + v
            if u & 1:
                u += n
            if v & 1:
                v += n
            u, v = (u >> 1) % n, (v >> 1) % n
            qk = qk * q_param % n
    return u, v, qk


def _strong_lucas_prp(n):
    # Selfridge method A: first D in 5, -7, 9, -11, ... with (D|n) = -1
    if _is_perfect_square(n):
        return False
    d_param = 5
    while True:
        j = jacobi(d_param, n)
        if j == -1:
            break
        if j == 0 and abs(d_param) != n:
            return False
        d_param = -(d_param + 2) if d_param > 0 else -(d_param - 2)
    q_param = (1 - d_param) // 4
    k = n + 1
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1
    u, v, qk = _lucas_uv(k, d_param, q_param, n)
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n):
    """Primality test: exact below 2**64, Baillie-PSW probable-prime above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        return all(_mr_round(n, a, d, s) for a in _MR_BASES_64)
    return _mr_round(n, 2, d, s) and _strong_lucas_prp(n)


def _brent_rho(n, c, max_iter):
    # Brent's cycle-finding rho with x -> x^2 + c, batched gcds.
    # Returns a nontrivial factor of odd composite n, or None on budget end.
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    used = 0
    while g == 1 and used < max_iter:
        x = y
        adv = min(r, max_iter - used)
        for _ in range(adv):
            y = (y * y + c) % n
        used += adv
        if adv < r:
            break
        k = 0
        while k < r and g == 1:
            ys = y
            lim = min(_RHO_BATCH, r - k, max_iter - used)
            if lim <= 0:
                break
            for _ in range(lim):
                y = (y * y + c) % n
                q = (x - y) * q % n
            g = gcd(q, n)
            k += lim
            used += lim
        r <<= 1
    if g == n:
        # product collapsed; replay one step at a time from the last batch
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(x - ys, n)
    if 1 < g < n:
        return g
    return None


def _rho_split(n, max_iter_per_offset):
    for c in range(1, _RHO_MAX_OFFSETS + 1):
        f = _brent_rho(n, c, max_iter_per_offset)
        if f is not None:
            return f
    return None


@dataclass(frozen=True)
class FactorTerm:
    prime: int
    exponent: int
    certified: bool  # passed is_prime


@dataclass(frozen=True)
class Factorization:
    """Factorization of ``n`` into certified prime powers plus a residual.

    ``residual`` is None when the input factored completely; otherwise it is
    a composite remainder that exceeded the factoring budget.  The product
    of all terms times the residual always reconstructs ``n`` exactly.
    """

    n: int
    terms: tuple[FactorTerm, ...]
    residual: int | None = None

    def pairs(self):
        return [(t.prime, t.exponent) for t in self.terms]

    def reconstruct(self):
        value = 1
        for t in self.terms:
            value *= t.prime**t.exponent
        if self.residual is not None:
            value *= self.residual
        return value

    def __str__(self):
        parts = []
        for t in self.terms:
            parts.append(str(t.prime) if t.exponent == 1 else f"{t.prime}^{t.exponent}")
        if self.residual is not None:
            parts.append(f"C{self.residual.bit_length()}")  # unsplit composite
        return " * ".join(parts) if parts else "1"


def factor(n, trial_bound=100_000, rho_iterations=1 << 26, hints=()):
    """Factor n >= 1 deterministically within a budget.

    Trial division runs over all primes <= trial_bound.  Remaining composite
    parts go to Brent rho, each polynomial offset capped at rho_iterations
    squarings.  ``hints`` are candidate divisors tried before rho; they are
    not trusted — anything they split off is verified like any other part.
    """
    if n < 1:
        raise ValueError("factor() requires n >= 1")
    if trial_bound > 100_000_000:
        raise ValueError("trial bound above 1e8 would sieve too much memory")
    counts: dict[int, int] = {}
    m = n
    _ensure_sieve(trial_bound + 1)
    for p in _sieve_primes:
        if p > trial_bound or p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    hint_list = sorted({int(h) for h in hints if int(h) > 1})
    residuals = []
    stack = [m] if m > 1 else []
    while stack:
        part = stack.pop()
        if part == 1:
            continue
        if is_prime(part):
            counts[part] = counts.get(part, 0) + 1
            continue
        split = None
        for h in hint_list:
            if 1 < h < part and part % h == 0:
                split = h
                break
        if split is None:
            split = _rho_split(part, rho_iterations)
        if split is None:
            residuals.append(part)
        else:
            stack.append(split)
            stack.append(part // split)
    residual = None
    if residuals:
        residual = 1
        for r in residuals:
            residual *= r
    terms = tuple(
        FactorTerm(p, e, certified=True) for p, e in sorted(counts.items())
    )
    result = Factorization(n=n, terms=terms, residual=residual)
    assert result.reconstruct() == n
    return result
