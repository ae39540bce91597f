import random

import pytest
import sympy

from elliptwin import nt


def test_is_prime_agrees_with_sieve_below_one_million():
    flags = bytearray([1]) * 1_000_000
    flags[0:2] = b"\x00\x00"
    for i in range(2, 1000):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, 1_000_000, i)))
    mismatches = [n for n in range(1_000_000) if nt.is_prime(n) != bool(flags[n])]
    assert mismatches == []


def test_known_primes():
    assert nt.is_prime(2**61 - 1)
    assert nt.is_prime(2**224 - 2**96 + 1)
    assert nt.is_prime(267983539294927)
    assert nt.is_prime(2**89 - 1)
    assert nt.is_prime(2**127 - 1)


def test_known_composites():
    for n in (341, 561, 645, 1105, 25326001, 3215031751, 2**64 + 1):
        assert not nt.is_prime(n)
    assert not nt.is_prime((2**89 - 1) * (2**107 - 1))
    # square of a large prime must not fool the Lucas stage
    assert not nt.is_prime((2**89 - 1) ** 2)


def test_is_prime_matches_sympy_on_random_big_inputs():
    r = random.Random(4)
    for bits in (65, 80, 128, 200):
        for _ in range(150):
            n = r.getrandbits(bits) | 1 | (1 << (bits - 1))
            assert nt.is_prime(n) == sympy.isprime(n), n


def test_jacobi_matches_legendre_on_primes():
    for p in (7, 11, 101, 1009):
        for a in range(p):
            euler = pow(a, (p - 1) // 2, p)
            want = 0 if euler == 0 else (1 if euler == 1 else -1)
            assert nt.jacobi(a, p) == want


def test_factor_one():
    f = nt.factor(1)
    assert f.terms == () and f.residual is None and f.reconstruct() == 1


def test_factor_twelve_factorial():
    # trial-division oracle for 479001600
    n = 479001600
    oracle = {}
    m, d = n, 2
    while d * d <= m:
        while m % d == 0:
            oracle[d] = oracle.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        oracle[m] = oracle.get(m, 0) + 1
    assert oracle == {2: 10, 3: 5, 5: 2, 7: 1, 11: 1}
    assert dict(nt.factor(n).pairs()) == oracle


def test_factor_agrees_with_trial_division_smallish():
    r = random.Random(5)
    for _ in range(400):
        n = r.randrange(1, 10**6)
        oracle = {}
        m, d = n, 2
        while d * d <= m:
            while m % d == 0:
                oracle[d] = oracle.get(d, 0) + 1
                m //= d
            d += 1
        if m > 1:
            oracle[m] = oracle.get(m, 0) + 1
        fac = nt.factor(n)
        assert dict(fac.pairs()) == oracle and fac.residual is None


def test_factor_known_fermat_number():
    fac = nt.factor(2**64 + 1)
    assert fac.pairs() == [(274177, 1), (67280421310721, 1)]
    assert fac.residual is None


def test_factor_reconstruction_and_certification():
    r = random.Random(6)
    for _ in range(40):
        n = r.randrange(2, 1 << 72)
        fac = nt.factor(n)
        assert fac.reconstruct() == n
        for term in fac.terms:
            assert term.certified and sympy.isprime(term.prime)
        if fac.residual is not None:
            assert not sympy.isprime(fac.residual)


def test_factor_budget_exhaustion_lands_in_residual():
    p = sympy.nextprime(1 << 80)
    q = sympy.nextprime(p + 10**6)
    n = 6 * p * q
    fac = nt.factor(n, rho_iterations=50)
    assert dict(fac.pairs()) == {2: 1, 3: 1}
    assert fac.residual == p * q
    assert fac.reconstruct() == n


def test_factor_hints_split_beyond_budget():
    p = sympy.nextprime(1 << 80)
    q = sympy.nextprime(p + 10**6)
    fac = nt.factor(p * q, rho_iterations=50, hints=[p])
    assert fac.pairs() == [(p, 1), (q, 1)]
    assert fac.residual is None


def test_factor_untrusted_composite_hint_is_refined():
    fac = nt.factor(2 * 3 * 5 * 77, trial_bound=1, hints=[77])
    assert dict(fac.pairs()) == {2: 1, 3: 1, 5: 1, 7: 1, 11: 1}


def test_factor_deterministic():
    n = (sympy.nextprime(1 << 30)) * (sympy.nextprime(1 << 31)) * 4
    assert nt.factor(n) == nt.factor(n)


def test_primes_below():
    assert nt.primes_below(2) == []
    assert nt.primes_below(3) == [2]
    assert nt.primes_below(100)[-1] == 97
    assert len(nt.primes_below(10**4)) == 1229
