import random

from elliptwin import _poly as poly

P = 1099511627791  # prime just above 2^40


def randpoly(rng, n):
    return poly.trim([rng.randrange(P) for _ in range(n)])


def test_mul_matches_schoolbook():
    rng = random.Random(12)
    for _ in range(150):
        a = randpoly(rng, rng.randrange(1, 80))
        b = randpoly(rng, rng.randrange(1, 80))
        if not a or not b:
            continue
        assert poly.mul(a, b, P) == poly._school_mul(a, b, P)


def test_mul_ring_axioms():
    rng = random.Random(13)
    for _ in range(50):
        a = randpoly(rng, rng.randrange(1, 40))
        b = randpoly(rng, rng.randrange(1, 40))
        c = randpoly(rng, rng.randrange(1, 40))
        assert poly.mul(a, b, P) == poly.mul(b, a, P)
        left = poly.mul(a, poly.add(b, c, P), P)
        right = poly.add(poly.mul(a, b, P), poly.mul(a, c, P), P)
        assert left == right


def test_divmod_reconstruction():
    rng = random.Random(14)
    for _ in range(200):
        a = randpoly(rng, rng.randrange(1, 100))
        b = randpoly(rng, rng.randrange(1, 30))
        if not b:
            continue
        q, r = poly.divmod_poly(a, b, P)
        assert poly.add(poly.mul(q, b, P), r, P) == poly.trim(list(a))
        assert len(r) < len(b)


def test_gcd_divides_both():
    rng = random.Random(15)
    for _ in range(50):
        g = randpoly(rng, rng.randrange(2, 8))
        if len(g) < 2:
            continue
        a = poly.mul(g, randpoly(rng, 6) or [1], P)
        b = poly.mul(g, randpoly(rng, 6) or [1], P)
        common = poly.gcd_poly(a, b, P)
        assert len(common) >= len(g)
        assert poly.divmod_poly(a, common, P)[1] == []
        assert poly.divmod_poly(b, common, P)[1] == []


def test_ring_reduce_matches_classical():
    rng = random.Random(16)
    for _ in range(80):
        h = poly.monic(randpoly(rng, rng.randrange(3, 220)) or [1, 1], P)
        if len(h) < 2:
            continue
        ring = poly.Ring(h, P)
        a = randpoly(rng, rng.randrange(1, 2 * len(h) - 1))
        assert ring.reduce(a) == poly.divmod_poly(a, h, P)[1]
        # untrimmed input must not confuse the reversal
        assert ring.reduce(a + [0, 0, 0]) == poly.divmod_poly(a, h, P)[1]


def test_ring_pow_fermat():
    # in F_p[x]/(x - c) the residue of x^P is c^P = c
    ring = poly.Ring([P - 5, 1], P)  # x - 5
    assert ring.pow([0, 1], P) == [5]
    ring2 = poly.Ring([3, 1], P)  # x + 3
    assert ring2.pow([0, 1], P) == [(-3) % P]


def test_eval_at():
    # 2 + 3x + x^2 at x = 10
    assert poly.eval_at([2, 3, 1], 10, P) == 132
