"""Short Weierstrass curves y^2 = x^3 + ax + b over prime fields.

Covers construction from a j-invariant, the quadratic twist, and affine
chord-tangent point arithmetic.  The model chosen for "the curve with
invariant j" is (a, b) = (3k, 2k) with k = j / (1728 - j); any model with
that invariant has one of exactly two possible orders (the curve's or its
twist's), and everything downstream is symmetric in that pair, so the
choice is a canonical representative only.

Curves and points are immutable plain data; all operations are pure.
``random_point`` threads its RNG explicitly so sampling is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PointNotOnCurve, SingularParameters
from .fp import Fe, PrimeModulus


@dataclass(frozen=True)
class Point:
    x: int | None
    y: int | None

    @property
    def is_infinity(self):
        return self.x is None


INFINITY = Point(None, None)


def _coerce(modulus, value):
    if isinstance(value, Fe):
        return value.value
    return int(value) % modulus.p


class Curve:
    """A nonsingular short Weierstrass curve over a prime field."""

    __slots__ = ("modulus", "a", "b", "_j")

    def __init__(self, modulus: PrimeModulus, a, b):
        self.modulus = modulus
        p = modulus.p
        self.a = _coerce(modulus, a)
        self.b = _coerce(modulus, b)
        disc = (4 * self.a**3 + 27 * self.b**2) % p
        if disc == 0:
            raise SingularParameters(f"4a^3 + 27b^2 = 0 mod {p}")
        self._j = None

    @property
    def p(self):
        return self.modulus.p

    @property
    def j_invariant(self):
        """1728 * 4a^3 / (4a^3 + 27b^2), cached."""
        if self._j is None:
            p = self.p
            a3 = 4 * pow(self.a, 3, p) % p
            denom = (a3 + 27 * self.b * self.b) % p
            self._j = 1728 * a3 * pow(denom, p - 2, p) % p
        return self._j

    @property
    def special_automorphisms(self):
        """True for j = 0 and j = 1728, which carry extra automorphisms."""
        return self.j_invariant in (0, 1728 % self.p)

    def rhs(self, x):
        p = self.p
        return (x * x % p * x + self.a * x + self.b) % p

    def contains(self, point):
        if point.is_infinity:
            return True
        return point.y * point.y % self.p == self.rhs(point.x)

    # -- group law ----------------------------------------------------------

    def neg(self, point):
        if point.is_infinity:
            return INFINITY
        return Point(point.x, (-point.y) % self.p)

    def add(self, pt1, pt2):
        if pt1.is_infinity:
            return pt2
        if pt2.is_infinity:
            return pt1
        p = self.p
        if pt1.x == pt2.x:
            if (pt1.y + pt2.y) % p == 0:
                return INFINITY
            num = (3 * pt1.x * pt1.x + self.a) % p
            den = 2 * pt1.y % p
        else:
            num = (pt2.y - pt1.y) % p
            den = (pt2.x - pt1.x) % p
        lam = num * pow(den, p - 2, p) % p
        x3 = (lam * lam - pt1.x - pt2.x) % p
        y3 = (lam * (pt1.x - x3) - pt1.y) % p
        return Point(x3, y3)

    def mul(self, k, point):
        """Scalar multiple k * point for k >= 0 (double-and-add)."""
        if k < 0:
            raise ValueError("scalar must be nonnegative")
        if not self.contains(point):
            raise PointNotOnCurve(f"{point} not on y^2 = x^3 + {self.a}x + {self.b}")
        acc = INFINITY
        addend = point
        while k:
            if k & 1:
                acc = self.add(acc, addend)
            k >>= 1
            if k:
                addend = self.add(addend, addend)
        return acc

    def random_point(self, rng):
        """Uniform-x point sampling; the smaller square root is returned.

        Deterministic given the RNG state.  Expected ~2 draws per point.
        """
        p = self.p
        while True:
            x = rng.randrange(p)
            z = self.rhs(x)
            if self.modulus.legendre(z) != -1:
                return Point(x, self.modulus.sqrt(z))

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and other.p == self.p
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash((self.p, self.a, self.b))

    def __repr__(self):
        return f"Curve(y^2 = x^3 + {self.a}x + {self.b} over F_{self.p})"


def curve_from_j(modulus: PrimeModulus, j) -> Curve:
    """The canonical curve with the given j-invariant.

    Standard branch: k = j/(1728 - j), (a, b) = (3k, 2k).  The two special
    invariants get fixed models: j = 0 -> (0, 1), j = 1728 -> (1, 0).
    """
    p = modulus.p
    j = _coerce(modulus, j)
    if j == 0:
        return Curve(modulus, 0, 1)
    if j == 1728 % p:
        return Curve(modulus, 1, 0)
    k = j * pow((1728 - j) % p, p - 2, p) % p
    return Curve(modulus, 3 * k, 2 * k)


def twist_of(curve: Curve) -> Curve:
    """The quadratic twist by the smallest non-residue d: (a d^2, b d^3).

    The twist is unique up to isomorphism, shares the curve's j-invariant,
    and its order is the complement 2p + 2 - #E.
    """
    p = curve.p
    d = curve.modulus.smallest_nonresidue
    return Curve(curve.modulus, curve.a * d * d % p, curve.b * pow(d, 3, p) % p)


def point_add(pt1: Point, pt2: Point, curve: Curve) -> Point:
    return curve.add(pt1, pt2)


def scalar_mul(k, point: Point, curve: Curve) -> Point:
    return curve.mul(k, point)
