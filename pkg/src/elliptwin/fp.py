"""Prime-field arithmetic with a word-folding fast path for special moduli.

The interesting moduli here are generalized-Mersenne primes: signed sums of
a few powers of N = 2**32 (for example N**7 - N**3 + 1).  For those,
``PrimeModulus`` reduces double-width products by folding high words back
into low positions using N**d = -(sum of the tail terms) instead of doing a
full-width division.  Any other modulus takes the generic remainder path.
Either way every element is kept as a canonical residue in [0, p).

All operations are pure; a ``PrimeModulus`` is immutable after construction
(the lazily cached square-root parameters are idempotent), so instances can
be shared freely across threads and processes.
"""

from __future__ import annotations

from . import nt
from .errors import (
    FormMismatch,
    ModulusMismatch,
    NonInvertible,
    NotASquare,
    NotPrime,
    TooSmall,
)

WORD_BITS = 32  # fold base N = 2**32

# (exponent, sign) term lists over N = 2**32 for the three non-Mersenne
# NIST field primes.
P224_TERMS = ((7, 1), (3, -1), (0, 1))
P256_TERMS = ((8, 1), (7, -1), (6, 1), (3, 1), (0, -1))
P384_TERMS = ((12, 1), (4, -1), (3, -1), (1, 1), (0, -1))

NAMED_FORMS = {"p224": P224_TERMS, "p256": P256_TERMS, "p384": P384_TERMS}

_FOLD_PASS_CAP = 64  # safety; real inputs converge in a handful of passes


def solinas_value(terms):
    """Evaluate a signed power-of-N term list to the integer it denotes."""
    return sum(sign << (WORD_BITS * exp) for exp, sign in terms)


def _validate_form(terms, p):
    terms = tuple((int(e), int(s)) for e, s in terms)
    if not terms:
        raise FormMismatch("empty term list")
    exps = [e for e, _ in terms]
    if len(set(exps)) != len(exps):
        raise FormMismatch("duplicate exponents in term list")
    if any(s not in (-1, 1) for _, s in terms) or any(e < 0 for e in exps):
        raise FormMismatch("terms must be (exponent >= 0, sign in {-1, +1})")
    terms = tuple(sorted(terms, reverse=True))
    if terms[0][1] != 1:
        raise FormMismatch("leading term must have sign +1")
    if solinas_value(terms) != p:
        raise FormMismatch(f"term list evaluates to {solinas_value(terms)}, not {p}")
    return terms


class PrimeModulus:
    """An odd prime p > 5 together with its reduction strategy.

    ``form``, when given, is a sequence of (exponent, sign) pairs over the
    word base 2**32 whose signed sum must equal p exactly; products are then
    reduced by word folding.  Without a form, reduction is the generic
    arbitrary-precision remainder.
    """

    def __init__(self, p, form=None):
        p = int(p)
        if p <= 5:
            raise TooSmall(f"field characteristic must exceed 5, got {p}")
        if not nt.is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.bit_length = p.bit_length()
        if form is None:
            self.form = None
            self._fold = None
        else:
            self.form = _validate_form(form, p)
            lead = self.form[0][0]
            self._lead_bits = WORD_BITS * lead
            self._low_mask = (1 << self._lead_bits) - 1
            # N**lead = -(tail), so a high word block hi contributes
            # sum(-sign * (hi << WORD_BITS*exp)) once folded down.
            self._fold = tuple(
                (WORD_BITS * e, -s) for e, s in self.form if e != lead
            )
        self._sqrt_params = None
        self._nonresidue = None

    # -- reduction ---------------------------------------------------------

    def reduce(self, value):
        """Canonical residue of any integer, via the fast path if present."""
        if self._fold is None:
            return value % self.p
        return self.reduce_solinas(value)

    def reduce_generic(self, value):
        return value % self.p

    def reduce_solinas(self, value):
        """Word-folding reduction driven by the term list."""
        z = value
        bound = 1 << self._lead_bits
        for _ in range(_FOLD_PASS_CAP):
            if 0 <= z < bound:
                break
            lo = z & self._low_mask
            hi = z >> self._lead_bits
            acc = lo
            for shift, coeff in self._fold:
                acc += coeff * (hi << shift)
            z = acc
        return z % self.p

    # -- scalar helpers ----------------------------------------------------

    def add(self, x, y):
        r = x + y
        return r - self.p if r >= self.p else r

    def sub(self, x, y):
        r = x - y
        return r + self.p if r < 0 else r

    def mul(self, x, y):
        return self.reduce(x * y)

    def inv(self, x):
        if x % self.p == 0:
            raise NonInvertible("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def legendre(self, x):
        """Quadratic character: 0 for 0, +1 for nonzero squares, -1 otherwise."""
        x %= self.p
        if x == 0:
            return 0
        r = pow(x, (self.p - 1) // 2, self.p)
        return 1 if r == 1 else -1

    @property
    def smallest_nonresidue(self):
        if self._nonresidue is None:
            d = 2
            while self.legendre(d) != -1:
                d += 1
            self._nonresidue = d
        return self._nonresidue

    def sqrt(self, x):
        """Deterministic square root: the smaller of the two roots.

        Tonelli-Shanks for every p (no p = 3 mod 4 shortcut needed for
        correctness).  Raises NotASquare for non-residues.
        """
        p = self.p
        x %= p
        if x == 0:
            return 0
        if self.legendre(x) == -1:
            raise NotASquare(f"{x} is not a square mod {p}")
        if self._sqrt_params is None:
            q = p - 1
            s = 0
            while q % 2 == 0:
                q //= 2
                s += 1
            self._sqrt_params = (q, s, pow(self.smallest_nonresidue, q, p))
        q, s, z = self._sqrt_params
        m = s
        c = z
        t = pow(x, q, p)
        r = pow(x, (q + 1) // 2, p)
        while t != 1:
            t2 = t * t % p
            i = 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m = i
            c = b * b % p
            t = t * c % p
            r = r * b % p
        return min(r, p - r)

    def fe(self, value):
        return Fe(self, value)

    def __eq__(self, other):
        return isinstance(other, PrimeModulus) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeModulus", self.p))

    def __repr__(self):
        tag = "solinas" if self.form else "generic"
        return f"PrimeModulus({self.p}, {tag}, {self.bit_length} bits)"


def named_modulus(name):
    """The field modulus for one of the named special primes (p224/p256/p384)."""
    terms = NAMED_FORMS[name.lower()]
    return PrimeModulus(solinas_value(terms), form=terms)


class Fe:
    """A field element: canonical residue in [0, p) tied to its modulus."""

    __slots__ = ("modulus", "value")

    def __init__(self, modulus, value):
        self.modulus = modulus
        self.value = modulus.reduce(value)

    def _other_value(self, other):
        if isinstance(other, Fe):
            if other.modulus.p != self.modulus.p:
                raise ModulusMismatch(
                    f"operands live in F_{self.modulus.p} and F_{other.modulus.p}"
                )
            return other.value
        return other % self.modulus.p

    def __add__(self, other):
        return Fe(self.modulus, self.value + self._other_value(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Fe(self.modulus, self.value - self._other_value(other))

    def __rsub__(self, other):
        return Fe(self.modulus, self._other_value(other) - self.value)

    def __mul__(self, other):
        return Fe(self.modulus, self.value * self._other_value(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Fe(self.modulus, self.value * self.modulus.inv(self._other_value(other)))

    def __pow__(self, exponent):
        return Fe(self.modulus, pow(self.value, exponent, self.modulus.p))

    def __neg__(self):
        return Fe(self.modulus, -self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        return (
            isinstance(other, Fe)
            and other.modulus.p == self.modulus.p
            and other.value == self.value
        )

    def __hash__(self):
        return hash((self.modulus.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fe({self.value} mod {self.modulus.p})"

    def inverse(self):
        return Fe(self.modulus, self.modulus.inv(self.value))

    def legendre(self):
        return self.modulus.legendre(self.value)

    def sqrt(self):
        return Fe(self.modulus, self.modulus.sqrt(self.value))
