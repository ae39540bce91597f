"""Dense univariate polynomial arithmetic over F_p.

A polynomial is a list of canonical coefficients in [0, p), ascending by
degree, with no trailing zeros ([] is the zero polynomial).  Products above
a small size are computed by Kronecker substitution: coefficients are packed
into one big integer so CPython's subquadratic integer multiply does the
convolution.  ``Ring`` wraps a monic modulus h and reduces products with a
precomputed Newton inverse of the reversed modulus (a Barrett-style
division), falling back to classical division for small degrees.
"""

from __future__ import annotations

_SCHOOL_OPS = 600  # switch to Kronecker above roughly this many coeff mults


def trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def scale(a, s, p):
    s %= p
    if s == 0:
        return []
    return trim([c * s % p for c in a])


def _school_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim([c % p for c in out])


def _kronecker_mul(a, b, p):
    # Coefficient bound: min(len) * (p-1)^2, so this word width never carries.
    width = 2 * p.bit_length() + min(len(a), len(b)).bit_length() + 1
    nbytes = (width + 7) // 8
    packed_a = int.from_bytes(
        b"".join([c.to_bytes(nbytes, "little") for c in a]), "little"
    )
    if b is a:
        packed_b = packed_a
    else:
        packed_b = int.from_bytes(
            b"".join([c.to_bytes(nbytes, "little") for c in b]), "little"
        )
    prod = packed_a * packed_b
    out_len = len(a) + len(b) - 1
    raw = prod.to_bytes(nbytes * (out_len + 1), "little")
    frm = int.from_bytes
    return trim(
        [
            frm(raw[i : i + nbytes], "little") % p
            for i in range(0, out_len * nbytes, nbytes)
        ]
    )


def mul(a, b, p):
    if not a or not b:
        return []
    if len(a) * len(b) <= _SCHOOL_OPS:
        return _school_mul(a, b, p)
    return _kronecker_mul(a, b, p)


def divmod_poly(a, b, p):
    """Classical polynomial division; b need not be monic."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv_lead % p
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(quot), trim(a[:db])


def monic(a, p):
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return scale(a, pow(a[-1], p - 2, p), p)


def gcd_poly(a, b, p):
    """Monic greatest common divisor."""
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def eval_at(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _inverse_series(f, precision, p):
    # Newton iteration for f^-1 mod x^precision; f[0] must be invertible.
    g = [pow(f[0], p - 2, p)]
    k = 1
    while k < precision:
        k = min(2 * k, precision)
        fg = mul(f[:k], g, p)[:k]
        two_minus = sub([2], fg, p)
        g = mul(g, two_minus, p)[:k]
    return trim(list(g))


class Ring:
    """The quotient ring F_p[x]/(h) for a monic h of degree >= 1."""

    _NEWTON_MIN_DEGREE = 40

    def __init__(self, h, p):
        if not h or h[-1] != 1:
            raise ValueError("modulus must be monic")
        self.h = list(h)
        self.p = p
        self.degree = len(h) - 1
        if self.degree >= self._NEWTON_MIN_DEGREE:
            rev = list(reversed(self.h))
            self._rev_inv = _inverse_series(rev, self.degree, p)
        else:
            self._rev_inv = None

    def reduce(self, a):
        d = self.degree
        a = trim(list(a))
        if len(a) <= d:
            return a
        if self._rev_inv is None or len(a) > 2 * d:
            return divmod_poly(a, self.h, self.p)[1]
        # Barrett: quotient = rev(rev(a) * rev_inv mod x^(len(a)-d))
        qlen = len(a) - d
        rev_a = list(reversed(a))
        q_rev = mul(rev_a[:qlen], self._rev_inv[:qlen], self.p)[:qlen]
        q = list(reversed(q_rev + [0] * (qlen - len(q_rev))))
        remainder = sub(a[: d + 1], mul(q, self.h, self.p)[: d + 1], self.p)
        return trim(remainder[:d])

    def mul(self, a, b):
        return self.reduce(mul(a, b, self.p))

    def add(self, a, b):
        return add(a, b, self.p)

    def sub(self, a, b):
        return sub(a, b, self.p)

    def pow(self, a, e):
        result = [1]
        base = self.reduce(list(a))
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result
