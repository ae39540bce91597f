"""Trace of Frobenius by the division-polynomial method, with early abort.

For each small prime l the trace t is found mod l by testing the relation
pi^2 - t*pi + p = 0 on the l-torsion, where the torsion x-coordinates are
roots of a reduced division polynomial.  All work happens in the quotient
ring F_p[x]/(h), h initially the monic degree-(l^2-1)/2 torsion polynomial,
with the implicit relation y^2 = x^3 + ax + b folded into the formulas
(every y-coordinate in sight is y times a ring element).  When a gcd shows
h splitting, the computation restarts on the discovered factor: the torsion
identities hold on every nonconstant factor, and t mod l is intrinsic to
the curve, so any factor gives the same answer.

Residues t mod l accumulate by CRT until their product exceeds the width of
the possible trace range, then t is recovered as the centered residue.  The
early-abort hook fires as soon as some computed t mod l certifies a small
prime factor of the curve order (t = p+1 mod l), or of the twist order
(t = -(p+1) mod l) when the policy covers the twist.
"""

from __future__ import annotations

from math import isqrt

from . import nt
from ._poly import Ring, gcd_poly, monic, mul, scale, sub, trim
from .errors import InternalLimit


class _SplitRing(Exception):
    """An intermediate value shared a proper factor with the ring modulus."""

    def __init__(self, factor):
        self.factor = factor


def _series_extend(g, k, mul_op, sub_op, scale_op, f2):
    """Append the index-k reduced division polynomial to g (len(g) == k)."""
    m = k // 2
    if k & 1:
        left = mul_op(g[m + 2], mul_op(g[m], mul_op(g[m], g[m])))
        right = mul_op(g[m - 1], mul_op(g[m + 1], mul_op(g[m + 1], g[m + 1])))
        if m & 1:
            g.append(sub_op(left, mul_op(f2, right)))
        else:
            g.append(sub_op(mul_op(f2, left), right))
    else:
        inner = sub_op(
            mul_op(g[m + 2], mul_op(g[m - 1], g[m - 1])),
            mul_op(g[m - 2], mul_op(g[m + 1], g[m + 1])),
        )
        g.append(scale_op(mul_op(g[m], inner)))


class DivisionPolynomials:
    """Reduced division polynomials g_m for y^2 = x^3 + ax + b.

    psi_m = g_m for odd m and psi_m = y * g_m for even m, with y^2
    substituted by f = x^3 + ax + b throughout.  Entries are full (unreduced)
    dense polynomials; index m has degree (m^2-1)/2 for odd m, (m^2-4)/2 for
    even m, and leading coefficient m.
    """

    def __init__(self, a, b, p):
        a %= p
        b %= p
        self.p = p
        self.f = trim([b, a, 0, 1])
        self.f2 = mul(self.f, self.f, p)
        self._inv2 = (p + 1) // 2
        self.g = [
            [],
            [1],
            [2],
            trim([-a * a % p, 12 * b % p, 6 * a % p, 0, 3]),
            trim(
                [
                    (-8 * b * b - a * a * a) * 4 % p,
                    -16 * a * b % p,
                    -20 * a * a % p,
                    80 * b % p,
                    20 * a % p,
                    0,
                    4,
                ]
            ),
        ]

    def upto(self, n):
        p = self.p
        while len(self.g) <= n:
            _series_extend(
                self.g,
                len(self.g),
                lambda x, y: mul(x, y, p),
                lambda x, y: sub(x, y, p),
                lambda x: scale(x, self._inv2, p),
                self.f2,
            )
        return self.g


class _TorsionRing:
    """Everything the mod-l step needs, bound to one quotient ring."""

    def __init__(self, h, p, full_g, a, b):
        self.ring = Ring(h, p)
        self.p = p
        self.f = self.ring.reduce(trim([b % p, a % p, 0, 1]))
        self.f2 = self.ring.mul(self.f, self.f)
        self._inv2 = (p + 1) // 2
        self.g = [self.ring.reduce(gi) for gi in full_g]

    def extend_series(self, n):
        while len(self.g) <= n:
            _series_extend(
                self.g,
                len(self.g),
                self.ring.mul,
                self.ring.sub,
                lambda x: scale(x, self._inv2, self.p),
                self.f2,
            )

    def mul_point(self, m):
        """Fractions for m*(x, y): (xnum, xden, ynum, yden), m >= 1.

        The y-coordinate of m*(x, y) is y * ynum/yden.  All four values are
        ring elements whose denominators are invertible on the torsion, so
        no division ever happens here.
        """
        self.extend_series(2 * m + 2)
        ring = self.ring
        g = self.g
        gm2 = ring.mul(g[m], g[m])
        neighbor = ring.mul(g[m - 1], g[m + 1])
        x_poly = [0, 1]
        if m & 1:
            xnum = ring.sub(ring.mul(x_poly, gm2), ring.mul(self.f, neighbor))
            xden = gm2
            yden = scale(ring.mul(gm2, gm2), 2, self.p)
        else:
            fgm2 = ring.mul(self.f, gm2)
            xnum = ring.sub(ring.mul(x_poly, fgm2), neighbor)
            xden = fgm2
            yden = scale(ring.mul(self.f2, ring.mul(gm2, gm2)), 2, self.p)
        ynum = g[2 * m]
        return xnum, xden, ynum, yden

    def classify(self, d):
        """'zero' if d == 0 in the ring, 'unit' if coprime to h, else split."""
        if not d:
            return "zero"
        common = gcd_poly(d, self.ring.h, self.p)
        if len(common) - 1 == 0:
            return "unit"
        if len(common) == len(self.ring.h):
            return "zero"
        raise _SplitRing(common)


def trace_mod_2(a, b, p):
    """t mod 2: the order is even exactly when x^3+ax+b has a root in F_p."""
    f = trim([b % p, a % p, 0, 1])
    ring = Ring(f, p)
    xp = ring.pow([0, 1], p)
    d = sub(xp, [0, 1], p)
    common = gcd_poly(d, f, p) if d else f
    return 0 if len(common) > 1 else 1


def trace_mod_odd(a, b, p, l, divpolys):
    """t mod l for an odd prime l != p."""
    full = divpolys.upto(max(l, 4))
    h = monic(full[l], p)
    while True:
        tor = _TorsionRing(h, p, full[: max(l, 4) + 1], a, b)
        try:
            return _trace_attempt(tor, l)
        except _SplitRing as split:
            h = split.factor


def _trace_attempt(tor, l):
    ring = tor.ring
    p = tor.p
    pbar = p % l

    xp = ring.pow([0, 1], p)
    f_half = ring.pow(tor.f, (p - 1) // 2)  # y^p = y * f_half
    xp2 = ring.pow(xp, p)
    f_half2 = ring.mul(ring.pow(f_half, p), f_half)  # y^(p^2) = y * f_half2

    qxn, qxd, qyn, qyd = tor.mul_point(pbar)
    diff = ring.sub(ring.mul(xp2, qxd), qxn)
    if tor.classify(diff) == "zero":
        return _special_case(tor, l, pbar, xp, f_half)
    return _generic_case(
        tor, l, xp, f_half, xp2, f_half2, (qxn, qxd, qyn, qyd), diff
    )


def _special_case(tor, l, pbar, xp, f_half):
    # pi^2 acts as +-pbar on every component here.  If pbar is not a square
    # mod l there is no Frobenius eigenvalue and t = 0; otherwise evidence of
    # the eigenvalue w (x^p matching x of w*(x,y)) pins t to +-2w.
    if nt.jacobi(pbar, l) != 1:
        return 0
    w = next(c for c in range(1, l) if c * c % l == pbar)
    ring = tor.ring
    p = tor.p
    wxn, wxd, wyn, wyd = tor.mul_point(w)
    d_x = ring.sub(ring.mul(xp, wxd), wxn)
    eigen = gcd_poly(d_x, ring.h, p) if d_x else list(ring.h)
    if len(eigen) - 1 == 0:
        return 0
    d_y = ring.sub(ring.mul(f_half, wyd), wyn)
    same_sign = gcd_poly(d_y, eigen, p) if d_y else eigen
    if len(same_sign) - 1 >= 1:
        return 2 * w % l
    return -2 * w % l


def _generic_case(tor, l, xp, f_half, xp2, f_half2, q_fracs, diff):
    ring = tor.ring
    qxn, qxd, qyn, qyd = q_fracs

    # slope of (x^(p^2), y^(p^2)) + Q, as y * (m_num / m_den)
    m_num = ring.mul(ring.sub(ring.mul(f_half2, qyd), qyn), qxd)
    m_den = ring.mul(qyd, diff)

    # x and y of the sum S = pi^2(P) + Q; x_S = f * mu^2 - x^(p^2) - x_Q
    m_den2 = ring.mul(m_den, m_den)
    s_num = ring.sub(
        ring.mul(ring.mul(tor.f, ring.mul(m_num, m_num)), qxd),
        ring.mul(ring.add(ring.mul(xp2, qxd), qxn), m_den2),
    )
    s_den = ring.mul(m_den2, qxd)
    w_num = ring.sub(
        ring.mul(m_num, ring.sub(ring.mul(xp2, s_den), s_num)),
        ring.mul(f_half2, ring.mul(m_den, s_den)),
    )
    w_den = ring.mul(m_den, s_den)

    # The x-coordinate of j*pi(P) is the Frobenius image of the fraction for
    # j*(x, y); since the p-power map is a ring homomorphism fixing F_p, that
    # image is assembled from G_m = g_m^p instead of exponentiating whole
    # fractions per candidate.  Constants are Fermat-fixed, so G_0..G_2 are
    # free, and f^p = f_half^2 * f.
    f_p = ring.mul(ring.mul(f_half, f_half), tor.f)
    frobenius_g = [[], [1], [2 % tor.p]]

    def g_frob(m):
        tor.extend_series(m)
        while len(frobenius_g) <= m:
            g_m = tor.g[len(frobenius_g)]
            frobenius_g.append(
                ring.pow(g_m, tor.p) if len(g_m) > 1 else list(g_m)
            )
        return frobenius_g[m]

    deferred = []
    for j in range(1, (l - 1) // 2 + 1):
        gj_p2 = ring.mul(g_frob(j), g_frob(j))
        neighbor_p = ring.mul(g_frob(j - 1), g_frob(j + 1))
        if j & 1:
            jxd_p = gj_p2
            jxn_p = ring.sub(ring.mul(xp, gj_p2), ring.mul(f_p, neighbor_p))
        else:
            jxd_p = ring.mul(f_p, gj_p2)
            jxn_p = ring.sub(ring.mul(xp, jxd_p), neighbor_p)
        d_x = ring.sub(ring.mul(s_num, jxd_p), ring.mul(s_den, jxn_p))
        if d_x:
            deferred.append(d_x)
            continue
        # x matched for all components: the sign comes from the y side,
        # where y of j*pi(P) is y * f_half * (g_2j / (2 f^(2[j even]) g_j^4))^p.
        tor.extend_series(2 * j)
        g2j = tor.g[2 * j]
        g2j_p = ring.pow(g2j, tor.p) if len(g2j) > 1 else list(g2j)
        gj_p4 = ring.mul(gj_p2, gj_p2)
        if j & 1:
            jyd_p = scale(gj_p4, 2, tor.p)
        else:
            jyd_p = scale(ring.mul(ring.mul(f_p, f_p), gj_p4), 2, tor.p)
        d_y = ring.sub(
            ring.mul(w_num, jyd_p),
            ring.mul(ring.mul(w_den, f_half), g2j_p),
        )
        state = tor.classify(d_y)
        if state == "zero":
            return j
        return (l - j) % l

    # No candidate matched identically: the ring must be mixing torsion
    # components; locate a proper factor and restart there.
    for d_x in deferred:
        tor.classify(d_x)  # raises _SplitRing on a proper common factor
    raise AssertionError(f"no trace candidate matched mod {l}")


def _crt_centered(residues, modulus):
    x = 0
    m_acc = 1
    for r, m in residues:
        delta = (r - x) % m
        inv = pow(m_acc % m, -1, m)
        x += m_acc * (delta * inv % m)
        m_acc *= m
    x %= m_acc
    if x > m_acc // 2:
        x -= m_acc
    return x


def schoof_trace(a, b, p, abort_mode="none", trial_primes=(), max_l=100):
    """Compute the trace, or abort early on a certified small factor.

    Returns (t, None) on completion, or (None, (side, l)) when the policy
    fires: side is "curve" when l divides p + 1 - t and "twist" when l
    divides p + 1 + t.  Trial primes are only consulted among the primes the
    CRT ladder actually computes; the caller is expected to re-check the
    full list on the completed order if it needs tier-independent abort
    statistics.
    """
    interval_halfwidth = isqrt(4 * p)
    trial = set(trial_primes)
    residues = []
    modulus = 1
    divpolys = DivisionPolynomials(a, b, p)
    for l in nt.primes_below(max_l + 1):
        if l == p:
            continue
        t_l = trace_mod_2(a, b, p) if l == 2 else trace_mod_odd(a, b, p, l, divpolys)
        if l in trial and abort_mode != "none":
            if (p + 1 - t_l) % l == 0:
                return None, ("curve", l)
            if abort_mode == "both" and (p + 1 + t_l) % l == 0:
                return None, ("twist", l)
        residues.append((t_l, l))
        modulus *= l
        if modulus > 2 * interval_halfwidth:
            trace = _crt_centered(residues, modulus)
            if trace * trace > 4 * p:
                raise AssertionError("trace escaped the Hasse interval")
            return trace, None
    raise InternalLimit(
        f"CRT ladder needs primes beyond {max_l} for a {p.bit_length()}-bit field"
    )
