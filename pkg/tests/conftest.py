"""Shared oracles: independent enumeration-based counting and primality.

The oracles here deliberately avoid the library's own counting and
primality code: orders come from a pure-Python character sum over a plain
quadratic-residue table, and primality from sympy.  Anything the library
computes is checked against these.
"""

import pytest
import sympy


def chi_table(p):
    """chi[z] in {-1, 0, 1}: quadratic character of z mod p."""
    chi = [-1] * p
    for x in range(p):
        chi[x * x % p] = 1
    chi[0] = 0
    return chi


def enum_order(p, a, b, chi=None):
    """#E by summing the quadratic character of x^3 + ax + b."""
    if chi is None:
        chi = chi_table(p)
    x3 = [pow(x, 3, p) for x in range(p)]
    return p + 1 + sum(chi[(x3[x] + a * x + b) % p] for x in range(p))


def coeffs_from_j(p, j):
    """Independent restatement of the canonical j -> (a, b) map."""
    if j == 0:
        return 0, 1
    if j == 1728 % p:
        return 1, 0
    k = j * pow((1728 - j) % p, -1, p) % p
    return 3 * k % p, 2 * k % p


def sweep_field(p):
    """Classify every j in [1, p) by enumeration: maps j -> (is_pi, is_twin).

    j = 1728 mod p is skipped (value None), matching the scan population.
    """
    chi = chi_table(p)
    x3 = [pow(x, 3, p) for x in range(p)]
    out = {}
    for j in range(1, p):
        if j == 1728 % p:
            out[j] = None
            continue
        a, b = coeffs_from_j(p, j)
        order = p + 1 + sum(chi[(x3[x] + a * x + b) % p] for x in range(p))
        twist = 2 * p + 2 - order
        is_pi = sympy.isprime(order)
        is_twin = (
            is_pi and sympy.isprime(twist) and order != p and twist != p
        )
        out[j] = (is_pi, is_twin)
    return out


@pytest.fixture(scope="session")
def sweep_1009():
    return sweep_field(1009)


@pytest.fixture(scope="session")
def sweep_4003():
    return sweep_field(4003)


@pytest.fixture(scope="session")
def p40():
    value = (1 << 40) + 15
    while not sympy.isprime(value):
        value += 2
    return value
