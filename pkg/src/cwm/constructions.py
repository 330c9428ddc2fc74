"""Building new circulant weighing matrices from old ones.

Covers multiples B(X^d), the coprime-order Kronecker product, the
doubling sum (1 - X^n)B(X) + (1 + X^n)C(X^2), the proper weight-16
family on orders 14m, and the parameter list predicted by the relative
difference set construction.
"""

from __future__ import annotations

import math

from .groupring import (
    GroupRingElement,
    multiply,
    conjugate,
    proper_decomposition,
    verify,
)
from .numbertheory import crt_combine, is_prime_power

# the weight-4 matrix of order 7: -1 + X + X^2 + X^4
CW7_4 = GroupRingElement(7, (-1, 1, 1, 0, 1, 0, 0))


def _weight_of(a: GroupRingElement) -> int:
    prod = multiply(a, conjugate(a))
    if any(prod.coeffs[1:]):
        raise ValueError("input does not verify as a weighing matrix")
    return prod.coeffs[0]


def multiple(b: GroupRingElement, d: int) -> GroupRingElement:
    """B(X^d) on Z_{d * order}: same weight, support spread onto dZ."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    n = b.order * d
    coeffs = [0] * n
    for i, c in enumerate(b.coeffs):
        coeffs[d * i] = c
    return GroupRingElement(n, tuple(coeffs))


def kronecker(a1: GroupRingElement, a2: GroupRingElement) -> GroupRingElement:
    """Product matrix on Z_{n1*n2} for coprime orders: the coefficient at
    the CRT image of (i, j) is a1[i] * a2[j].  Weights multiply."""
    n1, n2 = a1.order, a2.order
    if math.gcd(n1, n2) != 1:
        raise ValueError(f"orders {n1} and {n2} are not coprime")
    k1, k2 = _weight_of(a1), _weight_of(a2)
    coeffs = [0] * (n1 * n2)
    for i, c1 in enumerate(a1.coeffs):
        if not c1:
            continue
        for j, c2 in enumerate(a2.coeffs):
            if c2:
                coeffs[crt_combine(n1, n2, i, j)] = c1 * c2
    out = GroupRingElement(n1 * n2, tuple(coeffs))
    if not verify(out, k1 * k2, a1.max_abs_coeff() * a2.max_abs_coeff()):
        raise AssertionError("kronecker product failed verification")
    return out


def type_ii(b: GroupRingElement, c: GroupRingElement) -> GroupRingElement:
    """(1 - X^n) B(X) + (1 + X^n) C(X^2) on Z_2n, weight 4k.

    B must be a weight-k matrix of order 2n and C one of order n; the
    supports of B, X^n B, C(X^2), X^n C(X^2) must be pairwise disjoint.
    """
    if b.order != 2 * c.order:
        raise ValueError(f"order of B ({b.order}) must be twice order of C ({c.order})")
    n = c.order
    n2 = b.order
    kb, kc = _weight_of(b), _weight_of(c)
    if kb != kc:
        raise ValueError(f"weights differ: {kb} vs {kc}")
    parts = {
        "B": set(b.support),
        "X^n B": {(i + n) % n2 for i in b.support},
        "C(X^2)": {(2 * i) % n2 for i in c.support},
        "X^n C(X^2)": {(2 * i + n) % n2 for i in c.support},
    }
    names = list(parts)
    for x in range(len(names)):
        for y in range(x + 1, len(names)):
            overlap = parts[names[x]] & parts[names[y]]
            if overlap:
                raise ValueError(
                    f"supports of {names[x]} and {names[y]} overlap at {sorted(overlap)}"
                )
    coeffs = [0] * n2
    for i, v in enumerate(b.coeffs):
        if v:
            coeffs[i] += v
            coeffs[(i + n) % n2] -= v
    for i, v in enumerate(c.coeffs):
        if v:
            coeffs[(2 * i) % n2] += v
            coeffs[(2 * i + n) % n2] += v
    out = GroupRingElement(n2, tuple(coeffs))
    if not verify(out, 4 * kb, 1):
        raise AssertionError("doubling construction failed verification")
    return out


def cw14m_family(m: int) -> GroupRingElement:
    """The proper weight-16 matrix of order 14m for m >= 2:

        (1 - X^{7m}) C(X^{2m}) + (1 + X^{7m}) X C(X^m)

    with C the weight-4 matrix of order 7.  The four summands have
    disjoint supports for m >= 2, and the result is proper because the
    exponents 0, 1, 2m, 7m can share no common translate residue.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    n = 14 * m
    coeffs = [0] * n
    for i, v in enumerate(CW7_4.coeffs):
        if not v:
            continue
        coeffs[(2 * m * i) % n] += v
        coeffs[(2 * m * i + 7 * m) % n] -= v
        coeffs[(m * i + 1) % n] += v
        coeffs[(m * i + 1 + 7 * m) % n] += v
    out = GroupRingElement(n, tuple(coeffs))
    if not verify(out, 16, 1):
        raise AssertionError(f"order-{n} family element failed verification")
    if proper_decomposition(out) is not None:
        raise AssertionError(f"order-{n} family element is not proper")
    return out


def prime_powers_up_to(q_max: int) -> list[int]:
    return [q for q in range(2, q_max + 1) if is_prime_power(q)]


def rds_proper_parameters(q_max: int) -> list[tuple[int, int]]:
    """Parameters (order, weight) of proper matrices guaranteed by cyclic
    relative difference sets: ((q^3 - 1)/n, q^2) for prime powers q and
    divisors n of q - 1 (n > 1 required when q is odd).  Existence
    metadata only; no witness is constructed."""
    out = []
    for q in prime_powers_up_to(q_max):
        divisors = [n for n in range(1, q) if (q - 1) % n == 0]
        if q % 2 == 1:
            divisors = [n for n in divisors if n > 1]
        for n in divisors:
            out.append(((q**3 - 1) // n, q * q))
    return sorted(set(out))
