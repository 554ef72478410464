"""Elementary number theory: pentagonal numbers, valuations, symbols.

Everything here works on exact Python integers (or Fractions where noted).
Inputs are desk scale; factorization is plain trial division.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

MAX_PENTAGONAL_INDEX = 1 << 30
MAX_SQUAREFREE_INPUT = 1 << 62

# deterministic Miller-Rabin witnesses, valid far past 64-bit inputs
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def pentagonal(x: int) -> int:
    """Generalized pentagonal number (3x^2 - x) / 2 for any integer x."""
    if abs(x) > MAX_PENTAGONAL_INDEX:
        raise ValueError(f"pentagonal index out of range: {x}")
    return (3 * x * x - x) // 2


def padic_valuation(p: int, x: int) -> int:
    """Largest k with p^k dividing x. Undefined (raises) for x = 0."""
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2:
        raise ValueError(f"not a valid prime base: {p}")
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for inputs this package sees."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...), by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 7
    # 2/4-step wheel skipping multiples of 2 and 3
    step = 4
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def squarefree_part(y: int) -> int:
    """The squarefree kernel of y > 0: divide out the largest square."""
    if not 0 < y <= MAX_SQUAREFREE_INPUT:
        raise ValueError(f"squarefree_part input out of range: {y}")
    out = 1
    for p, e in factorize(y):
        if e % 2:
            out *= p
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, values in {-1, 0, +1}."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre requires an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _as_square_int(x) -> int:
    """Collapse an int or Fraction to an integer in the same square class."""
    if isinstance(x, Fraction):
        return x.numerator * x.denominator
    return int(x)


def _two_adic_split(x: int) -> tuple[int, int]:
    v = padic_valuation(2, x)
    return v, x // (1 << v)


def hilbert_symbol(alpha, beta, p) -> int:
    """Hilbert symbol (alpha, beta)_p in {-1, +1}.

    alpha and beta are nonzero ints or Fractions; p is a prime or math.inf
    (None also selects the real place). Closed formulas: the odd-p case via
    Legendre symbols, p=2 via the mod-8 unit characters.
    """
    a = _as_square_int(alpha)
    b = _as_square_int(beta)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol arguments must be nonzero")
    if p is None or p == math.inf:
        return -1 if (a < 0 and b < 0) else 1
    if p == 2:
        va, ua = _two_adic_split(a)
        vb, ub = _two_adic_split(b)
        eps_a = ((ua - 1) // 2) % 2
        eps_b = ((ub - 1) // 2) % 2
        omega_a = ((ua * ua - 1) // 8) % 2
        omega_b = ((ub * ub - 1) // 8) % 2
        exponent = eps_a * eps_b + va * omega_b + vb * omega_a
        return -1 if exponent % 2 else 1
    if not is_prime(p):
        raise ValueError(f"hilbert symbol place must be prime or inf, got {p}")
    va = padic_valuation(p, a)
    vb = padic_valuation(p, b)
    ua = a // p**va
    ub = b // p**vb
    sign = 1
    if (va * vb) % 2 and (p - 1) // 2 % 2:
        sign = -sign
    if vb % 2:
        sign *= legendre(ua, p)
    if va % 2:
        sign *= legendre(ub, p)
    return sign
