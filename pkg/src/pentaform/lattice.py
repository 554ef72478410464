"""Form parameters and lattice-side computations.

The input family is F(x,y,z) = a*P5(x) + 2^r*b*P5(y) + 2^s*c*P5(z) with a, b, c
odd positive, gcd(a,b,c) = 1, 0 <= r <= s, and eps = a + 2^r*b + 2^s*c coprime
to 6. Representing n by F is the same as representing 24n + eps by the integral
quadratic lattice carried by gram_matrix, whose odd-prime structure is read off
through Jordan decompositions and whose 2-adic structure has the closed
diagonal/binary shapes implemented at the bottom of this module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numth import legendre, padic_valuation

COEFFICIENT_CAP = 10**6
EXPONENT_CAP = 40


class ParamViolation(enum.Enum):
    EVEN_COEFFICIENT = "even_coefficient"
    NONPOSITIVE_COEFFICIENT = "nonpositive_coefficient"
    GCD_VIOLATION = "gcd_violation"
    EPSILON_DIVISIBLE_BY_2_OR_3 = "epsilon_divisible_by_2_or_3"
    NEGATIVE_EXPONENT = "negative_exponent"
    CAP_EXCEEDED = "cap_exceeded"


class ParamError(ValueError):
    """Raised by make_params; carries the violation kind."""

    def __init__(self, violation: ParamViolation, message: str):
        super().__init__(message)
        self.violation = violation


@dataclass(frozen=True, order=True)
class FormParams:
    """Validated, normalized (r <= s) coefficients. Build via make_params."""

    a: int
    b: int
    c: int
    r: int
    s: int

    @property
    def eps(self) -> int:
        return self.a + (1 << self.r) * self.b + (1 << self.s) * self.c

    @property
    def abc(self) -> int:
        return self.a * self.b * self.c

    @property
    def disc(self) -> int:
        """Discriminant 6^4 * 2^(r+s) * abc of the associated lattice."""
        return 1296 * (1 << (self.r + self.s)) * self.abc

    def coefficients(self) -> tuple[int, int, int]:
        """The three quadratic coefficients (a, 2^r b, 2^s c)."""
        return (self.a, (1 << self.r) * self.b, (1 << self.s) * self.c)


def structural_checks(a: int, b: int, c: int, r: int, s: int) -> None:
    """Raise ParamError for any violation not involving eps."""
    for v in (a, b, c):
        if v <= 0:
            raise ParamError(
                ParamViolation.NONPOSITIVE_COEFFICIENT,
                f"coefficients must be positive, got {(a, b, c)}",
            )
        if v % 2 == 0:
            raise ParamError(
                ParamViolation.EVEN_COEFFICIENT,
                f"coefficients must be odd, got {(a, b, c)}",
            )
    if r < 0 or s < 0:
        raise ParamError(
            ParamViolation.NEGATIVE_EXPONENT, f"exponents must be >= 0, got {(r, s)}"
        )
    if a > COEFFICIENT_CAP or b > COEFFICIENT_CAP or c > COEFFICIENT_CAP:
        raise ParamError(
            ParamViolation.CAP_EXCEEDED, f"coefficient cap is {COEFFICIENT_CAP}"
        )
    if r > EXPONENT_CAP or s > EXPONENT_CAP:
        raise ParamError(ParamViolation.CAP_EXCEEDED, f"exponent cap is {EXPONENT_CAP}")
    if math.gcd(a, math.gcd(b, c)) != 1:
        raise ParamError(
            ParamViolation.GCD_VIOLATION, f"gcd(a, b, c) must be 1, got {(a, b, c)}"
        )


def normalize(a: int, b: int, c: int, r: int, s: int) -> FormParams:
    """FormParams with the scaled pair swapped so that r <= s. No validation;
    combine with structural_checks when the input is untrusted."""
    if r > s:
        b, c, r, s = c, b, s, r
    return FormParams(a, b, c, r, s)


def make_params(a: int, b: int, c: int, r: int, s: int) -> FormParams:
    """Validate and normalize: swaps the scaled pair so that r <= s."""
    structural_checks(a, b, c, r, s)
    params = normalize(a, b, c, r, s)
    eps = params.eps
    if eps % 2 == 0 or eps % 3 == 0:
        raise ParamError(
            ParamViolation.EPSILON_DIVISIBLE_BY_2_OR_3,
            f"a + 2^r b + 2^s c = {eps} must be coprime to 6",
        )
    return params


def gram_matrix(params: FormParams) -> tuple[tuple[int, int, int], ...]:
    """Gram matrix of the rank-3 lattice whose values on the right coset are
    exactly the integers 24n + eps hit by 24F + eps."""
    a, rb, sc = params.coefficients()
    return (
        (36 * a, 0, -6 * a),
        (0, 36 * rb, -6 * rb),
        (-6 * a, -6 * rb, params.eps),
    )


def det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class JordanComponent:
    """One p^scale-modular block: rank and unit-part Legendre data.

    disc is the Legendre symbol of the product of unit parts; for rank 1 it is
    the unit tag of the single diagonal entry.
    """

    scale: int
    rank: int
    disc: int


@dataclass(frozen=True)
class JordanSplitting:
    p: int
    components: tuple
    # full diagonal as (scale, legendre-of-unit) pairs, sorted by scale;
    # per-entry tags are basis-dependent when scales repeat, invariant otherwise
    diagonal: tuple

    def scales(self) -> tuple:
        return tuple(c.scale for c in self.components)

    def scale_rank_pairs(self) -> tuple:
        return tuple((c.scale, c.rank) for c in self.components)

    def total_valuation(self) -> int:
        return sum(c.scale * c.rank for c in self.components)


def _frac_valuation(p: int, x: Fraction) -> int:
    return padic_valuation(p, x.numerator) - padic_valuation(p, x.denominator)


def _frac_unit_legendre(p: int, x: Fraction) -> int:
    num = x.numerator // p ** padic_valuation(p, x.numerator)
    den = x.denominator // p ** padic_valuation(p, x.denominator)
    return legendre(num, p) * legendre(den, p)


def jordan_odd(p: int, gram) -> JordanSplitting:
    """Jordan decomposition of a symmetric integer matrix over Z_p, p odd.

    Diagonalizes with Z_p-unimodular row/column operations: pull a minimal
    valuation entry onto the diagonal (adding or subtracting a row and column,
    one of which must preserve the minimum at odd p), clear its row and column,
    recurse. Exact Fraction arithmetic throughout.
    """
    if p == 2:
        raise ValueError("odd primes only")
    n = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    entries = []

    def val_at(i, j):
        return _frac_valuation(p, a[i][j])

    while active:
        best = None
        for ii, i in enumerate(active):
            for j in active[ii:]:
                if a[i][j] != 0:
                    v = val_at(i, j)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise SingularMatrixError("matrix is singular over Q")
        m, i, j = best
        diag_idx = None
        for k in active:
            if a[k][k] != 0 and val_at(k, k) == m:
                diag_idx = k
                break
        if diag_idx is None:
            # bring the off-diagonal minimum onto the diagonal; at odd p one
            # of the two signs keeps valuation m on the new diagonal entry
            for sign in (1, -1):
                cand = a[i][i] + 2 * sign * a[i][j] + a[j][j]
                if cand != 0 and _frac_valuation(p, cand) == m:
                    for col in range(n):
                        a[i][col] += sign * a[j][col]
                    for row in range(n):
                        a[row][i] += sign * a[row][j]
                    diag_idx = i
                    break
            if diag_idx is None:
                raise SingularMatrixError("diagonalization failed")
        k = diag_idx
        d = a[k][k]
        for l in active:
            if l == k or a[l][k] == 0:
                continue
            f = a[l][k] / d
            for col in range(n):
                a[l][col] -= f * a[k][col]
            for row in range(n):
                a[row][l] -= f * a[row][k]
        entries.append(d)
        active.remove(k)

    tagged = sorted(
        (_frac_valuation(p, d), _frac_unit_legendre(p, d)) for d in entries
    )
    components = []
    for scale, tag in tagged:
        if components and components[-1][0] == scale:
            prev_scale, prev_rank, prev_disc = components[-1]
            components[-1] = (prev_scale, prev_rank + 1, prev_disc * tag)
        else:
            components.append((scale, 1, tag))
    comps = tuple(JordanComponent(sc, rk, dc) for sc, rk, dc in components)
    return JordanSplitting(p=p, components=comps, diagonal=tuple(tagged))


# ---------------------------------------------------------------------------
# closed 2-adic shapes


def dyadic_diagonal(params: FormParams) -> tuple[int, int, int]:
    """Diagonalized 2-adic form for r >= 1, with exact odd cofactors.

    The entries are (eps, 2^(r+2) * eps * b * (a + 2^s c),
    2^(s+2) * a * c * (a + 2^s c)); callers reduce the odd parts mod squares.
    """
    if params.r < 1:
        raise ValueError("dyadic diagonal shape requires r >= 1")
    a, b, c, r, s = params.a, params.b, params.c, params.r, params.s
    eps = params.eps
    tail = a + (1 << s) * c
    return (eps, (1 << (r + 2)) * eps * b * tail, (1 << (s + 2)) * a * c * tail)


class EvenBinaryType(enum.Enum):
    """Shape of the even binary block in the r = s = 0 regime."""

    PLUS = "even_binary_a"  # gram ((2, 1), (1, 2))
    HYPERBOLIC = "even_binary_h"  # gram ((0, 1), (1, 0))


def dyadic_even_binary_type(params: FormParams) -> EvenBinaryType:
    """For r = s = 0 the 2-adic form is <eps> plus 4*eps times an even binary
    block; which block depends on whether all three coefficients agree mod 4.

    The three odd coefficients always contain a pair congruent mod 4; the
    symmetric roles are permuted so that pair sits in the (b, c) slots.
    """
    if params.r != 0 or params.s != 0:
        raise ValueError("even binary shape applies only when r = s = 0")
    a, b, c = params.a, params.b, params.c
    if (b - c) % 4 != 0:
        if (a - c) % 4 == 0:
            a, b = b, a
        else:
            a, c = c, a
    if (a - b) % 4 == 0:
        return EvenBinaryType.PLUS
    return EvenBinaryType.HYPERBOLIC


class EvenBinaryValues(enum.Enum):
    """Value set descriptors for the two even binary blocks over Z_2."""

    ALL_OF_2Z2 = "all_even"
    ZERO_OR_ODD_VALUATION = "zero_or_odd_valuation"

    def contains(self, x: int) -> bool:
        if self is EvenBinaryValues.ALL_OF_2Z2:
            return x % 2 == 0
        if x == 0:
            return True
        return padic_valuation(2, x) % 2 == 1


def even_binary_values(kind: EvenBinaryType) -> EvenBinaryValues:
    """Values of x^2+xy+y^2 scaled by 2 fill {0} and the odd-valuation part of
    2*Z_2; values of 2xy fill all of 2*Z_2."""
    if kind is EvenBinaryType.PLUS:
        return EvenBinaryValues.ZERO_OR_ODD_VALUATION
    return EvenBinaryValues.ALL_OF_2Z2


@lru_cache(maxsize=4096)
def jordan_triadic(params: FormParams) -> JordanSplitting:
    """Cached Jordan splitting of the full lattice at p = 3."""
    return jordan_odd(3, gram_matrix(params))
