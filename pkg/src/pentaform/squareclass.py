"""Square classes of Q_p modulo squares, and subgroups of them.

A class is (valuation parity, unit tag). Odd p has 4 classes (unit tag is the
Legendre symbol of the unit part); p = 2 has 8 (unit tag is the unit mod 8).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numth import is_prime, legendre, padic_valuation


@lru_cache(maxsize=None)
def _least_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


@dataclass(frozen=True, order=True)
class SquareClass:
    """One square class of Q_p^x / (Q_p^x)^2."""

    p: int
    val_parity: int
    unit_tag: int

    def __post_init__(self):
        if self.val_parity not in (0, 1):
            raise ValueError(f"bad valuation parity {self.val_parity}")
        if self.p == 2:
            if self.unit_tag not in (1, 3, 5, 7):
                raise ValueError(f"bad dyadic unit tag {self.unit_tag}")
        elif self.unit_tag not in (1, -1):
            raise ValueError(f"bad unit tag {self.unit_tag} for p={self.p}")

    def mul(self, other: "SquareClass") -> "SquareClass":
        if self.p != other.p:
            raise ValueError("cannot multiply classes at different primes")
        parity = self.val_parity ^ other.val_parity
        if self.p == 2:
            tag = (self.unit_tag * other.unit_tag) % 8
        else:
            tag = self.unit_tag * other.unit_tag
        return SquareClass(self.p, parity, tag)

    def canonical_int(self) -> int:
        """A small integer representative, stable across runs."""
        if self.p == 2:
            unit = {1: 1, 3: -5, 5: 5, 7: -1}[self.unit_tag]
            return unit * (2 if self.val_parity else 1)
        unit = 1 if self.unit_tag == 1 else _least_nonresidue(self.p)
        return unit * (self.p if self.val_parity else 1)

    def __repr__(self) -> str:
        return f"SquareClass(p={self.p}, rep={self.canonical_int()})"


def identity_class(p: int) -> SquareClass:
    return SquareClass(p, 0, 1)


def class_of(p: int, x) -> SquareClass:
    """Square class of a nonzero int or Fraction at the prime p."""
    if p == 2 or is_prime(p):
        pass
    else:
        raise ValueError(f"not a prime: {p}")
    if isinstance(x, Fraction):
        x = x.numerator * x.denominator
    else:
        x = int(x)
    if x == 0:
        raise ValueError("0 has no square class")
    v = padic_valuation(p, x)
    unit = x // p**v
    if p == 2:
        return SquareClass(2, v % 2, unit % 8)
    return SquareClass(p, v % 2, legendre(unit, p))


@dataclass(frozen=True)
class SquareClassSet:
    """A set of square classes at one prime, optionally a known subgroup."""

    p: int
    classes: frozenset
    is_subgroup: bool = False

    def __contains__(self, cls: SquareClass) -> bool:
        return cls in self.classes

    def issubset(self, other: "SquareClassSet") -> bool:
        if self.p != other.p:
            raise ValueError("sets live at different primes")
        return self.classes <= other.classes

    def union(self, other: "SquareClassSet") -> "SquareClassSet":
        if self.p != other.p:
            raise ValueError("sets live at different primes")
        return SquareClassSet(self.p, self.classes | other.classes)

    def scale(self, cls: SquareClass) -> "SquareClassSet":
        """The coset cls * self."""
        return SquareClassSet(self.p, frozenset(cls.mul(c) for c in self.classes))

    def reps(self) -> list[int]:
        return sorted(c.canonical_int() for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __repr__(self) -> str:
        return f"SquareClassSet(p={self.p}, reps={self.reps()})"


def all_classes(p: int) -> SquareClassSet:
    """The full group: 8 classes at p=2, 4 at odd p."""
    tags = (1, 3, 5, 7) if p == 2 else (1, -1)
    members = frozenset(
        SquareClass(p, parity, tag) for parity in (0, 1) for tag in tags
    )
    return SquareClassSet(p, members, is_subgroup=True)


def unit_classes(p: int) -> SquareClassSet:
    """The subgroup of classes with even valuation."""
    tags = (1, 3, 5, 7) if p == 2 else (1, -1)
    members = frozenset(SquareClass(p, 0, tag) for tag in tags)
    return SquareClassSet(p, members, is_subgroup=True)


def subgroup_generate(p: int, gens) -> SquareClassSet:
    """Multiplicative closure of the given classes, including the identity."""
    closure = {identity_class(p)}
    frontier = [identity_class(p)]
    gens = list(gens)
    for g in gens:
        if g.p != p:
            raise ValueError("generator at the wrong prime")
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = cur.mul(g)
            if nxt not in closure:
                closure.add(nxt)
                frontier.append(nxt)
    return SquareClassSet(p, frozenset(closure), is_subgroup=True)


@lru_cache(maxsize=None)
def norm_group(p: int, d: int) -> SquareClassSet:
    """Square classes of nonzero values of x^2 + d*y^2 over Q_p.

    These are exactly the norms from Q_p(sqrt(-d)); if -d is a square the
    result is the full group. Computed by direct value enumeration, so it is
    independent of the Hilbert-symbol route (tests compare the two).
    """
    if d <= 0:
        raise ValueError("positive d only")
    found = set()
    bound = 64
    for x in range(bound + 1):
        for y in range(bound + 1):
            v = x * x + d * y * y
            if v == 0:
                continue
            found.add(class_of(p, v))
    grp = subgroup_generate(p, found)
    return grp
