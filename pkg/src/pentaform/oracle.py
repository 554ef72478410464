"""Brute-force ground truth for representability questions.

Everything reduces to the identity

    24 * (a*P5(x) + 2^r*b*P5(y) + 2^s*c*P5(z)) + eps
        = a*(6x-1)^2 + 2^r*b*(6y-1)^2 + 2^s*c*(6z-1)^2,

which turns membership questions about generalized pentagonal sums into
bounded searches over squares of integers congruent to +-1 mod 6. Single
values go through solve_admissible; ranges go through a bitmap sieve built
with big-integer shifted ORs, with exception lists and dyadic window counts
layered on top for the empirical almost-universality heuristic.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .lattice import FormParams
from .numth import pentagonal

# Default sieve budget matches a bitmap over 0..10^8; the env var below
# raises or lowers it (in bytes).
BITMAP_CAP_ENV = "PENTAFORM_MAX_BITMAP"
DEFAULT_BITMAP_CAP_BYTES = 10**8 // 8 + 1

MAX_POINTWISE_TARGET = 1 << 40


class ResourceCapExceeded(RuntimeError):
    """A sieve request would exceed the bitmap memory budget."""


@dataclass(frozen=True)
class Witness:
    """Indices with a*P5(x) + 2^r*b*P5(y) + 2^s*c*P5(z) = n."""

    x: int
    y: int
    z: int

    def units(self) -> tuple[int, int, int]:
        """The odd units (6x-1, 6y-1, 6z-1), all +-1 mod 6."""
        return (6 * self.x - 1, 6 * self.y - 1, 6 * self.z - 1)


def _index_from_unit(u: int) -> int:
    # positive u = +-1 mod 6 maps to the index x with (6x-1)^2 = u^2
    if u % 6 == 5:
        return (u + 1) // 6
    if u % 6 == 1:
        return (1 - u) // 6
    raise ValueError(f"unit {u} is not +-1 mod 6")


def _admissible_units(coef: int, bound: int) -> Iterator[int]:
    # u = 1, 5, 7, 11, 13, ... while coef * u^2 <= bound
    u, step = 1, 4
    while coef * u * u <= bound:
        yield u
        u += step
        step = 6 - step


def solve_admissible(params: FormParams, target: int) -> Optional[Witness]:
    """A Witness for a*u^2 + 2^r*b*v^2 + 2^s*c*w^2 = target with u, v, w
    positive and +-1 mod 6, or None. Exhaustive for any target >= 0.

    The two largest quadratic coefficients drive the outer loops and the
    smallest is solved by a square test, keeping the search quadratic in
    sqrt(target) with the best available constant.
    """
    if target < 0:
        return None
    coefs = params.coefficients()
    order = sorted(range(3), key=lambda i: coefs[i], reverse=True)
    c0, c1, c2 = (coefs[i] for i in order)
    for u0 in _admissible_units(c0, target):
        rem0 = target - c0 * u0 * u0
        for u1 in _admissible_units(c1, rem0):
            q, rmod = divmod(rem0 - c1 * u1 * u1, c2)
            if rmod:
                continue
            u2 = math.isqrt(q)
            if u2 * u2 != q or u2 % 6 not in (1, 5):
                continue
            units = [0, 0, 0]
            units[order[0]], units[order[1]], units[order[2]] = u0, u1, u2
            return Witness(*(_index_from_unit(u) for u in units))
    return None


def is_representable(params: FormParams, n: int) -> Optional[Witness]:
    """Witness for F = n, or None after an exhaustive bounded search."""
    if n < 0 or 24 * n > MAX_POINTWISE_TARGET:
        raise ValueError(f"n must lie in [0, 2^40/24], got {n}")
    return solve_admissible(params, 24 * n + params.eps)


def _bitmap_cap_bytes() -> int:
    raw = os.environ.get(BITMAP_CAP_ENV)
    if raw is None:
        return DEFAULT_BITMAP_CAP_BYTES
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BITMAP_CAP_ENV} must be an integer byte count") from exc
    if cap <= 0:
        raise ValueError(f"{BITMAP_CAP_ENV} must be positive")
    return cap


def _scaled_pentagonal_values(coef: int, limit: int) -> list[int]:
    # coef * P5(k) over all integer k, ascending, while <= limit
    vals = [0]
    k = 1
    while True:
        lo = coef * pentagonal(k)  # (3k^2 - k)/2 side
        if lo > limit:
            break
        vals.append(lo)
        hi = coef * pentagonal(-k)  # (3k^2 + k)/2 side
        if hi <= limit:
            vals.append(hi)
        k += 1
    return sorted(vals)


def represented_bitmap(params: FormParams, limit: int) -> int:
    """Big integer whose bit n (0 <= n <= limit) is set iff F represents n.

    The smallest quadratic coefficient contributes a dense base bitmap; the
    other two are folded in by shifted ORs over their pentagonal value lists,
    so the work is proportional to the number of shifts, not to limit^2.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    needed = limit // 8 + 1
    cap = _bitmap_cap_bytes()
    if needed > cap:
        raise ResourceCapExceeded(
            f"bitmap of {needed} bytes exceeds cap of {cap} bytes"
            f" (override with {BITMAP_CAP_ENV})"
        )
    coefs = sorted(params.coefficients())
    base_vals = _scaled_pentagonal_values(coefs[0], limit)
    buf = bytearray(needed)
    for v in base_vals:
        buf[v >> 3] |= 1 << (v & 7)
    base = int.from_bytes(buf, "little")
    mask = (1 << (limit + 1)) - 1
    pair = 0
    for v in _scaled_pentagonal_values(coefs[1], limit):
        pair |= base << v
    pair &= mask
    out = 0
    for w in _scaled_pentagonal_values(coefs[2], limit):
        out |= pair << w
    return out & mask


def _missing_mask(params: FormParams, limit: int) -> int:
    # bits n in (0, limit] with no representation; bit 0 is never reported
    # since F(0,0,0) = 0
    full = (1 << (limit + 1)) - 2
    return ~represented_bitmap(params, limit) & full


def dyadic_windows(limit: int) -> list[tuple[int, int]]:
    """Half-open-from-below windows (limit >> (k+1), limit >> k] for k = 0, 1,
    ... down to (0, 1]; they partition (0, limit]."""
    out = []
    k = 0
    while (limit >> k) >= 1:
        out.append((limit >> (k + 1), limit >> k))
        k += 1
    return out


def _window_counts(missing: int, limit: int) -> tuple[tuple[int, int, int], ...]:
    counts = []
    for lo, hi in dyadic_windows(limit):
        window = ((1 << (hi + 1)) - (1 << (lo + 1))) & missing
        counts.append((lo, hi, window.bit_count()))
    return tuple(counts)


def _bit_indices(x: int) -> list[int]:
    out = []
    base = 0
    while x:
        chunk = x & 0xFFFFFFFFFFFFFFFF
        while chunk:
            low = chunk & -chunk
            out.append(base + low.bit_length() - 1)
            chunk ^= low
        x >>= 64
        base += 64
    return out


@dataclass(frozen=True)
class ExceptionReport:
    """Unrepresented n in (0, limit], with per-dyadic-window counts.

    window_counts rows are (lo, hi, count) for the window (lo, hi], ordered
    from the top window (limit/2, limit] downward.
    """

    limit: int
    exceptions: tuple[int, ...]
    window_counts: tuple[tuple[int, int, int], ...]

    @property
    def count(self) -> int:
        return len(self.exceptions)


def exceptions(params: FormParams, limit: int) -> ExceptionReport:
    """Exhaustive exception list up to limit, via the bitmap sieve."""
    missing = _missing_mask(params, limit)
    return ExceptionReport(
        limit=limit,
        exceptions=tuple(_bit_indices(missing)),
        window_counts=_window_counts(missing, limit),
    )


def exception_summary(
    params: FormParams, limit: int
) -> tuple[int, tuple[tuple[int, int, int], ...]]:
    """(total count, window counts) without materializing the exception list;
    what a bulk scan needs per tuple."""
    missing = _missing_mask(params, limit)
    return missing.bit_count(), _window_counts(missing, limit)


class EmpiricalVerdict(enum.Enum):
    LIKELY_AU = "likely_au"
    LIKELY_NOT_AU = "likely_not_au"
    INCONCLUSIVE = "inconclusive"


def verdict_from_windows(window_counts) -> EmpiricalVerdict:
    """Heuristic from the top dyadic windows: clean top two reads as likely
    almost universal, two of the top three occupied reads as likely not."""
    counts = [row[2] for row in window_counts[:3]]
    if len(counts) >= 2 and counts[0] == 0 and counts[1] == 0:
        return EmpiricalVerdict.LIKELY_AU
    if sum(1 for cnt in counts if cnt > 0) >= 2:
        return EmpiricalVerdict.LIKELY_NOT_AU
    return EmpiricalVerdict.INCONCLUSIVE


def empirical_verdict(params: FormParams, limit: int) -> EmpiricalVerdict:
    """Sieve up to limit (>= 10^4 so the windows mean something) and read the
    top windows."""
    if limit < 10**4:
        raise ValueError("empirical verdict needs limit >= 10^4")
    missing = _missing_mask(params, limit)
    return verdict_from_windows(_window_counts(missing, limit))


def unrepresented_residue_class(
    params: FormParams, p: int, limit: int, max_exponent: int = 3
) -> Optional[tuple[int, int]]:
    """Search for (p^k, c), k <= max_exponent, such that no n <= limit with
    n = c mod p^k is represented. Returns the smallest modulus found, or None.

    A class that survives this sieve is obstruction-grade evidence, not proof;
    callers pair it with the local lattice test.
    """
    represented = represented_bitmap(params, limit)
    hits = _bit_indices(represented)
    for k in range(1, max_exponent + 1):
        modulus = p**k
        seen = bytearray(modulus)
        remaining = modulus
        for n in hits:
            idx = n % modulus
            if not seen[idx]:
                seen[idx] = 1
                remaining -= 1
                if remaining == 0:
                    break
        if remaining > 0:
            for c in range(modulus):
                if not seen[c]:
                    return (modulus, c)
    return None
