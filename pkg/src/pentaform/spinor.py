"""Spinor-norm containment tests at p = 2 and p = 3.

A squarefree target t coprime to 6 escapes representation on a spinor-genus
level only when, at every prime p, the spinor norms of the completed
lattice's rotations land inside the norm group of Q_p(sqrt(-D)), where D in
{1,2,3,6} is pinned down by the parities of r+s
and of the 3-adic valuation of abc. This module evaluates those containments
directly from square-class arithmetic, independently of the congruence tables
in the classifier, so the two routes can be cross-checked against each other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .lattice import (
    EvenBinaryType,
    FormParams,
    JordanSplitting,
    dyadic_even_binary_type,
    jordan_triadic,
)
from .local import no_local_obstruction
from .numth import factorize, hilbert_symbol, legendre, padic_valuation, squarefree_part
from .squareclass import (
    SquareClass,
    SquareClassSet,
    all_classes,
    class_of,
    identity_class,
    norm_group,
    subgroup_generate,
    unit_classes,
)


class UnsupportedRegime(Exception):
    """A configuration with no worked-out containment rule."""


class Containment(enum.Enum):
    CONTAINED = "contained"
    NOT_CONTAINED = "not_contained"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class ContainmentVerdict:
    # computed_group is absent when a shape argument settles the status
    # without producing the group itself
    status: Containment
    computed_group: Optional[SquareClassSet] = None


def exceptional_field_disc(params: FormParams) -> int:
    """D in {1,2,3,6} with Q(sqrt(-D)) the field attached to any candidate
    exceptional target.

    Any admissible target t is coprime to 6 and squarefree-equivalent to the
    prime-to-3 part of sf(abc), so -t*disc reduces to -2^((r+s) mod 2) times
    3^(nu_3(abc) mod 2) modulo squares. Mode choices for t do not move D.
    """
    d = 1
    if (params.r + params.s) % 2 == 1:
        d *= 2
    if padic_valuation(3, params.abc) % 2 == 1:
        d *= 3
    return d


def _kernel_2(d: int) -> SquareClassSet:
    """{gamma : (gamma, d)_2 = 1} over all eight square classes."""
    kept = frozenset(
        cls for cls in all_classes(2).classes
        if hilbert_symbol(cls.canonical_int(), d, 2) == 1
    )
    return SquareClassSet(p=2, classes=kept, is_subgroup=True)


def theta_binary_2adic(m: int, w: int) -> SquareClassSet:
    """Spinor norm group of the binary 2-adic lattice <1, 2^m w>, w odd.

    The split-scale table:
      m in {1,3} -> kernel of (., -2w)_2
      m = 2      -> unit classes gamma with (gamma, -w)_2 = 1
      m = 4      -> {1, 5, w, 5w}
      m >= 5     -> {1, class(2^m w)}
    """
    if w % 2 == 0:
        raise ValueError("w must be odd")
    if m == 0:
        raise UnsupportedRegime("unimodular binary block has no table entry")
    if m < 0:
        raise ValueError("scale gap must be nonnegative")
    if m in (1, 3):
        return _kernel_2(-2 * w)
    if m == 2:
        kept = frozenset(
            cls for cls in unit_classes(2).classes
            if hilbert_symbol(cls.canonical_int(), -w, 2) == 1
        )
        return SquareClassSet(p=2, classes=kept, is_subgroup=True)
    if m == 4:
        return SquareClassSet(
            p=2,
            classes=frozenset(
                {
                    identity_class(2),
                    class_of(2, 5),
                    class_of(2, w),
                    class_of(2, 5 * w),
                }
            ),
            is_subgroup=True,
        )
    return SquareClassSet(
        p=2,
        classes=frozenset({identity_class(2), class_of(2, (1 << m) * w)}),
        is_subgroup=True,
    )


def _verdict_from_group(group: SquareClassSet, target: SquareClassSet) -> ContainmentVerdict:
    status = Containment.CONTAINED if group.issubset(target) else Containment.NOT_CONTAINED
    return ContainmentVerdict(status=status, computed_group=group)


def _dyadic_theta_balanced(params: FormParams, d: int) -> ContainmentVerdict:
    # shape <1> + 2^(r+2) w <1, abc*eps> with w = b(a + 2^r c)
    a, b, c, r = params.a, params.b, params.c, params.r
    inner = params.abc * params.eps
    w = b * (a + (1 << r) * c)
    if d == 3:
        # unramified field: containment needs a single valuation parity of
        # admissible values across components; the unimodular rank-1 block is
        # even, the scaled binary is pure exactly when <1, abc*eps> only
        # admits unit values, which forces abc*eps = 3 mod 4
        pure_binary = inner % 4 == 3
        contained = pure_binary and r % 2 == 0
        return ContainmentVerdict(
            Containment.CONTAINED if contained else Containment.NOT_CONTAINED
        )
    if d == 1:
        # ramified field: trichotomy on the split shape; the good branch needs
        # scale gap >= 4, an improperly-diagonalizable inner binary
        # (determinant 1 mod 4) and a trivial Hilbert pairing of the scaled
        # block against -abc*eps; otherwise theta is the full group or the
        # unit group, neither inside the norm group
        good = (
            r >= 2
            and inner % 4 == 1
            and hilbert_symbol((1 << (r + 2)) * w, -inner, 2) == 1
        )
        if not good:
            return ContainmentVerdict(Containment.NOT_CONTAINED)
        return _verdict_from_group(_kernel_2(-inner), norm_group(2, d))
    raise UnsupportedRegime(f"r = s > 0 cannot meet D = {d}")


def _dyadic_theta_unscaled(params: FormParams, d: int) -> ContainmentVerdict:
    kind = dyadic_even_binary_type(params)
    if d == 3:
        # even-norm binary block: the hyperbolic shape mixes valuation
        # parities within one component, the other shape is purely odd but
        # sits next to the even rank-1 block; containment fails either way
        del kind
        return ContainmentVerdict(Containment.NOT_CONTAINED)
    if d == 1:
        # theta is the full group or the unit-class group; the unit classes
        # already stick out of the norm group of Q_2(i)
        return ContainmentVerdict(Containment.NOT_CONTAINED)
    raise UnsupportedRegime(f"r = s = 0 cannot meet D = {d}")


def dyadic_theta_contained(params: FormParams, d: int) -> ContainmentVerdict:
    """Decide whether the 2-adic spinor norm group of the lattice lies
    inside the norm group of Q_2(sqrt(-d))."""
    if d not in (1, 2, 3, 6):
        raise ValueError("D must be one of 1, 2, 3, 6")
    r, s = params.r, params.s
    if r == 0 and s > 0:
        raise ValueError("the r = 0 < s regime has no containment rule")
    if r == s == 0:
        return _dyadic_theta_unscaled(params, d)
    if r == s:
        return _dyadic_theta_balanced(params, d)

    target = norm_group(2, d)
    if (r == 2 and s - r in (1, 3)) or (r == 1 and s == 2):
        # close scale gaps collapse the two-block analysis; theta is everything
        return _verdict_from_group(all_classes(2), target)

    tail = params.a + (1 << s) * params.c
    w_u = params.b * tail
    w_w = params.abc * params.eps  # times tail^2, dropped as a square
    theta_u = theta_binary_2adic(r + 2, w_u)
    theta_w = theta_binary_2adic(s - r, w_w)
    coset = class_of(2, (1 << (r + 2)) * w_u)
    gens = set(theta_u.classes) | {coset.mul(x) for x in theta_w.classes}
    group = subgroup_generate(2, gens)
    return _verdict_from_group(group, target)


def triadic_theta_contained(splitting: JordanSplitting, d: int) -> ContainmentVerdict:
    """Decide whether the 3-adic spinor norm group, read off a Jordan
    splitting at 3, lies inside the relevant target group.

    The group is generated by pairwise products 3^(i_k + i_l) u_k u_l of the
    diagonal entries, plus every unit class as soon as some component has
    rank >= 2. For D in {3,6} the target is the honest norm group of the
    ramified extension; for D in {1,2} the criterion is the even-valuation
    subgroup (for D = 2 the extension of Q_3 is trivial, and the effective
    obstruction is the shape condition, equivalent to this containment).
    """
    if splitting.p != 3:
        raise ValueError("expected a splitting at p = 3")
    if d not in (1, 2, 3, 6):
        raise ValueError("D must be one of 1, 2, 3, 6")
    target = norm_group(3, d) if d in (3, 6) else unit_classes(3)

    gens: set[SquareClass] = set()
    if any(comp.rank >= 2 for comp in splitting.components):
        gens |= set(unit_classes(3).classes)
    diag = splitting.diagonal
    for k in range(len(diag)):
        for l in range(k + 1, len(diag)):
            scale = (diag[k][0] + diag[l][0]) % 2
            tag = diag[k][1] * diag[l][1]
            gens.add(SquareClass(p=3, val_parity=scale, unit_tag=tag))
    group = subgroup_generate(3, gens)
    return _verdict_from_group(group, target)


class SpinorOutcome(enum.Enum):
    IS_EXCEPTION = "is_exception"
    NOT_EXCEPTION = "not_exception"
    UNSUPPORTED = "unsupported"


def spinor_exception_check(params: FormParams) -> SpinorOutcome:
    """Containment at every relevant prime: 2, 3, and odd primes carrying an
    odd power of a coefficient. Requires an unobstructed form."""
    report = no_local_obstruction(params)
    if report.obstructed:
        raise ValueError(
            f"local obstruction at {report.obstructed_primes}; "
            "spinor analysis needs an unobstructed form"
        )
    d = exceptional_field_disc(params)

    for p in _odd_exceptional_primes(params):
        if legendre(-d, p) != 1:
            return SpinorOutcome.NOT_EXCEPTION

    triadic = triadic_theta_contained(jordan_triadic(params), d)
    if triadic.status is Containment.NOT_CONTAINED:
        return SpinorOutcome.NOT_EXCEPTION
    if triadic.status is Containment.UNSUPPORTED:
        return SpinorOutcome.UNSUPPORTED

    try:
        dyadic = dyadic_theta_contained(params, d)
    except UnsupportedRegime:
        return SpinorOutcome.UNSUPPORTED
    if dyadic.status is Containment.NOT_CONTAINED:
        return SpinorOutcome.NOT_EXCEPTION
    if dyadic.status is Containment.UNSUPPORTED:
        return SpinorOutcome.UNSUPPORTED
    return SpinorOutcome.IS_EXCEPTION


def _odd_exceptional_primes(params: FormParams) -> list[int]:
    return [p for p, _ in factorize(squarefree_part(params.abc)) if p >= 5]
