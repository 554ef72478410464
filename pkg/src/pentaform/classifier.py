"""Decision procedure for almost universality of weighted pentagonal sums.

classify() runs the full pipeline: parameter validation, the local
obstruction test, dispatch on the exponent/3-divisibility pattern into one of
six closed regimes, and the four-part criterion (dyadic congruences, odd
prime splitting conditions, 3-adic splitting shape, and a bounded search for
the candidate exceptional square class). The dyadic/triadic congruence route
is cross-checked against the independent spinor-norm containment route on
every call; a disagreement raises CrossCheckMismatch instead of guessing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .lattice import (
    FormParams,
    ParamError,
    ParamViolation,
    jordan_triadic,
    normalize,
    structural_checks,
)
from .local import no_local_obstruction
from .numth import factorize, legendre, padic_valuation, squarefree_part
from .oracle import solve_admissible
from .spinor import SpinorOutcome, spinor_exception_check


class TheoremCase(enum.Enum):
    """Closed regimes, split by exponent pattern and by the parity of the
    3-adic valuation of abc where that changes the shape of the criterion."""

    EQUAL_EXPONENT_GAP = "A"  # 0 < r < s, s - r even
    ODD_GAP_EVEN_TRIADIC = "A1"  # 0 < r < s, s - r odd, v3(abc) even
    ODD_GAP_ODD_TRIADIC = "A2"  # 0 < r < s, s - r odd, v3(abc) odd
    BALANCED_ODD_TRIADIC = "B"  # 0 < r = s, v3(abc) odd
    BALANCED_EVEN_TRIADIC = "C"  # 0 < r = s, v3(abc) even
    UNSCALED = "D"  # r = s = 0
    UNCOVERED = "uncovered"  # r = 0 < s


def classify_case(params: FormParams) -> TheoremCase:
    """Partition of valid normalized parameters into regimes."""
    r, s = params.r, params.s
    if r == 0 and s == 0:
        return TheoremCase.UNSCALED
    if r == 0:
        return TheoremCase.UNCOVERED
    odd_triadic = padic_valuation(3, params.abc) % 2 == 1
    if r == s:
        if odd_triadic:
            return TheoremCase.BALANCED_ODD_TRIADIC
        return TheoremCase.BALANCED_EVEN_TRIADIC
    if (s - r) % 2 == 0:
        return TheoremCase.EQUAL_EXPONENT_GAP
    if odd_triadic:
        return TheoremCase.ODD_GAP_ODD_TRIADIC
    return TheoremCase.ODD_GAP_EVEN_TRIADIC


def tau(params: FormParams, literal: bool = False) -> int:
    """Candidate exceptional square class: the squarefree part of abc, with
    the factor 3 stripped when v3(abc) is odd (so the class is coprime to 6
    and can meet the progression eps mod 24). literal=True skips the
    stripping and reports the raw squarefree part."""
    sf = squarefree_part(params.abc)
    if literal:
        return sf
    if padic_valuation(3, params.abc) % 2 == 1:
        return sf // 3
    return sf


_CASES_WITH_CONDITIONS = (
    TheoremCase.EQUAL_EXPONENT_GAP,
    TheoremCase.ODD_GAP_EVEN_TRIADIC,
    TheoremCase.ODD_GAP_ODD_TRIADIC,
    TheoremCase.BALANCED_ODD_TRIADIC,
    TheoremCase.BALANCED_EVEN_TRIADIC,
)


def _require_condition_case(case: TheoremCase) -> None:
    if case not in _CASES_WITH_CONDITIONS:
        raise ValueError(f"no failure-condition table for case {case.value}")


def condition_i(params: FormParams, case: TheoremCase) -> bool:
    """Dyadic congruence part of the failure criterion for the given case."""
    _require_condition_case(case)
    a, b, c, r, s = params.a, params.b, params.c, params.r, params.s
    if case is TheoremCase.EQUAL_EXPONENT_GAP:
        if padic_valuation(3, params.abc) % 2 == 0:
            return r >= 2 and (a - b) % 4 == 0 and (b - c) % 4 == 0
        return r % 2 == 0 and s % 2 == 0
    if case is TheoremCase.ODD_GAP_EVEN_TRIADIC:
        if r == 1:
            if s < 4 or a * b % 8 != 1:
                return False
            t = c * (a + 2 * b) % 8
            return t == 1 if s == 4 else t in (1, 3)
        if r == 2:
            return False
        if a * b % 8 not in (1, 3):
            return False
        t = b * c % 8
        return t == 1 if s - r in (1, 3) else t in (1, 3)
    if case is TheoremCase.ODD_GAP_ODD_TRIADIC:
        if r == 1:
            if s < 4 or a * b % 8 != 3:
                return False
            t = c * (a + 2 * b) % 8
            return t == 1 if s == 4 else t in (1, 7)
        if r == 2:
            return False
        # 2^r * ab must land in the four classes generated by -1 and 6, so
        # the admissible unit part of ab flips with the parity of r
        if a * b % 8 not in ((1, 7) if r % 2 == 0 else (3, 5)):
            return False
        t = b * c % 8
        return t == 3 if s - r <= 3 else t in (3, 5)
    if case is TheoremCase.BALANCED_ODD_TRIADIC:
        return r % 2 == 0 and (b - c) % 4 != 0
    # balanced, even triadic valuation
    return r >= 2 and (a - b) % 4 == 0 and (b - c) % 8 == 0


def condition_ii(params: FormParams, case: TheoremCase) -> bool:
    """Splitting conditions on the primes other than 3 dividing the
    squarefree part of abc."""
    _require_condition_case(case)
    if case is TheoremCase.EQUAL_EXPONENT_GAP:
        if padic_valuation(3, params.abc) % 2 == 0:
            test = lambda p: p % 4 == 1
        else:
            test = lambda p: p % 3 == 1
    elif case is TheoremCase.ODD_GAP_EVEN_TRIADIC:
        test = lambda p: legendre(-2, p) == 1
    elif case is TheoremCase.ODD_GAP_ODD_TRIADIC:
        test = lambda p: legendre(-6, p) == 1
    elif case is TheoremCase.BALANCED_ODD_TRIADIC:
        test = lambda p: p % 3 == 1
    else:
        test = lambda p: p % 4 == 1
    sf = squarefree_part(params.abc)
    return all(test(p) for p, _ in factorize(sf) if p != 3)


def condition_iii(params: FormParams, case: TheoremCase) -> bool:
    """Shape of the Jordan splitting of the full lattice at 3.

    Even 3-adic valuation regimes need every component scale even. Odd
    regimes need three rank-one components at scales 0 < i < j with unit-part
    tags matching the case: all equal for the balanced and even-gap regimes,
    alternating with the scale parities for the odd-gap regime.
    """
    _require_condition_case(case)
    split = jordan_triadic(params)
    comps = split.components
    if padic_valuation(3, params.abc) % 2 == 0:
        return all(comp.scale % 2 == 0 for comp in comps)
    if len(comps) != 3 or any(comp.rank != 1 for comp in comps):
        return False
    scales = split.scales()
    if scales[0] != 0:
        return False
    t1, t2, t3 = (comp.disc for comp in comps)
    if case is TheoremCase.ODD_GAP_ODD_TRIADIC:
        i, j = scales[1], scales[2]
        return t1 * t2 == (-1) ** (i % 2) and t1 * t3 == (-1) ** (j % 2)
    return t1 == t2 == t3


def condition_iv(params: FormParams, literal: bool = False) -> bool:
    """The candidate class tau must actually be missed: tau lies in the
    progression eps mod 24 and the bounded search finds no admissible
    representation of tau itself."""
    t = tau(params, literal)
    if (t - params.eps) % 24 != 0:
        return False
    return solve_admissible(params, t) is None


class VerdictKind(enum.Enum):
    ALMOST_UNIVERSAL = "almost_universal"
    NOT_ALMOST_UNIVERSAL = "not_almost_universal"
    NOT_COVERED = "not_covered"
    INVALID_PARAMS = "invalid_params"


class Reason(enum.Enum):
    THEOREM_APPLIED = "theorem_applied"
    LOCAL_OBSTRUCTION = "local_obstruction"
    UNCOVERED_REGIME = "uncovered_regime"
    STAR_VIOLATION = "star_violation"


class CrossCheckMismatch(RuntimeError):
    """The congruence-table route and the spinor-norm route disagreed on a
    configuration both claim to support. Never swallowed: this means one of
    the two independent implementations is wrong."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of classify() with everything needed to audit it."""

    kind: VerdictKind
    reason: Reason
    input: tuple[int, int, int, int, int]
    params: Optional[FormParams] = None
    case: Optional[TheoremCase] = None
    conditions: Optional[dict] = None
    # tau, present exactly when kind is NOT_ALMOST_UNIVERSAL via the theorem
    exceptional_class: Optional[int] = None
    obstructed_primes: tuple[int, ...] = ()
    violation: Optional[ParamViolation] = None
    spinor: Optional[SpinorOutcome] = None
    literal_mode: bool = False

    def to_dict(self) -> dict:
        if self.params is not None:
            p = self.params
            view = {"a": p.a, "b": p.b, "c": p.c, "r": p.r, "s": p.s}
        else:
            a, b, c, r, s = self.input
            view = {"a": a, "b": b, "c": c, "r": r, "s": s}
        out = {
            "params": view,
            "case": None if self.case is None else self.case.value,
            "conditions": None if self.conditions is None else dict(self.conditions),
            "tau": self.exceptional_class,
            "verdict": self.kind.value,
            "reason": self.reason.value,
        }
        if self.obstructed_primes:
            out["obstructed_primes"] = list(self.obstructed_primes)
        if self.violation is not None:
            out["violation"] = self.violation.value
        if self.spinor is not None:
            out["spinor"] = self.spinor.value
        if self.literal_mode:
            out["literal_sf"] = True
        return out


def classify(
    a: int, b: int, c: int, r: int, s: int, literal_sf: bool = False
) -> Verdict:
    """Full decision: validate, normalize, test local solvability, dispatch,
    evaluate the failure conditions, and cross-check against the spinor
    route. literal_sf switches tau to the raw squarefree part of abc."""
    raw = (a, b, c, r, s)
    try:
        structural_checks(a, b, c, r, s)
    except ParamError as exc:
        return Verdict(
            kind=VerdictKind.INVALID_PARAMS,
            reason=Reason.STAR_VIOLATION,
            input=raw,
            violation=exc.violation,
            literal_mode=literal_sf,
        )
    params = normalize(a, b, c, r, s)
    if params.r == 0 and params.s > 0:
        # eps is even here, but the regime is out of scope rather than
        # malformed, so it is reported as not covered
        return Verdict(
            kind=VerdictKind.NOT_COVERED,
            reason=Reason.UNCOVERED_REGIME,
            input=raw,
            params=params,
            case=TheoremCase.UNCOVERED,
            literal_mode=literal_sf,
        )
    if params.eps % 2 == 0 or params.eps % 3 == 0:
        return Verdict(
            kind=VerdictKind.INVALID_PARAMS,
            reason=Reason.STAR_VIOLATION,
            input=raw,
            params=params,
            violation=ParamViolation.EPSILON_DIVISIBLE_BY_2_OR_3,
            literal_mode=literal_sf,
        )
    local = no_local_obstruction(params)
    if local.obstructed:
        return Verdict(
            kind=VerdictKind.NOT_ALMOST_UNIVERSAL,
            reason=Reason.LOCAL_OBSTRUCTION,
            input=raw,
            params=params,
            obstructed_primes=local.obstructed_primes,
            literal_mode=literal_sf,
        )
    case = classify_case(params)
    spin = spinor_exception_check(params)
    if case is TheoremCase.UNSCALED:
        if spin is SpinorOutcome.IS_EXCEPTION:
            raise CrossCheckMismatch(
                f"{params}: unscaled regime is always almost universal but"
                f" the spinor route reports an exceptional class"
            )
        return Verdict(
            kind=VerdictKind.ALMOST_UNIVERSAL,
            reason=Reason.THEOREM_APPLIED,
            input=raw,
            params=params,
            case=case,
            spinor=spin,
            literal_mode=literal_sf,
        )
    conds = {
        "i": condition_i(params, case),
        "ii": condition_ii(params, case),
        "iii": condition_iii(params, case),
        "iv": condition_iv(params, literal_sf),
    }
    lattice_side = conds["i"] and conds["ii"] and conds["iii"]
    if spin is not SpinorOutcome.UNSUPPORTED:
        if (spin is SpinorOutcome.IS_EXCEPTION) != lattice_side:
            raise CrossCheckMismatch(
                f"{params}: case {case.value} conditions"
                f" i={conds['i']} ii={conds['ii']} iii={conds['iii']}"
                f" disagree with spinor outcome {spin.value}"
            )
    if lattice_side and conds["iv"]:
        return Verdict(
            kind=VerdictKind.NOT_ALMOST_UNIVERSAL,
            reason=Reason.THEOREM_APPLIED,
            input=raw,
            params=params,
            case=case,
            conditions=conds,
            exceptional_class=tau(params, literal_sf),
            spinor=spin,
            literal_mode=literal_sf,
        )
    return Verdict(
        kind=VerdictKind.ALMOST_UNIVERSAL,
        reason=Reason.THEOREM_APPLIED,
        input=raw,
        params=params,
        case=case,
        conditions=conds,
        spinor=spin,
        literal_mode=literal_sf,
    )
