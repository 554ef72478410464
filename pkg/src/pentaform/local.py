"""Local representability test at the odd primes dividing the coefficients.

Away from 2 and 3 the lattice of interest is just the diagonal form
(a, 2^r b, 2^s c). The target values 24n + eps sweep every unit square class
and every p-multiple as n varies, so the form represents all of Z_p exactly
when it is isometric to <1, -1, -disc> over Z_p. Primes outside abc satisfy
that automatically; at p = 2, 3 the admissible coset trivializes the question.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import FormParams, JordanSplitting, jordan_odd
from .numth import factorize


def local_diagonal_away_from_6(params: FormParams, p: int) -> tuple[int, int, int]:
    """The form's diagonal over Z_p for p >= 5 (where the index-6 sublattice
    relation is an equality)."""
    if p in (2, 3):
        raise ValueError("only primes away from 6 carry the plain diagonal")
    return params.coefficients()


def is_isometric_odd(p: int, j1: JordanSplitting, j2: JordanSplitting) -> bool:
    """Z_p-isometry of rank-3 lattices at odd p: equal scale/rank sequences
    with matching component discriminant classes."""
    if j1.p != p or j2.p != p:
        raise ValueError("splittings computed at a different prime")
    return [(c.scale, c.rank, c.disc) for c in j1.components] == [
        (c.scale, c.rank, c.disc) for c in j2.components
    ]


@dataclass(frozen=True)
class LocalReport:
    obstructed_primes: tuple[int, ...]
    vacuous: bool

    @property
    def obstructed(self) -> bool:
        return bool(self.obstructed_primes)


def no_local_obstruction(params: FormParams) -> LocalReport:
    """Check M_p ~ <1, -1, -disc> at every prime p >= 5 dividing abc.

    Primes not dividing abc need no test: the diagonal is unimodular there and
    rank-3 unimodular lattices at odd p are determined by their discriminant.
    """
    a, rb, sc = params.coefficients()
    disc = params.disc
    bad = []
    tested = []
    for p, _ in factorize(params.abc):
        if p < 5:
            continue
        tested.append(p)
        ours = jordan_odd(p, ((a, 0, 0), (0, rb, 0), (0, 0, sc)))
        ref = jordan_odd(p, ((1, 0, 0), (0, -1, 0), (0, 0, -disc)))
        if not is_isometric_odd(p, ours, ref):
            bad.append(p)
    return LocalReport(obstructed_primes=tuple(bad), vacuous=not tested)
