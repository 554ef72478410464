"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import random
import subprocess
import sys

import pytest

from pentaform.lattice import FormParams, ParamError, make_params


def corpus_tuples():
    """Raw sweep grid: odd a, b, c <= 15 and 0 <= r <= s <= 6."""
    for a in range(1, 16, 2):
        for b in range(1, 16, 2):
            for c in range(1, 16, 2):
                for s in range(0, 7):
                    for r in range(0, s + 1):
                        yield (a, b, c, r, s)


def valid_covered_params():
    """FormParams for every corpus tuple that passes validation and is not in
    the r = 0 < s regime."""
    for tup in corpus_tuples():
        try:
            params = make_params(*tup)
        except ParamError:
            continue
        if params.r == 0 and params.s > 0:
            continue
        yield params


def random_valid_params(rng: random.Random, max_coef: int = 99, max_s: int = 8) -> FormParams:
    """Rejection-sample a validated parameter set."""
    while True:
        a = rng.randrange(1, max_coef + 1, 2)
        b = rng.randrange(1, max_coef + 1, 2)
        c = rng.randrange(1, max_coef + 1, 2)
        s = rng.randrange(0, max_s + 1)
        r = rng.randrange(0, s + 1)
        if r == 0 and s > 0:
            continue
        try:
            return make_params(a, b, c, r, s)
        except ParamError:
            continue


def assert_valid_witness(params: FormParams, n: int, witness) -> None:
    """Check the defining identity and the unit congruences exactly."""
    u, v, w = witness.units()
    for t in (u, v, w):
        assert t % 6 in (1, 5), f"unit {t} not +-1 mod 6"
    total = params.a * u * u + (params.b << params.r) * v * v + (params.c << params.s) * w * w
    assert total == 24 * n + params.eps, f"witness does not hit 24*{n}+{params.eps}"


def random_unimodular(rng: random.Random, size: int = 3):
    """Integer matrix with determinant +-1: random shears and a possible swap."""
    mat = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(6):
        i = rng.randrange(size)
        j = rng.randrange(size)
        if i == j:
            continue
        k = rng.choice((-2, -1, 1, 2))
        for col in range(size):
            mat[j][col] += k * mat[i][col]
    if rng.random() < 0.5:
        i, j = rng.sample(range(size), 2)
        mat[i], mat[j] = mat[j], mat[i]
    return mat


def congruent_gram(gram, u):
    """u^T * gram * u for an integer matrix u."""
    size = len(gram)
    rows = range(size)
    tmp = [[sum(u[k][i] * gram[k][l] for k in rows) for l in rows] for i in rows]
    return tuple(
        tuple(sum(tmp[i][l] * u[l][j] for l in rows) for j in rows) for i in rows
    )


def run_cli(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "pentaform", *args],
        capture_output=True,
        text=True,
        env=full_env,
        timeout=600,
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260816)
