"""Shared fixtures and independent oracle helpers.

The helpers here deliberately avoid the library's own engines: lattice
membership runs its own exact elimination, fibers come from a naive box
filter, and minimality is a quadratic double loop, so the tests can act
as oracles for the completion machinery.
"""

import random
from fractions import Fraction
from math import gcd

import pytest

from toricbases import Configuration
from toricbases.core import grlex_key, neg_part, pos_part

CURVE_2_3_11 = [[2, 3, 11]]
CURVE_3_4_5 = [[3, 4, 5]]
WIDE_2x5 = [[2, 0, 2, 1, 3], [2, 2, 0, 3, 3]]
IDENTITY_3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

GRAVER_2_3_11 = {
    (0, 11, -3), (3, -2, 0), (4, 1, -1), (1, 3, -1),
    (7, -1, -1), (11, 0, -2), (1, -8, 2), (2, -5, 1),
}
UNIVERSAL_2_3_11 = {(3, -2, 0), (4, 1, -1), (1, 3, -1)}
INDISPENSABLE_2_3_11 = {(3, -2, 0)}
UNIVERSAL_WIDE = {
    (1, -1, -1, 0, 0), (0, 0, 1, 1, -1), (0, 3, 1, -2, 0), (1, 2, 0, -2, 0),
}
UNIVERSAL_3_4_5 = {(3, -1, -1), (1, -2, 1), (2, 1, -2)}


@pytest.fixture
def c2311():
    return Configuration(CURVE_2_3_11)


@pytest.fixture
def c345():
    return Configuration(CURVE_3_4_5)


@pytest.fixture
def wide():
    return Configuration(WIDE_2x5)


@pytest.fixture
def identity3():
    return Configuration(IDENTITY_3)


def dominates(v, u):
    """v+ <= u+ and v- <= u- componentwise."""
    return (all(a <= b for a, b in zip(pos_part(v), pos_part(u)))
            and all(a <= b for a, b in zip(neg_part(v), neg_part(u))))


def naive_minimal_classes(vecs):
    """Quadratic filter keeping vectors nothing else sits below."""
    vecs = sorted(set(vecs), key=grlex_key)
    out = []
    for u in vecs:
        if not any(v != u and (dominates(v, u) or dominates(tuple(-x for x in v), u))
                   for v in vecs):
            out.append(u)
    return out


def naive_fiber(config, degree):
    """Full box scan: every coordinate ranges over 0..min_i floor(b_i/a_ij)."""
    from itertools import product

    degree = tuple(degree)
    if any(b < 0 for b in degree):
        return []
    cols = config.columns
    bounds = []
    for j in range(config.n):
        bounds.append(min(degree[i] // cols[j][i]
                          for i in range(config.m) if cols[j][i] > 0))
    pts = [t for t in product(*(range(b + 1) for b in bounds))
           if config.multiply(t) == degree]
    return sorted(pts, key=grlex_key)


def rational_rank(matrix):
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return x, y, g


class IntLattice:
    """Integer row-span membership via echelon rows with xgcd pivots."""

    def __init__(self, vectors):
        self.rows = []
        for v in vectors:
            self.add(v)

    def _pivot_row(self, j):
        for row in self.rows:
            if next(i for i, x in enumerate(row) if x) == j:
                return row
        return None

    def add(self, vec):
        vec = list(vec)
        while any(vec):
            j = next(i for i, x in enumerate(vec) if x)
            row = self._pivot_row(j)
            if row is None:
                self.rows.append(vec)
                self.rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
                return
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, row)]
            else:
                x, y, g = _xgcd(a, b)
                combined = [x * r + y * v for r, v in zip(row, vec)]
                vec = [(a // g) * v - (b // g) * r for r, v in zip(row, vec)]
                row[:] = combined

    def contains(self, v):
        vec = list(v)
        while any(vec):
            j = next(i for i, x in enumerate(vec) if x)
            row = self._pivot_row(j)
            if row is None or vec[j] % row[j]:
                return False
            q = vec[j] // row[j]
            vec = [x - q * y for x, y in zip(vec, row)]
        return True


def span_contains(vectors, v):
    return IntLattice(vectors).contains(v)


def random_curve_triples(seed, count, max_n, min_n=2):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ns = sorted(rng.sample(range(min_n, max_n + 1), 3))
        if gcd(gcd(ns[0], ns[1]), ns[2]) == 1:
            out.append(tuple(ns))
    return out


def random_kernel_vectors(config, count, seed, coef=5):
    rng = random.Random(seed)
    basis = config.kernel_basis
    out = []
    while len(out) < count and basis:
        v = [0] * config.n
        for b in basis:
            c = rng.randint(-coef, coef)
            v = [x + c * y for x, y in zip(v, b)]
        if any(v):
            out.append(tuple(v))
    return out
