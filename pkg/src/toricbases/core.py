"""Exact integer vectors, configurations, kernels and fibers.

Everything in here is immutable and pure: vectors are plain tuples of
Python ints (arbitrary precision, so arithmetic never overflows), a
Configuration wraps an integer matrix and lazily caches its kernel basis
and enumerated fibers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

IntVec = tuple[int, ...]


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class ParseError(ValueError):
    """Malformed matrix text."""


class ResourceLimitError(RuntimeError):
    """A configured element/pair/box cap was exceeded."""


class ConsistencyError(RuntimeError):
    """Two computations that must agree disagreed."""


def intvec(values: Iterable[int]) -> IntVec:
    vec = tuple(values)
    for x in vec:
        if not isinstance(x, int) or isinstance(x, bool):
            raise DomainError(f"vector entries must be ints, got {x!r}")
    return vec


def pos_part(u: IntVec) -> IntVec:
    return tuple(x if x > 0 else 0 for x in u)


def neg_part(u: IntVec) -> IntVec:
    return tuple(-x if x < 0 else 0 for x in u)


def vadd(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: IntVec) -> IntVec:
    return tuple(-x for x in a)


def vscale(c: int, a: IntVec) -> IntVec:
    return tuple(c * x for x in a)


def is_zero(a: IntVec) -> bool:
    return not any(a)


def one_norm(a: IntVec) -> int:
    return sum(abs(x) for x in a)


def grlex_key(a: IntVec) -> tuple[int, IntVec]:
    """Graded-lex sort key: 1-norm first, then entrywise lex."""
    return (one_norm(a), a)


def geq(a: IntVec, b: IntVec) -> bool:
    """Componentwise a >= b."""
    return all(x >= y for x, y in zip(a, b, strict=True))


def gt(a: IntVec, b: IntVec) -> bool:
    """a >= b componentwise and a != b (the partial order used throughout)."""
    return a != b and geq(a, b)


def canonicalize(u: IntVec) -> IntVec:
    """Flip sign so the first nonzero entry is positive; fixed point of itself."""
    for x in u:
        if x > 0:
            return u
        if x < 0:
            return vneg(u)
    return u


def sign_pattern(u: IntVec) -> str:
    return "".join("+" if x > 0 else "-" if x < 0 else "0" for x in u)


def support_mask(u: IntVec) -> int:
    mask = 0
    for i, x in enumerate(u):
        if x:
            mask |= 1 << i
    return mask


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (x, y, g) with x*a + y*b == g == gcd(a, b) > 0
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _integer_kernel(matrix: tuple[IntVec, ...]) -> list[IntVec]:
    """Z-basis of {v : matrix . v = 0} via unimodular row reduction of [A^T | I]."""
    m = len(matrix)
    n = len(matrix[0])
    aug = [[matrix[i][j] for i in range(m)] + [1 if t == j else 0 for t in range(n)]
           for j in range(n)]
    row = 0
    for col in range(m):
        piv = next((p for p in range(row, n) if aug[p][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        for q in range(row + 1, n):
            b = aug[q][col]
            if not b:
                continue
            a = aug[row][col]
            x, y, g = _xgcd(a, b)
            ar, aq = aug[row], aug[q]
            aug[row] = [x * r + y * s for r, s in zip(ar, aq)]
            aug[q] = [(a // g) * s - (b // g) * r for r, s in zip(ar, aq)]
        row += 1
    basis = [canonicalize(tuple(r[m:])) for r in aug[row:]]
    basis.sort(key=grlex_key)
    return basis


class Configuration:
    """An integer matrix; its integer kernel is the lattice all bases live in."""

    def __init__(self, rows: Sequence[Sequence[int]]):
        matrix = tuple(tuple(int(x) for x in r) for r in rows)
        if not matrix or not matrix[0]:
            raise DomainError("matrix must have at least one row and one column")
        n = len(matrix[0])
        if any(len(r) != n for r in matrix):
            raise DomainError("matrix rows must all have the same length")
        self.matrix = matrix
        self.m = len(matrix)
        self.n = n
        self._kernel: Optional[tuple[IntVec, ...]] = None
        self._fibers: dict[IntVec, "Fiber"] = {}
        self._graver: dict = {}

    @property
    def columns(self) -> tuple[IntVec, ...]:
        return tuple(tuple(row[j] for row in self.matrix) for j in range(self.n))

    @property
    def nonneg_pointed(self) -> bool:
        """All entries >= 0 and no zero column; guarantees finite fibers."""
        if any(x < 0 for row in self.matrix for x in row):
            return False
        return all(any(row[j] for row in self.matrix) for j in range(self.n))

    def multiply(self, v: Sequence[int]) -> IntVec:
        if len(v) != self.n:
            raise DomainError(f"expected a vector of length {self.n}, got {len(v)}")
        return tuple(sum(r * x for r, x in zip(row, v)) for row in self.matrix)

    def in_kernel(self, v: Sequence[int]) -> bool:
        return is_zero(self.multiply(v))

    @property
    def kernel_basis(self) -> tuple[IntVec, ...]:
        if self._kernel is None:
            self._kernel = tuple(_integer_kernel(self.matrix))
        return self._kernel

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Configuration) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"Configuration({self.m}x{self.n})"


def kernel_basis(config: Configuration) -> list[IntVec]:
    """Z-basis of the integer kernel, canonical-signed and graded-lex sorted."""
    return list(config.kernel_basis)


def a_degree(config: Configuration, u: Sequence[int]) -> IntVec:
    """matrix . pos_part(u) for a kernel vector u (equals matrix . neg_part(u))."""
    u = intvec(u)
    if not config.in_kernel(u):
        raise DomainError(f"{u} is not in the kernel of the configuration")
    return config.multiply(pos_part(u))


@dataclass(frozen=True)
class Fiber:
    """All t in N^n with matrix . t = degree, graded-lex sorted."""

    config: Configuration
    degree: IntVec
    points: tuple[IntVec, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, t) -> bool:
        return tuple(t) in self.point_set

    @cached_property
    def point_set(self) -> frozenset[IntVec]:
        return frozenset(self.points)

    @cached_property
    def index(self) -> dict[IntVec, int]:
        return {p: i for i, p in enumerate(self.points)}


def _enumerate_fiber(config: Configuration, degree: IntVec) -> tuple[IntVec, ...]:
    if any(b < 0 for b in degree):
        return ()
    cols = config.columns
    m, n = config.m, config.n
    # once every column touching a row has been assigned, its residual is final
    last_touch = [max((j for j in range(n) if config.matrix[i][j]), default=-1)
                  for i in range(m)]
    frozen_at: list[list[int]] = [[] for _ in range(n + 1)]
    for i in range(m):
        frozen_at[last_touch[i] + 1].append(i)
    out: list[IntVec] = []
    t = [0] * n

    def rec(j: int, residual: list[int]) -> None:
        for i in frozen_at[j]:
            if residual[i]:
                return
        if j == n:
            if not any(residual):
                out.append(tuple(t))
            return
        col = cols[j]
        bound = min(residual[i] // col[i] for i in range(m) if col[i] > 0)
        res = list(residual)
        for v in range(bound + 1):
            t[j] = v
            rec(j + 1, res)
            for i in range(m):
                res[i] -= col[i]
        t[j] = 0

    rec(0, list(degree))
    out.sort(key=grlex_key)
    return tuple(out)


def fiber(config: Configuration, degree: Sequence[int]) -> Fiber:
    """Enumerate the (finite) fiber of `degree`; requires a nonneg pointed matrix."""
    if not config.nonneg_pointed:
        raise DomainError(
            "fiber enumeration needs a nonnegative matrix with no zero column "
            "(otherwise the fiber may be infinite)")
    degree = intvec(degree)
    if len(degree) != config.m:
        raise DomainError(f"degree must have length {config.m}, got {len(degree)}")
    cached = config._fibers.get(degree)
    if cached is None:
        cached = Fiber(config, degree, _enumerate_fiber(config, degree))
        config._fibers[degree] = cached
    return cached
