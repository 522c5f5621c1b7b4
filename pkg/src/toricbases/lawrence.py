"""Lawrence liftings, generalized liftings, tableau views, complexity scans.

A kernel element of a lifted configuration is viewed as an r x n tableau:
row i holds entries i*n .. (i+1)*n - 1 of the flat vector.  Every row lies
in the base kernel and the rows sum to zero; the type of the element is
its number of nonzero rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Configuration,
    DomainError,
    IntVec,
    intvec,
    is_zero,
    vadd,
)
from .graver import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_PAIRS, graver_basis
from .markov import universal_markov_basis


def lift(config: Configuration, r: int) -> Configuration:
    """r diagonal copies of the matrix over r horizontal copies of the identity."""
    if r < 2:
        raise DomainError("lifting needs r >= 2")
    m, n = config.m, config.n
    rows = []
    for i in range(r):
        for row in config.matrix:
            new = [0] * (r * n)
            new[i * n:(i + 1) * n] = row
            rows.append(new)
    for j in range(n):
        new = [0] * (r * n)
        for i in range(r):
            new[i * n + j] = 1
        rows.append(new)
    return Configuration(rows)


def generalized_lift(config: Configuration, coupling: Configuration,
                     r: int) -> Configuration:
    """Same block structure with the coupling matrix in place of the identity."""
    if r < 2:
        raise DomainError("lifting needs r >= 2")
    if coupling.n != config.n:
        raise DomainError(
            f"coupling must have {config.n} columns, got {coupling.n}")
    if any(x < 0 for row in coupling.matrix for x in row):
        raise DomainError("coupling matrix must be nonnegative")
    m, n = config.m, config.n
    rows = []
    for i in range(r):
        for row in config.matrix:
            new = [0] * (r * n)
            new[i * n:(i + 1) * n] = row
            rows.append(new)
    for row in coupling.matrix:
        rows.append(list(row) * r)
    return Configuration(rows)


def tableau_view(flat: Sequence[int], r: int, n: int) -> tuple[IntVec, ...]:
    """Split a flat length-r*n vector into its r rows."""
    flat = intvec(flat)
    if len(flat) != r * n:
        raise DomainError(f"expected a vector of length {r * n}, got {len(flat)}")
    return tuple(flat[i * n:(i + 1) * n] for i in range(r))


def flatten(rows: Sequence[Sequence[int]]) -> IntVec:
    """Inverse of tableau_view."""
    out: list[int] = []
    for row in rows:
        out.extend(intvec(row))
    return tuple(out)


def tableau_type(flat: Sequence[int], r: int, n: int) -> int:
    """Number of nonzero rows; zero exactly for the zero vector."""
    return sum(1 for row in tableau_view(flat, r, n) if not is_zero(row))


@dataclass(frozen=True)
class Tableau:
    """A validated r x n kernel element of a lifting of `config`."""

    config: Configuration
    rows: tuple[IntVec, ...]

    def __post_init__(self):
        rows = tuple(intvec(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        total = rows[0]
        for row in rows:
            if not self.config.in_kernel(row):
                raise DomainError(f"tableau row {row} is not in the base kernel")
        for row in rows[1:]:
            total = vadd(total, row)
        if not is_zero(total):
            raise DomainError("tableau rows must sum to zero")

    @classmethod
    def from_flat(cls, config: Configuration, flat: Sequence[int], r: int) -> "Tableau":
        return cls(config, tableau_view(flat, r, config.n))

    @property
    def type(self) -> int:
        return sum(1 for row in self.rows if not is_zero(row))

    @property
    def flat(self) -> IntVec:
        return flatten(self.rows)


def markov_complexity_scan(config: Configuration, r_max: int, *,
                           max_elements: int = DEFAULT_MAX_ELEMENTS,
                           max_pairs: int = DEFAULT_MAX_PAIRS
                           ) -> list[tuple[int, int, int]]:
    """(r, max type, basis size) of the universal Markov basis of each lifting."""
    if r_max < 2:
        raise DomainError("scans need r_max >= 2")
    if not config.nonneg_pointed:
        raise DomainError("scans need a nonnegative pointed base configuration")
    out = []
    for r in range(2, r_max + 1):
        lifted = lift(config, r)
        basis = universal_markov_basis(
            lifted, max_elements=max_elements, max_pairs=max_pairs)
        top = max((tableau_type(v, r, config.n) for v in basis.elements), default=0)
        out.append((r, top, len(basis.elements)))
    return out


def graver_type_scan(config: Configuration, r_max: int, *,
                     max_elements: int = DEFAULT_MAX_ELEMENTS,
                     max_pairs: int = DEFAULT_MAX_PAIRS) -> list[tuple[int, int]]:
    """(r, max type) over the Graver basis of each lifting."""
    if r_max < 2:
        raise DomainError("scans need r_max >= 2")
    if not config.nonneg_pointed:
        raise DomainError("scans need a nonnegative pointed base configuration")
    out = []
    for r in range(2, r_max + 1):
        lifted = lift(config, r)
        basis = graver_basis(lifted, max_elements=max_elements, max_pairs=max_pairs)
        top = max((tableau_type(v, r, config.n) for v in basis.elements), default=0)
        out.append((r, top))
    return out
