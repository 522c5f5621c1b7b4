"""Graver bases by completion, conformal reduction, primitivity, complexity.

The completion is the classic pairwise-sum / conformal-reduce loop seeded
with a kernel basis.  One canonical representative per sign class is stored
and reduction tries both signs of every stored element, which is equivalent
to carrying the negations along.  Internals run on int64 arrays with an
explicit magnitude guard so overflow raises instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numba
import numpy as np

from .core import (
    Configuration,
    DomainError,
    IntVec,
    ResourceLimitError,
    canonicalize,
    grlex_key,
    intvec,
    is_zero,
    one_norm,
    vadd,
    vneg,
    vsub,
)

DEFAULT_MAX_ELEMENTS = 10**6
DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_BOX = 10**7

# additions of two in-range entries stay well inside int64
_ENTRY_GUARD = 1 << 60


@dataclass(frozen=True)
class GraverBasis:
    """Canonical representatives of the sign classes with no proper conformal split."""

    config: Configuration
    elements: tuple[IntVec, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, u) -> bool:
        return canonicalize(tuple(u)) in set(self.elements)


def _guard(vec: np.ndarray) -> None:
    if int(np.abs(vec).max(initial=0)) >= _ENTRY_GUARD:
        raise OverflowError(
            "completion produced an entry beyond the fixed-width safety bound")


_PAIR_BATCH = 4096


@numba.njit(cache=True)
def _reduce_rows(cands, elems, pmask, nmask, count):
    """In-place normal forms: subtract the first stored element (either sign)
    sitting below the row, support masks prefiltering the scan."""
    rows, n = cands.shape
    for s in range(rows):
        while True:
            hp_mask = 0
            hn_mask = 0
            nonzero = False
            for t in range(n):
                x = cands[s, t]
                if x > 0:
                    hp_mask |= 1 << t
                    nonzero = True
                elif x < 0:
                    hn_mask |= 1 << t
                    nonzero = True
            if not nonzero:
                break
            found = -1
            sign = 0
            for k in range(count):
                pm = pmask[k]
                nm = nmask[k]
                if (pm & ~hp_mask) == 0 and (nm & ~hn_mask) == 0:
                    ok = True
                    for t in range(n):
                        e = elems[k, t]
                        x = cands[s, t]
                        if (e > 0 and x < e) or (e < 0 and x > e):
                            ok = False
                            break
                    if ok:
                        found = k
                        sign = -1
                        break
                if (nm & ~hp_mask) == 0 and (pm & ~hn_mask) == 0:
                    ok = True
                    for t in range(n):
                        e = -elems[k, t]
                        x = cands[s, t]
                        if (e > 0 and x < e) or (e < 0 and x > e):
                            ok = False
                            break
                    if ok:
                        found = k
                        sign = 1
                        break
            if found < 0:
                break
            for t in range(n):
                cands[s, t] += sign * elems[found, t]


def _complete(seeds: Sequence[IntVec], n: int, max_elements: int, max_pairs: int,
              skip_conformal_pairs: bool) -> list[IntVec]:
    """Run the completion; returns every stored canonical vector (not yet minimized).

    Pairs are processed FIFO in batches; each batch is reduced against the
    element set as of batch start, which may briefly keep non-minimal
    vectors, and the final minimization drops them.  Pairs never live in an
    explicit queue: pair (i, j) precedes (i', j') iff (j, i) < (j', i'), so
    two cursors recover the FIFO order.
    """
    if not seeds:
        return []
    if n > 63:
        raise ResourceLimitError(
            f"completion supports at most 63 columns, got {n}")
    cap = 256
    elems = np.zeros((cap, n), dtype=np.int64)
    pmask = np.zeros(cap, dtype=np.int64)
    nmask = np.zeros(cap, dtype=np.int64)
    count = 0
    seen: dict[IntVec, int] = {}
    pairs_inserted = 0

    def insert(vec: np.ndarray) -> None:
        nonlocal count, cap, elems, pmask, nmask, pairs_inserted
        if vec[np.flatnonzero(vec)[0]] < 0:
            vec = -vec
        key = tuple(int(x) for x in vec)
        if key in seen:
            return
        _guard(vec)
        if count >= max_elements:
            raise ResourceLimitError(
                f"element cap {max_elements} exceeded during completion")
        if count == cap:
            cap *= 2
            elems = np.vstack([elems, np.zeros_like(elems)])
            pmask = np.concatenate([pmask, np.zeros_like(pmask)])
            nmask = np.concatenate([nmask, np.zeros_like(nmask)])
        elems[count] = vec
        pmask[count] = sum(1 << t for t in range(n) if vec[t] > 0)
        nmask[count] = sum(1 << t for t in range(n) if vec[t] < 0)
        seen[key] = count
        pairs_inserted += count
        if pairs_inserted > max_pairs:
            raise ResourceLimitError(
                f"pair cap {max_pairs} exceeded ({count} elements stored so far)")
        count += 1

    for s in seeds:
        arr = np.array(s, dtype=np.int64)
        if arr.any():
            insert(arr)

    next_j, next_i = 1, 0
    while next_j < count:
        lo = np.empty(_PAIR_BATCH, dtype=np.int64)
        hi = np.empty(_PAIR_BATCH, dtype=np.int64)
        take = 0
        while take < _PAIR_BATCH and next_j < count:
            lo[take] = next_i
            hi[take] = next_j
            take += 1
            next_i += 1
            if next_i == next_j:
                next_j += 1
                next_i = 0
        f = elems[lo[:take]]
        g = elems[hi[:take]]
        cands = np.empty((2 * take, n), dtype=np.int64)
        cands[0::2] = f + g
        cands[1::2] = f - g
        if skip_conformal_pairs:
            valid = np.empty(2 * take, dtype=bool)
            valid[0::2] = (((f > 0) & (g < 0)) | ((f < 0) & (g > 0))).any(axis=1)
            valid[1::2] = (((f > 0) & (g > 0)) | ((f < 0) & (g < 0))).any(axis=1)
            cands = cands[valid]
        if not cands.size:
            continue
        _reduce_rows(cands, elems, pmask, nmask, count)
        for row in cands:
            if row.any():
                insert(row)

    return list(seen)


def _minimal_classes(vecs: list[IntVec], n: int) -> list[IntVec]:
    """Keep exactly the vectors with no other stored vector below them."""
    if not vecs:
        return []
    ordered = sorted(vecs, key=grlex_key)
    arr = np.array(ordered, dtype=np.int64)
    pos = np.maximum(arr, 0)
    neg = np.maximum(-arr, 0)
    kept_idx: list[int] = []
    for i in range(len(ordered)):
        if kept_idx:
            kp = pos[kept_idx]
            kn = neg[kept_idx]
            hp, hn = pos[i], neg[i]
            dom_pos = ((kp <= hp) & (kn <= hn)).all(axis=1)
            dom_neg = ((kn <= hp) & (kp <= hn)).all(axis=1)
            if (dom_pos | dom_neg).any():
                continue
        kept_idx.append(i)
    return [ordered[i] for i in kept_idx]


def _completion_from_seeds(config: Configuration, seeds: Sequence[IntVec], *,
                           max_elements: int = DEFAULT_MAX_ELEMENTS,
                           max_pairs: int = DEFAULT_MAX_PAIRS,
                           skip_conformal_pairs: bool = True) -> GraverBasis:
    raw = _complete(seeds, config.n, max_elements, max_pairs, skip_conformal_pairs)
    elems = _minimal_classes(raw, config.n)
    return GraverBasis(config, tuple(elems))


def graver_basis(config: Configuration, *,
                 max_elements: int = DEFAULT_MAX_ELEMENTS,
                 max_pairs: int = DEFAULT_MAX_PAIRS,
                 skip_conformal_pairs: bool = True) -> GraverBasis:
    """All sign classes of kernel vectors admitting no proper conformal decomposition."""
    key = (max_elements, max_pairs, skip_conformal_pairs)
    cached = config._graver.get(key)
    if cached is None:
        cached = _completion_from_seeds(
            config, config.kernel_basis,
            max_elements=max_elements, max_pairs=max_pairs,
            skip_conformal_pairs=skip_conformal_pairs)
        config._graver[key] = cached
    return cached


def _below(v: IntVec, w: IntVec) -> bool:
    # v+ <= w+ and v- <= w-
    for a, b in zip(v, w):
        if a > 0 and b < a:
            return False
        if a < 0 and b > a:
            return False
    return True


def conformal_normal_form(u: Sequence[int], basis: GraverBasis) -> IntVec:
    """Fixed point of subtracting basis elements (either sign) sitting below u.

    First match in the basis's sorted order wins, so the result is
    deterministic.  Returns the zero vector exactly when u reduces to zero.
    """
    w = intvec(u)
    if not basis.config.in_kernel(w):
        raise DomainError(f"{w} is not in the kernel of the configuration")
    changed = True
    while changed and not is_zero(w):
        changed = False
        for v in basis.elements:
            if _below(v, w):
                w = vsub(w, v)
                changed = True
                break
            if _below(vneg(v), w):
                w = vadd(w, v)
                changed = True
                break
    return w


def _box_kernel_search(matrix: tuple[IntVec, ...], lo: Sequence[int],
                       hi: Sequence[int]):
    """Yield every v with lo <= v <= hi and matrix . v = 0 (pruned DFS).

    Independent of the completion machinery so it can act as its oracle.
    """
    m = len(matrix)
    n = len(matrix[0])
    minrest = [[0] * m for _ in range(n + 1)]
    maxrest = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        for i in range(m):
            a = matrix[i][j]
            locontrib = min(a * lo[j], a * hi[j])
            hicontrib = max(a * lo[j], a * hi[j])
            minrest[j][i] = minrest[j + 1][i] + locontrib
            maxrest[j][i] = maxrest[j + 1][i] + hicontrib
    v = [0] * n

    def rec(j: int, partial: list[int]):
        for i in range(m):
            if partial[i] + minrest[j][i] > 0 or partial[i] + maxrest[j][i] < 0:
                return
        if j == n:
            yield tuple(v)
            return
        for x in range(lo[j], hi[j] + 1):
            v[j] = x
            yield from rec(j + 1, [partial[i] + matrix[i][j] * x for i in range(m)])
        v[j] = 0

    yield from rec(0, [0] * m)


def is_primitive(config: Configuration, u: Sequence[int]) -> bool:
    """True iff no kernel vector v outside {0, u} has v+ <= u+ and v- <= u-.

    Exhaustive scan of the box [-u^-, u^+]; deliberately does not touch the
    completion engine.
    """
    u = intvec(u)
    if is_zero(u):
        raise DomainError("the zero vector is neither primitive nor not")
    if not config.in_kernel(u):
        raise DomainError(f"{u} is not in the kernel of the configuration")
    lo = [x if x < 0 else 0 for x in u]
    hi = [x if x > 0 else 0 for x in u]
    zero = tuple([0] * config.n)
    for v in _box_kernel_search(config.matrix, lo, hi):
        if v != zero and v != u:
            return False
    return True


def box_kernel_oracle(config: Configuration, bound: int, *,
                      max_box: int = DEFAULT_MAX_BOX) -> list[IntVec]:
    """All nonzero kernel vectors with every |entry| <= bound, canonical-signed."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    if (2 * bound + 1) ** config.n > max_box:
        raise ResourceLimitError(
            f"box of {(2 * bound + 1) ** config.n} points exceeds cap {max_box}")
    lo = [-bound] * config.n
    hi = [bound] * config.n
    found = {canonicalize(v) for v in _box_kernel_search(config.matrix, lo, hi)
             if not is_zero(v)}
    return sorted(found, key=grlex_key)


def graver_complexity(config: Configuration, *,
                      max_elements: int = DEFAULT_MAX_ELEMENTS,
                      max_pairs: int = DEFAULT_MAX_PAIRS) -> tuple[int, Optional[IntVec]]:
    """Max 1-norm in the Graver basis of the Graver basis, with one witness.

    Returns (0, None) when the inner Graver basis is empty.
    """
    outer = graver_basis(config, max_elements=max_elements, max_pairs=max_pairs)
    if not outer.elements:
        raise DomainError("the configuration has a trivial kernel, no Graver elements")
    inner_matrix = [[g[i] for g in outer.elements] for i in range(config.n)]
    inner = Configuration(inner_matrix)
    gg = graver_basis(inner, max_elements=max_elements, max_pairs=max_pairs)
    if not gg.elements:
        return 0, None
    top = max(one_norm(v) for v in gg.elements)
    witness = min((v for v in gg.elements if one_norm(v) == top), key=grlex_key)
    return top, witness
