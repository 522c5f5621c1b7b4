"""Fiber graphs, decomposition testers, and the three Markov basis kinds.

The decision procedures all run on the fiber graph of a degree: vertices
are the fiber points, and two points are adjacent when their supports
intersect (the corresponding monomials are not coprime).  A kernel vector
belongs to the universal Markov basis exactly when its positive and
negative parts sit in different components; it is indispensable exactly
when its fiber has no third point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .core import (
    Configuration,
    ConsistencyError,
    DomainError,
    Fiber,
    IntVec,
    a_degree,
    canonicalize,
    fiber,
    geq,
    grlex_key,
    gt,
    intvec,
    is_zero,
    neg_part,
    pos_part,
    support_mask,
    vadd,
    vneg,
    vsub,
)
from .graver import DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_PAIRS, graver_basis


class FiberGraph:
    """Fiber points joined when supports intersect; components via union-find."""

    def __init__(self, fib: Fiber):
        self.fiber = fib
        pts = fib.points
        n = fib.config.n
        self.masks = tuple(support_mask(p) for p in pts)
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for mask in self.masks:
            coords = [i for i in range(n) if mask >> i & 1]
            for c in coords[1:]:
                ra, rb = find(coords[0]), find(c)
                if ra != rb:
                    parent[rb] = ra
        labels: dict[object, int] = {}
        ids = []
        for i, mask in enumerate(self.masks):
            if mask:
                key: object = find((mask & -mask).bit_length() - 1)
            else:
                key = ("zero", i)
            if key not in labels:
                labels[key] = len(labels)
            ids.append(labels[key])
        self.component_ids = tuple(ids)
        self.num_components = len(labels)

    def components(self) -> list[list[int]]:
        """Point indices grouped by component, in first-appearance order."""
        groups: list[list[int]] = [[] for _ in range(self.num_components)]
        for i, c in enumerate(self.component_ids):
            groups[c].append(i)
        return groups

    def connected(self, i: int, j: int) -> bool:
        return self.component_ids[i] == self.component_ids[j]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i in range(len(self.masks)):
            mi = self.masks[i]
            for j in range(i + 1, len(self.masks)):
                if mi & self.masks[j]:
                    out.append((i, j))
        return tuple(out)

    def shortest_path(self, start: int, end: int) -> Optional[list[int]]:
        """Shortest start->end path, lex-smallest point at every free step."""
        if start == end:
            return [start]
        masks = self.masks
        if masks[start] & masks[end]:
            return [start, end]
        if not masks[start] or not masks[end]:
            return None
        classes: dict[int, list[int]] = {}
        for i, mask in enumerate(masks):
            classes.setdefault(mask, []).append(i)
        keys = list(classes)
        adj = {k: [k2 for k2 in keys if k2 != k and k & k2] for k in keys}
        dist = {masks[end]: 0}
        frontier = [masks[end]]
        while frontier:
            nxt = []
            for k in frontier:
                for k2 in adj[k]:
                    if k2 not in dist:
                        dist[k2] = dist[k] + 1
                        nxt.append(k2)
            frontier = nxt
        if masks[start] not in dist:
            return None
        path = [start]
        cur = masks[start]
        for step in range(dist[masks[start]] - 1, 0, -1):
            best = min(
                min(classes[k]) for k in adj[cur] if dist.get(k) == step)
            path.append(best)
            cur = masks[best]
        path.append(end)
        return path


def fiber_graph(config: Configuration, degree: Sequence[int]) -> FiberGraph:
    return FiberGraph(fiber(config, degree))


KIND_MINIMAL = "minimal"
KIND_UNIVERSAL = "universal"
KIND_INDISPENSABLE = "indispensable"


@dataclass(frozen=True)
class MarkovBasis:
    config: Configuration
    kind: str
    elements: tuple[IntVec, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _checked_kernel_vector(config: Configuration, u: Sequence[int]) -> IntVec:
    u = intvec(u)
    if is_zero(u):
        raise DomainError("expected a nonzero kernel vector")
    if not config.in_kernel(u):
        raise DomainError(f"{u} is not in the kernel of the configuration")
    return u


def in_universal_markov(config: Configuration, u: Sequence[int]) -> bool:
    """True iff u+ and u- lie in different components of the fiber graph."""
    u = _checked_kernel_vector(config, u)
    graph = fiber_graph(config, a_degree(config, u))
    idx = graph.fiber.index
    return not graph.connected(idx[pos_part(u)], idx[neg_part(u)])


def in_indispensable(config: Configuration, u: Sequence[int]) -> bool:
    """True iff the fiber of u's degree is exactly {u+, u-}."""
    u = _checked_kernel_vector(config, u)
    return len(fiber(config, a_degree(config, u))) == 2


def find_semiconformal_witness(
        config: Configuration, u: Sequence[int]) -> Optional[tuple[IntVec, IntVec]]:
    """Proper split u = v + w with u+ >= v+ and u- >= w-, or None.

    Uses the graded-lex-smallest fiber point other than u+ and u-; the
    fiber has such a point exactly when u is dispensable.
    """
    u = _checked_kernel_vector(config, u)
    fib = fiber(config, a_degree(config, u))
    up, un = pos_part(u), neg_part(u)
    for t in fib.points:
        if t != up and t != un:
            return vsub(up, t), vsub(t, un)
    return None


def is_semiconformal(u: IntVec, v: IntVec, w: IntVec) -> bool:
    """Whether u = v +_sc w: the sum holds, u+ >= v+ and u- >= w-."""
    return (vadd(v, w) == u and geq(pos_part(u), pos_part(v))
            and geq(neg_part(u), neg_part(w)))


def is_ssc_decomposition(config: Configuration, u: IntVec,
                         parts: Sequence[IntVec]) -> bool:
    """Verbatim check of the strongly semiconformal chain inequalities.

    u = u_1 + ... + u_l with l >= 2, every u_i a nonzero kernel vector,
    u+ > u_1+ and u+ > (u_1 + ... + u_{i-1}) + u_i+ for i >= 2, where ">"
    is componentwise >= plus inequality.
    """
    if len(parts) < 2:
        return False
    if any(is_zero(p) or not config.in_kernel(p) for p in parts):
        return False
    total = parts[0]
    for p in parts[1:]:
        total = vadd(total, p)
    if total != u:
        return False
    up = pos_part(u)
    if not gt(up, pos_part(parts[0])):
        return False
    running = parts[0]
    for p in parts[1:]:
        if not gt(up, vadd(running, pos_part(p))):
            return False
        running = vadd(running, p)
    return True


def find_ssc_chain(config: Configuration, u: Sequence[int]) -> Optional[list[IntVec]]:
    """Shortest proper strongly semiconformal decomposition of u, or None.

    The chain is read off a shortest fiber-graph path from u+ to u-
    (shortest, then graded-lex-smallest at each step), so the length of
    the returned list is the minimal possible decomposition length.
    """
    u = _checked_kernel_vector(config, u)
    graph = fiber_graph(config, a_degree(config, u))
    idx = graph.fiber.index
    path = graph.shortest_path(idx[pos_part(u)], idx[neg_part(u)])
    if path is None:
        return None
    pts = [graph.fiber.points[i] for i in path]
    chain = [vsub(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    if not is_ssc_decomposition(config, u, chain):
        raise ConsistencyError(
            f"fiber path for {u} did not produce a valid chain decomposition")
    return chain


def universal_markov_basis(config: Configuration, *,
                           max_elements: int = DEFAULT_MAX_ELEMENTS,
                           max_pairs: int = DEFAULT_MAX_PAIRS) -> MarkovBasis:
    """Union of all minimal Markov bases, one representative per sign class."""
    gb = graver_basis(config, max_elements=max_elements, max_pairs=max_pairs)
    elems = tuple(g for g in gb.elements if in_universal_markov(config, g))
    return MarkovBasis(config, KIND_UNIVERSAL, elems)


def indispensable_subset(config: Configuration, *,
                         max_elements: int = DEFAULT_MAX_ELEMENTS,
                         max_pairs: int = DEFAULT_MAX_PAIRS) -> MarkovBasis:
    """Intersection of all minimal Markov bases."""
    gb = graver_basis(config, max_elements=max_elements, max_pairs=max_pairs)
    elems = tuple(g for g in gb.elements if in_indispensable(config, g))
    return MarkovBasis(config, KIND_INDISPENSABLE, elems)


def minimal_markov_basis(config: Configuration, *,
                         max_elements: int = DEFAULT_MAX_ELEMENTS,
                         max_pairs: int = DEFAULT_MAX_PAIRS) -> MarkovBasis:
    """One canonical minimal Markov basis.

    Per degree with a disconnected fiber graph, components are ordered by
    their graded-lex-smallest point and every later component's smallest
    point is connected to the first one's (a star), giving components-1
    moves per degree.
    """
    gb = graver_basis(config, max_elements=max_elements, max_pairs=max_pairs)
    degrees = sorted({a_degree(config, g) for g in gb.elements}, key=grlex_key)
    moves: list[IntVec] = []
    for deg in degrees:
        graph = fiber_graph(config, deg)
        if graph.num_components < 2:
            continue
        pts = graph.fiber.points
        smallest = sorted((pts[min(group)] for group in graph.components()),
                          key=grlex_key)
        base = smallest[0]
        for other in smallest[1:]:
            moves.append(canonicalize(vsub(other, base)))
    moves.sort(key=grlex_key)
    return MarkovBasis(config, KIND_MINIMAL, tuple(moves))


def is_markov_basis(config: Configuration, moves: Sequence[Sequence[int]], *,
                    max_elements: int = DEFAULT_MAX_ELEMENTS,
                    max_pairs: int = DEFAULT_MAX_PAIRS) -> bool:
    """Whether the given moves connect every fiber.

    It is enough to connect u+ to u- inside the fiber of every universal
    Markov basis element: those moves then generate the whole lattice
    fiber-by-fiber.
    """
    mvs = []
    for mv in moves:
        mv = intvec(mv)
        if not config.in_kernel(mv):
            raise DomainError(f"move {mv} is not in the kernel of the configuration")
        if not is_zero(mv):
            mvs.append(mv)
    steps = mvs + [vneg(mv) for mv in mvs]
    reference = universal_markov_basis(
        config, max_elements=max_elements, max_pairs=max_pairs)
    for u in reference.elements:
        fib = fiber(config, a_degree(config, u))
        start, goal = pos_part(u), neg_part(u)
        seen = {start}
        frontier = [start]
        reached = start == goal
        while frontier and not reached:
            nxt = []
            for t in frontier:
                for mv in steps:
                    t2 = vadd(t, mv)
                    if min(t2) >= 0 and t2 not in seen and t2 in fib.point_set:
                        if t2 == goal:
                            reached = True
                        seen.add(t2)
                        nxt.append(t2)
            frontier = nxt
        if not reached:
            return False
    return True
