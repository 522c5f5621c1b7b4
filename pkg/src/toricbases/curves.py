"""Closed forms for monomial curves {n1, n2, n3} and their liftings.

The minimal multipliers c_i (smallest positive c with c*n_i a nonnegative
combination of the other two generators) decide everything: if some
relation c_i*n_i = c_j*n_j holds the toric ideal is a complete
intersection, otherwise it has a unique minimal Markov basis
{u1, u2, u3} with u_i carrying -c_i at position i.  Both cases come with
explicit universal Markov bases, for the curve itself and for every
Lawrence lifting, all cross-checkable against the brute-force engines.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb, gcd
from typing import Optional, Sequence

from .core import (
    Configuration,
    ConsistencyError,
    DomainError,
    IntVec,
    canonicalize,
    grlex_key,
    intvec,
    is_zero,
    one_norm,
    vadd,
    vneg,
    vscale,
)
from .graver import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_PAIRS,
    graver_basis,
)
from .lawrence import flatten, lift, tableau_type
from .markov import (
    KIND_UNIVERSAL,
    MarkovBasis,
    indispensable_subset,
    is_semiconformal,
    is_ssc_decomposition,
    universal_markov_basis,
)


@dataclass(frozen=True)
class Curve:
    """A monomial curve in 3-space, given by its three positive exponents."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        for x in (self.n1, self.n2, self.n3):
            if not isinstance(x, int) or x < 1:
                raise DomainError("curve exponents must be positive integers")
        if gcd(gcd(self.n1, self.n2), self.n3) != 1:
            raise DomainError("curve exponents must have gcd 1")

    @property
    def entries(self) -> IntVec:
        return (self.n1, self.n2, self.n3)

    @cached_property
    def config(self) -> Configuration:
        return Configuration([self.entries])


def nonneg_representations(value: int, a: int, b: int) -> list[tuple[int, int]]:
    """All (x, y) in N^2 with x*a + y*b = value, ascending in x."""
    out = []
    for x in range(value // a + 1):
        rem = value - x * a
        if rem % b == 0:
            out.append((x, rem // b))
    return out


@dataclass(frozen=True)
class HerzogData:
    """Minimal multipliers c_i, one representation each, and the classification."""

    curve: Curve
    c: tuple[int, int, int]
    reps: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    critical: Optional[tuple[int, int]]  # 0-based (i, j), i < j, c_i*n_i == c_j*n_j

    @property
    def is_complete_intersection(self) -> bool:
        return self.critical is not None


def herzog_data(curve: Curve) -> HerzogData:
    """Compute the c_i by increasing search and classify the curve.

    The stored representation for each i is the one with the smallest
    coefficient on the smaller of the two other exponents.  Outside the
    complete-intersection case the representation is provably unique; that
    uniqueness is re-checked here rather than assumed.
    """
    n = curve.entries
    c: list[int] = []
    all_reps: list[list[tuple[int, int]]] = []
    for i in range(3):
        j, k = (t for t in range(3) if t != i)
        ci = 1
        while True:
            reps = nonneg_representations(ci * n[i], n[j], n[k])
            if reps:
                break
            ci += 1
        c.append(ci)
        all_reps.append(reps)
    critical = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if c[i] * n[i] == c[j] * n[j]:
            critical = (i, j)
            break
    has_zero_rep = any(x == 0 or y == 0 for reps in all_reps for x, y in reps)
    if (critical is not None) != has_zero_rep:
        raise ConsistencyError(
            f"classification mismatch for {n}: critical={critical}, "
            f"zero representation present={has_zero_rep}")
    if critical is None:
        for i, reps in enumerate(all_reps):
            if len(reps) != 1:
                raise ConsistencyError(
                    f"representation of c_{i + 1}*n_{i + 1} is not unique for {n}")
    chosen = tuple(reps[0] for reps in all_reps)
    return HerzogData(curve, tuple(c), chosen, critical)


def _nonci_vectors(hd: HerzogData) -> tuple[IntVec, IntVec, IntVec]:
    (r12, r13), (r21, r23), (r31, r32) = hd.reps
    c1, c2, c3 = hd.c
    return (-c1, r12, r13), (r21, -c2, r23), (r31, r32, -c3)


def _ci_vectors(hd: HerzogData) -> tuple[IntVec, IntVec, int, int]:
    """(u1, u2, d_lo, d_hi) in original coordinates.

    The formula is stated for a critical relation on the last two
    coordinates; other cases rotate the indices there and back.
    """
    i0, j0 = hd.critical
    k0 = 3 - i0 - j0
    perm = (k0, i0, j0)  # new position p holds old index perm[p]
    c_new = tuple(hd.c[p] for p in perm)
    r12, r13 = hd.reps[k0]  # over (n_i0, n_j0), i0 < j0
    u1_new = (-c_new[0], r12, r13)
    u2_new = (0, -c_new[1], c_new[2])
    d_lo = -(r13 // c_new[2])
    d_hi = r12 // c_new[1]
    inv = tuple(perm.index(q) for q in range(3))

    def back(x: IntVec) -> IntVec:
        return tuple(x[inv[q]] for q in range(3))

    return back(u1_new), back(u2_new), d_lo, d_hi


def closed_form_markov(curve: Curve) -> tuple[MarkovBasis, int]:
    """Universal Markov basis of the curve plus the number of minimal bases."""
    hd = herzog_data(curve)
    config = curve.config
    if not hd.is_complete_intersection:
        u1, u2, u3 = _nonci_vectors(hd)
        if not is_zero(vadd(vadd(u1, u2), u3)):
            raise ConsistencyError(
                f"generators of {curve.entries} do not sum to zero")
        elements = sorted({canonicalize(u) for u in (u1, u2, u3)}, key=grlex_key)
        return MarkovBasis(config, KIND_UNIVERSAL, tuple(elements)), 1
    u1, u2, d_lo, d_hi = _ci_vectors(hd)
    elems = {canonicalize(u2)}
    for d in range(d_lo, d_hi + 1):
        elems.add(canonicalize(vadd(vscale(d, u2), u1)))
    for u in elems:
        if not config.in_kernel(u):
            raise ConsistencyError(f"closed-form vector {u} is not a kernel vector")
    elements = sorted(elems, key=grlex_key)
    return MarkovBasis(config, KIND_UNIVERSAL, tuple(elements)), d_hi - d_lo + 1


def closed_form_lawrence_markov(curve: Curve, r: int, *,
                                max_elements: int = DEFAULT_MAX_ELEMENTS,
                                max_pairs: int = DEFAULT_MAX_PAIRS) -> MarkovBasis:
    """Universal (= indispensable) Markov basis of the r-th lifting, in closed form.

    Type-2 elements pair every Graver sign class of the curve with its
    negation across every ordered pair of rows; away from the complete
    intersection case the type-3 elements place the six permutations of
    (u1, u2, u3) on every row triple.
    """
    if r < 2:
        raise DomainError("lifting needs r >= 2")
    hd = herzog_data(curve)
    gb = graver_basis(curve.config, max_elements=max_elements, max_pairs=max_pairs)
    k = len(gb.elements)
    zero = (0, 0, 0)
    flats: set[IntVec] = set()
    for i, j in combinations(range(r), 2):
        for u in gb.elements:
            rows = [zero] * r
            rows[i] = u
            rows[j] = vneg(u)
            flats.add(canonicalize(flatten(rows)))
    expected = k * comb(r, 2)
    if not hd.is_complete_intersection and r >= 3:
        u1, u2, u3 = _nonci_vectors(hd)
        for pos in combinations(range(r), 3):
            for perm in permutations((u1, u2, u3)):
                rows = [zero] * r
                for p, u in zip(pos, perm):
                    rows[p] = u
                flats.add(canonicalize(flatten(rows)))
        expected += 6 * comb(r, 3)
    if len(flats) != expected:
        raise ConsistencyError(
            f"closed-form lifting basis for {curve.entries} has {len(flats)} "
            f"elements, expected {expected}")
    lifted = lift(curve.config, r)
    return MarkovBasis(lifted, KIND_UNIVERSAL, tuple(sorted(flats, key=grlex_key)))


def markov_complexity(curve: Curve) -> int:
    """Largest type over the universal Markov bases of all liftings: 2 or 3."""
    return 2 if herzog_data(curve).is_complete_intersection else 3


def graver_lower_bound(curve: Curve) -> int:
    n1, n2, n3 = curve.entries
    d12, d13, d23 = gcd(n1, n2), gcd(n1, n3), gcd(n2, n3)
    return n1 // (d12 * d13) + n2 // (d12 * d23) + n3 // (d13 * d23)


def reduce_curve(curve: Curve) -> Curve:
    """Divide out the pairwise gcds; Graver complexity is unchanged."""
    n1, n2, n3 = curve.entries
    d12, d13, d23 = gcd(n1, n2), gcd(n1, n3), gcd(n2, n3)
    return Curve(n1 // (d12 * d13), n2 // (d12 * d23), n3 // (d13 * d23))


def _indispensable_generators(hd: HerzogData) -> list[IntVec]:
    # Herzog-form signs (negative entry on the diagonal index), not canonical,
    # so derived circuits come out in their conventional form.
    if hd.is_complete_intersection:
        u1, u2, _, _ = _ci_vectors(hd)
        return [u2]
    return list(_nonci_vectors(hd))


def hs_lower_bound(curve: Curve, coupling: Configuration, *,
                   max_elements: int = DEFAULT_MAX_ELEMENTS,
                   max_pairs: int = DEFAULT_MAX_PAIRS
                   ) -> tuple[int, Optional[IntVec]]:
    """Max 1-norm in the Graver basis of coupling * S(A), with a witness.

    coupling = identity gives the Markov-complexity lower bound; other
    couplings bound the complexity of the corresponding generalized
    liftings.  Returns (0, None) when the inner Graver basis is empty.
    """
    if coupling.n != 3:
        raise DomainError(f"coupling must have 3 columns, got {coupling.n}")
    hd = herzog_data(curve)
    cols = [coupling.multiply(s) for s in _indispensable_generators(hd)]
    matrix = Configuration([[col[i] for col in cols] for i in range(coupling.m)])
    gg = graver_basis(matrix, max_elements=max_elements, max_pairs=max_pairs)
    if not gg.elements:
        return 0, None
    top = max(one_norm(v) for v in gg.elements)
    witness = min((v for v in gg.elements if one_norm(v) == top), key=grlex_key)
    return top, witness


@dataclass(frozen=True)
class FanPosition:
    """Where a kernel vector of the curve sits relative to the generators.

    kind "ray": v = alpha * w for the single summand (alpha, w);
    kind "cone": v = alpha*(-u_i) + beta*u_j, a strongly semiconformal sum;
    kind "sc-split": the complete-intersection case, v as an ordered
    semiconformal sum of multiples of the two generators.
    """

    kind: str
    summands: tuple[tuple[int, IntVec], ...]
    strongly_semiconformal: Optional[bool] = None

    @property
    def vector(self) -> IntVec:
        total = vscale(self.summands[0][0], self.summands[0][1])
        for coef, vec in self.summands[1:]:
            total = vadd(total, vscale(coef, vec))
        return total


def _solve_coords(u1: IntVec, u2: IntVec, v: IntVec) -> Optional[tuple[int, int]]:
    for p in range(3):
        for q in range(p + 1, 3):
            det = u1[p] * u2[q] - u1[q] * u2[p]
            if det:
                anum = v[p] * u2[q] - v[q] * u2[p]
                bnum = u1[p] * v[q] - u1[q] * v[p]
                if anum % det or bnum % det:
                    return None
                a, b = anum // det, bnum // det
                if vadd(vscale(a, u1), vscale(b, u2)) == v:
                    return a, b
                return None
    return None


def fan_position(curve: Curve, v: Sequence[int]) -> FanPosition:
    """Decompose a kernel vector over the curve's generators.

    Away from the complete intersection case every nonzero kernel vector
    is either a positive multiple of some +-u_i or an interior point of
    one of the six cones spanned by a -u_i and a u_j; in the complete
    intersection case it is an ordered semiconformal sum of multiples of
    u1 and +-u2, flagged by whether that sum is also strongly
    semiconformal.
    """
    v = intvec(v)
    config = curve.config
    if is_zero(v):
        raise DomainError("expected a nonzero kernel vector")
    if not config.in_kernel(v):
        raise DomainError(f"{v} is not in the kernel of the curve")
    hd = herzog_data(curve)
    if not hd.is_complete_intersection:
        u1, u2, u3 = _nonci_vectors(hd)
        coords = _solve_coords(u1, u2, v)
        if coords is None:
            raise ConsistencyError(
                f"{v} is not an integer combination of the generators")
        a, b = coords
        if b == 0:
            return FanPosition("ray", ((abs(a), u1 if a > 0 else vneg(u1)),))
        if a == 0:
            return FanPosition("ray", ((abs(b), u2 if b > 0 else vneg(u2)),))
        if a == b:
            return FanPosition("ray", ((abs(a), vneg(u3) if a > 0 else u3),))
        if a > b > 0:
            parts = ((b, vneg(u3)), (a - b, u1))
        elif b > a > 0:
            parts = ((a, vneg(u3)), (b - a, u2))
        elif a < 0 < b:
            parts = ((-a, vneg(u1)), (b, u2))
        elif a < b < 0:
            parts = ((b - a, vneg(u1)), (-b, u3))
        elif b < a < 0:
            parts = ((a - b, vneg(u2)), (-a, u3))
        else:  # b < 0 < a
            parts = ((-b, vneg(u2)), (a, u1))
        chain = [vscale(c, w) for c, w in parts]
        ssc = is_ssc_decomposition(config, v, chain)
        return FanPosition("cone", parts, ssc)
    u1, u2, _, _ = _ci_vectors(hd)
    coords = _solve_coords(u1, u2, v)
    if coords is None:
        raise ConsistencyError(
            f"{v} is not an integer combination of the generators")
    a, b = coords
    if a == 0:
        return FanPosition("ray", ((abs(b), u2 if b > 0 else vneg(u2)),))
    if b == 0:
        return FanPosition("ray", ((abs(a), u1 if a > 0 else vneg(u1)),))
    second = u2 if b > 0 else vneg(u2)
    if a < 0:
        parts = ((-a, vneg(u1)), (abs(b), second))
    else:
        parts = ((abs(b), second), (a, u1))
    first_part = vscale(parts[0][0], parts[0][1])
    second_part = vscale(parts[1][0], parts[1][1])
    if not is_semiconformal(v, first_part, second_part):
        raise ConsistencyError(
            f"split of {v} over the generators is not semiconformal")
    ssc = is_ssc_decomposition(config, v, [first_part, second_part])
    return FanPosition("sc-split", parts, ssc)


def verify_closed_forms(curve: Curve, lawrence_r: Optional[int] = None, *,
                        max_elements: int = DEFAULT_MAX_ELEMENTS,
                        max_pairs: int = DEFAULT_MAX_PAIRS) -> None:
    """Cross-check the closed forms against the brute-force engines.

    Raises ConsistencyError on any mismatch; this is the --verify path, so
    degenerate inputs fail loudly instead of trusting either side.
    """
    closed, _ = closed_form_markov(curve)
    brute = universal_markov_basis(
        curve.config, max_elements=max_elements, max_pairs=max_pairs)
    if set(closed.elements) != set(brute.elements):
        raise ConsistencyError(
            f"closed-form universal basis of {curve.entries} disagrees with "
            f"brute force: {sorted(closed.elements)} vs {sorted(brute.elements)}")
    if lawrence_r is None:
        return
    closed_l = closed_form_lawrence_markov(
        curve, lawrence_r, max_elements=max_elements, max_pairs=max_pairs)
    lifted = closed_l.config
    brute_u = universal_markov_basis(
        lifted, max_elements=max_elements, max_pairs=max_pairs)
    if set(closed_l.elements) != set(brute_u.elements):
        raise ConsistencyError(
            f"closed-form lifting basis of {curve.entries} at r={lawrence_r} "
            f"disagrees with the brute-force universal basis")
    brute_s = indispensable_subset(
        lifted, max_elements=max_elements, max_pairs=max_pairs)
    if set(closed_l.elements) != set(brute_s.elements):
        raise ConsistencyError(
            f"lifting basis of {curve.entries} at r={lawrence_r} is not "
            f"entirely indispensable")
    top = max((tableau_type(v, lawrence_r, 3) for v in brute_u.elements), default=0)
    mc = markov_complexity(curve)
    if top > mc:
        raise ConsistencyError(
            f"lifting of {curve.entries} at r={lawrence_r} has type {top} "
            f"above the complexity {mc}")
    if top < mc and (lawrence_r >= 3 or mc == 2):
        raise ConsistencyError(
            f"lifting of {curve.entries} at r={lawrence_r} attains type {top}, "
            f"expected {mc}")
