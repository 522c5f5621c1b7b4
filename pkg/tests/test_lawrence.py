import pytest

from toricbases import (
    Configuration,
    DomainError,
    Tableau,
    fiber_graph,
    find_ssc_chain,
    flatten,
    generalized_lift,
    graver_basis,
    graver_type_scan,
    in_indispensable,
    in_universal_markov,
    indispensable_subset,
    is_semiconformal,
    lift,
    markov_complexity_scan,
    tableau_type,
    tableau_view,
    universal_markov_basis,
)
from toricbases.core import canonicalize, is_zero, vadd, vneg

from conftest import random_curve_triples


def test_lift_shapes(c2311, c345):
    lifted = lift(c2311, 2)
    assert (lifted.m, lifted.n) == (5, 6)
    assert (lift(c2311, 3).m, lift(c2311, 3).n) == (6, 9)
    assert lifted.nonneg_pointed


def test_lift_column_structure(c345):
    r = 3
    lifted = lift(c345, r)
    cols = lifted.columns
    for i in range(r):
        for j in range(c345.n):
            col = cols[i * c345.n + j]
            for block in range(r):
                expected = c345.columns[j] if block == i else (0,) * c345.m
                assert col[block * c345.m:(block + 1) * c345.m] == expected
            ident = col[r * c345.m:]
            assert ident == tuple(1 if t == j else 0 for t in range(c345.n))


def test_lift_requires_r2(c345):
    with pytest.raises(DomainError):
        lift(c345, 1)


def test_generalized_lift(c345):
    coupling = Configuration([[1, 3, 0]])
    gl = generalized_lift(c345, coupling, 2)
    assert (gl.m, gl.n) == (3, 6)
    # rows in the base kernel with coupling-kernel row sum lie in the lifted kernel
    tab = ((1, -2, 1), (2, 1, -2))
    assert gl.in_kernel(flatten(tab))
    assert coupling.multiply(vadd(*tab)) == (0,)
    # identity coupling reproduces the plain lifting exactly
    identity = Configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert generalized_lift(c345, identity, 2).matrix == lift(c345, 2).matrix


def test_generalized_lift_kernel_characterization(c345):
    coupling = Configuration([[1, 4, 0]])
    gl = generalized_lift(c345, coupling, 2)
    plain = lift(c345, 2)
    # a base kernel vector killed by the coupling but nonzero: the tableau
    # (v, 0) sits in the generalized kernel only
    b1, b2 = c345.kernel_basis
    found = None
    for a in range(-20, 21):
        for b in range(-20, 21):
            v = tuple(a * x + b * y for x, y in zip(b1, b2))
            if not is_zero(v) and coupling.multiply(v) == (0,):
                found = v
                break
        if found:
            break
    assert found is not None
    flat = flatten((found, (0, 0, 0)))
    assert gl.in_kernel(flat)
    assert not plain.in_kernel(flat)


def test_generalized_lift_validation(c345):
    with pytest.raises(DomainError):
        generalized_lift(c345, Configuration([[1, 2]]), 2)
    with pytest.raises(DomainError):
        generalized_lift(c345, Configuration([[1, -1, 0]]), 2)


def test_tableau_view_flatten_roundtrip():
    flat = (3, -2, 0, -3, 2, 0)
    rows = tableau_view(flat, 2, 3)
    assert rows == ((3, -2, 0), (-3, 2, 0))
    assert flatten(rows) == flat
    assert tableau_type(flat, 2, 3) == 2
    assert tableau_type((0,) * 6, 2, 3) == 0
    with pytest.raises(DomainError):
        tableau_view((1, 2, 3), 2, 3)


def test_tableau_validation(c2311):
    Tableau(c2311, ((3, -2, 0), (-3, 2, 0)))
    with pytest.raises(DomainError):
        Tableau(c2311, ((1, 0, 0), (-1, 0, 0)))
    with pytest.raises(DomainError):
        Tableau(c2311, ((3, -2, 0), (3, -2, 0)))
    t = Tableau.from_flat(c2311, (3, -2, 0, 0, 0, 0, -3, 2, 0), 3)
    assert t.type == 2
    assert t.flat == (3, -2, 0, 0, 0, 0, -3, 2, 0)


def test_lifted_elements_are_tableaux(c2311):
    lifted = lift(c2311, 2)
    for v in graver_basis(lifted).elements:
        Tableau.from_flat(c2311, v, 2)  # validates rows and zero sum


def test_lifted_graver_box_window(c345):
    from toricbases import box_kernel_oracle
    from conftest import naive_minimal_classes

    lifted = lift(c345, 2)
    gb = graver_basis(lifted)
    box = box_kernel_oracle(lifted, 4)
    in_box = {u for u in gb.elements if max(abs(x) for x in u) <= 4}
    assert set(naive_minimal_classes(box)) == in_box


def test_markov_scan_2_3_11(c2311):
    scan = markov_complexity_scan(c2311, 3)
    assert scan[0][0] == 2 and scan[0][1] == 2
    assert scan[1] == (3, 2, 24)


def test_markov_scan_345(c345):
    scan = markov_complexity_scan(c345, 3)
    assert scan[1][0] == 3 and scan[1][1] == 3
    assert scan[1][2] == 7 * 3 + 6


def test_graver_scan(c345):
    scan = graver_type_scan(c345, 3)
    assert scan[0] == (2, 2)
    assert scan[1][1] >= 3  # the universal basis already reaches type 3


@pytest.mark.slow
def test_r4_types_345(c345):
    caps = {"max_elements": 10**6, "max_pairs": 10**8}
    lifted = lift(c345, 4)
    g = graver_basis(lifted, **caps)
    top_graver = max(tableau_type(v, 4, 3) for v in g.elements)
    assert 3 <= top_graver <= 12  # sandwiched by complexity and its upper bound
    m = universal_markov_basis(lifted, **caps)
    assert len(m.elements) == 7 * 6 + 6 * 4
    assert max(tableau_type(v, 4, 3) for v in m.elements) == 3


def test_scan_validation(c345):
    with pytest.raises(DomainError):
        markov_complexity_scan(c345, 1)
    with pytest.raises(DomainError):
        graver_type_scan(Configuration([[1, -1]]), 2)


def test_r2_collapse_random_curves():
    for spec in random_curve_triples(seed=7, count=5, max_n=20):
        config = Configuration([list(spec)])
        lifted = lift(config, 2)
        g = set(graver_basis(lifted).elements)
        m = set(universal_markov_basis(lifted).elements)
        s = set(indispensable_subset(lifted).elements)
        assert g == m == s


def test_padding_invariance(c2311, c345):
    # type-2 verdicts survive embedding r=2 -> r=3
    l2, l3 = lift(c2311, 2), lift(c2311, 3)
    for v in graver_basis(l2).elements:
        emb = v + (0,) * 3
        assert in_universal_markov(l2, v) == in_universal_markov(l3, emb)
        assert in_indispensable(l2, v) == in_indispensable(l3, emb)
    # type-3 verdicts survive embedding r=3 -> r=4
    l3b, l4 = lift(c345, 3), lift(c345, 4)
    checked = 0
    for v in graver_basis(l3b).elements:
        if tableau_type(v, 3, 3) == 3:
            emb = v + (0,) * 3
            assert in_universal_markov(l3b, v) == in_universal_markov(l4, emb)
            assert in_indispensable(l3b, v) == in_indispensable(l4, emb)
            checked += 1
            if checked >= 6:
                break
    assert checked


def test_first_row_split_forces_chain(c345):
    # when (v1, -v1, 0...) + remainder splits semiconformally in either order,
    # the vector cannot be in the universal basis
    lifted = lift(c345, 3)
    n = c345.n
    for v in graver_basis(lifted).elements:
        if tableau_type(v, 3, n) < 3:
            continue
        rows = tableau_view(v, 3, n)
        if is_zero(rows[0]):
            continue
        z = flatten((rows[0], vneg(rows[0]), (0,) * n))
        w = tuple(a - b for a, b in zip(v, z))
        if any(w) and (is_semiconformal(v, z, w) or is_semiconformal(v, w, z)):
            assert find_ssc_chain(lifted, v) is not None


def test_row_block_permutation_symmetry(c2311):
    lifted = lift(c2311, 3)
    m = set(universal_markov_basis(lifted).elements)
    n = c2311.n

    def permute(v, perm):
        rows = tableau_view(v, 3, n)
        return canonicalize(flatten(tuple(rows[p] for p in perm)))

    for perm in [(1, 0, 2), (2, 0, 1), (1, 2, 0)]:
        assert {permute(v, perm) for v in m} == m
