import pytest

from toricbases import (
    Configuration,
    DomainError,
    ResourceLimitError,
    box_kernel_oracle,
    conformal_normal_form,
    graver_basis,
    graver_complexity,
    is_primitive,
)
from toricbases.core import canonicalize, grlex_key, one_norm
from toricbases.graver import GraverBasis, _completion_from_seeds
from toricbases.markov import find_ssc_chain

from conftest import (
    GRAVER_2_3_11,
    UNIVERSAL_3_4_5,
    naive_minimal_classes,
    random_kernel_vectors,
)


def test_graver_2_3_11(c2311):
    gb = graver_basis(c2311)
    assert set(gb.elements) == GRAVER_2_3_11
    assert len(gb.elements) == 8


def test_graver_identity_empty(identity3):
    assert graver_basis(identity3).elements == ()


def test_graver_345_box_oracle(c345):
    gb = graver_basis(c345)
    for v in UNIVERSAL_3_4_5:
        assert canonicalize(v) in set(gb.elements)
    box = box_kernel_oracle(c345, 15)
    assert set(naive_minimal_classes(box)) == set(gb.elements)


@pytest.mark.parametrize("rows,bound", [
    ([[2, 3, 11]], 11),
    ([[3, 4, 5]], 15),
    ([[1, 2, 3]], 6),
])
def test_box_oracle_equivalence(rows, bound):
    config = Configuration(rows)
    gb = graver_basis(config)
    box = set(box_kernel_oracle(config, bound))
    in_box = {v for v in gb.elements if max(abs(x) for x in v) <= bound}
    assert set(naive_minimal_classes(box)) == in_box


def test_box_oracle_contains_graver_classes(c2311):
    box = set(box_kernel_oracle(c2311, 11))
    assert GRAVER_2_3_11 <= box


def test_box_oracle_identity(identity3):
    assert box_kernel_oracle(identity3, 5) == []


def test_box_oracle_two_ones():
    config = Configuration([[1, 1]])
    assert box_kernel_oracle(config, 3) == [(1, -1), (2, -2), (3, -3)]


def test_box_oracle_caps():
    config = Configuration([[1, 1]])
    with pytest.raises(DomainError):
        box_kernel_oracle(config, 0)
    with pytest.raises(ResourceLimitError):
        box_kernel_oracle(config, 10, max_box=5)


def test_conformal_normal_form(c2311):
    gb = graver_basis(c2311)
    assert conformal_normal_form((6, -4, 0), gb) == (0, 0, 0)
    assert conformal_normal_form((10, -3, -1), gb) == (0, 0, 0)
    for u in gb.elements:
        assert conformal_normal_form(u, gb) == (0, 0, 0)
        pruned = GraverBasis(c2311, tuple(v for v in gb.elements if v != u))
        assert conformal_normal_form(u, pruned) == u
    with pytest.raises(DomainError):
        conformal_normal_form((1, 0, 0), gb)


def test_completeness_random_kernel_vectors(c2311, c345, wide):
    for config in (c2311, c345, wide):
        gb = graver_basis(config)
        for u in random_kernel_vectors(config, 100, seed=11):
            assert conformal_normal_form(u, gb) == tuple([0] * config.n)


def test_is_primitive(c2311, c345):
    assert is_primitive(c2311, (7, -1, -1))
    assert not is_primitive(c2311, (6, -4, 0))
    assert is_primitive(c345, (-3, 1, 1))
    with pytest.raises(DomainError):
        is_primitive(c2311, (0, 0, 0))
    with pytest.raises(DomainError):
        is_primitive(c2311, (1, 1, 1))


def test_primitive_agrees_with_basis(c2311):
    gb = set(graver_basis(c2311).elements)
    for v in box_kernel_oracle(c2311, 11):
        assert is_primitive(c2311, v) == (v in gb)


def test_non_primitive_has_ssc_chain(c2311, wide):
    for config in (c2311, wide):
        gb = set(graver_basis(config).elements)
        bound = 6 if config.n > 3 else 11
        for v in box_kernel_oracle(config, bound):
            if not is_primitive(config, v):
                assert find_ssc_chain(config, v) is not None


def test_completion_idempotent(c2311, c345):
    for config in (c2311, c345):
        gb = graver_basis(config)
        again = _completion_from_seeds(config, gb.elements)
        assert again.elements == gb.elements


def test_skip_toggle_same_output(c2311, wide):
    for config in (c2311, wide):
        a = graver_basis(config, skip_conformal_pairs=True)
        b = graver_basis(config, skip_conformal_pairs=False)
        assert a.elements == b.elements


def test_sign_symmetry(c2311):
    gb = graver_basis(c2311)
    for u in gb.elements:
        assert canonicalize(tuple(-x for x in u)) in set(gb.elements)


def test_caps_error():
    config = Configuration([[2, 3, 11]])
    with pytest.raises(ResourceLimitError):
        graver_basis(config, max_elements=2)
    config2 = Configuration([[3, 4, 5]])
    with pytest.raises(ResourceLimitError):
        graver_basis(config2, max_pairs=3)


def test_graver_complexity_345(c345):
    value, witness = graver_complexity(c345)
    assert value == 12
    assert witness is not None and one_norm(witness) == 12


def test_graver_complexity_single_column():
    config = Configuration([[1, 1]])
    assert graver_basis(config).elements == ((1, -1),)
    assert graver_complexity(config) == (0, None)


def test_graver_complexity_needs_elements(identity3):
    with pytest.raises(DomainError):
        graver_complexity(identity3)


def test_elements_sorted(c2311):
    gb = graver_basis(c2311)
    assert list(gb.elements) == sorted(gb.elements, key=grlex_key)


def test_box_oracle_fuzz_wider_matrices():
    import random

    rng = random.Random(99)
    cases = []
    for _ in range(8):
        cases.append([[rng.randint(0, 6) for _ in range(4)] for _ in range(2)])
    cases.append([[1, -2, 3]])
    cases.append([[2, -1, 0], [0, 3, -2]])
    for rows in cases:
        config = Configuration(rows)
        gb = graver_basis(config)
        bound = max((max(abs(x) for x in u) for u in gb.elements), default=3)
        bound = min(bound, 9)
        box = box_kernel_oracle(config, bound)
        in_box = {u for u in gb.elements if max(abs(x) for x in u) <= bound}
        assert set(naive_minimal_classes(box)) == in_box, rows


def test_graver_deterministic_across_instances():
    a = graver_basis(Configuration([[2, 3, 11]]))
    b = graver_basis(Configuration([[2, 3, 11]]))
    assert a.elements == b.elements
