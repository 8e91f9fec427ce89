from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgs.sl2jordan import (
    NotACharacterError,
    classical_centralizer_excess,
    codim_of_character,
    decompose_character,
    exact_tensor_codim,
    is_admissible_type,
    min_classical_centralizer_excess,
    sl2_irreducible,
    square_fixed_dims,
    symmetric_tensor_codim,
    tensor_fixed_dim,
)


def test_irreducible_in_large_characteristic():
    m = sl2_irreducible(3, 5)
    assert m.dim == 4
    assert m.fixed_dim == 1
    assert m.unipotent_jordan == (4,)
    assert m.weights() == [3, 1, -1, -3]


def test_irreducible_with_frobenius_twists():
    assert sl2_irreducible(3, 3).dim == 2
    assert sl2_irreducible(3, 3).unipotent_jordan == (2,)
    assert sl2_irreducible(2, 3).unipotent_jordan == (3,)
    assert sl2_irreducible(0, 5).dim == 1


def test_decompose_character_greedy():
    facs = decompose_character([3, 1, 1, -1, -1, -3], 5)
    assert sorted(f.m for f in facs) == [1, 3]
    assert sorted(f.dim for f in facs) == [2, 4]


def test_decompose_rejects_non_characters():
    with pytest.raises(NotACharacterError):
        decompose_character([1], 3)
    with pytest.raises(NotACharacterError):
        decompose_character([2, 2, -2], 5)


ms = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(ms, st.sampled_from([2, 3, 5, 7]))
def test_decompose_round_trip(values, p):
    parts = [sl2_irreducible(m, p) for m in values]
    multiset = Counter()
    for f in parts:
        multiset.update(f.weights())
    recovered = decompose_character(sorted(multiset.elements()), p)
    back = Counter()
    for f in recovered:
        back.update(f.weights())
    assert back == multiset
    assert sum(f.dim for f in recovered) == sum(f.dim for f in parts)


def test_codim_of_character():
    assert codim_of_character([1, -1, 1, -1], 3) == 2
    assert codim_of_character([0, 0], 7) == 0


def test_tensor_fixed_dim_and_codims():
    assert tensor_fixed_dim(2, 3) == 2
    assert tensor_fixed_dim(4, 4) == 4
    assert exact_tensor_codim((2, 2), (3, 1)) == 10
    assert symmetric_tensor_codim((2, 2)) == 8


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3)
)
def test_symmetric_codim_agrees_with_equal_tensor_factors(blocks):
    blocks = tuple(sorted(blocks, reverse=True))
    assert symmetric_tensor_codim(blocks) == exact_tensor_codim(blocks, blocks)


def test_square_fixed_dims():
    assert square_fixed_dims(4, 5) == (2, 2)
    assert square_fixed_dims(5, 7) == (2, 3)
    assert square_fixed_dims(3, None) == (1, 2)
    with pytest.raises(ValueError):
        square_fixed_dims(4, 2)


def test_admissible_block_types():
    assert is_admissible_type("C", 2, (2, 2))
    assert is_admissible_type("B", 2, (2, 2, 1))
    assert not is_admissible_type("C", 2, (3, 1))
    assert not is_admissible_type("C", 2, (2, 1))


def test_centralizer_excess_values():
    assert classical_centralizer_excess("C", 2, (2, 2)) == 2
    assert min_classical_centralizer_excess("C", 4) == 3
    assert min_classical_centralizer_excess("D", 4) == 10
    assert min_classical_centralizer_excess("C", 4, p=2) >= 3
