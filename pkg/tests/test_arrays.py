import numpy as np
import pytest
from hypothesis import given, strategies as st

from propus.arrays import (
    back_circulant_R,
    build_symmetric_hadamard,
    circulant,
    goethals_seidel,
    is_hadamard,
    is_skew_type,
    is_symmetric_matrix,
    left_R,
    propus,
    propus_order,
    right_R,
)
from propus.catalog import load_catalog
from propus.core import BinarySequence, InvalidInputError
from propus.family import DifferenceFamily, PreconditionError
from propus.params import PropusParameterSet

pm_rows = st.integers(1, 20).flatmap(lambda v: st.lists(st.sampled_from([1, -1]), min_size=v, max_size=v))
four_rows = st.integers(1, 12).flatmap(
    lambda v: st.lists(st.lists(st.sampled_from([1, -1]), min_size=v, max_size=v), min_size=4, max_size=4))


def test_circulant_layout():
    c = circulant(BinarySequence.from_string("+--"))
    assert c.tolist() == [[1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
    c = circulant([1, 2, 3])
    # every row is the right shift of the one above
    assert c.tolist() == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]


@given(pm_rows)
def test_R_identities(a):
    c = circulant(a)
    R = back_circulant_R(len(a))
    assert np.array_equal(R @ R, np.eye(len(a), dtype=int))
    assert np.array_equal(right_R(c), c @ R)
    assert np.array_equal(left_R(c), R @ c)
    assert is_symmetric_matrix(c @ R)
    assert np.array_equal(R @ c @ R, c.T)


@given(four_rows)
def test_propus_is_rearranged_gs(rows):
    cs = [circulant(r) for r in rows]
    v = len(rows[0])
    g = goethals_seidel(*cs).copy()
    g[:, :v] *= -1
    g[[*range(v, 2 * v), *range(2 * v, 3 * v)]] = g[[*range(2 * v, 3 * v), *range(v, 2 * v)]]
    assert np.array_equal(g, propus(*cs))


def test_gs_skew_type_from_skew_first_block():
    a = BinarySequence.from_string("++-")  # skew, a_0 = +1
    cs = [circulant(a), circulant([1, 1, -1]), circulant([1, 1, -1]), circulant([1, 1, 1])]
    h = goethals_seidel(*cs)
    assert is_hadamard(h) and is_skew_type(h)
    assert not is_symmetric_matrix(h)


@pytest.mark.parametrize("entry", load_catalog()[:12], ids=lambda e: e.source)
def test_catalog_families_give_symmetric_hadamard(entry):
    h = build_symmetric_hadamard(entry.family)
    assert h.shape == (4 * entry.family.v,) * 2
    assert is_hadamard(h) and is_symmetric_matrix(h)


def test_d_symmetric_family_goes_first():
    entry = next(e for e in load_catalog() if e.family.symmetric_slots() == "D")
    order = propus_order(entry.family)
    assert is_symmetric_matrix(propus(*order))


def test_preconditions():
    p = PropusParameterSet.parse("(9;3,3,3,3;3)")
    fam = DifferenceFamily.from_lists(p, [[0, 1, 8], [0, 1, 3], [0, 1, 4], [0, 2, 5]])
    with pytest.raises(PreconditionError):
        propus_order(fam)
    fam = DifferenceFamily.from_lists(p, [[0, 1, 3], [0, 1, 3], [0, 1, 3], [0, 2, 5]])
    with pytest.raises(PreconditionError):
        propus_order(fam)
    # right shape but not a difference family
    fam = DifferenceFamily.from_lists(p, [[0, 1, 8], [0, 1, 2], [0, 1, 2], [0, 1, 8]])
    with pytest.raises(PreconditionError):
        build_symmetric_hadamard(fam)


def test_bad_inputs():
    with pytest.raises(InvalidInputError):
        goethals_seidel(np.eye(2), np.eye(2), np.eye(2), np.eye(3))
    with pytest.raises(InvalidInputError):
        is_hadamard(np.ones((2, 3)))
    with pytest.raises(InvalidInputError):
        is_hadamard(np.zeros((2, 2)))
    assert is_hadamard(np.array([[1, 1], [1, -1]]))
    assert not is_hadamard(np.ones((2, 2), dtype=int))
