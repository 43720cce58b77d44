import itertools

import pytest
from hypothesis import given, strategies as st

from propus.core import InvalidInputError
from propus.params import (
    PropusParameterSet,
    enumerate_even_sets,
    enumerate_propus_sets,
    enumerate_sets,
    even_v_admissible,
    representations_p2_2q2_r2,
    solve_triangular,
    triangular,
)


def brute_sets(v):
    """Every normalized (x, y, z) satisfying the two quadratic conditions, by scanning."""
    out = set()
    for x, y, z in itertools.product(range(v // 2 + 1), repeat=3):
        lam = x + 2 * y + z - v
        if lam < 0 or x < z:
            continue
        if x * (x - 1) + 2 * y * (y - 1) + z * (z - 1) != lam * (v - 1):
            continue
        out.add(PropusParameterSet(v, x, y, z, lam))
    return out


def test_small_examples():
    assert [str(p) for p in enumerate_propus_sets(3)] == ["(3;1,1,1,0;0)"]
    assert {str(p) for p in enumerate_propus_sets(39)} == {"(39;17,17,17,15;27)", "(39;18,16,16,16;27)"}


@pytest.mark.parametrize("v", range(3, 50, 2))
def test_enumeration_matches_scan(v):
    assert set(enumerate_propus_sets(v)) == brute_sets(v)


def test_parse_and_str():
    p = PropusParameterSet.parse("(13;6,6,6,3;8)")
    assert (p.v, p.x, p.y, p.z, p.lam) == (13, 6, 6, 3, 8)
    assert str(p) == "(13;6,6,6,3;8)" and p.header == "13;6,6,6,3;8"
    assert PropusParameterSet.parse("13;6,6,6,3;8") == p
    for bad in ("(13;6,5,6,3;8)", "13;6,6,6,3;9", "nonsense", "(13;6,6,6,3)"):
        with pytest.raises(InvalidInputError):
            PropusParameterSet.parse(bad)


def test_invalid_sets_rejected():
    with pytest.raises(InvalidInputError):
        PropusParameterSet(9, 3, 3, 3, 4)
    with pytest.raises(InvalidInputError):
        PropusParameterSet(9, 4, 4, 4, 7)


@given(st.integers(0, 2000))
def test_triangular_solutions(n):
    sols = solve_triangular(n)
    assert sols
    for s in sols:
        assert triangular(s.p) + 2 * triangular(s.q) + triangular(s.r) == n == s.value()


def test_even_admissibility_examples():
    for v in (14, 30, 46, 56, 62, 78, 94):
        assert not even_v_admissible(v)
        assert enumerate_even_sets(v) == []
    assert {str(p) for p in enumerate_even_sets(4)} == {"(4;1,1,1,1;0)", "(4;2,2,2,0;2)"}
    assert {str(p) for p in enumerate_even_sets(2)} == {"(2;0,1,1,0;0)", "(2;1,0,0,1;0)"}


@pytest.mark.parametrize("v", range(2, 101, 2))
def test_even_sets_satisfy_conditions(v):
    for p in enumerate_even_sets(v):
        assert (v - 2 * p.x) ** 2 + 2 * (v - 2 * p.y) ** 2 + (v - 2 * p.z) ** 2 == 4 * v
    assert bool(enumerate_even_sets(v)) == bool(representations_p2_2q2_r2(v))


def test_enumerate_sets_dispatch():
    assert enumerate_sets(9) == enumerate_propus_sets(9)
    assert enumerate_sets(4) == enumerate_even_sets(4)
    with pytest.raises(InvalidInputError):
        enumerate_propus_sets(10)
