import pytest
from hypothesis import given, strategies as st

from orthomod.lattice import LatticeError, divisor, parse_lattice
from orthomod.reflective import (NONSPLIT, NOT_REFLECTIVE, SPLIT, candidate_norms, classify_vector,
                                 eichler_orbits, has_standard_2U, stabilizer_index)


def test_classify_examples():
    L = parse_lattice("2U + A1")
    assert classify_vector(L, [0, 0, 0, 0, 1]) == SPLIT
    assert classify_vector(L, [1, -1, 0, 0, 0]) == NONSPLIT
    assert classify_vector(L, [1, -2, 0, 0, 0]) == NOT_REFLECTIVE
    with pytest.raises(LatticeError):
        classify_vector(L, [1, 1, 0, 0, 0])
    with pytest.raises(LatticeError):
        classify_vector(L, [2, -2, 0, 0, 0])


def test_has_2U():
    assert has_standard_2U(parse_lattice("2U + D4"))
    assert not has_standard_2U(parse_lattice("U + D4 + U"))


@pytest.mark.parametrize("expr", ["2U + A1", "2U + A2", "2U + D4", "2U + D5", "2U + A1 + A1", "2U + <-6>"])
def test_orbit_witnesses(expr):
    L = parse_lattice(expr)
    norms = {n for n, _ in candidate_norms(L)}
    orbs = eichler_orbits(L)
    assert orbs
    for o in orbs:
        assert classify_vector(L, o.witness) == o.type
        assert divisor(L, o.witness) == o.div and L.norm(o.witness) == o.norm
        assert o.norm in norms
        st_ = stabilizer_index(L, o)
        assert st_.value >= 1


def test_family_orbits():
    from orthomod.obstruction import odd_unimodular_even_part
    L = odd_unimodular_even_part(1, 4)
    types = sorted((o.norm, o.type) for o in eichler_orbits(L))
    assert types == [(-4, NONSPLIT), (-2, NONSPLIT)]
    L = odd_unimodular_even_part(1, 2)
    assert (-2, SPLIT) in [(o.norm, o.type) for o in eichler_orbits(L)]


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_classification_is_consistent(v):
    from math import gcd
    from functools import reduce
    L = parse_lattice("2U + A2")
    if reduce(gcd, map(abs, v), 0) != 1 or L.norm(v) >= 0:
        return
    kind = classify_vector(L, v)
    d, n = divisor(L, v), -L.norm(v)
    if kind == SPLIT:
        assert n == d
    elif kind == NONSPLIT:
        assert n == 2 * d
    else:
        assert (2 * d) % n
