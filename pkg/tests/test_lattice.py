from fractions import Fraction as F
from math import gcd
from functools import reduce

import pytest
from hypothesis import assume, given, strategies as st

from orthomod.lattice import (IntegralLattice, LatticeError, class_of, diag, direct_sum, divisor,
                              enumerate_vectors, exponent, hyperbolic_U, odd_unimodular,
                              orbit, orthogonal_complement, orthogonal_group_of_module,
                              overlattice_from_isotropic, parse_lattice, root_A, root_D, root_E8,
                              vinberg_reduce)
from orthomod.intmat import smith


def test_signatures():
    assert hyperbolic_U().signature == (1, 1)
    assert parse_lattice("2U + E8").signature == (2, 10)
    assert diag(-4).signature == (0, 1)


def test_constructors():
    assert root_D(2).gram == diag(-2, -2).gram
    assert hyperbolic_U().scale(2).det == -4
    assert root_E8().det == 1
    for n in range(1, 9):
        assert abs(root_A(n).det) == n + 1
    for n in range(2, 9):
        assert abs(root_D(n).det) == 4


def test_discriminant_modules():
    A = root_D(4).discriminant
    assert sorted(A.orders) == [2, 2]
    assert all(A.q(x) == 1 for x in A.elements() if any(x))
    assert parse_lattice("2U + E8").discriminant.size == 1
    A3 = root_D(3).discriminant
    assert list(A3.orders) == [4]
    gen = next(x for x in A3.elements() if A3.order(x) == 4)
    assert A3.q(gen) % 2 == F(-3, 4) % 2


def test_exponent_and_length():
    A = root_D(4).discriminant
    assert (A.exponent, A.length) == (2, 2)
    A = parse_lattice("A3 + A1").discriminant
    assert (A.exponent, A.length) == (4, 2)
    assert exponent(parse_lattice("2U + D4")) == 2


def test_divisor():
    U = hyperbolic_U()
    assert divisor(U, [1, 0]) == 1
    assert divisor(root_D(4), [1, -1, 0, 0]) == 2
    with pytest.raises(LatticeError):
        divisor(U, [2, 0])


def test_complement_of_summand():
    L = parse_lattice("<-2> + U")
    K = orthogonal_complement(L, [1, 0, 0]).lattice
    assert K.gram == hyperbolic_U().gram


@pytest.mark.parametrize("m,N", [(1, 4), (1, 5), (2, 3)])
def test_family_complements(m, N):
    L = direct_sum(hyperbolic_U(), hyperbolic_U(), *[root_E8()] * m, root_D(N))
    off = 4 + 8 * m
    l2 = [0] * L.rank
    l2[off], l2[off + 1] = 1, -1
    K2 = orthogonal_complement(L, l2).lattice
    ref2 = direct_sum(hyperbolic_U(), hyperbolic_U(), root_D(N - 1), *[root_E8()] * m)
    assert K2.det == ref2.det and K2.signature == ref2.signature
    assert K2.discriminant.invariants() == ref2.discriminant.invariants()
    K1 = orthogonal_complement(L, [1, -1] + [0] * (L.rank - 2)).lattice
    ref1 = direct_sum(diag(2), hyperbolic_U(), root_D(N), *[root_E8()] * m)
    assert K1.det == ref1.det and K1.signature == ref1.signature
    assert K1.discriminant.invariants() == ref1.discriminant.invariants()


def test_primitive_and_even():
    assert not diag(-2).is_primitive()
    assert hyperbolic_U().is_primitive() and hyperbolic_U().is_even()
    I = odd_unimodular(2, 3)
    assert I.is_primitive() and not I.is_even()


def test_overlattice():
    L = hyperbolic_U().scale(2)
    assert overlattice_from_isotropic(L, []).gram == L.gram
    A = L.discriminant
    iso = [x for x in A.elements() if any(x) and A.q(x) % 2 == 0 and A.order(x) == 2]
    M = overlattice_from_isotropic(L, [iso[0]])
    assert abs(M.det) * 4 == abs(L.det)


def test_orthogonal_groups():
    A = diag(-2).scale(1).discriminant  # Z/2 with q = -1/2
    assert len(orthogonal_group_of_module(A)) == 1
    A = root_D(4).discriminant
    assert len(orthogonal_group_of_module(A)) == 6
    assert orbit(A, A.zero()) == {A.zero()}


def test_enumerate_vectors():
    U = hyperbolic_U()
    vs = enumerate_vectors(U, 0, 1)
    for v in [(1, 0), (0, 1), (-1, 0), (0, -1)]:
        assert v in vs
    assert (1, 0, 0) in enumerate_vectors(parse_lattice("<-2> + U"), -2, 2)
    assert enumerate_vectors(U, 1, 3) == []


def test_vinberg_reduce_postcondition():
    L = parse_lattice("2U + A1(4)")
    R, _ = vinberg_reduce(L).primitive_descale()
    A = R.discriminant
    assert all(o in (1, 2) for o in A.p_part(2).orders)
    assert A.length <= (R.rank - 2) // 2 + 1


def test_parse_errors():
    for bad in ["", "U +", "X7", "<0>", "U(0)"]:
        with pytest.raises(LatticeError):
            parse_lattice(bad)


# ---------------------------------------------------------------- properties

small_terms = st.lists(st.sampled_from(["U", "A1", "A2", "A3", "D4", "<2>", "<-6>", "<3>", "D5"]),
                       min_size=1, max_size=4)


@given(small_terms)
def test_discriminant_size_is_det(terms):
    L = parse_lattice(" + ".join(terms))
    assert L.discriminant.size == abs(L.det)
    diag_snf, _, _ = smith(L.matrix)
    assert sorted(d for d in map(abs, diag_snf) if d > 1) == sorted(o for o in L.discriminant.orders if o > 1)


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_complement_index_formula(v):
    L = parse_lattice("2U + A2")
    assume(reduce(gcd, map(abs, v), 0) == 1 and L.norm(v) != 0)
    comp = orthogonal_complement(L, v)
    K = comp.lattice
    for b in comp.basis:
        assert L.pair(b, v) == 0
    # [L : Zl + K]^2 |det L| = |(l,l) det K|
    sq, rem = divmod(abs(L.norm(v) * K.det), abs(L.det))
    assert rem == 0
    idx = round(sq ** 0.5)
    assert idx * idx == sq and idx * divisor(L, v) == abs(L.norm(v))


@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_class_of_respects_lattice(v):
    L = parse_lattice("U + A3")
    A = L.discriminant
    # integral vectors lie in the zero class
    assert class_of(L, [F(x) for x in v]) == A.zero()


@given(st.sampled_from(["U", "A2", "D4", "A1 + A1", "<6>"]), st.integers(2, 5))
def test_scaling(expr, a):
    L = parse_lattice(expr)
    S = L.scale(a)
    assert S.det == L.det * a ** L.rank
    D, c = S.primitive_descale()
    assert c % a == 0 and D.gram == L.primitive_descale()[0].gram
