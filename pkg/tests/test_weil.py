from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orthomod.lattice import orthogonal_group_of_module, parse_lattice
from orthomod.weil import (check_relations, commute_check, cyclotomic_poly, invariant_cusp_dim_DN,
                           lift_coeff, lift_weight, min_weight, permutation_action,
                           permutation_from_map, reduce_cyclotomic, table2, weil_rep)


def rep(expr):
    L = parse_lattice(expr)
    return weil_rep(L.discriminant, L.signature[1])


def test_trivial_module():
    W = rep("2U + E8")
    assert np.allclose(W.numeric_S(), [[1]]) and np.allclose(W.numeric_T(), [[1]])
    assert check_relations(W)[0]


def test_A1_T_matrix():
    W = rep("2U + A1")
    A = W.A
    expect = np.diag([np.exp(1j * np.pi * float(A.q(x))) for x in W.elements])
    assert np.allclose(W.numeric_T(), expect)


@pytest.mark.parametrize("expr", ["2U + A1", "2U + A2", "2U + D3", "2U + D4", "2U + A3", "2U + A1 + A1"])
def test_relations_and_commutation(expr):
    W = rep(expr)
    ok, msg = check_relations(W)
    assert ok, msg
    for g in orthogonal_group_of_module(W.A):
        assert commute_check(W, permutation_action(W, g))


def test_corrupted_q_fails():
    W = rep("2U + D3")
    i = next(k for k, x in enumerate(W.elements) if any(x))
    W.T[i, i] = np.roll(W.T[i, i], 1)
    assert not check_relations(W)[0]


def test_wrong_signature_fails():
    L = parse_lattice("2U + A2")
    W = weil_rep(L.discriminant, 5)
    assert not check_relations(W)[0]


def test_non_isometry_fails():
    W = rep("2U + A3")
    els = W.elements
    z = W.A.zero()
    x = next(e for e in els if W.A.order(e) == 4)
    swap = {e: e for e in els}
    swap[z], swap[x] = x, z
    assert not commute_check(W, permutation_from_map(W, swap))
    assert commute_check(W, permutation_from_map(W, {e: e for e in els}))


def test_lift_coefficients():
    c = {((1,), F(-1, 4)): 3, ((0,), F(-1)): 5}
    assert lift_coeff(c, [(1, (1,), F(-1, 2))], 6) == 3
    assert lift_coeff(c, [(1, (0,), -2), (2, (1,), F(-1, 2))], 6) == 5 + 2 ** 5 * 3
    assert lift_coeff(c, [], 6) == 0


def test_weights():
    assert lift_weight(F(9, 2), 5) == 6
    assert min_weight(2) == 6 and min_weight(10) == 6
    assert invariant_cusp_dim_DN(2, 7) == 1 and invariant_cusp_dim_DN(4, 8) == 1
    assert invariant_cusp_dim_DN(2, 3) == 0


def test_table2_is_minimal():
    t = table2()
    for N, l in t.items():
        assert invariant_cusp_dim_DN(N, l) >= 1
        k = F(5, 2) if N % 2 else F(3)
        while k < l:
            if (k + F(N, 2)) % 2 == 0:
                assert invariant_cusp_dim_DN(N, k) == 0
            k += 1


@given(st.integers(3, 400))
def test_min_weight_properties(n):
    l = min_weight(n)
    assert 2 < l <= 6
    assert (l - F(n, 2)).denominator == 1
    assert (l + F(n, 2) - 3) % 4 == 0
    assert min_weight(n + 8) == l


@given(st.integers(1, 40), st.integers(0, 200))
def test_cyclotomic_reduction(N, k):
    phi = cyclotomic_poly(N)
    zero = reduce_cyclotomic([0] * N, N)
    assert reduce_cyclotomic(list(phi), N) == zero
    v = [0] * (k + N + 1)
    v[k + N] = 1
    w = [0] * (k + 1)
    w[k] = 1
    assert reduce_cyclotomic(v, N) == reduce_cyclotomic(w, N)
