from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from orthomod.exact_values import ExactReal
from orthomod.lattice import direct_sum, hyperbolic_U, orthogonal_complement, parse_lattice, root_D, root_E8
from orthomod.volume import (hm_volume_O, spinor_count, spinor_p_set, volume_ratio,
                             volume_ratio_plus, volume_ratio_plus_factor)


def family(m, N):
    return direct_sum(hyperbolic_U(), hyperbolic_U(), *[root_E8()] * m, root_D(N))


def test_spinor_p_sets():
    assert spinor_p_set(parse_lattice("2U + E8")) == set()
    assert spinor_p_set(parse_lattice("2U + A2")) == {3}
    assert spinor_p_set(parse_lattice("2U + A2 + A2")) == set()


def test_spinor_counts():
    assert spinor_count(parse_lattice("2U + E8")).exact
    assert spinor_count(parse_lattice("2U + E8")).lo == 1


def test_hm_volume_positive():
    v = hm_volume_O(parse_lattice("2U + <-2>"))
    assert float(v.base) > 0
    assert hm_volume_O(parse_lattice("2U + E8")).base.radicand == 1


def test_k2_ratio_closed_form():
    L = family(1, 4)
    l2 = [0] * L.rank
    l2[12], l2[13] = 1, -1
    K = orthogonal_complement(L, l2).lattice
    assert volume_ratio_plus(L, K).value == ExactReal(F(96, 17))


def test_plus_factor_values():
    L = family(1, 4)
    K = orthogonal_complement(L, [1, -1] + [0] * (L.rank - 2)).lattice
    assert volume_ratio_plus_factor(L, K) <= {F(1, 2), F(1), F(2)}


@given(st.sampled_from(["A1", "A2", "D4", "A1 + A1", "<-6>", "A3"]), st.integers(2, 3))
def test_ratio_is_positive_and_bracketed(extra, _):
    L = parse_lattice("2U + " + extra)
    K = orthogonal_complement(L, [1, -1] + [0] * (L.rank - 2)).lattice
    r = volume_ratio(L, K)
    assert float(r.base) > 0 and 0 < r.lo <= r.hi
