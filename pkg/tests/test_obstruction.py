from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from orthomod.exact_values import ExactReal, IntervalReal, pi_interval, zeta_interval
from orthomod.jordan import jordan_decompose
from orthomod.lattice import diag, direct_sum, hyperbolic_U, parse_lattice
from orthomod.obstruction import (CERTIFIED, INCONCLUSIVE, SurdSum, certify_family_member,
                                  certify_general_type, cusp_weight, epsilon_constant, epsilon_p,
                                  epsilon_pj, epsilon_report, epsilon_total, f_bound, in_P, m_pj,
                                  threshold_value)


def test_m_pj_examples():
    assert m_pj(parse_lattice("2U + E8"), 3, 0) == 0
    L = parse_lattice("<1> + 4<3>")
    assert m_pj(L, 3, 0) == 3 and m_pj(L, 3, 1) == 0


def test_epsilon_two_is_one_without_two_torsion():
    L = parse_lattice("2U + A2")
    assert epsilon_p(L, 2) == SurdSum(((1, F(1)),))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_P2_bound(n):
    # every 3-adic block has rank one: scales 0..n+1
    L = diag(*[-(3 ** k) for k in range(n + 2)])
    assert in_P(L, 3)
    for j in range(n + 2):
        m = m_pj(L, 3, j)
        assert 4 * m >= n * n - 1
        assert epsilon_pj(L, 3, j) == ExactReal.sqrt(F(1, 3 ** m)) * 4


def test_epsilon_constant_shape():
    vals = [epsilon_constant(n).value for n in (16, 32, 64, 128)]
    assert all(v.lo > 1 or v.hi >= 1 for v in vals)
    assert all(a.hi >= b.hi for a, b in zip(vals, vals[1:]))
    assert vals[0].lo > 1
    assert epsilon_constant(20).value.hi <= (zeta_interval(8) ** 2).hi
    assert epsilon_constant(12).heuristic


def test_f_at_four_two_paths():
    direct = IntervalReal.point(576) * pi_interval(128) ** 3 * zeta_interval(3, 128)
    f4 = f_bound(4)
    assert f4.lo <= direct.hi and direct.lo <= f4.hi
    assert 21000 < float(f4) < 22000


@pytest.mark.parametrize("n", [40, 50, 61, 80])
def test_f_decays(n):
    assert (f_bound(n + 2) / f_bound(n)).hi < 1


def test_threshold_values():
    root2 = IntervalReal.point(2).sqrt()
    assert threshold_value(108).hi < root2.lo
    assert threshold_value(120).hi < 1


def test_cusp_weight():
    assert cusp_weight(24)[0] == 3
    assert cusp_weight(29)[0] == F(9, 2)
    assert cusp_weight(26) == (6, 24)
    for n in range(3, 120):
        l, n_prime = cusp_weight(n)
        assert n_prime == l + F(n, 2) + 5
        assert (n_prime < n) == (n >= 21 or n == 17)


def test_family_decisions():
    assert certify_family_member(4, 6).decision == CERTIFIED
    assert certify_family_member(2, 2).decision == INCONCLUSIVE  # n = 20


def test_certify_descales():
    L = parse_lattice("2U + 4E8 + D6")
    a = F(21)
    c1 = certify_general_type(L, a=a, route="orbits")
    c2 = certify_general_type(L.scale(2), a=a, route="orbits")
    assert c1.decision == c2.decision


def test_signature_checked():
    with pytest.raises(ValueError):
        certify_general_type(parse_lattice("U + A1"))


# ---------------------------------------------------------------- properties

def random_lattice(entries):
    return direct_sum(hyperbolic_U(), hyperbolic_U(), diag(*entries))


entries = st.lists(st.integers(1, 40).map(lambda x: -x), min_size=2, max_size=8)


@given(entries)
def test_m_pj_lower_bound(es):
    L = random_lattice(es)
    n = L.rank - 2
    for q, table in epsilon_report(L).m.items():
        ranks = {b.scale: b.rank for b in jordan_decompose(L, q).blocks}
        for j, m in table.items():
            assert m >= max(0, n - ranks[j])


@given(entries, st.sampled_from([1, 2]))
def test_epsilon_two_scaling(es, rho):
    L = random_lattice(es)
    lhs = epsilon_p(L.scale(2 ** rho), 2)
    rhs = epsilon_p(L, 2).scaled(ExactReal.sqrt(2 ** rho))
    assert lhs == rhs


@given(st.lists(st.integers(1, 30).map(lambda x: -x), min_size=14, max_size=14),
       st.sampled_from([0, 4, 8]))
def test_epsilon_bounded_by_constant(es, extra):
    L = direct_sum(random_lattice(es), *([diag(-1)] * extra))
    n = L.rank - 2
    assert epsilon_total(L).hi <= epsilon_constant(n).value.hi
