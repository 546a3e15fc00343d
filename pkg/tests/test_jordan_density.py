from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from orthomod.density import P_p, alpha, alpha_oracle, standard_factor
from orthomod.jordan import E_2j, jordan_decompose, valuation, w_p
from orthomod.lattice import diag, direct_sum, hyperbolic_U, parse_lattice, root_D
from orthomod.volume import euler_factor


def test_jordan_examples():
    for p in (2, 3, 5):
        jd = jordan_decompose(hyperbolic_U(), p)
        assert [(b.scale, b.rank) for b in jd.blocks] == [(0, 2)]
    jd = jordan_decompose(root_D(4), 2)
    assert [(b.scale, b.rank, b.odd) for b in jd.blocks] == [(0, 2, False), (1, 2, False)]
    jd = jordan_decompose(diag(-4), 2)
    assert [(b.scale, b.rank, b.odd) for b in jd.blocks] == [(2, 1, True)]
    assert jd.blocks[0].odd_units[0] % 8 == 7


def test_invariant_examples():
    assert w_p(jordan_decompose(parse_lattice("2U + E8"), 3)) == 0
    jd = jordan_decompose(hyperbolic_U(), 2)
    assert E_2j(jd, 0) == F(3, 2)


def test_P_p():
    assert P_p(3, 0) == 1
    assert P_p(2, 1) == F(3, 4)
    assert P_p(3, 2) == F(640, 729)


def test_alpha_odd_examples():
    assert alpha(hyperbolic_U(), 3) == F(2, 3)
    assert alpha(diag(5), 3) == 1


@pytest.mark.parametrize("expr,p,k", [("U", 3, 2), ("U", 2, 3), ("<1> + <-1>", 2, 3),
                                      ("D4", 3, 1), ("A2", 3, 2), ("U + A1", 2, 4)])
def test_alpha_matches_oracle(expr, p, k):
    L = parse_lattice(expr)
    a = alpha_oracle(L, p, k, cap=10 ** 6)
    assert a == alpha_oracle(L, p, k + 1, cap=10 ** 6)
    assert alpha(L, p) == a


@pytest.mark.parametrize("p", [7, 11, 13])
@pytest.mark.parametrize("expr", ["2U + A2", "U + <-3>", "2U + D4"])
def test_good_primes_are_euler_factors(expr, p):
    from orthomod.volume import character_of
    L = parse_lattice(expr)
    assert alpha(L, p) == euler_factor(p, L.rank, character_of(L))


terms = st.lists(st.sampled_from(["U", "A1", "A2", "A3", "D4", "<2>", "<-6>", "<3>", "<12>", "D5", "E8"]),
                 min_size=1, max_size=5)


@given(terms, st.sampled_from([2, 3, 5]))
def test_jordan_ranks_and_determinant(ts, p):
    L = parse_lattice(" + ".join(ts))
    jd = jordan_decompose(L, p)
    assert sum(b.rank for b in jd.blocks) == L.rank
    assert sum(b.scale * b.rank for b in jd.blocks) == valuation(abs(L.det), p)


@given(terms, st.sampled_from([3, 5, 7]), st.integers(1, 3))
def test_jordan_shifts_under_scaling(ts, p, e):
    L = parse_lattice(" + ".join(ts))
    a = sorted((b.scale, b.rank) for b in jordan_decompose(L, p).blocks)
    b = sorted((s.scale - e, s.rank) for s in jordan_decompose(L.scale(p ** e), p).blocks)
    assert a == b


@given(terms, terms, st.sampled_from([3, 5]))
def test_alpha_positive_and_standard_factor(t1, t2, p):
    L = parse_lattice(" + ".join(t1 + t2))
    assert alpha(L, p) > 0
    assert standard_factor(L, p) > 0
