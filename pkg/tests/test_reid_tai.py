from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from orthomod.reid_tai import (AdmissibleData, brute_force_canonical, canonical_check, corpus,
                               eigen_data, is_admissible, local_model, quasi_reflection_analysis,
                               ramifies_on_boundary, reid_tai_sum, restrict)


def test_eigen_data_examples():
    assert eigen_data(AdmissibleData(2, (2,)), 1) == (F(1, 2),)
    assert eigen_data(AdmissibleData(3, (), ((3, 0),)), 1) == (0, F(1, 3), F(2, 3))
    big = AdmissibleData(8, (), ((4, F(1, 8)),))
    small = AdmissibleData(4, (), ((2, F(1, 4)), (2, F(1, 4))))
    assert eigen_data(big, 2) == eigen_data(small, 1)


def test_restrict_examples():
    th = AdmissibleData(8, (4, 8), ((4, F(1, 8)), (2, F(3, 8))))
    assert restrict(th, 8) == th
    assert restrict(AdmissibleData(8, (), ((4, F(1, 8)),)), 4) == AdmissibleData(4, (), ((2, F(1, 4)),) * 2)
    with pytest.raises(ValueError):
        restrict(th, 3)


def test_admissibility_examples():
    assert is_admissible(AdmissibleData(2, (2,)))
    assert not is_admissible(AdmissibleData(3, (), ((1, F(1, 3)),)))
    for m in range(1, 13):
        assert is_admissible(AdmissibleData(m, (), ((m, 0),)))


def test_reid_tai_sums():
    assert reid_tai_sum([F(1, 3), F(2, 3)]) == 1
    assert reid_tai_sum([0, 0, F(1, 2)]) == F(1, 2)
    assert reid_tai_sum(eigen_data(AdmissibleData(6, (2,), ((3, 0),)), 1)) == F(3, 2)


def test_quasi_reflections():
    r = quasi_reflection_analysis(AdmissibleData(2, (2,)), 1)
    assert (r.kind, r.location) == ("reflection", ("U", 0))
    r = quasi_reflection_analysis(AdmissibleData(2, (), ((2, 0),)), 1)
    assert (r.kind, r.location) == ("reflection", ("W", 0))
    assert quasi_reflection_analysis(AdmissibleData(4, (), ((4, 0),)), 2).kind == "none"


def test_canonical_examples():
    assert canonical_check(AdmissibleData(2, (2,))).canonical
    # a single character is a quasi-reflection: the quotient is smooth
    for m in (4, 5, 7):
        assert canonical_check(AdmissibleData(m, (), ((1, F(1, m)),))).canonical
    res = canonical_check(AdmissibleData(4, (), ((1, F(1, 4)), (1, F(1, 4)))))
    assert not res.canonical and res.witness == 1
    # A_2 surface singularity and the 1/3(1,1) cone
    assert canonical_check(AdmissibleData(3, (3,))).canonical
    assert not canonical_check(AdmissibleData(3, (), ((1, F(1, 3)),) * 2)).canonical


def test_local_models():
    lm = local_model([[1]], [[1]], [F(1, 2)])
    assert lm.theta.W == ((1, F(1, 2)),) and not lm.admissible
    lm = local_model([[0, 1], [1, 0]], [[1, 0], [0, 1]], [0, 0])
    assert lm.theta.W == ((2, 0),) and lm.admissible
    cyc = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    lm = local_model(cyc, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [F(1, 2), 0, 0])
    assert lm.theta.W == ((3, F(1, 6)),)
    # order-3 rotation on N_1 plus a fixed ray: tangent part V_3
    lm = local_model([[0, -1, 0], [1, -1, 0], [0, 0, 1]], [[0, 0, 1]], [F(1, 3)])
    assert lm.theta.U == (3,) and lm.admissible
    with pytest.raises(ValueError):
        local_model([[0, 1], [1, 0]], [[1, 0]], [0])
    with pytest.raises(ValueError):
        local_model([[1, 0], [0, 1]], [[2, 0]], [0])


def test_boundary_predicate():
    assert ramifies_on_boundary([[1, 0], [0, 1]], [0, 0], [1, 0])
    assert not ramifies_on_boundary([[1, 0], [0, -1]], [0, 0], [1, 0])
    assert not ramifies_on_boundary([[1, 0], [0, 1]], [0, F(1, 2)], [1, 0])


# ---------------------------------------------------------------- properties

@st.composite
def thetas(draw, max_m=12):
    m = draw(st.integers(1, max_m))
    divs = [d for d in range(1, m + 1) if m % d == 0]
    U = draw(st.lists(st.sampled_from(divs), max_size=3))
    W = draw(st.lists(st.tuples(st.sampled_from(divs), st.integers(0, m - 1).map(lambda j: F(j, m))),
                      max_size=3))
    return AdmissibleData(m, tuple(U), tuple(W))


@given(thetas(), st.data())
def test_restriction_compatibility(th, data):
    m_sub = data.draw(st.sampled_from([d for d in range(1, th.m + 1) if th.m % d == 0]))
    mpp = th.m // m_sub
    r = restrict(th, m_sub)
    for t in range(m_sub):
        assert eigen_data(r, t) == eigen_data(th, mpp * t)


@given(thetas(), st.data())
def test_restriction_transitive(th, data):
    divs = [d for d in range(1, th.m + 1) if th.m % d == 0]
    m1 = data.draw(st.sampled_from(divs))
    m2 = data.draw(st.sampled_from([d for d in divs if m1 % d == 0]))
    assert restrict(restrict(th, m1), m2) == restrict(th, m2)


@given(thetas())
def test_classifier_matches_brute_force(th):
    if th.dim:
        assert canonical_check(th).canonical == brute_force_canonical(th)


def test_lemma_on_admissible_corpus():
    seen = 0
    for th in corpus(12, 5):
        if is_admissible(th):
            for t in range(1, th.m):
                r = quasi_reflection_analysis(th, t)   # asserts the lemma internally
                if r.kind != "none":
                    assert r.order == 2 and (th.m // 2) % 2 == 1
                    seen += 1
    assert seen > 0
