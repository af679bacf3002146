import pytest
from hypothesis import assume, given, settings, strategies as st

from hodge_twist.cech import (
    RamifiedCover,
    b1_cohomology,
    hasse_witt,
    hodge_table,
    is_ordinary_hw,
    ordinarity_bk,
    pushforward_decomposition_check,
    question1_check,
    sheaf_cohomology,
)
from hodge_twist.function_fields import Divisor, hyperelliptic
from hodge_twist.suites import curves_where, rr_curves, two_torsion_classes


def e3():
    return hyperelliptic(3, [1, 0, 1, 1])


def e5():
    return hyperelliptic(5, [0, 1, 0, 1])


def e7():
    return hyperelliptic(7, [0, 1, 0, 1])


def test_structure_sheaf_and_canonical_of_elliptic():
    for E in (e3(), e5(), e7()):
        assert sheaf_cohomology(E, Divisor(E), 0) == (1, 1)
        assert sheaf_cohomology(E, Divisor(E), 1) == (1, 1)


def test_negative_degree_has_no_sections():
    for X in (e5(), hyperelliptic(3, [1, 2, 0, 0, 0, 1])):
        P = X.rational_places()[0]
        assert sheaf_cohomology(X, Divisor(X, {P: -2}), 0)[0] == 0


def test_genus2_two_torsion_remark():
    X = rr_curves()[0]
    assert X.genus == 2
    D = two_torsion_classes(X)[0]
    t = hodge_table(X, D)
    assert (t.h00, t.h01, t.h10, t.h11) == (0, 1, 1, 0)


def test_question1_examples():
    E = e3()
    inf = E.places_at_infinity()[0]
    D = Divisor(E, {E.place(2, 2): 1, inf: -1})
    v = question1_check(E, D, 3)
    assert v.affirmative
    assert all(t.hodge() == (0, 0, 0) for t in v.tables.values())
    assert question1_check(E, Divisor(E), 4).affirmative


def test_question1_positive_on_two_torsion():
    for X in rr_curves()[:3]:
        for D in two_torsion_classes(X)[:2]:
            assert question1_check(X, D, 2).affirmative


def test_b1_and_hasse_witt_examples():
    assert b1_cohomology(e5()) == (0, 0) and ordinarity_bk(e5())
    assert not ordinarity_bk(e7())
    assert hasse_witt(e5()).tolist() == [[2]] and is_ordinary_hw(e5())
    assert hasse_witt(e7()).tolist() == [[0]] and not is_ordinary_hw(e7())
    assert hasse_witt(e3()).tolist() == [[1]] and is_ordinary_hw(e3())


def test_pushforward_examples():
    X = e5()
    inf = X.places_at_infinity()[0]
    v = pushforward_decomposition_check(X, Divisor(X, {X.place(2, 0): 1, inf: -1}), 2)
    assert v.ok and v.genus_component == 1
    assert pushforward_decomposition_check(X, Divisor(X), 1).ok
    E = e3()
    with pytest.raises(RamifiedCover):
        pushforward_decomposition_check(E, Divisor(E, {E.place(2, 2): 1, E.places_at_infinity()[0]: -1}), 3)


def test_pushforward_on_genus2_two_torsion():
    X = rr_curves()[0]
    v = pushforward_decomposition_check(X, two_torsion_classes(X)[0], 2)
    assert v.ok and v.genus_component == 3


def test_ordinarity_agreement():
    curves = []
    for p in (3, 5, 7):
        curves += curves_where(p, 3, lambda X: True, 3, seed=7)
        curves += curves_where(p, 5, lambda X: True, 5, seed=7)
        curves += curves_where(p, 7, lambda X: True, 2, seed=7)
    curves += curves_where(3, 5, lambda X: not is_ordinary_hw(X), 2, seed=7)
    assert len(curves) >= 30
    assert any(not is_ordinary_hw(X) for X in curves)
    for X in curves:
        assert ordinarity_bk(X) == is_ordinary_hw(X), X


def test_b1_rank_relation():
    from hodge_twist import linalg

    for X in curves_where(5, 5, lambda X: True, 6, seed=3):
        h0, h1 = b1_cohomology(X)
        corank = X.genus - linalg.rank(X.F, hasse_witt(X))
        assert h0 == h1 == corank


DUALITY_CURVES = [e3(), e5(), e7(), hyperelliptic(5, [2, 1, 0, 1])] + rr_curves()


@st.composite
def divisors(draw):
    X = draw(st.sampled_from(DUALITY_CURVES))
    places = X.rational_places()[:4] + X.places_at_infinity()
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(places), max_size=len(places)))
    return X, Divisor(X, dict(zip(places, coeffs)))


@settings(max_examples=60)
@given(divisors())
def test_serre_duality_and_riemann_roch(args):
    X, D = args
    assume(abs(D.degree()) <= 2 * X.genus + 3)
    K = X.canonical_divisor()
    h0, h1 = sheaf_cohomology(X, D, 0)
    assert h1 == sheaf_cohomology(X, K - D, 0)[0]
    assert h0 - h1 == D.degree() + 1 - X.genus
    # O(D) x Omega = O(D + K)
    assert sheaf_cohomology(X, D, 1) == sheaf_cohomology(X, D + K, 0)
