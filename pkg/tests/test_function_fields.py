import pytest
from hypothesis import assume, given, strategies as st

from hodge_twist.function_fields import (
    Differential,
    Divisor,
    NotCoprimeToP,
    SplittingBoundExceeded,
    cyclic_cover,
    derive,
    differential_divisor,
    divisor_of,
    function_from_polys,
    hyperelliptic,
    is_principal,
    l_dim,
    rr_space,
    torsion_order,
    valuation,
)


def e5():
    return hyperelliptic(5, [0, 1, 0, 1])  # y^2 = x^3 + x over F_5


def e3():
    return hyperelliptic(3, [1, 0, 1, 1])  # y^2 = x^3 + x^2 + 1 over F_3


def test_derive_rules():
    X = e5()
    x, y = X.x(), X.y()
    assert derive(x * x) == x * 2
    fprime = function_from_polys(X, [1, 0, 3])
    half = X.F.inv(2)
    assert derive(y) == fprime * y * function_from_polys(X, [half], H=X.f.coeffs)
    assert derive(y - x) == derive(y) - 1


def test_valuations_e5():
    X = e5()
    P = X.place(2, 0)
    inf = X.places_at_infinity()[0]
    assert valuation(X.x() - 2, P) == 2
    assert valuation(X.y(), P) == 1
    assert valuation(X.x(), inf) == -2
    assert valuation(X.zero(), P) == float("inf")


def test_divisor_examples():
    X = e5()
    inf = X.places_at_infinity()[0]
    assert divisor_of(X.x() - 2) == Divisor(X, {X.place(2, 0): 2, inf: -2})
    E = e3()
    assert divisor_of(E.y() - E.x()) == Divisor(E, {E.place(2, 2): 3, E.places_at_infinity()[0]: -3})
    assert differential_divisor(Differential.invariant(E)).is_zero()


def test_rr_examples():
    E = e3()
    inf = E.places_at_infinity()[0]
    R = rr_space(Divisor(E, {inf: 3}))
    assert R.dim == 3
    assert {str(b) for b in R.basis} == {"1", "x", "y"}
    assert l_dim(Divisor(E)) == 1
    assert l_dim(Divisor(E, {E.place(2, 2): -1})) == 0


def test_torsion_order_examples():
    E = e3()
    inf = E.places_at_infinity()[0]
    n, h = torsion_order(Divisor(E, {E.place(2, 2): 1, inf: -1}), 5)
    assert n == 3 and h == E.y() - E.x()
    n, h = torsion_order(Divisor(E), 5)
    assert n == 1 and h == E.one()
    X = e5()
    n, h = torsion_order(Divisor(X, {X.place(2, 0): 1, X.places_at_infinity()[0]: -1}), 5)
    assert n == 2 and h == X.x() - 2


def test_is_principal_witness_divisor():
    E = e3()
    D = Divisor(E, {E.place(2, 2): 3, E.places_at_infinity()[0]: -3})
    h = is_principal(D)
    assert divisor_of(h) == D


def test_cyclic_cover_examples():
    X = e5()
    info = cyclic_cover(X, X.x() - 2, 2)
    assert info.unramified and info.genus == 1
    # (0,0) is a ramification point, so x itself has even multiplicities; y does not
    info = cyclic_cover(X, X.y(), 2)
    assert not info.unramified and info.genus == 3  # 2g - 2 = 0 + 4 branch points
    E = e3()
    with pytest.raises(NotCoprimeToP):
        cyclic_cover(E, E.y() - E.x(), 3)


CURVES = [
    hyperelliptic(3, [1, 0, 1, 1]),
    hyperelliptic(5, [0, 1, 0, 1]),
    hyperelliptic(7, [3, 2, 0, 1]),
    hyperelliptic(3, [1, 2, 0, 0, 0, 1]),
    hyperelliptic(5, [1, 0, 1, 0, 0, 1]),
    hyperelliptic(7, [1, 3, 0, 0, 0, 1]),
    hyperelliptic(5, [2, 1, 0, 1]),
    hyperelliptic(3, [2, 1, 0, 1]),
    hyperelliptic(7, [1, 0, 0, 1]),
    hyperelliptic(5, [1, 1, 0, 0, 1, 1]),
    hyperelliptic(3, [1, 1, 1, 0, 1, 0, 0, 1]),
]


@st.composite
def curve_function(draw):
    X = draw(st.sampled_from(CURVES))
    q = X.F.q
    A = draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=3))
    B = draw(st.lists(st.integers(0, q - 1), max_size=2))
    return X, function_from_polys(X, A, B)


@given(curve_function())
def test_principal_divisors_have_degree_zero(args):
    X, g = args
    assume(not g.is_zero())
    try:
        D = divisor_of(g)
    except SplittingBoundExceeded:
        assume(False)
    assert D.degree() == 0


@given(curve_function(), curve_function())
def test_leibniz_and_pth_powers(a, b):
    X, g = a
    _, h0 = b
    h = function_from_polys(X, h0.A.coeffs, h0.B.coeffs)
    assert derive(g * h) == derive(g) * h + g * derive(h)
    gp = g
    for _ in range(X.p - 1):
        gp = gp * g
    assert derive(gp).is_zero()


@st.composite
def curve_divisor(draw):
    X = draw(st.sampled_from(CURVES))
    places = X.rational_places() + X.places_at_infinity()
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(places), max_size=len(places)))
    D = Divisor(X, dict(zip(places, coeffs)))
    assume(abs(D.degree()) <= 2 * X.genus + 3)
    return X, D


@given(curve_divisor())
def test_riemann_roch(args):
    X, D = args
    K = X.canonical_divisor()
    assert l_dim(D) - l_dim(K - D) == D.degree() + 1 - X.genus


@given(curve_divisor(), st.data())
def test_dimension_is_a_class_invariant(dv, data):
    X, D = dv
    A = data.draw(st.lists(st.integers(0, X.F.q - 1), min_size=1, max_size=3))
    B = data.draw(st.lists(st.integers(0, X.F.q - 1), max_size=2))
    g = function_from_polys(X, A, B)
    assume(not g.is_zero())
    try:
        div = divisor_of(g)
    except SplittingBoundExceeded:
        assume(False)
    assume(div.curve is X)
    assert l_dim(D) == l_dim(D + div)
