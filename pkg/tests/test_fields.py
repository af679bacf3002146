from hypothesis import given, strategies as st

from hodge_twist.fields import GF, QQ, Polynomial, canonical_irreducible, cyclotomic_poly, divisors, euler_phi

F3 = GF(3, 1)
F9 = GF(3, 2)


def test_prime_field_addition():
    assert F3.add(2, 2) == 1


def test_f9_modulus_and_powers():
    t = F9.gen()
    assert t * t == F9.from_int(2)
    assert t ** 3 == t * F9.from_int(2)


def test_frobenius_and_pth_root_f9():
    t = F9.gen()
    two_t = t * F9.from_int(2)
    assert t.frobenius() == two_t
    assert two_t.pth_root() == t


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == Polynomial(QQ, [-1, 1])
    assert cyclotomic_poly(2) == Polynomial(QQ, [1, 1])
    assert cyclotomic_poly(6) == Polynomial(QQ, [1, -1, 1])


def test_canonical_irreducible_examples():
    assert canonical_irreducible(3, 1).coeffs == (0, 1)
    assert canonical_irreducible(3, 2).coeffs == (1, 0, 1)
    assert canonical_irreducible(5, 2).coeffs == (2, 0, 1)


FIELDS = [GF(3, 1), GF(3, 2), GF(5, 2), GF(7, 1), GF(3, 3)]


@st.composite
def field_pair(draw):
    F = draw(st.sampled_from(FIELDS))
    return F, draw(st.integers(0, F.q - 1)), draw(st.integers(0, F.q - 1))


@given(field_pair())
def test_inverse_property(args):
    F, a, _ = args
    if a:
        assert F.mul(a, F.inv(a)) == F.from_int(1)


@given(field_pair())
def test_frobenius_is_ring_map(args):
    F, a, b = args
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.pth_root(a)) == a


def test_frobenius_fixed_field_is_prime_field():
    for p, r in [(3, 2), (3, 3), (3, 6), (5, 2), (7, 2), (5, 3)]:
        F = GF(p, r)
        fixed = [a for a in range(F.q) if F.frobenius(a) == a]
        assert fixed == sorted(F.from_int(i) for i in range(p))


def test_cyclotomic_product_and_degree():
    for n in range(1, 201):
        prod = Polynomial(QQ, [1])
        for e in divisors(n):
            phi = cyclotomic_poly(e)
            assert phi.degree() == euler_phi(e)
            prod = prod * phi
        assert prod == Polynomial(QQ, [-1] + [0] * (n - 1) + [1])
