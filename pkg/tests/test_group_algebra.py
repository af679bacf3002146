from fractions import Fraction
from math import gcd

from hypothesis import given, strategies as st

from hodge_twist.fields import divisors, euler_phi
from hodge_twist.group_algebra import (
    all_idempotents,
    convolve,
    decompose_group_algebra,
    freeness_check,
    idempotent_for_divisor,
    is_free,
    orbit_partition,
)


def test_orbits_n6():
    part = orbit_partition(6)
    assert part.orbits == ((0,), (3,), (2, 4), (1, 5))
    assert part.labels == (6, 3, 2, 1)


def test_orbits_n1():
    part = orbit_partition(1)
    assert part.orbits == ((0,),)
    assert part.labels == (1,)


def test_orbits_ell_mode():
    assert orbit_partition(5, "ell", 2).orbits == ((0,), (1, 2, 4, 3))


def test_idempotent_examples():
    half = Fraction(1, 2)
    assert idempotent_for_divisor(2, 2).coeffs == (half, half)
    assert idempotent_for_divisor(2, 1).coeffs == (half, -half)
    assert idempotent_for_divisor(1, 1).coeffs == (1,)


def test_freeness_examples():
    verdicts = freeness_check([5, 2, 3, 4, 3, 2])
    assert [(v.members, v.constant, v.multiplicity) for v in verdicts] == [
        ((0,), True, 5), ((3,), True, 4), ((2, 4), True, 3), ((1, 5), True, 2)]
    assert not is_free([5, 2, 3, 4, 3, 1])
    assert is_free([1, 1, 1, 1])


def test_decomposition_examples():
    assert sorted(deg for _, _, deg in decompose_group_algebra(6)) == [1, 1, 2, 2]
    assert [deg for _, _, deg in decompose_group_algebra(1)] == [1]
    dec = decompose_group_algebra(12)
    assert len(dec) == 6 and sum(deg for _, _, deg in dec) == 12


def test_orbit_divisor_bijection():
    for n in range(1, 201):
        part = orbit_partition(n)
        assert sorted(part.labels) == divisors(n)
        for orb, d in zip(part.orbits, part.labels):
            assert d % n in orb


def test_idempotents_orthogonal_complete():
    for n in range(1, 61):
        es = all_idempotents(n)
        total = [Fraction(0)] * n
        for e in es:
            for e2 in es:
                prod = convolve(n, e.coeffs, e2.coeffs)
                assert prod == (e.coeffs if e is e2 else (Fraction(0),) * n)
            total = [a + b for a, b in zip(total, e.coeffs)]
            # an idempotent's rank equals the trace of its (circulant) matrix
            assert n * e.coeffs[0] == euler_phi(n // e.divisor)
        assert total == [1] + [0] * (n - 1)
        assert sum(deg for _, _, deg in decompose_group_algebra(n)) == n


@given(st.integers(1, 100), st.integers(1, 50))
def test_ell_orbits_refine_full(n, ell):
    if gcd(n, ell) != 1:
        return
    full = orbit_partition(n).orbits
    for orb in orbit_partition(n, "ell", ell).orbits:
        assert any(set(orb) <= set(f) for f in full)


@given(st.integers(2, 60), st.data())
def test_constant_on_generating_ell_orbits_implies_free(n, data):
    # a vector constant on full orbits is built orbit by orbit
    full = orbit_partition(n)
    values = data.draw(st.lists(st.integers(0, 9), min_size=len(full.orbits), max_size=len(full.orbits)))
    dims = [0] * n
    for orb, v in zip(full.orbits, values):
        for i in orb:
            dims[i] = v
    gens = [u for u in range(1, n) if gcd(u, n) == 1]
    assert all(is_free(dims, "ell", ell) for ell in gens)
    assert is_free(dims)
    # a vector constant on every ell-orbit for a generating set of ells is free
    if len(full.orbits) < n:
        k = data.draw(st.integers(0, n - 1))
        bumped = list(dims)
        bumped[k] += 1
        on_ells = all(is_free(bumped, "ell", ell) for ell in gens)
        assert on_ells == is_free(bumped)
