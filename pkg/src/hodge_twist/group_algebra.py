"""Orbits of Z/nZ under unit groups and the idempotents of Q[Z/nZ]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .fields import QQ, Polynomial, cyclotomic_poly, divisors, euler_phi


class NotCoprime(ValueError):
    pass


class NotADivisor(ValueError):
    pass


@dataclass(frozen=True)
class OrbitPartition:
    n: int
    acting: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None

    def orbit_of(self, i: int) -> tuple[int, ...]:
        i %= self.n
        for orb in self.orbits:
            if i in orb:
                return orb
        raise KeyError(i)

    def to_json(self) -> list[dict]:
        out = []
        for k, orb in enumerate(self.orbits):
            row: dict = {"members": list(orb)}
            if self.labels is not None:
                row["label"] = self.labels[k]
            out.append(row)
        return out


def _units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if gcd(u, n) == 1]


def _cyclic_subgroup(ell: int, n: int) -> list[int]:
    out = [1 % n]
    cur = ell % n
    while cur != out[0]:
        out.append(cur)
        cur = cur * ell % n
    return out


def orbit_partition(n: int, mode: str = "full", ell: int | None = None) -> OrbitPartition:
    """Orbits of multiplication on Z/nZ.

    ``mode="full"`` uses all of (Z/nZ)^* and labels each orbit S by the index
    of the subgroup generated by any member, which is gcd(s, n).
    ``mode="ell"`` uses the cyclic subgroup generated by ``ell``; orbits are
    listed in the order their generators are traced, unlabeled.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if mode == "full":
        acting = _units(n)
    elif mode == "ell":
        if ell is None or gcd(ell, n) != 1:
            raise NotCoprime(f"gcd({ell}, {n}) != 1")
        acting = _cyclic_subgroup(ell, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    seen: set[int] = set()
    orbits = []
    for s in range(n):
        if s in seen:
            continue
        if mode == "ell":
            orb = []
            cur = s
            while cur not in orb:
                orb.append(cur)
                cur = cur * ell % n
        else:
            orb = sorted({s * u % n for u in acting})
        seen.update(orb)
        orbits.append(tuple(orb))
    labels = None
    if mode == "full":
        labels = tuple(gcd(orb[0], n) for orb in orbits)
        # list orbits by decreasing label so {0} (label n) comes first
        order = sorted(range(len(orbits)), key=lambda k: -labels[k])
        orbits = [orbits[k] for k in order]
        labels = tuple(labels[k] for k in order)
    return OrbitPartition(n, tuple(acting), tuple(orbits), labels)


@dataclass(frozen=True)
class Idempotent:
    n: int
    divisor: int
    coeffs: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"divisor": self.divisor, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}


def convolve(n: int, a, b) -> tuple[Fraction, ...]:
    """Product in Q[Z/nZ], done on integer numerators over a common denominator."""
    a = [Fraction(v) for v in a] + [Fraction(0)] * (n - len(a))
    b = [Fraction(v) for v in b] + [Fraction(0)] * (n - len(b))
    da = lcm(*(v.denominator for v in a))
    db = lcm(*(v.denominator for v in b))
    ia = np.array([int(v * da) for v in a], dtype=object)
    ib = np.array([int(v * db) for v in b], dtype=object)
    full = np.convolve(ia, ib)
    out = full[:n].copy()
    out[: len(full) - n] += full[n:]
    return tuple(Fraction(int(v), da * db) for v in out)


def _xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(g, s, t) with s a + t b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Polynomial(QQ, [1]), Polynomial(QQ)
    t0, t1 = Polynomial(QQ), Polynomial(QQ, [1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.leading()
    inv = 1 / lead
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _t_n_minus_1(n: int) -> Polynomial:
    return Polynomial(QQ, [-1] + [0] * (n - 1) + [1])


def idempotent_for_divisor(n: int, d: int) -> Idempotent:
    """Idempotent of Q[T]/(T^n - 1) that is 1 mod Phi_{n/d} and 0 mod the other factors."""
    if n < 1 or d < 1 or n % d:
        raise NotADivisor(f"{d} does not divide {n}")
    phi = cyclotomic_poly(n // d)
    rest = _t_n_minus_1(n).exact_div(phi)
    g, s, _ = _xgcd(rest, phi)
    if g.degree() != 0:
        raise ArithmeticError("cyclotomic factors not coprime")
    e = (rest * s) % _t_n_minus_1(n)
    coeffs = tuple(Fraction(e[i]) for i in range(n))
    return Idempotent(n, d, coeffs)


def all_idempotents(n: int) -> list[Idempotent]:
    return [idempotent_for_divisor(n, d) for d in divisors(n)]


def regular_rank(e: Idempotent) -> int:
    """Rank over Q of multiplication by e on Q[Z/nZ].

    The matrix is circulant, so its rank is n minus the number of n-th roots
    of unity killing e(T), i.e. n - deg gcd(e(T), T^n - 1).
    """
    poly = Polynomial(QQ, e.coeffs)
    if poly.is_zero():
        return 0
    return e.n - poly.gcd(_t_n_minus_1(e.n)).degree()


def decompose_group_algebra(n: int) -> list[tuple[int, Polynomial, int]]:
    return [(d, cyclotomic_poly(n // d), euler_phi(n // d)) for d in divisors(n)]


@dataclass(frozen=True)
class OrbitVerdict:
    members: tuple[int, ...]
    label: int | None
    constant: bool
    multiplicity: int | None


def freeness_check(dims, mode: str = "full", ell: int | None = None) -> list[OrbitVerdict]:
    """Per orbit: is the dimension vector constant there, and if so its value."""
    dims = [int(v) for v in dims]
    if any(v < 0 for v in dims):
        raise ValueError("dimensions must be nonnegative")
    part = orbit_partition(len(dims), mode, ell)
    out = []
    for k, orb in enumerate(part.orbits):
        vals = {dims[i] for i in orb}
        const = len(vals) == 1
        out.append(OrbitVerdict(orb, part.labels[k] if part.labels else None, const,
                                dims[orb[0]] if const else None))
    return out


def is_free(dims, mode: str = "full", ell: int | None = None) -> bool:
    return all(v.constant for v in freeness_check(dims, mode, ell))
