"""Exact arithmetic in F_p, F_{p^r}, Q and univariate polynomials over them.

Elements of F_{p^r} = F_p[T]/(m(T)) are stored as integer *codes*
``c_0 + c_1 p + ... + c_{r-1} p^{r-1}`` where ``c_i`` is the coefficient of
``T^i``.  Every vectorised routine in the package works on numpy arrays of
codes; :class:`FieldElement` is the user-facing scalar wrapper.

Multiplication goes through discrete log / exp tables, addition through the
base-``p`` digit table, so any array shape is handled without Python loops.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class DescriptorMismatch(FieldError, TypeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    out = n
    for ell in factorint(n):
        out = out // ell * (ell - 1)
    return out


# ---------------------------------------------------------------------------
# polynomials over Z/pZ as plain int lists (low degree first); only used to
# pick moduli, before any FieldDescriptor exists

def _zp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zp_mod(out, m, p)


def _zp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _zp_trim(list(a))
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _zp_trim(a)
    return a


def _zp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _zp_trim(list(a)), _zp_trim(list(b))
    while b:
        a, b = b, _zp_mod(a, b, p)
    return a


def _zp_powx(e: int, m: list[int], p: int) -> list[int]:
    """x^e mod m."""
    result = [1]
    base = _zp_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _zp_mulmod(result, base, m, p)
        base = _zp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _zp_is_irreducible(m: list[int], p: int) -> bool:
    r = len(m) - 1
    if r == 1:
        return True
    xq = _zp_powx(p**r, m, p)
    if _zp_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(xq + [0] * (2 - len(xq)))]):
        return False
    for ell in factorint(r):
        h = _zp_powx(p ** (r // ell), m, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_zp_gcd(m, h, p)) > 1:
            return False
    return True


@functools.cache
def _modulus_coeffs(p: int, r: int) -> tuple[int, ...]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if r == 1:
        return (0, 1)
    # codes in increasing order == lexicographic on (c_{r-1}, ..., c_0)
    for code in range(p**r):
        m = [(code // p**i) % p for i in range(r)] + [1]
        if m[0] and _zp_is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------


class FieldDescriptor:
    """The finite field F_{p^r} with its canonical modulus.

    Obtain instances through :func:`GF`; descriptors are singletons per
    ``(p, r)`` so identity comparison is meaningful.
    """

    def __init__(self, p: int, r: int):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = _modulus_coeffs(p, r)
        codes = np.arange(self.q, dtype=np.int64)
        self._pw = np.array([p**i for i in range(r)], dtype=np.int64)
        self._digits = (codes[:, None] // self._pw[None, :]) % p
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})"

    def __reduce__(self):
        return (GF, (self.p, self.r))

    # -- table construction ------------------------------------------------
    def _mul_matrix(self, code: int) -> np.ndarray:
        p, r = self.p, self.r
        comp = np.zeros((r, r), dtype=np.int64)
        for i in range(1, r):
            comp[i, i - 1] = 1
        comp[:, r - 1] = [(-c) % p for c in self.modulus[:r]]
        out = np.zeros((r, r), dtype=np.int64)
        power = np.eye(r, dtype=np.int64)
        for d in self._digits[code]:
            out = (out + int(d) * power) % p
            power = (comp @ power) % p
        return out

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        n = q - 1
        primes = list(factorint(n)) if n > 1 else []
        one = np.zeros(self.r, dtype=np.int64)
        one[0] = 1
        gen = None
        for cand in range(2 if q > 2 else 1, q):
            mat = self._mul_matrix(cand)
            ok = True
            for ell in primes:
                v = self._matpow_apply(mat, n // ell, one)
                if np.array_equal(v, one):
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:
            gen = 1
        self.generator_code = gen
        mat = self._mul_matrix(gen)
        exps = np.zeros((max(n, 1), self.r), dtype=np.int64)
        v = one.copy()
        for k in range(n):
            exps[k] = v
            v = (mat @ v) % p
        self._exp = exps @ self._pw
        self._log = np.zeros(q, dtype=np.int64)
        self._log[self._exp] = np.arange(n)
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[self._exp] = self._exp[(-np.arange(n)) % n]

    def _matpow_apply(self, mat: np.ndarray, e: int, v: np.ndarray) -> np.ndarray:
        p = self.p
        res = v.copy()
        base = mat.copy()
        while e:
            if e & 1:
                res = (base @ res) % p
            base = (base @ base) % p
            e >>= 1
        return res

    # -- vectorised arithmetic on codes ---------------------------------------
    # Scalars (python ints) take a table path; anything array-like is
    # broadcast through numpy.  Results keep the input kind.

    @functools.cached_property
    def _small_tables(self):
        if self.q > 729:
            return None
        c = np.arange(self.q)
        add = (((self._digits[c][:, None, :] + self._digits[c][None, :, :]) % self.p) @ self._pw)
        mul = self._exp[(self._log[c][:, None] + self._log[c][None, :]) % (self.q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        neg = ((-self._digits[c]) % self.p) @ self._pw
        return add.tolist(), mul.tolist(), neg.tolist()

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._pw

    def digits(self, a) -> np.ndarray:
        return self._digits[np.asarray(a, dtype=np.int64)]

    def add(self, a, b):
        if type(a) is int and type(b) is int:
            if self.r == 1:
                return (a + b) % self.p
            t = self._small_tables
            if t is not None:
                return t[0][a][b]
            return int(((self._digits[a] + self._digits[b]) % self.p) @ self._pw)
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._pw

    def neg(self, a):
        if type(a) is int:
            if self.r == 1:
                return (-a) % self.p
            t = self._small_tables
            if t is not None:
                return t[2][a]
            return int(((-self._digits[a]) % self.p) @ self._pw)
        if self.r == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return ((-self._digits[a]) % self.p) @ self._pw

    def sub(self, a, b):
        if type(a) is int and type(b) is int:
            return self.add(a, self.neg(b))
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
        return ((self._digits[a] - self._digits[b]) % self.p) @ self._pw

    def mul(self, a, b):
        if type(a) is int and type(b) is int:
            if self.r == 1:
                return a * b % self.p
            if a == 0 or b == 0:
                return 0
            t = self._small_tables
            if t is not None:
                return t[1][a][b]
            return int(self._exp[(int(self._log[a]) + int(self._log[b])) % (self.q - 1)])
        a_arr, b_arr = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a_arr * b_arr) % self.p
        prod = self._exp[(self._log[a_arr] + self._log[b_arr]) % (self.q - 1)]
        return np.where((a_arr == 0) | (b_arr == 0), 0, prod)

    def inv(self, a):
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise DivisionByZero("inverse of zero")
            return self._inv[a]
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._inv[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def power_array(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def frobenius(self, a):
        if isinstance(a, np.ndarray):
            return self.power_array(a, self.p)
        return self.power(a, self.p)

    def pth_root(self, a):
        e = self.q // self.p
        if isinstance(a, np.ndarray):
            return self.power_array(a, e)
        return self.power(a, e)

    def from_int(self, n: int) -> int:
        return n % self.p

    @functools.cached_property
    def _sqrt(self) -> np.ndarray:
        table = np.full(self.q, -1, dtype=np.int64)
        squares = self.mul(np.arange(self.q), np.arange(self.q))
        # reversed so that the least root code wins
        table[squares[::-1]] = np.arange(self.q)[::-1]
        return table

    def is_square(self, a: int) -> bool:
        return bool(self._sqrt[a] >= 0)

    def sqrt(self, a: int) -> int | None:
        s = int(self._sqrt[a])
        return None if s < 0 else s

    # -- polynomial helpers on code arrays (low degree first) ---------------
    def conv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Product of two code arrays viewed as polynomials."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.size == 0 or b.size == 0:
            return np.zeros(0, dtype=np.int64)
        p, r = self.p, self.r
        if r == 1:
            return np.convolve(a, b) % p
        da, db = self._digits[a], self._digits[b]
        n = a.size + b.size - 1
        acc = np.zeros((n, 2 * r - 1), dtype=np.int64)
        for i in range(r):
            ai = da[:, i]
            if not ai.any():
                continue
            for j in range(r):
                acc[:, i + j] += np.convolve(ai, db[:, j])
        acc %= p
        m = self.modulus
        for k in range(2 * r - 2, r - 1, -1):
            col = acc[:, k]
            if col.any():
                for j in range(r):
                    if m[j]:
                        acc[:, k - r + j] = (acc[:, k - r + j] - m[j] * col) % p
        return acc[:, :r] @ self._pw

    def poly_eval_many(self, coeffs: Sequence[int], points: np.ndarray) -> np.ndarray:
        """Evaluate one polynomial at many points (Horner, vectorised)."""
        pts = np.asarray(points, dtype=np.int64)
        acc = np.zeros_like(pts)
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, pts), np.full_like(pts, c))
        return acc

    # -- convenience -----------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise DescriptorMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.r:
                raise ValueError("too many coefficients")
            return FieldElement(self, int(self.encode(list(value) + [0] * (self.r - len(value)))))
        return FieldElement(self, int(value) % self.p)

    def gen(self) -> "FieldElement":
        """The class of T (equal to 0 in the prime field, where m = T)."""
        if self.r == 1:
            return FieldElement(self, 0)
        return FieldElement(self, self.p)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    def units(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(1, self.q)]

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def is_prime_field_code(self, a: int) -> bool:
        return a < self.p

    def code_str(self, a: int) -> str:
        return f"{self.p}^{self.r}:[" + ",".join(str(int(d)) for d in self._digits[a]) + "]"

    def parse(self, text: str) -> "FieldElement":
        head, _, body = text.partition(":")
        p_s, _, r_s = head.partition("^")
        if int(p_s) != self.p or int(r_s) != self.r:
            raise DescriptorMismatch(f"{text} is not an element of {self}")
        coeffs = [int(c) for c in body.strip("[]").split(",") if c.strip()]
        return self.element(coeffs)

    # -- embeddings ----------------------------------------------------------
    def embedding_into(self, other: "FieldDescriptor") -> np.ndarray:
        """Code map self -> other; deterministic (least root of the modulus)."""
        return _embedding(self.p, self.r, other.r)


@functools.cache
def GF(p: int, r: int = 1) -> FieldDescriptor:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FieldDescriptor(p, r)


@functools.cache
def _embedding(p: int, r: int, s: int) -> np.ndarray:
    if s % r:
        raise ValueError(f"F_{p}^{r} does not embed in F_{p}^{s}")
    small, big = GF(p, r), GF(p, s)
    if r == 1:
        return np.arange(p, dtype=np.int64)
    vals = big.poly_eval_many(small.modulus, np.arange(big.q))
    roots = np.nonzero(vals == 0)[0]
    theta = int(roots[0])
    powers = [1]
    for _ in range(1, r):
        powers.append(big.mul(powers[-1], theta))
    out = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for i, d in enumerate(small._digits[code]):
            if d:
                acc = big.add(acc, big.mul(int(d), powers[i]))
        out[code] = acc
    return out


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, int(e)))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p and self.code < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.r, self.code))

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other: "FieldElement") -> bool:
        return self.code < other.code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.field._digits[self.code])

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.code))

    def pth_root(self) -> "FieldElement":
        return FieldElement(self.field, self.field.pth_root(self.code))

    def in_prime_field(self) -> bool:
        return self.code < self.field.p

    def __str__(self) -> str:
        return self.field.code_str(self.code)

    __repr__ = __str__


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch ``op`` in {add, mul, inv, pow}; ``pow`` takes an int exponent."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


def pth_root(a: FieldElement) -> FieldElement:
    return a.pth_root()


# ---------------------------------------------------------------------------
# rationals


class RationalField:
    """Q as a coefficient domain; elements are :class:`fractions.Fraction`."""

    def __repr__(self) -> str:
        return "QQ"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def code_str(self, a) -> str:
        return rational_str(a)


QQ = RationalField()


def rational_str(a: Fraction) -> str:
    a = Fraction(a)
    return f"{a.numerator}/{a.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial over a :class:`FieldDescriptor` or :data:`QQ`.

    Coefficients are stored low degree first in the domain's native form
    (integer codes for finite fields, ``Fraction`` for QQ), trailing zeros
    stripped so the zero polynomial has an empty tuple.
    """

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain, coeffs: Iterable = ()):
        self.domain = domain
        cs = [self._native(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def _native(self, c):
        if isinstance(self.domain, FieldDescriptor):
            if isinstance(c, FieldElement):
                if c.field is not self.domain:
                    raise DescriptorMismatch(f"{c.field} vs {self.domain}")
                return c.code
            return int(c)
        return Fraction(c)

    @classmethod
    def from_array(cls, domain: FieldDescriptor, arr: np.ndarray) -> "Polynomial":
        return cls(domain, (int(c) for c in arr))

    def to_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    @classmethod
    def x(cls, domain) -> "Polynomial":
        return cls(domain, (0, 1))

    @classmethod
    def constant(cls, domain, c) -> "Polynomial":
        return cls(domain, (c,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero() if self.domain is QQ else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else (Fraction(0) if self.domain is QQ else 0)

    def coefficient(self, i: int):
        c = self[i]
        if isinstance(self.domain, FieldDescriptor):
            return FieldElement(self.domain, c)
        return c

    def _check(self, other: "Polynomial") -> None:
        if other.domain is not self.domain:
            raise DescriptorMismatch(f"{self.domain} vs {other.domain}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            return Polynomial(self.domain, (other,))
        if isinstance(other, (int, Fraction)):
            if isinstance(self.domain, FieldDescriptor):
                return Polynomial(self.domain, (int(other) % self.domain.p,))
            return Polynomial(self.domain, (other,))
        raise TypeError(f"cannot coerce {other!r}")

    def __add__(self, other):
        other = self._coerce(other)
        d = self.domain
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(d, (d.add(self[i], other[i]) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.domain, (self.domain.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.domain
        if not self.coeffs or not other.coeffs:
            return Polynomial(d)
        if isinstance(d, FieldDescriptor):
            return Polynomial.from_array(d, d.conv(self.to_array(), other.to_array()))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(d, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self._native(c)
        return Polynomial(self.domain, (self.domain.mul(a, c) for a in self.coeffs))

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial(self.domain, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        d = self.domain
        rem = list(self.coeffs)
        dv = other.degree()
        inv_lead = d.inv(other.coeffs[-1])
        quot = [d.zero() if d is QQ else 0] * max(len(rem) - dv, 0)
        for k in range(len(rem) - 1 - dv, -1, -1):
            c = d.mul(rem[k + dv], inv_lead)
            quot[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] = d.sub(rem[k + i], d.mul(c, oc))
        return Polynomial(d, quot), Polynomial(d, rem[:dv] if dv > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.domain.inv(self.coeffs[-1]))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Polynomial":
        d = self.domain
        return Polynomial(d, (d.mul(c, d.from_int(i)) for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, x):
        d = self.domain
        if isinstance(x, FieldElement):
            acc = 0
            for c in reversed(self.coeffs):
                acc = d.add(d.mul(acc, x.code), c)
            return FieldElement(d, acc)
        acc = d.zero() if d is QQ else 0
        for c in reversed(self.coeffs):
            acc = d.add(d.mul(acc, x), c)
        return acc

    def compose_shift(self, s) -> "Polynomial":
        """p(x + s)."""
        xs = Polynomial(self.domain, (s, 1))
        acc = Polynomial(self.domain)
        for c in reversed(self.coeffs):
            acc = acc * xs + Polynomial(self.domain, (c,))
        return acc

    def map_coeffs(self, domain, fn) -> "Polynomial":
        return Polynomial(domain, (fn(c) for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.domain is other.domain and self.coeffs == other.coeffs
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((repr(self.domain), self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c) if self.domain is QQ else (str(c) if self.domain.r == 1 else self.domain.code_str(c))
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            terms.append(cs if not mono else (mono if cs in ("1", "1/1") else f"{cs}*{mono}"))
        return " + ".join(reversed(terms))


def canonical_irreducible(p: int, r: int) -> Polynomial:
    """Least monic irreducible of degree r over F_p (codes ordered by T^{r-1} first)."""
    return Polynomial(GF(p, 1), _modulus_coeffs(p, r))


@functools.cache
def cyclotomic_poly(e: int) -> Polynomial:
    if e < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = Polynomial(QQ, [-1] + [0] * (e - 1) + [1])
    for d in divisors(e)[:-1]:
        num = num.exact_div(cyclotomic_poly(d))
    return num
