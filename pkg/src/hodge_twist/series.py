"""Truncated Laurent series over F_q, used for local expansions at places."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import FieldDescriptor


@dataclass(frozen=True)
class Series:
    """``sum c[i] t^(val+i)``, known modulo ``t^(val+len(c))``."""

    F: FieldDescriptor
    val: int
    c: np.ndarray

    @property
    def prec(self) -> int:
        return self.val + len(self.c)

    @classmethod
    def constant(cls, F: FieldDescriptor, a: int, rel: int) -> "Series":
        c = np.zeros(rel, dtype=np.int64)
        if rel:
            c[0] = a
        return cls(F, 0, c)

    @classmethod
    def monomial(cls, F: FieldDescriptor, k: int, rel: int, coeff: int = 1) -> "Series":
        c = np.zeros(rel, dtype=np.int64)
        c[0] = coeff
        return cls(F, k, c)

    def normalized(self) -> "Series":
        nz = np.nonzero(self.c)[0]
        if nz.size == 0:
            return Series(self.F, self.prec, np.zeros(0, dtype=np.int64))
        k = int(nz[0])
        return Series(self.F, self.val + k, self.c[k:])

    def is_zero_to_precision(self) -> bool:
        return not np.any(self.c)

    def valuation(self) -> int | None:
        """Exact valuation, or None when all known coefficients vanish."""
        nz = np.nonzero(self.c)[0]
        return None if nz.size == 0 else self.val + int(nz[0])

    def truncate(self, prec: int) -> "Series":
        if prec >= self.prec:
            return self
        return Series(self.F, self.val, self.c[: max(prec - self.val, 0)])

    def coeffs_between(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of t^lo .. t^(hi-1); requires hi <= prec."""
        if hi > self.prec:
            raise ValueError(f"series known to t^{self.prec}, asked up to t^{hi}")
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        for k in range(max(lo, self.val), hi):
            out[k - lo] = self.c[k - self.val]
        return out

    def __add__(self, other: "Series") -> "Series":
        F = self.F
        lo = min(self.val, other.val)
        hi = min(self.prec, other.prec)
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        if hi > lo:
            a = self.c[: max(hi - self.val, 0)]
            b = other.c[: max(hi - other.val, 0)]
            out[self.val - lo : self.val - lo + len(a)] = a
            seg = out[other.val - lo : other.val - lo + len(b)]
            out[other.val - lo : other.val - lo + len(b)] = F.add(seg, b)
        return Series(F, lo, out)

    def __neg__(self) -> "Series":
        return Series(self.F, self.val, self.F.neg(self.c))

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, a: int) -> "Series":
        return Series(self.F, self.val, self.F.mul(self.c, a))

    def add_constant(self, a: int) -> "Series":
        return self + Series.constant(self.F, a, max(self.prec, 1))

    def __mul__(self, other: "Series") -> "Series":
        a, b = self.normalized(), other.normalized()
        rel = min(len(a.c), len(b.c))
        if rel == 0:
            return Series(self.F, min(a.prec + b.val, b.prec + a.val), np.zeros(0, dtype=np.int64))
        prod = self.F.conv(a.c[:rel], b.c[:rel])[:rel]
        return Series(self.F, a.val + b.val, prod)

    def shift(self, k: int) -> "Series":
        return Series(self.F, self.val + k, self.c)

    def inverse(self) -> "Series":
        a = self.normalized()
        if len(a.c) == 0:
            raise ZeroDivisionError("series is zero to known precision")
        F = self.F
        n = len(a.c)
        # Newton: g <- g (2 - a g)
        g = np.array([F.inv(int(a.c[0]))], dtype=np.int64)
        k = 1
        while k < n:
            k = min(2 * k, n)
            ag = F.conv(a.c[:k], g)[:k]
            two_minus = F.neg(ag)
            two_minus[0] = F.add(int(two_minus[0]), 2)
            g = F.conv(g, two_minus)[:k]
        return Series(F, -a.val, g[:n])

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inverse() ** (-e)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            return Series.constant(self.F, 1, max(len(self.normalized().c), 1))
        return result

    def interleave(self, step: int) -> "Series":
        """Substitute t -> t^step (val must be >= 0 in the result convention)."""
        out = np.zeros(len(self.c) * step, dtype=np.int64)
        out[::step] = self.c
        return Series(self.F, self.val * step, out)


def poly_of_series(F: FieldDescriptor, coeffs, s: Series, rel: int) -> Series:
    """Evaluate a polynomial (codes, low first) at a series by Horner."""
    coeffs = [int(c) for c in coeffs]
    if not coeffs:
        return Series(F, 0, np.zeros(rel, dtype=np.int64))
    acc = Series.constant(F, coeffs[-1], rel)
    for c in reversed(coeffs[:-1]):
        acc = (acc * s).add_constant(c)
    return acc


def power_series_compose(F: FieldDescriptor, coeffs, s: np.ndarray, n: int) -> np.ndarray:
    """sum coeffs[i] * s^i mod t^n for a power series s (codes) with s(0) = 0 allowed."""
    acc = np.zeros(n, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = F.conv(acc, s)[:n] if acc.any() else acc
        acc = np.pad(acc, (0, n - len(acc)))
        acc[0] = F.add(int(acc[0]), int(c))
    return acc


def power_series_sqrt(F: FieldDescriptor, a: np.ndarray, root0: int, n: int) -> np.ndarray:
    """Square root of a unit power series with prescribed constant term."""
    g = np.zeros(1, dtype=np.int64)
    g[0] = root0
    half = F.inv(2 % F.p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        gi = Series(F, 0, np.pad(g, (0, k - len(g)))).inverse().c[:k]
        t = F.conv(np.pad(a[:k], (0, max(0, k - len(a)))), gi)[:k]
        g = F.mul(F.add(np.pad(g, (0, k - len(g))), t), half)
    return g[:n]


def power_series_reversion(F: FieldDescriptor, G: np.ndarray, n: int) -> np.ndarray:
    """sigma with G(sigma(u)) = u mod u^n, for G(0) = 0, G'(0) != 0."""
    G = np.asarray(G, dtype=np.int64)
    dG = np.array([F.mul(int(G[i]), i % F.p) for i in range(1, len(G))], dtype=np.int64)
    sigma = np.zeros(2, dtype=np.int64)
    sigma[1] = F.inv(int(G[1]))
    k = 2
    while True:
        k_new = min(2 * k, n)
        s = np.pad(sigma, (0, k_new - len(sigma)))[:k_new]
        val = power_series_compose(F, G, s, k_new)
        val[1] = F.sub(int(val[1]), 1) if k_new > 1 else val[1]
        der = power_series_compose(F, dG, s, k_new)
        corr = F.conv(val, Series(F, 0, der).inverse().c)[:k_new]
        sigma = F.sub(s, corr)
        if k_new >= n and k >= n:
            break
        k = k_new
    return sigma[:n]
