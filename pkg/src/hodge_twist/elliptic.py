"""Group law on y^2 = f(x), deg f = 3, torsion search, Miller functions and
the one-form attached to a p-torsion line bundle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import factorint
from .function_fields import (
    CurveModel,
    Differential,
    Divisor,
    FunctionElement,
    NotFoundWithinBound,
    derive,
    differential_divisor,
    function_from_polys,
)


class NotTorsion(ValueError):
    pass


class OrderNotP(ValueError):
    pass


class RegularityCheckFailed(AssertionError):
    pass


def _require_elliptic(E: CurveModel) -> None:
    if E.f.degree() != 3:
        raise ValueError("elliptic operations need deg f = 3")


@dataclass(frozen=True)
class Point:
    curve: CurveModel
    x: int | None  # None for the point at infinity
    y: int | None

    def __post_init__(self):
        if self.x is not None:
            F = self.curve.F
            if F.mul(self.y, self.y) != self.curve.f(self.x):
                raise ValueError(f"({self.x},{self.y}) is not on the curve")

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_zero:
            return "O"
        F = self.curve.F
        c = str if F.r == 1 else F.code_str
        return f"({c(self.x)},{c(self.y)})"

    __repr__ = __str__

    def place(self):
        if self.is_zero:
            return self.curve.places_at_infinity()[0]
        return self.curve.place(self.x, self.y)

    def __neg__(self) -> "Point":
        if self.is_zero:
            return self
        return Point(self.curve, self.x, self.curve.F.neg(self.y))

    def __add__(self, other: "Point") -> "Point":
        return add(self, other)

    def to_json(self):
        if self.is_zero:
            return "O"
        F = self.curve.F
        c = (lambda v: v) if F.r == 1 else F.code_str
        return {"x": c(self.x), "y": c(self.y)}


def zero(E: CurveModel) -> Point:
    return Point(E, None, None)


def point(E: CurveModel, x, y) -> Point:
    P = E.place(x, y)
    return Point(E, P.x, P.y)


def _slope(P: Point, Q: Point) -> int | None:
    """Slope of the chord/tangent through P and Q, None if vertical."""
    F = P.curve.F
    if P.x != Q.x:
        return F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
    if P.y != Q.y or P.y == 0:
        return None
    return F.div(P.curve._fprime(P.x), F.mul(2, P.y))


def add(P: Point, Q: Point) -> Point:
    if P.curve != Q.curve:
        raise ValueError("points on different curves")
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    E = P.curve
    _require_elliptic(E)
    F = E.F
    lam = _slope(P, Q)
    if lam is None:
        return zero(E)
    c3, c2 = E.f[3], E.f[2]
    # roots of f(x) - (lam x + nu)^2 sum to (lam^2 - c2)/c3
    x3 = F.sub(F.sub(F.div(F.sub(F.mul(lam, lam), c2), c3), P.x), Q.x)
    y3 = F.neg(F.add(P.y, F.mul(lam, F.sub(x3, P.x))))
    return Point(E, x3, y3)


def double(P: Point) -> Point:
    return add(P, P)


def scalar_mul(n: int, P: Point) -> Point:
    if n < 0:
        return scalar_mul(-n, -P)
    result = zero(P.curve)
    base = P
    while n:
        if n & 1:
            result = add(result, base)
        base = add(base, base)
        n >>= 1
    return result


def affine_points(E: CurveModel) -> list[Point]:
    F = E.F
    xs = np.arange(F.q, dtype=np.int64)
    fx = F.poly_eval_many(E.f.coeffs, xs)
    roots = F._sqrt[fx]
    out = []
    for x, v, s in zip(xs.tolist(), fx.tolist(), roots.tolist()):
        if v == 0:
            out.append(Point(E, x, 0))
        elif s >= 0:
            out.append(Point(E, x, s))
            out.append(Point(E, x, F.neg(s)))
    return out


def count_points(E: CurveModel) -> int:
    return len(affine_points(E)) + 1


def _balanced_key(F, code: int) -> tuple[int, ...]:
    half = (F.p - 1) // 2
    return tuple(int(d) if d <= half else int(d) - F.p for d in F.digits(code))


def point_order_key(P: Point):
    """Documented tie-break: coordinates compared as vectors of balanced
    residues in (-p/2, p/2), coefficient of 1 first, x before y."""
    F = P.curve.F
    return (_balanced_key(F, P.x), _balanced_key(F, P.y))


def has_exact_order(P: Point, n: int) -> bool:
    if not scalar_mul(n, P).is_zero:
        return False
    return all(not scalar_mul(n // ell, P).is_zero for ell in factorint(n))


def find_n_torsion(E: CurveModel, n: int, max_degree: int = 6) -> Point:
    """Least point of exact order n over the smallest extension of degree <= max_degree."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _require_elliptic(E)
    for s in range(1, max_degree + 1):
        C = E.base_change(s)
        pts = affine_points(C)
        if (len(pts) + 1) % n:
            continue
        for P in sorted(pts, key=point_order_key):
            if has_exact_order(P, n):
                return P
    raise NotFoundWithinBound(f"no point of exact order {n} up to degree {max_degree}")


def extension_degree(P: Point) -> int:
    return P.curve.degree_over_parent


@dataclass(frozen=True)
class TorsionWitness:
    point: Point
    order: int
    h: FunctionElement

    def divisor(self) -> Divisor:
        E = self.point.curve
        inf = E.places_at_infinity()[0]
        if self.point.is_zero:
            return Divisor(E, {})
        return Divisor(E, {self.point.place(): self.order, inf: -self.order})


def _line(P: Point, Q: Point) -> FunctionElement:
    """Function with divisor (P) + (Q) + (-(P+Q)) - 3(O)."""
    E = P.curve
    F = E.F
    if P.is_zero and Q.is_zero:
        return E.one()
    if P.is_zero or Q.is_zero:
        R = Q if P.is_zero else P
        return function_from_polys(E, [F.neg(R.x), 1])
    lam = _slope(P, Q)
    if lam is None:
        return function_from_polys(E, [F.neg(P.x), 1])
    # y - y1 - lam (x - x1)
    nu = F.sub(P.y, F.mul(lam, P.x))
    return function_from_polys(E, [F.neg(nu), F.neg(lam)], [1])


def _vertical(R: Point) -> FunctionElement:
    E = R.curve
    if R.is_zero:
        return E.one()
    return function_from_polys(E, [E.F.neg(R.x), 1])


def miller_witness(Q: Point, n: int) -> TorsionWitness:
    """h with div(h) = n(Q) - n(O), by double-and-add on line functions."""
    E = Q.curve
    if not scalar_mul(n, Q).is_zero:
        raise NotTorsion(f"{n}*{Q} != O")
    f = E.one()
    T = Q
    for bit in bin(n)[3:]:
        T2 = add(T, T)
        f = f * f * _line(T, T) / _vertical(T2)
        T = T2
        if bit == "1":
            TQ = add(T, Q)
            f = f * _line(T, Q) / _vertical(TQ)
            T = TQ
    return TorsionWitness(Q, n, f.normalized())


def omega_from_p_torsion(w: TorsionWitness) -> Differential:
    """omega = -dh/h; regular because div(h) is divisible by p."""
    E = w.point.curve
    if w.order != E.p:
        raise OrderNotP(f"witness order {w.order} differs from p = {E.p}")
    u = -(derive(w.h) / w.h)
    omega = Differential(u)
    D = differential_divisor(omega)
    if not D.is_effective():
        raise RegularityCheckFailed(f"-dh/h has divisor {D}")
    return omega
