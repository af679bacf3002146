"""Hyperelliptic curves y^2 = f(x): function fields, places, divisors, Riemann-Roch spaces.

Every place used in a divisor must be rational over the field of the curve
the divisor lives on.  When zeros or poles of a function need a larger
field, :func:`divisor_of` base-changes the curve (always directly from the
original model, so coefficient embeddings stay consistent) and returns a
divisor on the extended curve.
"""

from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .fields import GF, FieldDescriptor, FieldElement, Polynomial, _embedding
from .series import Series, poly_of_series, power_series_reversion, power_series_sqrt

DEFAULT_SPLIT_BOUND = 6


class CurveError(ValueError):
    pass


class SplittingBoundExceeded(ValueError):
    pass


class DegreeNonZero(ValueError):
    pass


class NotFoundWithinBound(LookupError):
    pass


class NotCoprimeToP(ValueError):
    pass


# ---------------------------------------------------------------------------
# curves


class CurveModel:
    """The smooth projective curve with affine model y^2 = f(x) over ``field``."""

    def __init__(self, field: FieldDescriptor, f, *, parent: "CurveModel | None" = None, degree: int = 1):
        if field.p == 2:
            raise CurveError("characteristic 2 is not supported")
        self.F = field
        self.f = f if isinstance(f, Polynomial) else Polynomial(field, f)
        if self.f.domain is not field:
            raise CurveError("f must have coefficients in the curve's field")
        if self.f.degree() < 3:
            raise CurveError("deg f must be at least 3")
        if self.f.gcd(self.f.derivative()).degree() != 0:
            raise CurveError("f is not squarefree")
        self.genus = (self.f.degree() - 1) // 2
        self.odd = self.f.degree() % 2 == 1
        self.parent = parent
        self.degree_over_parent = degree
        self._fprime = self.f.derivative()

    # identity is by value so base changes built twice compare equal
    def _key(self):
        return (self.F.p, self.F.r, self.f.coeffs)

    def __eq__(self, other):
        return isinstance(other, CurveModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self) -> str:
        return f"CurveModel(y^2 = {self.f!r} over {self.F!r})".replace("T", "x")

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def curve_id(self) -> str:
        data = f"{self.F.p},{self.F.r},{list(self.F.modulus)},{list(self.f.coeffs)}"
        return hashlib.sha256(data.encode()).hexdigest()[:16]

    @property
    def root(self) -> "CurveModel":
        return self if self.parent is None else self.parent

    def to_json(self) -> dict:
        if self.F.r == 1:
            coeffs = list(self.f.coeffs)
        else:
            coeffs = [self.F.code_str(c) for c in self.f.coeffs]
        return {"p": self.F.p, "r": self.F.r, "f": coeffs}

    # -- elements ---------------------------------------------------------
    def poly(self, coeffs) -> Polynomial:
        return Polynomial(self.F, coeffs)

    def x(self) -> "FunctionElement":
        return FunctionElement(self, self.poly([0, 1]), self.poly([]))

    def y(self) -> "FunctionElement":
        return FunctionElement(self, self.poly([]), self.poly([1]))

    def const(self, c) -> "FunctionElement":
        """The constant c; a plain int is read as an integer mod p, not as a code."""
        code = c.code if isinstance(c, FieldElement) else int(c) % self.F.p
        return FunctionElement(self, self.poly([code]), self.poly([]))

    def one(self) -> "FunctionElement":
        return self.const(1)

    def zero(self) -> "FunctionElement":
        return FunctionElement(self, self.poly([]), self.poly([]))

    # -- base change --------------------------------------------------------
    def base_change(self, s: int) -> "CurveModel":
        """The same curve over the degree-s extension of the current field.

        Always built from the root model so coefficient embeddings agree.
        """
        total = self.degree_over_parent * s
        return self.root if total == 1 else _base_change(self.root, total)

    def embed_codes(self, other: "CurveModel") -> np.ndarray:
        """Code map from this curve's field into ``other``'s field."""
        if other.root != self.root:
            raise CurveError("curves have different root models")
        if self.parent is not None and self.F is not other.F and self.root.F.r != 1:
            raise CurveError("transfer between two proper extensions is not supported")
        return _embedding(self.F.p, self.F.r, other.F.r)

    # -- places -----------------------------------------------------------------
    def infinity_split(self) -> bool:
        return self.odd or self.F.is_square(self.f.leading())

    def places_at_infinity(self) -> list["Place"]:
        if self.odd:
            return [Place(self.F, "infinity", None, None, 0)]
        if not self.F.is_square(self.f.leading()):
            raise CurveError("places at infinity are not rational; base change to degree 2")
        return [Place(self.F, "infinity", None, None, 0), Place(self.F, "infinity", None, None, 1)]

    def places_over(self, x0: int) -> list["Place"]:
        """Rational places with x = x0 (empty when the fiber is a degree-2 place)."""
        v = self.f(x0)
        if v == 0:
            return [Place(self.F, "ramified", x0, 0, 0)]
        s = self.F.sqrt(v)
        if s is None:
            return []
        return sorted([Place(self.F, "affine", x0, s, 0), Place(self.F, "affine", x0, self.F.neg(s), 0)],
                      key=lambda P: P.y)

    def place(self, x0, y0) -> "Place":
        x0 = _code(self.F, x0)
        y0 = _code(self.F, y0)
        if self.F.mul(y0, y0) != self.f(x0):
            raise CurveError(f"({x0},{y0}) is not on the curve")
        return Place(self.F, "ramified" if y0 == 0 else "affine", x0, y0, 0)

    def rational_places(self) -> list["Place"]:
        out = []
        for c in range(self.F.q):
            out.extend(self.places_over(c))
        if self.infinity_split():
            out.extend(self.places_at_infinity())
        return out

    def ramification_index(self, P: "Place") -> int:
        """Ramification of x: P -> P^1 (2 at ramified points and the odd infinity)."""
        if P.kind == "ramified" or (P.kind == "infinity" and self.odd):
            return 2
        return 1

    def canonical_divisor(self) -> "Divisor":
        """div(dx/y): (2g-2) at the odd infinity, (g-1) at each even infinity."""
        inf = self.places_at_infinity()
        k = 2 * self.genus - 2 if self.odd else self.genus - 1
        return Divisor(self, {P: k for P in inf})

    # -- local expansions -----------------------------------------------------
    @functools.lru_cache(maxsize=4096)
    def expansion(self, P: "Place", rel: int) -> tuple[Series, Series]:
        """(x(t), y(t)) in a uniformizer t at P, each with >= rel known terms."""
        F = self.F
        n = rel + 2
        if P.kind == "affine":
            X = Series(F, 0, np.array([P.x, 1] + [0] * n, dtype=np.int64))
            G = self.f.compose_shift(P.x).to_array()
            Y = Series(F, 0, power_series_sqrt(F, G, P.y, n))
            return X, Y
        if P.kind == "ramified":
            G = self.f.compose_shift(P.x).to_array()
            m = n // 2 + 2
            sigma = power_series_reversion(F, G, m)
            s = Series(F, 0, sigma).interleave(2)
            X = s.add_constant(P.x)
            Y = Series(F, 1, np.array([1] + [0] * n, dtype=np.int64))
            return X, Y
        g = self.genus
        frev = np.array(self.f.coeffs[::-1], dtype=np.int64)
        if self.odd:
            G = np.concatenate([[0], frev])
            m = n // 2 + g + 4
            U = Series(F, 0, power_series_reversion(F, G, m)).interleave(2)
            X = U.inverse()
            T = Series(F, 1, np.array([1] + [0] * (2 * m), dtype=np.int64))
            Y = T * (U ** (-(g + 1)))
            return X, Y
        lead = self.f.leading()
        s0 = F.sqrt(lead)
        if s0 is None:
            raise CurveError("places at infinity are not rational")
        root0 = s0 if P.index == 0 else F.neg(s0)
        m = n + g + 3
        W = Series(F, 0, power_series_sqrt(F, frev, root0, m))
        X = Series(F, -1, np.array([1] + [0] * m, dtype=np.int64))
        Y = W.shift(-(g + 1))
        return X, Y

    def uniformizer_valuations(self, P: "Place") -> tuple[int, int]:
        """(v_P(x - x(P)) or v_P(x) at infinity, v_P(y))."""
        if P.kind == "affine":
            return 1, 0
        if P.kind == "ramified":
            return 2, 1
        if self.odd:
            return -2, -(2 * self.genus + 1)
        return -1, -(self.genus + 1)


@functools.cache
def _base_change(root: CurveModel, s: int) -> CurveModel:
    F2 = GF(root.F.p, root.F.r * s)
    emb = _embedding(root.F.p, root.F.r, root.F.r * s)
    f2 = Polynomial(F2, [int(emb[c]) for c in root.f.coeffs])
    return CurveModel(F2, f2, parent=root, degree=s)


def _code(F: FieldDescriptor, v) -> int:
    if isinstance(v, FieldElement):
        if v.field is not F:
            raise CurveError(f"{v} is not in {F}")
        return v.code
    if isinstance(v, str):
        return F.parse(v).code
    if isinstance(v, (list, tuple)):
        return F.element(list(v)).code
    return int(v) % F.q if F.r > 1 else int(v) % F.p


def curve_from_json(data: Mapping | str) -> CurveModel:
    """Parse ``{p, r, f: [c0, c1, ...]}``; coefficients may be integers
    (codes), digit lists, or ``"p^r:[...]"`` strings."""
    if isinstance(data, str):
        data = json.loads(data)
    p = int(data["p"])
    r = int(data.get("r", 1))
    F = GF(p, r)
    return CurveModel(F, Polynomial(F, [_code(F, c) for c in data["f"]]))


def hyperelliptic(p: int, f: Iterable, r: int = 1) -> CurveModel:
    F = GF(p, r)
    return CurveModel(F, Polynomial(F, [_code(F, c) for c in f]))


# ---------------------------------------------------------------------------
# places and divisors


@dataclass(frozen=True)
class Place:
    field: FieldDescriptor
    kind: str  # "affine", "ramified" or "infinity"
    x: int | None
    y: int | None
    index: int = 0

    @property
    def degree(self) -> int:
        return 1

    def sort_key(self):
        if self.kind == "infinity":
            return (1, self.index, 0)
        return (0, self.x, self.y)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def _c(self, v: int) -> str:
        return str(v) if self.field.r == 1 else self.field.code_str(v)

    def __str__(self) -> str:
        if self.kind == "infinity":
            return "inf" if self.index == 0 else f"inf{self.index}"
        return f"({self._c(self.x)},{self._c(self.y)})"

    __repr__ = __str__

    def to_json(self):
        if self.kind == "infinity":
            return {"infinity": self.index}
        return {"x": self._c(self.x), "y": self._c(self.y)}


def place_from_json(curve: CurveModel, data) -> Place:
    if "infinity" in data:
        return curve.places_at_infinity()[int(data["infinity"])]
    return curve.place(data["x"], data["y"])


class Divisor:
    """Finite formal sum of rational places of ``curve``."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: CurveModel, coeffs: Mapping[Place, int] | None = None):
        self.curve = curve
        items = {}
        for P, k in (coeffs or {}).items():
            if P.field is not curve.F:
                raise CurveError(f"place {P} is not over {curve.F}")
            if k:
                items[P] = items.get(P, 0) + int(k)
        self.coeffs = {P: items[P] for P in sorted(items) if items[P]}

    @classmethod
    def from_points(cls, curve: CurveModel, terms) -> "Divisor":
        return cls(curve, dict(terms))

    def degree(self) -> int:
        return sum(k * P.degree for P, k in self.coeffs.items())

    def support(self) -> list[Place]:
        return list(self.coeffs)

    def __getitem__(self, P: Place) -> int:
        return self.coeffs.get(P, 0)

    def _same(self, other: "Divisor") -> None:
        if other.curve != self.curve:
            raise CurveError("divisors live on different curves")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._same(other)
        out = dict(self.coeffs)
        for P, k in other.coeffs.items():
            out[P] = out.get(P, 0) + k
        return Divisor(self.curve, out)

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, {P: -k for P, k in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, n: int) -> "Divisor":
        return Divisor(self.curve, {P: n * k for P, k in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and other.curve == self.curve and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.curve, tuple(self.coeffs.items())))

    def is_effective(self) -> bool:
        return all(k >= 0 for k in self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def base_change(self, target: CurveModel) -> "Divisor":
        if target == self.curve:
            return self
        emb = self.curve.embed_codes(target)
        out = {}
        for P, k in self.coeffs.items():
            if P.kind == "infinity":
                Q = target.places_at_infinity()[P.index]
                if not target.odd:
                    # index follows the chosen square root of the leading coefficient
                    s_small = self.curve.F.sqrt(self.curve.f.leading())
                    root_here = s_small if P.index == 0 else self.curve.F.neg(s_small)
                    s_big = target.F.sqrt(target.f.leading())
                    Q = target.places_at_infinity()[0 if int(emb[root_here]) == s_big else 1]
            else:
                Q = Place(target.F, P.kind, int(emb[P.x]), int(emb[P.y]), 0)
            out[Q] = out.get(Q, 0) + k
        return Divisor(target, out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for P, k in self.coeffs.items():
            parts.append(f"{'+' if k > 0 else '-'} {abs(k)}*{P}" if abs(k) != 1 else f"{'+' if k > 0 else '-'} {P}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        return [{"place": P.to_json(), "coeff": k} for P, k in self.coeffs.items()]


def divisor_from_json(curve: CurveModel, data) -> Divisor:
    if isinstance(data, str):
        data = json.loads(data)
    return Divisor(curve, {place_from_json(curve, t["place"]): int(t["coeff"]) for t in data})


# ---------------------------------------------------------------------------
# function field elements


class FunctionElement:
    """(A + B y) / H with A, B, H in k[x], H monic and gcd(A, B, H) = 1."""

    __slots__ = ("curve", "A", "B", "H")

    def __init__(self, curve: CurveModel, A: Polynomial, B: Polynomial, H: Polynomial | None = None):
        F = curve.F
        if H is None:
            H = Polynomial(F, [1])
        if H.is_zero():
            raise ZeroDivisionError("zero denominator")
        if A.is_zero() and B.is_zero():
            H = Polynomial(F, [1])
        else:
            g = A.gcd(B).gcd(H) if not A.is_zero() or not B.is_zero() else H
            if g.degree() > 0:
                A, B, H = A.exact_div(g), B.exact_div(g), H.exact_div(g)
            lead = H.leading()
            if lead != 1:
                inv = F.inv(lead)
                A, B, H = A.scale(inv), B.scale(inv), H.scale(inv)
        self.curve = curve
        self.A, self.B, self.H = A, B, H

    # rational-function components a = A/H, b = B/H
    @property
    def a(self) -> tuple[Polynomial, Polynomial]:
        return self.A, self.H

    @property
    def b(self) -> tuple[Polynomial, Polynomial]:
        return self.B, self.H

    def _coerce(self, other) -> "FunctionElement":
        if isinstance(other, FunctionElement):
            if other.curve != self.curve:
                raise CurveError("elements of different function fields")
            return other
        if isinstance(other, Polynomial):
            return FunctionElement(self.curve, other, Polynomial(self.curve.F))
        return self.curve.const(other)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if self.H == o.H:
            return FunctionElement(self.curve, self.A + o.A, self.B + o.B, self.H)
        return FunctionElement(self.curve, self.A * o.H + o.A * self.H, self.B * o.H + o.B * self.H, self.H * o.H)

    __radd__ = __add__

    def __neg__(self):
        return FunctionElement(self.curve, -self.A, -self.B, self.H)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        f = self.curve.f
        A = self.A * o.A + self.B * o.B * f
        B = self.A * o.B + self.B * o.A
        return FunctionElement(self.curve, A, B, self.H * o.H)

    __rmul__ = __mul__

    def conjugate(self) -> "FunctionElement":
        return FunctionElement(self.curve, self.A, -self.B, self.H)

    def norm_numerator(self) -> Polynomial:
        """A^2 - B^2 f, the norm of the numerator A + B y."""
        return self.A * self.A - self.B * self.B * self.curve.f

    def inverse(self) -> "FunctionElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        N = self.norm_numerator()
        return FunctionElement(self.curve, self.H * self.A, -(self.H * self.B), N)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.curve.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, FunctionElement):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return other.curve == self.curve and (self.A, self.B, self.H) == (other.A, other.B, other.H)

    def __hash__(self):
        return hash((self.curve, self.A, self.B, self.H))

    def is_constant(self) -> bool:
        return self.B.is_zero() and self.H.degree() == 0 and self.A.degree() <= 0

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant function")
        return self.A[0]

    def scale(self, c: int) -> "FunctionElement":
        return FunctionElement(self.curve, self.A.scale(c), self.B.scale(c), self.H)

    def leading_coefficient(self) -> int:
        """Normalization order: leading coefficient of B if B != 0, else of A."""
        return self.B.leading() if not self.B.is_zero() else self.A.leading()

    def normalized(self) -> "FunctionElement":
        if self.is_zero():
            return self
        return self.scale(self.curve.F.inv(self.leading_coefficient()))

    def frobenius(self) -> "FunctionElement":
        """g^p computed coefficientwise: a(x)^p + b(x)^p f^((p-1)/2) y."""
        return self ** self.curve.F.p

    def base_change(self, target: CurveModel) -> "FunctionElement":
        if target == self.curve:
            return self
        emb = self.curve.embed_codes(target)
        m = lambda P: Polynomial(target.F, [int(emb[c]) for c in P.coeffs])  # noqa: E731
        return FunctionElement(target, m(self.A), m(self.B), m(self.H))

    def __str__(self) -> str:
        F = self.curve.F

        def fmt(P: Polynomial) -> str:
            if P.is_zero():
                return "0"
            terms = []
            for i in range(P.degree(), -1, -1):
                c = P[i]
                if c == 0:
                    continue
                cs = str(c) if F.r == 1 else F.code_str(c)
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
            return " + ".join(terms)

        num = []
        if not self.A.is_zero():
            num.append(fmt(self.A))
        if not self.B.is_zero():
            b = fmt(self.B)
            num.append("y" if b == "1" else f"({b})*y")
        s = " + ".join(num) if num else "0"
        if self.H.degree() > 0:
            s = f"({s})/({fmt(self.H)})"
        return s

    __repr__ = __str__

    def to_json(self) -> dict:
        F = self.curve.F
        c = (lambda v: v) if F.r == 1 else F.code_str
        return {"A": [c(v) for v in self.A.coeffs], "B": [c(v) for v in self.B.coeffs],
                "H": [c(v) for v in self.H.coeffs]}


def function_from_polys(curve: CurveModel, A, B=(), H=(1,)) -> FunctionElement:
    F = curve.F
    mk = lambda cs: Polynomial(F, [_code(F, c) for c in cs])  # noqa: E731
    return FunctionElement(curve, mk(A), mk(B), mk(H))


def derive(g: FunctionElement) -> FunctionElement:
    """d/dx with y' = f'/(2y) = f' y / (2 f)."""
    C = g.curve
    F = C.F
    A, B, H = g.A, g.B, g.H
    dA, dB, dH = A.derivative(), B.derivative(), H.derivative()
    f, fp = C.f, C._fprime
    two = F.from_int(2)
    # common denominator 2 f H^2
    num_a = (dA * H - A * dH) * f.scale(two)
    num_b = (dB * H - B * dH) * f.scale(two) + B * H * fp
    return FunctionElement(C, num_a, num_b, H * H * f.scale(two))


def _eval_series(g: FunctionElement, P: Place, rel: int) -> Series:
    X, Y = g.curve.expansion(P, rel)
    num = None
    if not g.A.is_zero():
        num = poly_of_series(g.curve.F, g.A.coeffs, X, rel)
    if not g.B.is_zero():
        by = poly_of_series(g.curve.F, g.B.coeffs, X, rel) * Y
        num = by if num is None else num + by
    return num


def _ord_at(P: Polynomial, c: int) -> int:
    k = 0
    lin = Polynomial(P.domain, [P.domain.neg(c), 1])
    while not P.is_zero():
        q, r = P.divmod(lin)
        if not r.is_zero():
            break
        P = q
        k += 1
    return k


def _poly_valuation(curve: CurveModel, P: Polynomial, place: Place) -> int:
    e = curve.ramification_index(place)
    if place.kind == "infinity":
        return -e * P.degree()
    return e * _ord_at(P, place.x)


def valuation(g: FunctionElement, P: Place) -> float | int:
    """Order of g at the rational place P (``inf`` for g = 0)."""
    if g.is_zero():
        return float("inf")
    C = g.curve
    if P.field is not C.F:
        raise CurveError("place and function are over different fields")
    vH = _poly_valuation(C, g.H, P)
    if g.B.is_zero():
        return _poly_valuation(C, g.A, P) - vH
    vx, vy = C.uniformizer_valuations(P)
    vB = _poly_valuation(C, g.B, P)
    vN = _poly_valuation(C, g.norm_numerator(), P)
    if P.kind == "infinity":
        lows = [vB + vy] + ([_poly_valuation(C, g.A, P)] if not g.A.is_zero() else [])
        low = min(lows)
        bound = vN - low
    else:
        low = 0
        bound = vN
    rel = bound - min(low, 0) + 4
    while True:
        s = _eval_series(g, P, rel)
        v = s.valuation()
        if v is not None and v <= bound:
            return v - vH
        if s.prec > bound:
            raise AssertionError("valuation exceeds the norm bound")
        rel *= 2


# ---------------------------------------------------------------------------
# splitting of polynomials


def _powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial(mod.domain, [1]) % mod
    b = base % mod
    while e:
        if e & 1:
            result = (result * b) % mod
        b = (b * b) % mod
        e >>= 1
    return result


def splits_over(P: Polynomial, s: int) -> bool:
    """Does P split into linear factors over the degree-s extension of its field?"""
    if P.degree() <= 1:
        return True
    q = P.domain.q
    xp = Polynomial(P.domain, [0, 1])
    for _ in range(s):
        xp = _powmod(xp, q, P)
    R = P.gcd(xp - Polynomial(P.domain, [0, 1]))
    rest = P.monic()
    while rest.degree() > 0:
        g = rest.gcd(R)
        if g.degree() == 0:
            return False
        rest = rest.exact_div(g)
    return True


def roots(P: Polynomial) -> list[int]:
    """Distinct roots in the coefficient field (codes, increasing)."""
    if P.degree() <= 0:
        return []
    F = P.domain
    vals = F.poly_eval_many(P.coeffs, np.arange(F.q, dtype=np.int64))
    return [int(c) for c in np.nonzero(vals == 0)[0]]


def splitting_degree(curve: CurveModel, P: Polynomial, bound: int = DEFAULT_SPLIT_BOUND) -> int:
    """Least s <= bound such that over the degree-s extension every root of P
    is rational with rational fibers and infinity splits."""
    for s in range(1, bound + 1):
        if not splits_over(P, s):
            continue
        C = curve.base_change(s)
        ok = C.infinity_split()
        if ok:
            emb = curve.embed_codes(C)
            P2 = Polynomial(C.F, [int(emb[c]) for c in P.coeffs])
            for c in roots(P2):
                v = C.f(c)
                if v and not C.F.is_square(v):
                    ok = False
                    break
        if ok:
            return s
    raise SplittingBoundExceeded(f"{P} does not split with rational fibers within degree {bound}")


def _candidate_polynomial(g: FunctionElement) -> Polynomial:
    base = g.A if g.B.is_zero() else g.norm_numerator()
    return base * g.H


def divisor_of(g: FunctionElement, bound: int = DEFAULT_SPLIT_BOUND) -> Divisor:
    """Principal divisor of g, on the smallest base change where it is defined."""
    if g.is_zero():
        raise ValueError("divisor of zero")
    C0 = g.curve
    cand = _candidate_polynomial(g)
    s = splitting_degree(C0, cand, bound)
    if s == 1:
        C, h = C0, g
    else:
        C = C0.base_change(s)
        h = g.base_change(C)
    cand2 = _candidate_polynomial(h)
    places = list(C.places_at_infinity())
    for c in roots(cand2):
        places.extend(C.places_over(c))
    return Divisor(C, {P: valuation(h, P) for P in places})


# ---------------------------------------------------------------------------
# differentials


class Differential:
    """u dx; on a curve every 1-form is closed."""

    __slots__ = ("u",)

    def __init__(self, u: FunctionElement):
        self.u = u

    @property
    def curve(self) -> CurveModel:
        return self.u.curve

    @classmethod
    def from_w(cls, w: FunctionElement) -> "Differential":
        """The form w dx / y."""
        return cls(w / w.curve.y())

    @classmethod
    def invariant(cls, curve: CurveModel) -> "Differential":
        return cls.from_w(curve.one())

    @property
    def w(self) -> FunctionElement:
        """Coefficient of dx/y."""
        return self.u * self.curve.y()

    def is_zero(self) -> bool:
        return self.u.is_zero()

    def __add__(self, other: "Differential") -> "Differential":
        return Differential(self.u + other.u)

    def __neg__(self) -> "Differential":
        return Differential(-self.u)

    def __sub__(self, other: "Differential") -> "Differential":
        return Differential(self.u - other.u)

    def scale(self, c) -> "Differential":
        """c times the form; c is a field element or a code."""
        return Differential(self.u.scale(_code(self.curve.F, c)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Differential) and self.u == other.u

    def __hash__(self):
        return hash(self.u)

    def base_change(self, target: CurveModel) -> "Differential":
        return Differential(self.u.base_change(target))

    def __str__(self) -> str:
        return f"({self.u}) dx"

    __repr__ = __str__


def exterior_derivative(g: FunctionElement) -> Differential:
    return Differential(derive(g))


def differential_divisor(omega: Differential, bound: int = DEFAULT_SPLIT_BOUND) -> Divisor:
    """div(w dx/y) = div(w) + div(dx/y)."""
    D = divisor_of(omega.w, bound)
    return D + D.curve.canonical_divisor()


def is_regular(omega: Differential, bound: int = DEFAULT_SPLIT_BOUND) -> bool:
    return differential_divisor(omega, bound).is_effective()


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


@dataclass(frozen=True)
class Ambient:
    """Functions (A + B y) / H with deg A <= dA, deg B <= dB.

    ``centers`` lists (x0, k) with H = prod (x - x0)^k.  Coordinates: the
    coefficients of A (low first) followed by those of B.
    """

    curve: CurveModel
    centers: tuple[tuple[int, int], ...]
    dA: int
    dB: int

    @property
    def nA(self) -> int:
        return max(self.dA + 1, 0)

    @property
    def nB(self) -> int:
        return max(self.dB + 1, 0)

    @property
    def size(self) -> int:
        return self.nA + self.nB

    @functools.cached_property
    def H(self) -> Polynomial:
        F = self.curve.F
        out = Polynomial(F, [1])
        for c, k in self.centers:
            out = out * Polynomial(F, [F.neg(c), 1]) ** k
        return out

    def element(self, vec) -> FunctionElement:
        vec = [int(v) for v in vec]
        F = self.curve.F
        A = Polynomial(F, vec[: self.nA])
        B = Polynomial(F, vec[self.nA:])
        return FunctionElement(self.curve, A, B, self.H)

    def coords(self, g: FunctionElement) -> np.ndarray:
        q, r = self.H.divmod(g.H)
        if not r.is_zero():
            raise ValueError("element not in ambient: denominator")
        A, B = g.A * q, g.B * q
        if A.degree() > self.dA or B.degree() > self.dB:
            raise ValueError("element not in ambient: degree")
        out = np.zeros(self.size, dtype=np.int64)
        out[: len(A.coeffs)] = A.coeffs
        out[self.nA: self.nA + len(B.coeffs)] = B.coeffs
        return out

    def column_series(self, P: Place, rel: int) -> list[Series]:
        F = self.curve.F
        X, Y = self.curve.expansion(P, rel)
        inv_h = poly_of_series(F, self.H.coeffs, X, rel).inverse()
        cols = []
        cur = inv_h
        a_cols = []
        for j in range(max(self.nA, self.nB)):
            a_cols.append(cur)
            cur = cur * X
        cols.extend(a_cols[: self.nA])
        cols.extend(c * Y for c in a_cols[: self.nB])
        return cols

    def constraint_rows(self, P: Place, m: int) -> np.ndarray:
        """Rows forcing v_P >= m on the ambient coordinates."""
        C = self.curve
        vx, vy = C.uniformizer_valuations(P)
        e = C.ramification_index(P)
        if P.kind == "infinity":
            vH = -e * self.H.degree()
            lows = [0]
            if self.nA:
                lows.append(min(0, vx * self.dA))
            if self.nB:
                lows.append(min(0, vx * self.dB) + vy)
            vmin = min(lows) - vH
            slack = 4
        else:
            vH = e * sum(k for c, k in self.centers if c == P.x)
            vmin = -vH
            slack = 4 + e * self.H.degree()
        if m <= vmin:
            return np.zeros((0, self.size), dtype=np.int64)
        rel = m - vmin + slack
        while True:
            cols = self.column_series(P, rel)
            try:
                return np.stack([c.coeffs_between(vmin, m) for c in cols], axis=1)
            except ValueError:
                rel *= 2


@dataclass(frozen=True)
class RRSpace:
    divisor: Divisor
    ambient: Ambient
    matrix: np.ndarray  # ambient.size x dim

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def basis(self) -> list[FunctionElement]:
        return [self.ambient.element(self.matrix[:, k]) for k in range(self.dim)]


def ambient_for(D: Divisor) -> Ambient:
    """Smallest monomial ambient containing L(D)."""
    C = D.curve
    g = C.genus
    centers: dict[int, int] = {}
    for P, k in D.coeffs.items():
        if P.kind != "infinity" and k > 0:
            e = C.ramification_index(P)
            need = -(-k // e)
            centers[P.x] = max(centers.get(P.x, 0), need)
    degH = sum(centers.values())
    inf = C.places_at_infinity()
    if C.odd:
        Einf = D[inf[0]]
        dA = degH + Einf // 2 if degH * 2 + Einf >= 0 else -1
        tB = Einf - (2 * g + 1)
        dB = degH + (tB // 2) if 2 * degH + tB >= 0 else -1
    else:
        Einf = max(D[inf[0]], D[inf[1]])
        dA = degH + Einf if degH + Einf >= 0 else -1
        dB = degH + Einf - g - 1 if degH + Einf - g - 1 >= 0 else -1
    return Ambient(C, tuple(sorted(centers.items())), dA, dB)


def constraint_places(D: Divisor, amb: Ambient) -> list[Place]:
    C = D.curve
    places = set(C.places_at_infinity()) | set(D.coeffs)
    for c, _ in amb.centers:
        places.update(C.places_over(c))
    return sorted(places)


def subspace_matrix(amb: Ambient, D: Divisor) -> np.ndarray:
    """Columns spanning L(D) inside ``amb`` (which must contain it)."""
    F = amb.curve.F
    if amb.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows = [amb.constraint_rows(P, -D[P]) for P in constraint_places(D, amb)]
    M = np.concatenate(rows, axis=0) if rows else np.zeros((0, amb.size), dtype=np.int64)
    return linalg.nullspace(F, M, amb.size)


def rr_space(D: Divisor) -> RRSpace:
    """Basis of L(D) = {g : div(g) + D >= 0}."""
    amb = ambient_for(D)
    if amb.size == 0:
        return RRSpace(D, amb, np.zeros((0, 0), dtype=np.int64))
    return RRSpace(D, amb, subspace_matrix(amb, D))


def l_dim(D: Divisor) -> int:
    return rr_space(D).dim


def is_principal(D: Divisor) -> FunctionElement | None:
    """A normalized h with div(h) = D, or None."""
    if D.degree() != 0:
        raise DegreeNonZero(f"deg D = {D.degree()}")
    space = rr_space(-D)
    if space.dim == 0:
        return None
    return space.basis[0].normalized()


def torsion_order(D: Divisor, bound: int) -> tuple[int, FunctionElement]:
    """Least n <= bound with nD principal, with h such that div(h) = nD."""
    if D.degree() != 0:
        raise DegreeNonZero(f"deg D = {D.degree()}")
    for n in range(1, bound + 1):
        h = is_principal(D * n)
        if h is not None:
            return n, h
    raise NotFoundWithinBound(f"no n <= {bound} with nD principal")


@dataclass(frozen=True)
class CoverInfo:
    n: int
    genus: int
    ramification: Divisor
    unramified: bool
    divisor_h: Divisor


def cyclic_cover(X: CurveModel, h: FunctionElement, n: int, bound: int = DEFAULT_SPLIT_BOUND) -> CoverInfo:
    """Invariants of k(X)(t), t^n = h, assuming the extension has degree n.

    Riemann-Hurwitz: above P sit gcd(n, v_P(h)) places with ramification
    index n / gcd(n, v_P(h)).
    """
    from math import gcd

    if n < 1 or n % X.p == 0:
        raise NotCoprimeToP(f"n = {n} is not prime to p = {X.p}")
    if h.is_zero():
        raise ValueError("h must be nonzero")
    D = divisor_of(h, bound)
    ram = {}
    contribution = 0
    for P, v in D.coeffs.items():
        gcd_v = gcd(n, v)
        if gcd_v != n:
            ram[P] = n // gcd_v - 1
            contribution += n - gcd_v
    two_g = n * (2 * X.genus - 2) + contribution + 2
    return CoverInfo(n, two_g // 2, Divisor(D.curve, ram), not ram, D)
