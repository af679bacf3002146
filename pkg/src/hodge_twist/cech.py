"""Two-chart Cech cohomology on hyperelliptic curves.

The atlas is U = X minus the places at infinity and V = X minus the fiber
Z* over one finite x-value.  The model is translated so that this x-value
is 0; then every truncated space lives in an ambient of elements
(A + B y) / x^K, and operators (d, multiplication by a form, Frobenius)
act on Laurent coefficients directly.

Truncation: sections over a chart may have poles of order <= N (plus the
divisor's own coefficient) at the removed places.  Dimensions are accepted
once two consecutive levels N, N + delta agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable

import numpy as np

from . import linalg
from .fields import Polynomial
from .function_fields import (
    Ambient,
    CurveModel,
    Differential,
    Divisor,
    FunctionElement,
    Place,
    ambient_for,
    cyclic_cover,
    is_principal,
    subspace_matrix,
    torsion_order,
)


class TruncationUnstable(RuntimeError):
    pass


class RamifiedCover(ValueError):
    pass


class OutOfAmbient(ValueError):
    pass


MAX_ESCALATIONS = 3


def truncation_policy(genus: int, max_pole: int = 0) -> tuple[int, int]:
    """(N0, delta) = (4g + 2 * max_pole, g + 2)."""
    return 4 * genus + 2 * max_pole, genus + 2


def frobenius_policy(genus: int, p: int, max_pole: int = 0) -> tuple[int, int]:
    """Policy for truncations that see p-th powers (images of d, Frobenius).

    ker d on O(W)_N is O(W)_{N/p}^p, so the plain policy is applied at
    level N/p: (N0, delta) = (p * (4g + 2 * max_pole), p * (g + 2)).
    """
    N0, delta = truncation_policy(genus, max_pole)
    return p * N0, p * delta


@dataclass
class StableValue:
    value: object
    level: int
    history: list = field(default_factory=list)


def stabilize(compute: Callable[[int], object], N0: int, delta: int,
              max_escalations: int = MAX_ESCALATIONS) -> StableValue:
    """Evaluate at N0, N0 + delta, ... until two consecutive levels agree."""
    N = N0
    prev = compute(N)
    history = [(N, prev)]
    for _ in range(max_escalations + 1):
        cur = compute(N + delta)
        history.append((N + delta, cur))
        if cur == prev:
            return StableValue(prev, N, history)
        N += delta
        prev = cur
    raise TruncationUnstable(f"no agreement after {max_escalations} escalations: {history}")


# ---------------------------------------------------------------------------
# atlas


def working_curve(X: CurveModel) -> CurveModel:
    """X itself if its places at infinity are rational, else the quadratic base change."""
    return X if X.infinity_split() else X.base_change(2)


@dataclass(frozen=True)
class Atlas:
    original: CurveModel
    curve: CurveModel
    shift: int

    @property
    def inf(self) -> list[Place]:
        return self.curve.places_at_infinity()

    @property
    def zstar(self) -> list[Place]:
        return self.curve.places_over(0)

    def transport_place(self, P: Place) -> Place:
        if P.kind == "infinity":
            return self.curve.places_at_infinity()[P.index]
        F = self.curve.F
        return Place(F, P.kind, F.sub(P.x, self.shift), P.y, 0)

    def transport(self, D: Divisor) -> Divisor:
        if D.curve != self.original:
            raise ValueError("divisor is not on the atlas curve")
        return Divisor(self.curve, {self.transport_place(P): k for P, k in D.coeffs.items()})

    def transport_function(self, g: FunctionElement) -> FunctionElement:
        s = self.shift
        return FunctionElement(self.curve, g.A.compose_shift(s), g.B.compose_shift(s), g.H.compose_shift(s))

    def transport_form(self, omega: Differential) -> Differential:
        return Differential.from_w(self.transport_function(omega.w))


def make_atlas(X: CurveModel, avoid: tuple[int, ...] = ()) -> Atlas:
    """Translate X so the second chart removes the fiber over the least
    x-value (by code) with a rational fiber, avoiding ``avoid``."""
    if not X.infinity_split():
        raise ValueError("places at infinity must be rational; use working_curve()")
    for c in range(X.F.q):
        if c in avoid:
            continue
        if X.places_over(c):
            if c == 0:
                return Atlas(X, X, 0)
            return Atlas(X, CurveModel(X.F, X.f.compose_shift(c)), c)
    raise ValueError("no finite x-value with a rational fiber; base change first")


def _sum_places(places, k: int, curve: CurveModel) -> Divisor:
    return Divisor(curve, {P: k for P in places})


# ---------------------------------------------------------------------------
# Laurent ambients and operators


def _laurent_K(amb: Ambient) -> int:
    K = 0
    for c, k in amb.centers:
        if c != 0:
            raise ValueError("ambient has poles away from x = 0")
        K = k
    return K


def laurent_ambient(curve: CurveModel, lo: int, hiA: int, hiB: int) -> Ambient:
    """Ambient of (A + B y) / x^K covering exponents lo..hiA (A) and lo..hiB (B)."""
    K = max(-lo, 0)
    return Ambient(curve, ((0, K),) if K else (), hiA + K, hiB + K)


def _monomials(amb: Ambient):
    K = _laurent_K(amb)
    for j in range(amb.nA):
        yield "A", j - K
    for j in range(amb.nB):
        yield "B", j - K


def _index(amb: Ambient, part: str, e: int) -> int:
    K = _laurent_K(amb)
    idx = e + K
    n_part = amb.nA if part == "A" else amb.nB
    if not 0 <= idx < n_part:
        raise OutOfAmbient(f"x^{e} ({part}) outside ambient")
    return idx + (0 if part == "A" else amb.nA)


def _assemble(src: Ambient, columns, tgt: Ambient | None) -> tuple[Ambient, np.ndarray]:
    """columns: per source monomial, a list of (part, low, coeffs) blocks."""
    F = src.curve.F
    if tgt is None:
        lo, hiA, hiB = 0, -1, -1
        for blocks in columns:
            for part, low, coeffs in blocks:
                nz = np.nonzero(np.asarray(coeffs))[0]
                if nz.size == 0:
                    continue
                a, b = low + int(nz[0]), low + int(nz[-1])
                lo = min(lo, a)
                if part == "A":
                    hiA = max(hiA, b)
                else:
                    hiB = max(hiB, b)
        tgt = laurent_ambient(src.curve, lo, hiA, hiB)
    M = np.zeros((tgt.size, src.size), dtype=np.int64)
    for j, blocks in enumerate(columns):
        for part, low, coeffs in blocks:
            for i, c in enumerate(np.asarray(coeffs).tolist()):
                if c:
                    idx = _index(tgt, part, low + i)
                    M[idx, j] = F.add(int(M[idx, j]), int(c))
    return tgt, M


def reembed(M: np.ndarray, src: Ambient, tgt: Ambient) -> np.ndarray:
    """Rewrite columns from one Laurent ambient in another."""
    out = np.zeros((tgt.size, M.shape[1]), dtype=np.int64)
    for j, (part, e) in enumerate(_monomials(src)):
        row = M[j]
        if not row.any():
            continue
        out[_index(tgt, part, e)] = row
    return out


def common_ambient(*ambs: Ambient) -> Ambient:
    lo = min(-_laurent_K(a) for a in ambs)
    hiA = max(a.dA - _laurent_K(a) for a in ambs)
    hiB = max(a.dB - _laurent_K(a) for a in ambs)
    return laurent_ambient(ambs[0].curve, lo, hiA, hiB)


def d_matrix(src: Ambient, tgt: Ambient | None = None) -> tuple[Ambient, np.ndarray]:
    """Exterior derivative, functions -> forms in the dx/y representation.

    d(x^n) = n x^(n-1) y dx/y, d(x^n y) = (n x^(n-1) f + x^n f'/2) dx/y.
    """
    C = src.curve
    F = C.F
    f = C.f.to_array()
    half_fp = F.mul(C._fprime.to_array(), F.inv(2))
    cols = []
    for part, n in _monomials(src):
        nn = n % F.p
        if part == "A":
            cols.append([("B", n - 1, [nn])])
        else:
            cols.append([("A", n - 1, F.mul(f, nn)), ("A", n, half_fp)])
    return _assemble(src, cols, tgt)


@dataclass(frozen=True)
class LaurentForm:
    """w = alpha(x) + beta(x) y, alpha and beta Laurent; the form is w dx/y."""

    low: int
    alpha: np.ndarray
    beta: np.ndarray

    @classmethod
    def from_differential(cls, omega: Differential) -> "LaurentForm":
        w = omega.w
        H = w.H
        if any(H.coeffs[:-1]):
            raise ValueError("form has poles away from x = 0 and infinity")
        k = H.degree()
        return cls(-k, w.A.to_array(), w.B.to_array())

    def scaled(self, F, c: int) -> "LaurentForm":
        return LaurentForm(self.low, F.mul(self.alpha, c), F.mul(self.beta, c))

    def is_zero(self) -> bool:
        return not (np.any(self.alpha) or np.any(self.beta))


def mul_form_matrix(src: Ambient, w: LaurentForm, tgt: Ambient | None = None) -> tuple[Ambient, np.ndarray]:
    """g -> g * omega from functions to forms (dx/y representation)."""
    C = src.curve
    F = C.F
    beta_f = F.conv(w.beta, C.f.to_array()) if len(w.beta) else np.zeros(0, dtype=np.int64)
    cols = []
    for part, n in _monomials(src):
        if part == "A":
            cols.append([("A", n + w.low, w.alpha), ("B", n + w.low, w.beta)])
        else:
            cols.append([("A", n + w.low, beta_f), ("B", n + w.low, w.alpha)])
    return _assemble(src, cols, tgt)


def frobenius_matrix(src: Ambient, tgt: Ambient | None = None) -> tuple[Ambient, np.ndarray]:
    """Columns of g -> g^p on monomials; apply to p-th powers of coordinates."""
    C = src.curve
    p = C.F.p
    h = (C.f ** ((p - 1) // 2)).to_array()
    cols = []
    for part, n in _monomials(src):
        cols.append([("A", n * p, [1])] if part == "A" else [("B", n * p, h)])
    return _assemble(src, cols, tgt)


def apply_frobenius(F, M: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return linalg.matmul(F, M, F.frobenius(np.asarray(basis, dtype=np.int64)))


def exactness_rows(amb: Ambient) -> np.ndarray:
    """Linear conditions for (A + B y) dx/y to be exact: no x^(kp-1) term in
    B nor in A * f^((p-1)/2) (the Cartier operator kills the form)."""
    C = amb.curve
    F = C.F
    p = F.p
    K = _laurent_K(amb)
    h = (C.f ** ((p - 1) // 2)).to_array()
    rows = []
    lo, hi = -K, max(amb.dA, amb.dB, 0) - K + len(h)
    for m in range(lo, hi + 1):
        if (m + 1) % p:
            continue
        row = np.zeros(amb.size, dtype=np.int64)
        for j in range(amb.nA):
            e = j - K
            if 0 <= m - e < len(h):
                row[j] = h[m - e]
        if 0 <= m + K < amb.nB:
            row[amb.nA + m + K] = 1
        if row.any():
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(-1, amb.size)


def form_vector(amb: Ambient, w: LaurentForm) -> np.ndarray:
    F = amb.curve.F
    vec = np.zeros(amb.size, dtype=np.int64)
    for part, coeffs in (("A", w.alpha), ("B", w.beta)):
        for i, c in enumerate(np.asarray(coeffs).tolist()):
            if c:
                idx = _index(amb, part, w.low + i)
                vec[idx] = F.add(int(vec[idx]), int(c))
    return vec


def form_ambient(w: LaurentForm, curve: CurveModel) -> Ambient:
    return laurent_ambient(curve, min(w.low, 0), w.low + len(w.alpha) - 1, w.low + len(w.beta) - 1)


def is_exact(omega: Differential) -> bool:
    """Cartier test on a form with poles only over x = 0 and infinity."""
    w = LaurentForm.from_differential(omega)
    C = omega.curve
    amb = form_ambient(w, C)
    vec = form_vector(amb, w)
    R = exactness_rows(amb)
    return not np.any(linalg.matmul(C.F, R, vec.reshape(-1, 1))) if R.size else True


# ---------------------------------------------------------------------------
# chart spaces


class ChartSpaces:
    """Truncated section spaces of O(D) and Omega(D) on U, V, U cap V."""

    def __init__(self, atlas: Atlas, D: Divisor | None = None):
        self.atlas = atlas
        C = atlas.curve
        self.curve = C
        self.D = D if D is not None else Divisor(C, {})
        self.K0 = C.canonical_divisor()
        self._cache: dict = {}

    def divisor(self, chart: str, N: int, forms: bool) -> Divisor:
        C = self.curve
        base = self.D + (self.K0 if forms else Divisor(C, {}))
        out = base
        if chart in ("U", "UV"):
            out = out + _sum_places(self.atlas.inf, N, C)
        if chart in ("V", "UV"):
            out = out + _sum_places(self.atlas.zstar, N, C)
        return out

    def ambient(self, N: int, forms: bool) -> Ambient:
        return ambient_for(self.divisor("UV", N, forms))

    def space(self, chart: str, N: int, forms: bool, amb: Ambient | None = None) -> tuple[Ambient, np.ndarray]:
        """(ambient, basis columns); the ambient defaults to the U cap V ambient at level N."""
        if amb is None:
            amb = self.ambient(N, forms)
        key = (chart, N, forms, amb)
        if key not in self._cache:
            self._cache[key] = subspace_matrix(amb, self.divisor(chart, N, forms))
        return amb, self._cache[key]


def cech_h(F, MU: np.ndarray, MV: np.ndarray, MUV: np.ndarray) -> tuple[int, int]:
    """(h0, h1) of 0 -> S(U) + S(V) -> S(UV) -> 0 with spaces in one ambient."""
    both = np.concatenate([MU, MV], axis=1)
    r = linalg.rank(F, both) if both.size else 0
    return MU.shape[1] + MV.shape[1] - r, MUV.shape[1] - r


def _avoid_for(D: Divisor) -> tuple[int, ...]:
    return tuple(sorted({P.x for P in D.coeffs if P.kind != "infinity"}))


def prepare(X: CurveModel, D: Divisor | None = None) -> tuple[Atlas, Divisor]:
    """Working atlas and transported divisor."""
    if D is not None and D.curve != X:
        X = D.curve
    W = working_curve(X)
    if D is None:
        D = Divisor(W, {})
    elif W != X:
        D = D.base_change(W)
    try:
        atlas = make_atlas(W, _avoid_for(D))
    except ValueError:
        # over the quadratic extension every fiber is rational
        W2 = W.base_change(2)
        D = D.base_change(W2)
        atlas = make_atlas(W2, _avoid_for(D))
    return atlas, atlas.transport(D)


def sheaf_cohomology(X: CurveModel, D: Divisor, a: int, *, with_level: bool = False):
    """(h0, h1) of O(D) tensor Omega^a via the two-chart Cech complex."""
    if a not in (0, 1):
        raise ValueError("a must be 0 or 1")
    atlas, Dt = prepare(X, D)
    C = atlas.curve
    spaces = ChartSpaces(atlas, Dt)
    forms = a == 1
    max_pole = max([abs(k) for k in (Dt + (C.canonical_divisor() if forms else Divisor(C, {}))).coeffs.values()] + [0])
    N0, delta = truncation_policy(C.genus, max_pole)

    def compute(N: int):
        amb = spaces.ambient(N, forms)
        _, MU = spaces.space("U", N, forms, amb)
        _, MV = spaces.space("V", N, forms, amb)
        _, MUV = spaces.space("UV", N, forms, amb)
        return cech_h(C.F, MU, MV, MUV)

    st = stabilize(compute, N0, delta)
    return (st.value, st.level) if with_level else st.value


@dataclass(frozen=True)
class DimTable:
    h00: int
    h01: int
    h10: int
    h11: int

    @property
    def m0(self) -> int:
        return self.h00

    @property
    def m1(self) -> int:
        return self.h01 + self.h10

    @property
    def m2(self) -> int:
        return self.h11

    def hodge(self) -> tuple[int, int, int]:
        return (self.m0, self.m1, self.m2)

    def row(self) -> tuple[int, ...]:
        return (self.h00, self.h01, self.h10, self.h11, self.m0, self.m1, self.m2)


def hodge_table(X: CurveModel, D: Divisor) -> DimTable:
    h00, h01 = sheaf_cohomology(X, D, 0)
    h10, h11 = sheaf_cohomology(X, D, 1)
    return DimTable(h00, h01, h10, h11)


@dataclass(frozen=True)
class Question1Verdict:
    n: int
    tables: dict
    mismatches: tuple[tuple[int, int], ...]

    @property
    def affirmative(self) -> bool:
        return not self.mismatches


def question1_check(X: CurveModel, D: Divisor, n: int) -> Question1Verdict:
    """Compare Hodge numbers of L^i with those of L for every i prime to n."""
    if D.degree() != 0 or is_principal(D * n) is None:
        raise ValueError(f"{n}D is not principal")
    units = [i for i in range(1, max(n, 2)) if gcd(i, n) == 1] or [1]
    tables = {i: hodge_table(X, D * i) for i in units}
    ref = tables[1].hodge()
    bad = []
    for i, t in tables.items():
        for m in range(3):
            if t.hodge()[m] != ref[m]:
                bad.append((i, m))
    return Question1Verdict(n, tables, tuple(bad))


# ---------------------------------------------------------------------------
# B^1, Hasse-Witt, ordinarity


def b1_cohomology(X: CurveModel) -> tuple[int, int]:
    """(h0, h1) of B^1 = d(O), with B^1(W) truncated as d(O(W)_N)."""
    atlas, _ = prepare(X)
    C = atlas.curve
    spaces = ChartSpaces(atlas)
    N0, delta = frobenius_policy(C.genus, C.p)

    def compute(N: int):
        amb_f = spaces.ambient(N, False)
        _, dm = d_matrix(amb_f)
        mats = []
        for chart in ("U", "V", "UV"):
            _, M = spaces.space(chart, N, False, amb_f)
            mats.append(linalg.column_basis(C.F, linalg.matmul(C.F, dm, M)))
        return cech_h(C.F, *mats)

    return stabilize(compute, N0, delta).value


def ordinarity_bk(X: CurveModel) -> bool:
    return b1_cohomology(X) == (0, 0)


def hasse_witt(X: CurveModel) -> np.ndarray:
    """g x g matrix with (i, j) entry the coefficient of x^(ip - j) in f^((p-1)/2)."""
    p = X.p
    h = X.f ** ((p - 1) // 2)
    g = X.genus
    M = np.zeros((g, g), dtype=np.int64)
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            M[i - 1, j - 1] = h[i * p - j]
    return M


def is_ordinary_hw(X: CurveModel) -> bool:
    return linalg.rank(X.F, hasse_witt(X)) == X.genus


# ---------------------------------------------------------------------------
# pushforward along a cyclic cover


@dataclass(frozen=True)
class PushforwardVerdict:
    n: int
    components: int
    genus_component: int
    sums: tuple[int, int, int, int]
    expected: tuple[int, int, int, int]

    @property
    def ok(self) -> bool:
        return self.sums == self.expected


def pushforward_decomposition_check(X: CurveModel, D: Divisor, n: int) -> PushforwardVerdict:
    """Compare sum_i h^b(X, Omega^a(iD)) with the Hodge numbers of the cover
    t^n = h, where div(h) = nD."""
    if n < 1 or n % X.p == 0:
        raise RamifiedCover(f"n = {n} is divisible by p = {X.p}: not an etale cover")
    if D.degree() != 0:
        raise ValueError("D must have degree 0")
    h = is_principal(D * n)
    if h is None:
        raise ValueError(f"{n}D is not principal")
    cover = cyclic_cover(D.curve, h, n)
    if not cover.unramified:
        raise RamifiedCover("cover is ramified")
    # the cover splits into n/m copies of the connected degree-m cover
    m, hm = torsion_order(D, n)
    gm = cyclic_cover(D.curve, hm, m).genus if m > 1 else D.curve.genus
    comps = n // m
    sums = [0, 0, 0, 0]
    for i in range(n):
        t = hodge_table(X, D * i)
        for k, v in enumerate((t.h00, t.h01, t.h10, t.h11)):
            sums[k] += v
    expected = (comps, comps * gm, comps * gm, comps)
    return PushforwardVerdict(n, comps, gm, tuple(sums), expected)
