"""Verification suites behind ``verify``; each check yields (name, passed, detail)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cech import hodge_table, is_ordinary_hw, ordinarity_bk
from .elliptic import count_points, find_n_torsion, miller_witness, omega_from_p_torsion
from .function_fields import (
    CurveError,
    Differential,
    Divisor,
    function_from_polys,
    hyperelliptic,
    is_principal,
    torsion_order,
)
from .twisted import abc_maps, twisted_dims, z_b_dims


def _name(X) -> str:
    """The model over its field of definition, then the field it is studied over."""
    return f"y^2={X.root.f}".replace("T", "x").replace(" ", "") + f"/F{X.F.q}"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# ---------------------------------------------------------------------------
# curve lists


def example_elliptic():
    """y^2 = x^3 + x^2 + 1 over F_3."""
    return hyperelliptic(3, [1, 0, 1, 1])


def anomalous_curves(primes=(3, 5, 7), per_prime: int = 2):
    """Elliptic curves with #E(F_p) = p: ordinary with a rational p-torsion point."""
    out = []
    for p in primes:
        found = 0
        for a0, a1, a2 in itertools.product(range(p), repeat=3):
            try:
                E = hyperelliptic(p, [a0, a1, a2, 1])
            except CurveError:
                continue
            if count_points(E) == p:
                out.append(E)
                found += 1
                if found == per_prime:
                    break
    return out


def curves_where(p: int, deg: int, pred, count: int, r: int = 1, seed: int = 0):
    """First ``count`` monic squarefree models of degree ``deg`` satisfying
    ``pred``, in a fixed pseudo-random order of coefficient vectors."""
    import random

    from .fields import GF

    q = GF(p, r).q
    rng = random.Random(f"{p}/{r}/{deg}/{seed}")
    out = []
    for _ in range(20000):
        f = [rng.randrange(q) for _ in range(deg)] + [1]
        try:
            X = hyperelliptic(p, f, r)
        except CurveError:
            continue
        if X not in out and pred(X):
            out.append(X)
            if len(out) == count:
                return out
    raise RuntimeError(f"only {len(out)} curves found for p={p}, deg={deg}")


def _ramified(X):
    return [P for P in X.rational_places() if X.ramification_index(P) == 2]


def rr_curves():
    """Genus 2-3 curves over F_3, F_5, F_7 with two rational ramification points."""
    specs = [(3, 5), (5, 5), (7, 5), (3, 7), (5, 7), (7, 6)]
    return [curves_where(p, d, lambda X: len(_ramified(X)) >= 2, 1)[0] for p, d in specs]


def two_torsion_classes(X):
    """Nontrivial 2-torsion: W - W' for ramification points W, W' (W' may be
    the odd infinity); 2(W - W') is the divisor of a ratio of x - a's."""
    ram = _ramified(X)
    out = []
    for W1, W2 in itertools.combinations(ram, 2):
        out.append(Divisor(X, {W1: 1, W2: -1}))
    return out


def theorem_curves():
    """Ordinary curves: genus 2 over F_3, F_5, F_7, F_9, F_25 and genus 3 over F_3, F_5."""
    specs = [(3, 5, 1, 2), (5, 5, 1, 2), (7, 5, 1, 2), (3, 7, 1, 1), (5, 7, 1, 1), (3, 5, 2, 2), (5, 5, 2, 1)]
    out = []
    for p, d, r, k in specs:
        out.extend(curves_where(p, d, ordinarity_bk, k, r))
    return out


def abc_curves():
    """Curves over F_3 studied over F_9: three non-ordinary, three ordinary."""
    out = [hyperelliptic(3, [0, 2, 0, 1])]  # y^2 = x^3 - x, supersingular
    out += curves_where(3, 5, lambda X: not ordinarity_bk(X), 2)
    out += [example_elliptic()]
    out += curves_where(3, 5, ordinarity_bk, 2, seed=1)
    return [X.base_change(2) for X in out]


# ---------------------------------------------------------------------------
# suites


def corollary_suite(curves=None) -> list[Check]:
    """twisted_dims(E, omega, a) against Hodge numbers of L^a (Riemann-Roch route)."""
    checks = []
    if curves is None:
        E = example_elliptic()
        om = omega_from_p_torsion(miller_witness(find_n_torsion(E, 3), 3))
        want = {0: (1, 2, 1), 1: (0, 0, 0), 2: (0, 0, 0)}
        for c, exp in want.items():
            got = twisted_dims(E, om, c).as_tuple()
            checks.append(Check(f"E/F3 twisted_dims c={c}", got == exp, f"{got} expected {exp}"))
        curves = [E] + anomalous_curves()
    for X0 in curves:
        if X0.genus != 1 or X0.f.degree() != 3:
            checks.append(Check(f"{_name(X0)}", False, "corollary suite needs an elliptic curve y^2 = cubic"))
            continue
        Q = find_n_torsion(X0, X0.p)
        X = Q.curve
        om = omega_from_p_torsion(miller_witness(Q, X.p))
        D = Divisor(X, {Q.place(): 1, X.places_at_infinity()[0]: -1})
        for a in range(X.p):
            dr = twisted_dims(X, om, a).as_tuple()
            hdg = hodge_table(X, D * a).hodge()
            checks.append(Check(f"{_name(X)} a={a} DR = Hodge", dr == hdg, f"{dr} vs {hdg}"))
    return checks


def rr_suite(curves=None) -> list[Check]:
    """h(L), h(L x Omega) = (0, g-1, g-1, 0) for nontrivial torsion L."""
    checks = []
    for X in curves if curves is not None else rr_curves():
        g = X.genus
        for D in two_torsion_classes(X)[:2]:
            order = torsion_order(D, 2)[0] if is_principal(D) is None else 1
            t = hodge_table(X, D)
            got = (t.h00, t.h01, t.h10, t.h11)
            exp = (0, g - 1, g - 1, 0)
            checks.append(Check(f"{_name(X)} D={D} (order {order})", order > 1 and got == exp, f"{got} expected {exp}"))
    return checks


def theorem_suite(curves=None, max_units: int | None = None) -> list[Check]:
    """Ordinary curves: dims constant over c in k^*, equal to the Z dims, B vanishes."""
    checks = []
    for X in curves if curves is not None else theorem_curves():
        forms = [Differential.from_w(function_from_polys(X, [0] * i + [1])) for i in range(min(X.genus, 2))]
        if X.genus == 1:
            forms.append(Differential.from_w(function_from_polys(X, [2 % X.p])))
        units = list(range(1, X.F.q))[: max_units or None]
        for k, om in enumerate(forms):
            dims = {c: twisted_dims(X, om, c).as_tuple() for c in units}
            zd = {c: z_b_dims(X, om, c, "Z").as_tuple() for c in units}
            bd = z_b_dims(X, om, 1, "B").as_tuple()
            const = len(set(dims.values())) == 1
            eqz = dims == zd
            checks.append(Check(f"{_name(X)} omega#{k}",
                                const and eqz and bd == (0, 0, 0),
                                f"dims {sorted(set(dims.values()))} Z-equal {eqz} B {bd}"))
    return checks


def abc_suite(curves=None) -> list[Check]:
    """c = a + b, and lambda_a-transported c_{a omega} against both candidate formulas."""
    checks = []
    for X in curves if curves is not None else abc_curves():
        om = Differential.invariant(X)
        v = abc_maps(X, om)
        tag = f"{_name(X)} (ordinary={is_ordinary_hw(X)}, H(B)={v.source_dims})"
        checks.append(Check(f"{tag} H(c)=H(a)+H(b)", v.sum_identity, "exact matrix equality"))
        bad = sorted(a for a, (lit, _) in v.scaled.items() if not lit)
        checks.append(Check(f"{tag} c_(a w) = a^-1 a_w + b_w", not bad, f"fails for a in {bad}" if bad else "all a"))
        bad = sorted(a for a, (_, der) in v.scaled.items() if not der)
        checks.append(Check(f"{tag} c_(a w) = a a_w + b_w", not bad, f"fails for a in {bad}" if bad else "all a"))
    return checks


SUITES = {
    "corollary": corollary_suite,
    "rr": rr_suite,
    "theorem": theorem_suite,
    "abc": abc_suite,
}
