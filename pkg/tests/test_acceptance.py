"""The ten acceptance criteria, exact.  Each test records one PASS/FAIL line,
printed again in the terminal summary."""

import csv
import io
import os
import random
from pathlib import Path

import pytest

import hodge_twist.cech as cech
import hodge_twist.twisted as twisted
from hodge_twist.cech import hasse_witt, is_ordinary_hw, ordinarity_bk, sheaf_cohomology
from hodge_twist.fields import GF, divisors, euler_phi
from hodge_twist.function_fields import Differential, Divisor, function_from_polys, hyperelliptic
from hodge_twist.group_algebra import all_idempotents, convolve, decompose_group_algebra, orbit_partition, regular_rank
from hodge_twist.search import load_config, run_search
from hodge_twist.suites import (
    abc_suite,
    corollary_suite,
    curves_where,
    rr_curves,
    rr_suite,
    theorem_curves,
    theorem_suite,
)
from hodge_twist.twisted import p_curvature, twisted_dims

from conftest import ACCEPTANCE

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
SEED = int(os.environ.get("HODGE_TWIST_SEED", "2024"))

# every stabilization performed by the criteria, for criterion 10
STABILIZED: list[tuple[str, object]] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE[n] = line
    print(line)


@pytest.fixture(autouse=True)
def _watch_stabilize(monkeypatch):
    real = cech.stabilize

    def watched(compute, N0, delta, *args, **kw):
        st = real(compute, N0, delta, *args, **kw)
        STABILIZED.append((compute, st, delta))
        return st

    monkeypatch.setattr(cech, "stabilize", watched)
    monkeypatch.setattr(twisted, "stabilize", watched)
    yield


def _checks(checks):
    failed = [c.line() for c in checks if not c.passed]
    return not failed, failed


def test_criterion_01_orbit_divisor_bijection():
    bad = []
    for n in range(1, 201):
        part = orbit_partition(n)
        if len(part.orbits) != len(divisors(n)) or sorted(part.labels) != divisors(n):
            bad.append(n)
        bad += [n for orb, d in zip(part.orbits, part.labels) if d % n not in orb]
    record(1, not bad, f"n <= 200, mismatches at {sorted(set(bad))}" if bad else "n <= 200 all orbits labelled by divisors")
    assert not bad


def test_criterion_02_group_algebra_decomposition():
    bad = []
    for n in range(1, 61):
        es = all_idempotents(n)
        zero = tuple([0] * n)
        for e in es:
            for f in es:
                want = e.coeffs if e is f else zero
                if convolve(n, e.coeffs, f.coeffs) != tuple(want):
                    bad.append((n, e.divisor, f.divisor))
            rank = regular_rank(e)
            # independent route: an idempotent has rank equal to its trace n * e_0
            if not rank == n * e.coeffs[0] == euler_phi(n // e.divisor):
                bad.append((n, e.divisor, "rank"))
        total = [sum(e.coeffs[i] for e in es) for i in range(n)]
        if total != [1] + [0] * (n - 1) or sum(d for _, _, d in decompose_group_algebra(n)) != n:
            bad.append((n, "sum"))
    record(2, not bad, f"failures {bad[:5]}" if bad else "n <= 60 orthogonal, complete, rank phi(n/d)")
    assert not bad


def test_criterion_03_riemann_roch_remark():
    curves = rr_curves()
    checks = rr_suite(curves)
    ok, failed = _checks(checks)
    ok = ok and len(curves) >= 5 and {X.genus for X in curves} == {2, 3}
    record(3, ok, f"{len(checks)} torsion classes on {len(curves)} curves" + (f"; {failed}" if failed else ""))
    assert ok, failed


def test_criterion_04_ordinary_theorem():
    curves = theorem_curves()
    checks = theorem_suite(curves)
    ok, failed = _checks(checks)
    fields = sorted({X.F.q for X in curves})
    ok = ok and len(curves) >= 10 and all(ordinarity_bk(X) for X in curves)
    ok = ok and len(checks) >= 2 * len(curves)
    record(4, ok, f"{len(curves)} ordinary curves over F_q, q in {fields}, {len(checks)} forms"
           + (f"; {failed}" if failed else ""))
    assert ok, failed


def test_criterion_05_corollary_instance():
    checks = corollary_suite()
    ok, failed = _checks(checks)
    record(5, ok, f"{len(checks)} checks (E/F3 explicit values, DR = Hodge on anomalous curves)"
           + (f"; {failed}" if failed else ""))
    assert ok, failed


def test_criterion_06_p_curvature_scaling():
    X = hyperelliptic(3, [1, 0, 1, 1]).base_change(2)
    F = X.F
    u = function_from_polys(X, [1], H=[0, 1])  # dx/x
    bad = []
    for c in range(F.q):
        expected = function_from_polys(X, [F.sub(F.power(c, 3), c)], H=[0, 0, 0, 1])
        psi = p_curvature(u, c)
        prime = c in [F.from_int(i) for i in range(3)]
        if psi != expected or psi.is_zero() != prime:
            bad.append(F.code_str(c))
    record(6, not bad, f"psi = (c^3 - c) x^-3 for all c in F9; zero exactly on F3" if not bad else f"fails at {bad}")
    assert not bad


def test_criterion_07_abc_identities():
    checks = abc_suite()
    sums = [c for c in checks if "H(c)=H(a)+H(b)" in c.name]
    literal = [c for c in checks if "a^-1 a_w" in c.name]
    derived = [c for c in checks if "= a a_w" in c.name]
    non_ord = sum("ordinary=False" in c.name for c in sums)
    sum_ok = all(c.passed for c in sums)
    lit_ok = all(c.passed for c in literal)
    der_ok = all(c.passed for c in derived)
    ok = sum_ok and lit_ok and len(sums) >= 5 and non_ord >= 2
    detail = (f"{len(sums)} curves over F9 ({non_ord} non-ordinary): c = a + b {'holds' if sum_ok else 'FAILS'}; "
              f"c_(a w) = a^-1 a_w + b_w {'holds' if lit_ok else 'FAILS'}"
              f" ({'; '.join(c.detail for c in literal if not c.passed)}); "
              f"c_(a w) = a a_w + b_w {'holds' if der_ok else 'fails'}")
    record(7, ok, detail)
    assert ok, "\n".join(c.line() for c in checks if not c.passed)


def _random_divisor(rng, X):
    places = X.rational_places()[:5] + X.places_at_infinity()
    while True:
        D = Divisor(X, {P: rng.randint(-2, 2) for P in places})
        if abs(D.degree()) <= 2 * X.genus + 3:
            return D


def test_criterion_08_cross_validation():
    rng = random.Random(SEED)
    problems = []
    # ordinarity, both routes
    curves = []
    for p in (3, 5, 7):
        curves += curves_where(p, 3, lambda X: True, 3, seed=SEED)
        curves += curves_where(p, 5, lambda X: True, 5, seed=SEED)
        curves += curves_where(p, 7, lambda X: True, 2, seed=SEED)
    curves += curves_where(3, 5, lambda X: not is_ordinary_hw(X), 2, seed=SEED)
    curves += curves_where(5, 7, lambda X: not is_ordinary_hw(X), 1, seed=SEED)
    problems += [f"ordinarity {X}" for X in curves if ordinarity_bk(X) != is_ordinary_hw(X)]
    # Serre duality and Riemann-Roch on random divisors
    pool = rr_curves() + curves_where(5, 3, lambda X: True, 2, seed=SEED)
    n_div = 0
    for _ in range(60):
        X = rng.choice(pool)
        D = _random_divisor(rng, X)
        K = X.canonical_divisor()
        h0, h1 = sheaf_cohomology(X, D, 0)
        if h1 != sheaf_cohomology(X, K - D, 0)[0] or h0 - h1 != D.degree() + 1 - X.genus:
            problems.append(f"duality {X} {D}")
        n_div += 1
    # Euler characteristic of twisted computations
    n_tw = 0
    for X in pool[:4] + [hyperelliptic(3, [1, 0, 1, 1]).base_change(2), hyperelliptic(7, [0, 1, 0, 1])]:
        for i in range(X.genus):
            om = Differential.from_w(function_from_polys(X, [0] * i + [1]))
            for c in rng.sample(range(X.F.q), min(4, X.F.q)):
                if twisted_dims(X, om, c).euler != 2 - 2 * X.genus:
                    problems.append(f"euler {X} {i} {c}")
                n_tw += 1
    ok = not problems and len(curves) >= 30 and n_div >= 50
    record(8, ok, f"{len(curves)} curves ordinarity, {n_div} divisors duality/RR, {n_tw} twisted Euler checks"
           + (f"; {problems[:3]}" if problems else ""))
    assert ok, problems


def _independent_variation(text: str):
    rows = list(csv.DictReader(io.StringIO(text)))
    groups = {}
    for r in rows:
        if not r["error"]:
            groups.setdefault((r["curve_id"], r["omega"]), []).append(r)
    dims = any(len({(r["h0"], r["h1"], r["h2"]) for r in g}) > 1 for g in groups.values())
    ranks = any(len({(r["rank_d0"], r["rank_d1"]) for r in g}) > 1 for g in groups.values())
    return rows, dims, ranks


def test_criterion_09_search_reproducibility():
    cfg = load_config(CONFIGS / "search_nonordinary.json")
    serial, summary = run_search(cfg, 1)
    again, _ = run_search(cfg, 1)
    parallel, summary2 = run_search(cfg, 2)
    rows, dims_vary, ranks_vary = _independent_variation(serial)
    non_ord = {r["curve_id"] for r in rows if r["ordinary_bk"] == "0"}
    has_e7 = any(r["p"] == "7" and r["f"] == "0 1 0 1" for r in rows)
    truthful = (summary["any_rank_variation"] == ranks_vary and summary["any_dims_variation"] == dims_vary
                and summary["non_ordinary_curves"] == len(non_ord))
    all_les = all(r["les_ok"] == "1" for r in rows if not r["error"])
    ok = serial == again == parallel and len(non_ord) >= 20 and has_e7 and truthful and all_les
    ok = ok and summary["csv_sha256"] == summary2["csv_sha256"]
    record(9, ok, f"{len(non_ord)} non-ordinary curves, {len(rows)} rows, byte-identical over runs and jobs; "
           f"rank variation found: {summary['any_rank_variation']}, dims variation found: {summary['any_dims_variation']}")
    assert ok


def test_criterion_10_truncation_stability():
    """Every stabilization above agreed at one extra escalation; a sample is
    pushed one escalation further still."""
    if not STABILIZED:  # run on its own: populate with the cheaper suites
        rr_suite()
        corollary_suite()
    bad = []
    for compute, st, delta in STABILIZED:
        levels = [N for N, _ in st.history]
        confirm = dict(st.history).get(st.level + delta)
        if st.level + delta not in levels or confirm != st.value:
            bad.append(st.history)
    rng = random.Random(SEED)
    sample = [s for s in STABILIZED if s[1].level <= 120]
    deeper = rng.sample(sample, min(40, len(sample)))
    for compute, st, delta in deeper:
        if compute(st.level + 2 * delta) != st.value:
            bad.append(("deeper", st.history))
    record(10, not bad, f"{len(STABILIZED)} stabilized values unchanged at N + delta, "
           f"{len(deeper)} sampled also at N + 2 delta" + (f"; {len(bad)} unstable" if bad else ""))
    assert not bad
