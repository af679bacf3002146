"""Deterministic c-sweep search over curve families.

One CSV row per (curve, omega, c); errors are captured per row.  Rows are
sorted by (curve id, omega label, c) so the output does not depend on the
number of worker processes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cech import hasse_witt, is_ordinary_hw, ordinarity_bk
from .fields import GF, Polynomial, is_prime
from .function_fields import CurveError, CurveModel, Differential, curve_from_json, function_from_polys
from . import linalg


class ConfigError(ValueError):
    pass


OMEGA_KINDS = ("invariant", "basis", "from-torsion", "explicit")

CSV_HEADER = [
    "curve_id", "p", "r", "f", "genus", "ordinary_bk", "ordinary_hw", "omega", "c",
    "h0", "h1", "h2", "z_h0", "z_h1", "z_h2", "b_h1", "b_h2",
    "rank_d0", "rank_d1", "les_ok", "level", "error",
]


@dataclass
class ExperimentConfig:
    curves: list[dict] = field(default_factory=list)
    family: dict | None = None
    omega: dict | str = "invariant"
    units: str | list = "all"
    truncation: tuple[int, int] | None = None
    jobs: int = 1
    out: str | None = None
    summary: str | None = None
    suite: str | None = None


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def _check_p(p) -> None:
    _require(isinstance(p, int) and p > 2 and is_prime(p), f"p must be an odd prime, got {p!r}")


def load_config(source, base_dir: str | Path | None = None) -> ExperimentConfig:
    """Validate a JSON config (path, JSON text or dict)."""
    if isinstance(source, (str, Path)) and Path(source).exists():
        base_dir = Path(source).parent
        try:
            data = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
    elif isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON or missing file: {exc}") from exc
    else:
        data = dict(source)
    _require(isinstance(data, dict), "config must be a JSON object")
    known = {"curves", "family", "omega", "units", "truncation", "jobs", "out", "summary", "suite"}
    extra = set(data) - known
    _require(not extra, f"unknown config keys {sorted(extra)}")
    curves = []
    for item in data.get("curves", []):
        if isinstance(item, str):
            path = Path(item) if base_dir is None else Path(base_dir) / item
            _require(path.exists(), f"curve file {item} does not exist")
            item = json.loads(path.read_text())
        _require(isinstance(item, dict) and "p" in item and "f" in item, f"bad curve entry {item!r}")
        _check_p(item["p"])
        curves.append(item)
    family = data.get("family")
    if family is not None:
        _require(isinstance(family, dict), "family must be an object")
        ps = family.get("p", [])
        _require(isinstance(ps, list) and ps, "family.p must be a nonempty list")
        for p in ps:
            _check_p(p)
        gs = family.get("genus", [1])
        _require(isinstance(gs, list) and all(isinstance(g, int) and 1 <= g <= 4 for g in gs),
                 "family.genus must list genera in 1..4")
        lim = family.get("limit", 5)
        scan = family.get("scan", 200)
        _require(isinstance(lim, int) and isinstance(scan, int) and 0 <= lim <= scan <= 100000,
                 "family.limit and family.scan must be finite with limit <= scan")
    omega = data.get("omega", "invariant")
    kind = omega if isinstance(omega, str) else omega.get("kind") if isinstance(omega, dict) else None
    _require(kind in OMEGA_KINDS, f"omega kind must be one of {OMEGA_KINDS}")
    if kind == "explicit":
        _require(isinstance(omega.get("w"), list), "explicit omega needs w: [coefficients]")
    units = data.get("units", "all")
    _require(units in ("all", "prime") or (isinstance(units, list) and all(isinstance(u, int) for u in units)),
             "units must be 'all', 'prime' or a list of codes")
    trunc = data.get("truncation")
    if trunc is not None:
        _require(isinstance(trunc, dict) and trunc.get("N0", 0) > 0 and trunc.get("delta", 0) > 0,
                 "truncation needs positive N0 and delta")
        trunc = (int(trunc["N0"]), int(trunc["delta"]))
    jobs = data.get("jobs", 1)
    _require(isinstance(jobs, int) and jobs >= 1, "jobs must be a positive integer")
    suite = data.get("suite")
    _require(suite in (None, "theorem", "corollary", "rr", "abc"), f"unknown suite {suite!r}")
    return ExperimentConfig(curves, family, omega, units, trunc, jobs, data.get("out"), data.get("summary"), suite)


# ---------------------------------------------------------------------------
# curve families


def enumerate_family(family: dict) -> list[CurveModel]:
    """Monic odd-degree models y^2 = f(x), enumerated lexicographically per
    (p, genus); the first ``scan`` squarefree ones are ranked non-ordinary
    first (by Hasse-Witt rank) and the first ``limit`` kept."""
    out = []
    for p in family["p"]:
        lo, hi = family.get("coeff_range", [0, p - 1])
        lo, hi = max(0, lo), min(p - 1, hi)
        for g in family.get("genus", [1]):
            deg = 2 * g + 1
            found = []
            for tail in itertools.product(range(lo, hi + 1), repeat=deg):
                coeffs = list(tail) + [1]
                try:
                    C = CurveModel(GF(p, 1), Polynomial(GF(p, 1), coeffs))
                except CurveError:
                    continue
                found.append(C)
                if len(found) >= family.get("scan", 200):
                    break
            if family.get("non_ordinary_first", True):
                found.sort(key=lambda C: linalg.rank(C.F, hasse_witt(C)))
            out.extend(found[: family.get("limit", 5)])
    return out


def config_curves(cfg: ExperimentConfig) -> list[CurveModel]:
    curves = [curve_from_json(c) for c in cfg.curves]
    if cfg.family:
        curves.extend(enumerate_family(cfg.family))
    seen, uniq = set(), []
    for C in curves:
        if C.curve_id not in seen:
            seen.add(C.curve_id)
            uniq.append(C)
    return uniq


# ---------------------------------------------------------------------------
# omega specifications


def omegas_for(X: CurveModel, spec) -> list[tuple[str, CurveModel, Differential]]:
    """(label, curve carrying omega, omega); from-torsion may change the field."""
    kind = spec if isinstance(spec, str) else spec["kind"]
    if kind == "invariant":
        return [("dx/y", X, Differential.invariant(X))]
    if kind == "basis":
        return [(f"x^{i}dx/y", X, Differential.from_w(function_from_polys(X, [0] * i + [1])))
                for i in range(X.genus)]
    if kind == "explicit":
        w = function_from_polys(X, spec["w"])
        return [("w=" + ",".join(str(c) for c in spec["w"]), X, Differential.from_w(w))]
    if kind == "from-torsion":
        from .elliptic import find_n_torsion, miller_witness, omega_from_p_torsion

        Q = find_n_torsion(X, X.p)
        om = omega_from_p_torsion(miller_witness(Q, X.p))
        return [(f"torsion{Q}", Q.curve, om)]
    raise ConfigError(f"unknown omega kind {kind!r}")


def unit_codes(C: CurveModel, units) -> list[int]:
    if units == "all":
        return list(range(1, C.F.q))
    if units == "prime":
        return [C.F.from_int(a) for a in range(1, C.p)]
    return sorted({int(u) for u in units})


# ---------------------------------------------------------------------------
# running


def _fmt_bool(v) -> str:
    return "" if v is None else ("1" if v else "0")


def _curve_cells(C: CurveModel, bk, hw) -> list[str]:
    f = " ".join(str(c) for c in C.f.coeffs)
    return [C.curve_id, str(C.p), str(C.F.r), f, str(C.genus), _fmt_bool(bk), _fmt_bool(hw)]


def _task(args) -> list[list[str]]:
    """All rows for one curve; pure function of its arguments."""
    curve_json, omega_spec, units, trunc = args
    from .twisted import boundary_rank

    X = curve_from_json(curve_json)
    rows = []
    try:
        hw = is_ordinary_hw(X)
        bk = ordinarity_bk(X)
    except Exception as exc:  # recorded per row
        hw = bk = None
        err = f"ordinarity: {type(exc).__name__}: {exc}"
        return [_curve_cells(X, bk, hw) + ["", ""] + [""] * 12 + [err]]
    try:
        forms = omegas_for(X, omega_spec)
    except Exception as exc:
        return [_curve_cells(X, bk, hw) + ["", ""] + [""] * 12 + [f"omega: {type(exc).__name__}: {exc}"]]
    for label, C, om in forms:
        for c in unit_codes(C, units):
            cs = str(c) if C.F.r == 1 else C.F.code_str(c)
            head = _curve_cells(X, bk, hw) + [label, cs]
            try:
                r = boundary_rank(C, om, c, trunc)
                rows.append(head + [str(v) for v in (*r.dims.as_tuple(), *r.z_dims.as_tuple(),
                                                     r.b_dims.h1, r.b_dims.h2, *r.ranks)]
                            + [_fmt_bool(r.les_ok), str(r.level), ""])
            except Exception as exc:
                rows.append(head + [""] * 12 + [f"{type(exc).__name__}: {exc}"])
    return rows


def _sort_key(row: list[str]):
    return (row[0], row[7], len(row[8]), row[8])


def run_search(cfg: ExperimentConfig, jobs: int | None = None) -> tuple[str, dict]:
    """(CSV text, summary dict) for a configuration."""
    curves = config_curves(cfg)
    tasks = [(C.to_json(), cfg.omega, cfg.units, cfg.truncation) for C in curves]
    jobs = jobs or cfg.jobs
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, tasks))
    else:
        results = [_task(t) for t in tasks]
    rows = sorted((row for rs in results for row in rs), key=_sort_key)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    text = buf.getvalue()
    return text, summarize(rows, text)


def summarize(rows: list[list[str]], csv_text: str) -> dict:
    groups: dict = {}
    errors = 0
    for row in rows:
        if row[-1]:
            errors += 1
            continue
        key = (row[0], row[7])
        groups.setdefault(key, []).append(row)
    dims_vary, ranks_vary = [], []
    for (cid, label), rs in sorted(groups.items()):
        if len({tuple(r[9:12]) for r in rs}) > 1:
            dims_vary.append({"curve_id": cid, "omega": label})
        if len({tuple(r[17:19]) for r in rs}) > 1:
            ranks_vary.append({"curve_id": cid, "omega": label})
    non_ordinary = sorted({r[0] for r in rows if r[5] == "0"})
    return {
        "version": __version__,
        "csv_sha256": hashlib.sha256(csv_text.encode()).hexdigest(),
        "curves": len({r[0] for r in rows}),
        "non_ordinary_curves": len(non_ordinary),
        "rows": len(rows),
        "error_rows": errors,
        "dims_vary_with_c": dims_vary,
        "boundary_ranks_vary_with_c": ranks_vary,
        "any_dims_variation": bool(dims_vary),
        "any_rank_variation": bool(ranks_vary),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }


def write_outputs(csv_text: str, summary: dict, out: str | Path, summary_path: str | Path | None = None) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(csv_text.encode())
    sp = Path(summary_path) if summary_path else out.with_suffix(".summary.json")
    sp.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return sp
