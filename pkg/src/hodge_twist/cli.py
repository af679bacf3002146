"""Command line driver.  Exit codes: 0 success, 2 suite failure, 3 configuration error."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .search import ConfigError, load_config, omegas_for, run_search, unit_codes, write_outputs

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 2, 3


def _load_json_arg(value: str):
    """A JSON file path or inline JSON."""
    path = Path(value)
    try:
        if path.exists():
            return json.loads(path.read_text())
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cannot read {value!r}: {exc}") from exc


def _curve(value: str):
    from .function_fields import CurveError, curve_from_json
    from .search import _check_p

    data = _load_json_arg(value)
    if not isinstance(data, dict) or "p" not in data or "f" not in data:
        raise ConfigError("curve must be a JSON object with p and f")
    _check_p(data["p"])
    try:
        return curve_from_json(data)
    except (CurveError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _omega_spec(value: str):
    """invariant | basis | from-torsion | w:c0,c1,... (w dx/y with w a polynomial)."""
    if value in ("invariant", "basis", "from-torsion"):
        return value
    if value.startswith("w:"):
        try:
            return {"kind": "explicit", "w": [int(t) for t in value[2:].split(",")]}
        except ValueError as exc:
            raise ConfigError(f"bad omega {value!r}") from exc
    raise ConfigError(f"bad omega {value!r}")


def _units(value: str):
    if value in ("all", "prime"):
        return value
    try:
        return [int(t) for t in value.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad units {value!r}") from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands


def cmd_orbits(args) -> int:
    from .group_algebra import NotCoprime, orbit_partition

    if args.n < 1:
        raise ConfigError("n must be positive")
    try:
        mode = "ell" if args.ell is not None else args.mode
        part = orbit_partition(args.n, mode, args.ell)
    except NotCoprime as exc:
        raise ConfigError(str(exc)) from exc
    _emit({"n": args.n, "mode": mode, "orbits": part.to_json()})
    return EXIT_OK


def cmd_idempotents(args) -> int:
    from .group_algebra import all_idempotents, regular_rank

    if args.n < 1:
        raise ConfigError("n must be positive")
    out = []
    for e in all_idempotents(args.n):
        row = e.to_json()
        row["rank"] = regular_rank(e)
        out.append(row)
    _emit({"n": args.n, "idempotents": out})
    return EXIT_OK


def cmd_curve_info(args) -> int:
    from . import linalg
    from .cech import b1_cohomology, hasse_witt, is_ordinary_hw, ordinarity_bk

    X = _curve(args.curve)
    HW = hasse_witt(X)
    _emit({
        "curve": X.to_json(),
        "curve_id": X.curve_id,
        "genus": X.genus,
        "rational_places": len(X.rational_places()) if X.infinity_split() else None,
        "hasse_witt": HW.tolist(),
        "hasse_witt_rank": linalg.rank(X.F, HW),
        "ordinary_hw": is_ordinary_hw(X),
        "ordinary_bk": ordinarity_bk(X),
        "b1_cohomology": list(b1_cohomology(X)),
    })
    return EXIT_OK


def cmd_hodge(args) -> int:
    from .cech import hodge_table
    from .function_fields import divisor_from_json

    X = _curve(args.curve)
    try:
        D = divisor_from_json(X, _load_json_arg(args.divisor))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad divisor: {exc}") from exc
    rows = []
    for i in range(args.powers if args.powers else 1):
        t = hodge_table(X, D * (i if args.powers else 1))
        rows.append([i if args.powers else 1, *t.row()])
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["i", "h0(L)", "h1(L)", "h0(L*Omega)", "h1(L*Omega)", "hdg0", "hdg1", "hdg2"])
    w.writerows(rows)
    return EXIT_OK


def cmd_twist_sweep(args) -> int:
    from .twisted import sweep

    X = _curve(args.curve)
    spec = _omega_spec(args.omega)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["omega", "c", "h0", "h1", "h2", "rank_d0", "rank_d1", "constant_flag"])
        for label, C, om in omegas_for(X, spec):
            res = sweep(C, om, unit_codes(C, _units(args.units)))
            flag = int(res.dims_constant and res.ranks_constant)
            for r in res.rows:
                c = r.c if C.F.r == 1 else C.F.code_str(r.c)
                w.writerow([label, c, *r.dims.as_tuple(), *r.ranks, flag])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_torsion_omega(args) -> int:
    from .elliptic import find_n_torsion, miller_witness, omega_from_p_torsion

    X = _curve(args.curve)
    if X.f.degree() != 3:
        raise ConfigError("torsion-omega needs an elliptic curve (deg f = 3)")
    n = args.n or X.p
    Q = find_n_torsion(X, n, args.max_degree)
    w = miller_witness(Q, n)
    out = {"point": Q.to_json(), "extension_degree": Q.curve.degree_over_parent, "order": n,
           "witness_h": w.h.to_json(), "divisor": str(w.divisor())}
    if n == X.p:
        # omega = w dx / y
        out["omega"] = omega_from_p_torsion(w).w.to_json()
    _emit(out)
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = load_config(args.config)
    out = args.out or cfg.out
    if not out:
        raise ConfigError("no output path (--out or config.out)")
    text, summary = run_search(cfg, args.jobs)
    status = EXIT_OK
    if cfg.suite:
        from .search import config_curves
        from .suites import SUITES

        checks = SUITES[cfg.suite](curves=config_curves(cfg))
        summary["suite"] = {"name": cfg.suite, "passed": all(c.passed for c in checks),
                            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}
        status = EXIT_OK if summary["suite"]["passed"] else EXIT_FAIL
    sp = write_outputs(text, summary, out, args.summary or cfg.summary)
    print(f"{summary['rows']} rows, {summary['error_rows']} errors -> {out} ({sp})")
    return status


def cmd_verify(args) -> int:
    from .suites import SUITES

    checks = SUITES[args.suite]()
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hodge-twist", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", help="orbits of Z/nZ under units")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["full", "ell"], default="full")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("idempotents", help="primitive idempotents of Q[Z/nZ]")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("curve-info", help="genus, Hasse-Witt matrix and ordinarity")
    p.add_argument("--curve", required=True, help="JSON file or inline JSON {p, r, f}")
    p.set_defaults(func=cmd_curve_info)

    p = sub.add_parser("hodge", help="h^b(X, O(D) x Omega^a) by Cech cohomology")
    p.add_argument("--curve", required=True)
    p.add_argument("--divisor", required=True, help="JSON list of {place, coeff}")
    p.add_argument("--torsion-n", "--powers", dest="powers", type=int, default=0,
                   help="tabulate iD for 0 <= i < N (default: D alone)")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("twist-sweep", help="dims of (O -> Omega, d + c omega) over c")
    p.add_argument("--curve", required=True)
    p.add_argument("--omega", default="invariant", help="invariant | basis | from-torsion | w:c0,c1,...")
    p.add_argument("--units", default="all", help="all | prime | comma-separated codes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_twist_sweep)

    p = sub.add_parser("torsion-omega", help="n-torsion point, Miller function and -dh/h")
    p.add_argument("--curve", required=True)
    p.add_argument("--n", type=int, default=0, help="torsion order (default p)")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_torsion_omega)

    p = sub.add_parser("search", help="c-sweep over a curve family")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--summary")
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", choices=["theorem", "corollary", "rr", "abc"], required=True)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
