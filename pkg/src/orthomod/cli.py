"""orthomod command line: analyze, certify, volume, reproduce, reid-tai.

Reports are JSON (schema 1, sorted keys) unless --md is given.  Exit codes:
0 done or certified, 1 reproduction mismatch, 2 inconclusive, 3 input error,
4 precision cap reached.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import obstruction, weil
from .density import alpha
from .exact_values import ExactReal, IntervalReal, PrecisionCapError, zeta_interval
from .jordan import jordan_decompose
from .lattice import (DEFAULT_MAX_GROUP, DEFAULT_MAX_HEIGHT, CapExceeded, IntegralLattice,
                      LatticeError, exponent, orthogonal_complement, parse_lattice,
                      prime_factors)
from .reflective import candidate_norms, eichler_orbits, has_standard_2U
from .reid_tai import AdmissibleData, brute_force_canonical, canonical_check, corpus, is_admissible
from .volume import hm_volume_O, volume_ratio, volume_ratio_plus_factor

SCHEMA = 1
EXIT_OK, EXIT_MISMATCH, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3, 4

log = logging.getLogger("orthomod")


class InputError(Exception):
    pass


def _plain(x):
    """Convert values to JSON-friendly, deterministic forms."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, ExactReal):
        return {"exact": str(x), "approx": f"{float(x):.17g}"}
    if isinstance(x, IntervalReal):
        return {"lo": f"{float(x.lo):.17g}", "hi": f"{float(x.hi):.17g}", "precision": x.precision}
    if isinstance(x, obstruction.SurdSum):
        return [_plain(t) for t in x.terms]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    return str(x)


def _lattice_echo(L: IntegralLattice) -> dict:
    return {"gram": [list(r) for r in L.gram], "rank": L.rank, "signature": list(L.signature),
            "det": L.det, "even": L.is_even()}


# ------------------------------------------------------------ reports

def analyze_report(L: IntegralLattice, precision: int, max_group: int) -> dict:
    A = L.discriminant
    rep = {"lattice": _lattice_echo(L), "discriminant_orders": list(A.orders),
           "exponent": exponent(L)}
    primes = sorted(set(prime_factors(2 * abs(L.det))))
    jordan, dens = {}, {}
    for p in primes:
        jd = jordan_decompose(L, p)
        jordan[p] = [{"scale": b.scale, "rank": b.rank, "unit_det": b.unit_det, "odd": b.odd,
                      "odd_units": list(b.odd_units), "even_planes": list(b.even_planes)}
                     for b in jd.blocks]
        dens[p] = alpha(L, p)
    rep["jordan"] = jordan
    rep["alpha"] = dens
    pos, neg = L.signature
    if pos == 2 and neg >= 1:
        vol = hm_volume_O(L)
        rep["hm_volume"] = {"base": vol.base, "spinor_lo": vol.spinor.lo, "spinor_hi": vol.spinor.hi}
    prim, _ = L.primitive_descale()
    er = obstruction.epsilon_report(prim, precision)
    rep["epsilon"] = {"m": er.m, "eps_pj": er.eps_pj, "eps_p": er.eps_p,
                      "classes": er.classes, "total": er.total}
    if pos == 2 and neg >= 4:
        rep["branch_sum_bound"] = obstruction.branch_sum_bound(prim, precision)
    rep["candidate_norms"] = [list(c) for c in candidate_norms(L)]
    if L.is_even() and has_standard_2U(L):
        try:
            rep["eichler_orbits"] = [{"norm": o.norm, "div": o.div, "type": o.type,
                                      "class": list(o.class_), "witness": list(o.witness)}
                                     for o in eichler_orbits(L, max_group)]
        except CapExceeded as exc:
            rep["eichler_orbits"] = f"capped: {exc}"
    return rep


def certificate_report(cert: obstruction.Certificate) -> dict:
    return {"lattice": _lattice_echo(cert.lattice), "n": cert.n, "D": cert.D,
            "cusp_weight": cert.weight, "a": cert.a, "bound": cert.bound,
            "decision": cert.decision, "route": cert.route, "reason": cert.reason,
            "precision": cert.precision, "lhs": cert.lhs, "rhs": cert.rhs,
            "orbits": [{"norm": t.norm, "div": t.div, "type": t.type, "weight": t.weight,
                        "weight_exact": t.weight_exact, "volume": t.volume}
                       for t in cert.orbits]}


def volume_report(L: IntegralLattice, complement) -> dict:
    vol = hm_volume_O(L)
    rep = {"lattice": _lattice_echo(L),
           "hm_volume": {"base": vol.base, "spinor_lo": vol.spinor.lo, "spinor_hi": vol.spinor.hi}}
    if complement is not None:
        K = orthogonal_complement(L, complement).lattice
        r = volume_ratio(L, K)
        rep["complement"] = _lattice_echo(K)
        rep["ratio"] = {"base": r.base, "lo": r.lo, "hi": r.hi,
                        "plus_factor": volume_ratio_plus_factor(L, K)}
    return rep


# ------------------------------------------------------------ reproduction

TABLE1 = [Fraction(3), Fraction(5, 2), Fraction(6), Fraction(11, 2), Fraction(5),
          Fraction(9, 2), Fraction(4), Fraction(7, 2)]
TABLE2 = {2: Fraction(7), 3: Fraction(13, 2), 4: Fraction(8), 5: Fraction(11, 2),
          6: Fraction(5), 7: Fraction(9, 2), 8: Fraction(8)}
THRESHOLD = 109
FAMILY_MIN = 39


def reproduce(target: str, precision: int) -> tuple[dict, bool]:
    if target == "table1":
        got = [weil.min_weight(r) for r in range(8)]
        return {"rows": {r: got[r] for r in range(8)}, "expected": TABLE1}, got == TABLE1
    if target == "table2":
        got = weil.table2()
        return {"rows": got, "expected": TABLE2}, got == TABLE2
    if target == "threshold":
        n0 = obstruction.threshold_n(prec=precision)
        v108 = obstruction.threshold_value(108, precision)
        root2 = IntervalReal.point(2, precision).sqrt()
        below = v108.hi < root2.lo
        return ({"threshold": n0, "expected": THRESHOLD, "value_at_108": v108,
                 "sqrt2": root2, "below_sqrt2_at_108": below},
                n0 == THRESHOLD and below)
    if target == "odd-unimodular":
        scan = obstruction.family_scan(60, precision)
        certified = sorted(n for n, c in scan.items() if c.decision == obstruction.CERTIFIED)
        ok = certified and min(certified) == FAMILY_MIN and all(
            n in certified for n, _, _ in obstruction.family_members(60) if n >= FAMILY_MIN)
        return ({"decisions": {n: c.decision for n, c in scan.items()},
                 "minimal_certified": min(certified) if certified else None,
                 "expected_minimal": FAMILY_MIN}, bool(ok))
    if target == "epsilon-bounds":
        rows, ok, prev = {}, True, None
        for n in (16, 20, 24, 32, 64, 128):
            b = obstruction.epsilon_constant(n, precision).value
            cap = zeta_interval(n // 2 - 2, precision) ** 2
            fine = b.hi < cap.lo and (prev is None or b.hi <= prev.hi)
            rows[n] = {"bound": b, "zeta_cap": cap, "ok": fine}
            ok = ok and fine
            prev = b
        return {"rows": rows}, ok
    if target == "reid-tai-appendix":
        n_all = n_adm = 0
        failures, disagreements = [], []
        for th in corpus(12, 5):
            n_all += 1
            c = canonical_check(th).canonical
            if is_admissible(th):
                n_adm += 1
                if not c:
                    failures.append(th.to_json())
            if c != brute_force_canonical(th):
                disagreements.append(th.to_json())
        return ({"corpus": n_all, "admissible": n_adm, "admissible_not_canonical": failures,
                 "disagreements": disagreements}, not failures and not disagreements)
    raise InputError(f"unknown target {target!r}")


# ------------------------------------------------------------ output

def _md(obj, depth: int = 0) -> str:
    pad = "  " * depth
    if isinstance(obj, dict):
        if obj and all(not isinstance(v, (dict, list)) for v in obj.values()):
            lines = [f"{pad}| key | value |", f"{pad}|---|---|"]
            lines += [f"{pad}| {k} | {v} |" for k, v in obj.items()]
            return "\n".join(lines)
        return "\n".join(f"{pad}- **{k}**\n{_md(v, depth + 1)}" for k, v in obj.items())
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(v, sort_keys=True)}" for v in obj)
    return f"{pad}{obj}"


def emit(report: dict, md: bool, out=None) -> None:
    out = out or sys.stdout
    data = _plain(report)
    data["schema"] = SCHEMA
    if md:
        out.write(_md(dict(sorted(data.items()))) + "\n")
    else:
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


# ------------------------------------------------------------ main

def _global_options(ap: argparse.ArgumentParser, suppress: bool) -> None:
    def d(v):
        return argparse.SUPPRESS if suppress else v
    ap.add_argument("--md", action="store_true", default=d(False), help="markdown output instead of JSON")
    ap.add_argument("--precision", type=int, default=d(128), help="starting interval precision in bits (default 128)")
    ap.add_argument("--max-group", type=int, default=d(DEFAULT_MAX_GROUP), help="cap on |A_L| and O(A_L) (default 4096)")
    ap.add_argument("--max-height", type=int, default=d(DEFAULT_MAX_HEIGHT), help="vector enumeration height cap (default 32)")
    ap.add_argument("--timing", action="store_true", default=d(False), help="add wall-clock seconds to the report")
    ap.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthomod", description=__doc__.splitlines()[0])
    _global_options(ap, suppress=False)
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("analyze", parents=[common], help="all invariants of a lattice")
    p.add_argument("lattice")
    p = sub.add_parser("certify", parents=[common], help="general-type certificate")
    p.add_argument("lattice")
    p.add_argument("--a", type=Fraction, default=None, help="override the weight margin a")
    p.add_argument("--route", choices=["auto", "generic", "orbits"], default="auto")
    p = sub.add_parser("volume", parents=[common], help="Hirzebruch-Mumford volume and complement ratio")
    p.add_argument("lattice")
    p.add_argument("--complement", default=None, help="comma-separated vector l")
    p = sub.add_parser("reproduce", parents=[common], help="reproduce a published value")
    p.add_argument("target", choices=["table1", "table2", "threshold", "odd-unimodular",
                                      "epsilon-bounds", "reid-tai-appendix"])
    p = sub.add_parser("reid-tai", parents=[common], help="canonical check of cyclic data from a JSON file")
    p.add_argument("file")
    return ap


def _parse_vector(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}") from exc


def run(args) -> tuple[dict, int]:
    if args.cmd == "analyze":
        return analyze_report(parse_lattice(args.lattice), args.precision, args.max_group), EXIT_OK
    if args.cmd == "certify":
        cert = obstruction.certify_general_type(parse_lattice(args.lattice), a=args.a,
                                                route=args.route, precision=args.precision,
                                                max_group=args.max_group)
        code = EXIT_OK if cert.decision == obstruction.CERTIFIED else EXIT_INCONCLUSIVE
        return certificate_report(cert), code
    if args.cmd == "volume":
        vec = _parse_vector(args.complement) if args.complement else None
        return volume_report(parse_lattice(args.lattice), vec), EXIT_OK
    if args.cmd == "reproduce":
        rep, ok = reproduce(args.target, args.precision)
        rep["target"] = args.target
        rep["reproduced"] = ok
        return rep, EXIT_OK if ok else EXIT_MISMATCH
    if args.cmd == "reid-tai":
        try:
            theta = AdmissibleData.from_json(json.loads(Path(args.file).read_text()))
        except (OSError, KeyError, json.JSONDecodeError) as exc:
            raise InputError(str(exc)) from exc
        res = canonical_check(theta)
        return {"theta": theta.to_json(), "admissible": is_admissible(theta),
                "canonical": res.canonical, "witness": res.witness}, EXIT_OK
    raise InputError(f"unknown command {args.cmd!r}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        report, code = run(args)
    except (InputError, LatticeError, ValueError) as exc:
        emit({"error": str(exc), "kind": "input"}, args.md)
        return EXIT_INPUT
    except PrecisionCapError as exc:
        emit({"error": str(exc), "kind": "precision_cap"}, args.md)
        return EXIT_PRECISION
    report["input"] = {k: v for k, v in vars(args).items() if k not in ("verbose", "timing")}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    emit(report, args.md)
    return code


if __name__ == "__main__":
    sys.exit(main())
