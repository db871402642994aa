"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails (a counterexample
was found), 2 for usage, configuration or input-format errors.  Reports are
JSON with sorted keys; rationals are "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .actions import SphereParam, orbit_equiv_O, s3_act
from .core import MAX_TABLE_LEVEL, Element, LevelError, build_table, double, parse_scalar, split
from .hopf_zero import (
    CertificateError,
    in_E,
    in_P,
    rationalize,
    retract,
    search_exhaustive,
    search_numeric_many,
    verify_pair,
)
from .mono import OCT_LABELS, basis_table_cells, oct_mono_from_alpha, printed_table_disagreements
from .report import Report, jsonable
from .sampling import frame_W, rng_for
from .suites import SUITES, RunConfig, SuiteError, _e_generator, resolve, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- input parsing -------------------------------------------------------------


def load_json(path: str):
    """Parse a JSON file; errors name the byte offset of the problem."""
    try:
        raw = open(path, "rb").read() if path != "-" else sys.stdin.buffer.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path}: invalid UTF-8 at byte offset {exc.start}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise UsageError(f"{path}: JSON parse error at byte offset {offset}: {exc.msg}") from None


def _element(obj, what: str) -> Element:
    try:
        return Element.from_json(obj)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def _pair_fields(obj, what: str) -> tuple[Element, Element]:
    """(a, b) from a certificate-style object {"level", "a": [...], "b": [...]}."""
    if not isinstance(obj, dict) or not {"level", "a", "b"} <= set(obj):
        raise UsageError(f"{what}: expected an object with keys level, a, b")
    n = obj["level"]
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_TABLE_LEVEL:
        raise UsageError(f"{what}: level must be an integer in [0, {MAX_TABLE_LEVEL}]")
    a = _element({"level": n, "coeffs": obj["a"]}, f"{what}.a")
    b = _element({"level": n, "coeffs": obj["b"]}, f"{what}.b")
    return a, b


def _alpha_from(obj, what: str) -> Element:
    """alpha from {"alpha": element}, an element object, or a certificate (a, b)."""
    if isinstance(obj, dict) and "alpha" in obj:
        return _element(obj["alpha"], f"{what}.alpha")
    if isinstance(obj, dict) and "coeffs" in obj:
        return _element(obj, what)
    a, b = _pair_fields(obj, what)
    return double(a, b)


def _scalars(text: str, count: int, what: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{what}: expected {count} comma-separated rationals")
    try:
        return [parse_scalar(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None


# -- output ------------------------------------------------------------------------


def emit(payload: dict, out: str | None):
    text = json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args, **extra) -> dict:
    keys = ("level", "seed", "samples", "mode", "support", "method")
    cfg = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    cfg.update(extra)
    return {k: v for k, v in cfg.items() if v is not None}


def _exact_only(args, command: str):
    if getattr(args, "mode", "exact") != "exact":
        raise UsageError(f"{command} is exact-only; --mode float is not accepted")


def _run_config(args) -> RunConfig:
    try:
        return RunConfig(args.level, args.seed, args.samples, args.mode, args.support)
    except SuiteError as exc:
        raise UsageError(str(exc)) from None


# -- commands -------------------------------------------------------------------------


def _suite_job(job):
    name, cfg, timed = job
    t0 = time.perf_counter()
    rep = run_suite(name, cfg)
    if timed:
        rep.timings = {"seconds": round(time.perf_counter() - t0, 3)}
    return rep


def cmd_verify(args) -> int:
    _exact_only(args, "verify")
    cfg = _run_config(args)
    if not args.suites:
        raise UsageError("name at least one suite (see `cdhopf suites`)")
    for name in args.suites:
        spec = SUITES[resolve(name)]
        if cfg.level < spec.min_level:
            raise UsageError(f"suite {name} needs --level >= {spec.min_level}")
    jobs = [(name, cfg, args.timings) for name in args.suites]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            reports = list(ex.map(_suite_job, jobs))
    else:
        reports = [_suite_job(j) for j in jobs]
    passed = all(r.passed for r in reports)
    for r in reports:
        for line in r.summary_lines():
            print(line, file=sys.stderr)
    emit({"command": "verify", "config": cfg.to_json(), "passed": passed, "reports": [r.to_json() for r in reports]}, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_search(args) -> int:
    if args.level < 1 or args.level > MAX_TABLE_LEVEL:
        raise UsageError(f"--level must be in [1, {MAX_TABLE_LEVEL}]")
    if args.support < 1:
        raise UsageError("--support must be >= 1")
    t0 = time.perf_counter()
    if args.method == "exhaustive":
        certs = search_exhaustive(args.level, args.support, workers=args.workers)
        payload = {
            "command": "search",
            "config": _config(args, samples=None, seed=None),
            "count": len(certs),
            "certificates": [c.to_json() for c in certs],
        }
    else:
        if args.level < 3:
            raise UsageError("numeric search needs --level >= 3")
        runs = search_numeric_many(args.level, args.seed, args.samples, args.iters, args.tol, args.workers)
        residuals = [r.residual for r in runs]
        payload = {
            "command": "search",
            "config": _config(args, iters=args.iters, tol=args.tol),
            "runs": [r.to_json() for r in runs],
            "min_residual": repr(min(residuals)),
            "max_residual": repr(max(residuals)),
            "converged": sum(r < args.tol for r in residuals),
        }
        if args.mode == "exact":
            certs = [c for c in (rationalize(r) for r in runs if r.residual < args.tol) if c is not None]
            payload["certificates"] = [c.to_json() for c in certs]
    if args.timings:
        payload["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    emit(payload, args.out)
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    _exact_only(args, "verify-cert")
    obj = load_json(args.path)
    if isinstance(obj, dict) and "certificates" in obj:
        items = obj["certificates"]
    elif isinstance(obj, list):
        items = obj
    else:
        items = [obj]
    if not isinstance(items, list):
        raise UsageError(f"{args.path}: certificates must be a list")
    reports = []
    for i, item in enumerate(items):
        a, b = _pair_fields(item, f"{args.path}[{i}]")
        if isinstance(item.get("method"), str) and item["method"] not in ("exhaustive", "numeric"):
            raise UsageError(f"{args.path}[{i}]: unknown method {item['method']!r}")
        rep = verify_pair(a, b)
        residual = item.get("residual", "0")
        rep.add("recorded residual is 0", str(residual) == "0")
        rep.config = {"index": i}
        reports.append(rep)
    passed = all(r.passed for r in reports)
    for r in reports:
        for line in r.failures():
            print(f"FAIL  certificate {r.config['index']}: {line.name}", file=sys.stderr)
    emit({"command": "verify-cert", "passed": passed, "count": len(reports), "reports": [r.to_json() for r in reports]}, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_retract(args) -> int:
    _exact_only(args, "retract")
    if args.input:
        alpha = _alpha_from(load_json(args.input), args.input)
        source = {"input": args.input}
    else:
        if args.level < 4:
            raise UsageError("the generated example needs --level >= 4")
        alpha, a, d = _e_generator(rng_for(args.seed, "cli/retract"), args.level)
        source = {"generated": {"seed": args.seed, "level": args.level}}
    rep = Report("retract", "R(a, b) = (a, d) with b = c + d, c in H_a")
    try:
        e, p = in_E(alpha), in_P(alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.data.update({"alpha": alpha, "in_E": e, "in_P": p, **source})
    if p or not e:
        rep.add("alpha lies in E_n minus P(n)", False, counterexample={"alpha": alpha, "in_E": e, "in_P": p})
        emit({"command": "retract", "passed": False, "report": rep.to_json()}, args.out)
        print("FAIL  retract: input is outside E_n minus P(n)", file=sys.stderr)
        return EXIT_FAIL
    r = retract(alpha)
    again = retract(r.as_alpha())
    image = verify_pair(r.a, r.b)
    rep.add("image is a zero divisor pair", image.passed, counterexample=None if image.passed else {"alpha": alpha})
    rep.add("retract is idempotent here", again == r, counterexample=None if again == r else {"alpha": alpha})
    payload = {"command": "retract", "passed": rep.passed, "result": r.to_json(), "report": rep.to_json()}
    emit(payload, args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_table(args) -> int:
    _exact_only(args, "table")
    if args.alpha:
        alpha = _alpha_from(load_json(args.alpha), args.alpha)
        try:
            phi, rep = oct_mono_from_alpha(alpha)
        except (ValueError, LevelError) as exc:
            raise UsageError(str(exc)) from None
        cells = basis_table_cells(3)
        payload = {
            "command": "table",
            "labels": list(OCT_LABELS),
            "cells": [[{"sign": s, "index": k, "label": OCT_LABELS[k]} for s, k in row] for row in cells],
            "map": phi.to_json(),
            "printed_table_disagreements": printed_table_disagreements(),
            "report": rep.to_json(),
            "passed": rep.passed,
        }
        emit(payload, args.out)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if not 0 <= args.level <= MAX_TABLE_LEVEL:
        raise UsageError(f"--level must be in [0, {MAX_TABLE_LEVEL}]")
    t = build_table(args.level)
    d = 1 << args.level
    rows = [[{"sign": int(t.sign[i, j]), "index": int(t.index[i, j])} for j in range(d)] for i in range(d)]
    emit({"command": "table", "level": args.level, "cells": rows}, args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    _exact_only(args, "orbit")
    if args.alpha:
        alpha = _alpha_from(load_json(args.alpha), args.alpha)
    else:
        if args.level < 3:
            raise UsageError("the generated example needs --level >= 3")
        alpha = double(*frame_W(rng_for(args.seed, "cli/orbit"), args.level))
    try:
        g = SphereParam(*_scalars(args.g, 4, "--g"))
        image = s3_act(alpha, g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = Report("orbit", "the unit-sphere action alpha -> alpha g")
    same = orbit_equiv_O(alpha, image)
    rep.add("alpha and g . alpha span the same O", same, counterexample=None if same else {"alpha": alpha, "g": g})
    a, b = split(image)
    payload = {
        "command": "orbit",
        "alpha": alpha,
        "g": g,
        "image": image,
        "image_pair": {"a": a, "b": b},
        "passed": rep.passed,
        "report": rep.to_json(),
    }
    emit(payload, args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_suites(args) -> int:
    rows = [
        {"name": name, "aliases": list(spec.aliases), "min_level": spec.min_level, "anchor": spec.run.__name__}
        for name, spec in SUITES.items()
    ]
    emit({"command": "suites", "suites": rows}, args.out)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *, samples: int = 50):
    p.add_argument("--level", type=int, default=4, help="algebra level n (A_n has dimension 2^n)")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--samples", type=int, default=samples, help="samples per property (runs for numeric search)")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--support", type=int, default=2, help="terms per coordinate in exhaustive search")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdhopf", description="Exact Cayley-Dickson verification tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("suites", nargs="*", help="suite names or aliases")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="search for zero divisors")
    _common(p, samples=20)
    p.add_argument("--method", choices=("exhaustive", "numeric"), default="exhaustive")
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-cert", help="re-verify certificates from a JSON file")
    _common(p)
    p.add_argument("path")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("retract", help="apply the retraction to alpha (generated if no input)")
    _common(p)
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("table", help="basis table of A_n, or the O_alpha table for --alpha")
    _common(p)
    p.add_argument("--alpha", help="JSON file holding alpha")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("orbit", help="apply the unit-sphere action to alpha")
    _common(p)
    p.add_argument("--alpha", help="JSON file holding alpha (generated if omitted)")
    p.add_argument("--g", default="1,0,0,0", help="r,s,q,p with r^2+s^2+q^2+p^2 = 1")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("suites", help="list suites")
    p.add_argument("--out")
    p.set_defaults(func=cmd_suites)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except (UsageError, SuiteError, CertificateError) as exc:
        print(f"cdhopf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
