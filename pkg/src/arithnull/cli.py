"""Command-line interface: ``arithnull <subcommand> ...``.

Every command writes one JSON document (sorted keys) to stdout or ``-o``.
Exit codes: 0 success, 1 verification failed, 2 parse or arity error,
3 infeasible at the requested degree bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__, acceptance, bounds, geometry, heights, nullsatz, quotient
from .bounds import LogExpr, log
from .exactlinalg import determinant
from .exactpoly import ParseError, Poly, max_variable_index, parse, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

# statement ids shown in each subcommand's --help
STATEMENT_IDS = {
    "height": ["eq1", "hprod-1a..1d", "hprod-2a..2d", "product formula"],
    "mahler": ["eq1", "block-gap", "sphere-gap"],
    "volume": ["bernstein", "ejemplosparse"],
    "bound": sorted(bounds.STATEMENTS),
    "ce-matrix": ["toric", "ce-matrix"],
    "divide": ["division", "division-n0", "norma", "traza"],
    "certify": ["theorem1", "lemma-n1", "lemma-d1"],
    "verify": ["theorem1", "theorem2", "cor3", "lemma-d1", "lemma-n1", "geometric-example"],
    "fixture": ["geometric-example", "masser-philippon", "dnh"],
    "bound-report": ["theorem1", "theorem2", "cor3", "lemma-dn", "cota-esparsa", "lemma-d1", "lemma-n1"],
    "selftest": ["acceptance criteria 1-9"],
}


class UsageError(Exception):
    pass


def _dump(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _polys_in(text: str) -> List[str]:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    return [ln for ln in lines if ln]


def read_polys(paths: Sequence[str], nvars: Optional[int] = None) -> List[Poly]:
    """One or more polynomials per file (one per line); all share the largest variable count."""
    texts = []
    for p in paths:
        found = _polys_in(_read_text(p))
        if not found:
            raise UsageError(f"{p} contains no polynomial")
        texts.extend(found)
    try:
        n = max([max_variable_index(t) for t in texts] + [nvars or 0, 1])
        return [parse(t, n) for t in texts]
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from None


def _exact_local_height(f: Poly, place: heights.Place) -> LogExpr:
    if place.archimedean:
        big = max(abs(c) for _, c in f.items())
        return log(big) if big > 1 else LogExpr()
    return log(place.p) * heights.padic_exponent(f, place.p)


# subcommands


def cmd_height(args) -> int:
    fs = read_polys(args.files)
    if any(f.is_zero() for f in fs):
        raise UsageError("height of the zero polynomial")
    if args.all_places:
        rep = heights.global_height(fs)
        out = rep.as_dict()
        exact = LogExpr()
        for v in rep.places:
            exact = exact + max((_exact_local_height(f, v) for f in fs), key=float)
        out["exact"] = str(exact)
        _dump(out, args.output)
        return EXIT_OK
    try:
        place = heights.Place.parse(args.place)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = max(heights.local_height(f, place) for f in fs)
    exact = max((_exact_local_height(f, place) for f in fs), key=float)
    _dump({"value": value, "exact": str(exact), "place": str(place)}, args.output)
    return EXIT_OK


def cmd_mahler(args) -> int:
    fs = read_polys([args.file])
    if len(fs) != 1:
        raise UsageError("mahler takes a single polynomial")
    f = fs[0]
    if args.spherical:
        try:
            r, n = (int(x) for x in args.spherical.split(":"))
        except ValueError:
            raise UsageError("--spherical expects r:n") from None
        if f.nvars > r * n:
            raise UsageError(f"polynomial has {f.nvars} variables, more than {r}*{n}")
        f = f.extend(r * n)
        est = heights.mahler_sphere_mc(f, r, n, args.samples, args.seed)
    elif args.method == "exact" or (args.method == "auto" and len(f.variables_used()) <= 1):
        est = heights.mahler_univariate_exact(f)
    else:
        est = heights.mahler_torus_mc(f, args.samples, args.seed)
    _dump(est.as_dict(), args.output)
    return EXIT_OK


def cmd_volume(args) -> int:
    fs = read_polys(args.files)
    A = geometry.support(fs, include_affine_frame=args.frame)
    data = geometry.lattice_data(A)
    vol = geometry.normalized_volume(A)
    _dump({"volume": str(vol), "lattice_dimension": data.dimension,
           "points": [list(p) for p in A.points], "frame": args.frame}, args.output)
    return EXIT_OK


def _parse_extra(tokens: List[str]) -> Dict[str, str]:
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise UsageError(f"missing value for --{key}")
        out[key.replace("-", "_")] = val
    return out


def cmd_bound(args, extra: List[str]) -> int:
    inputs = _parse_extra(extra)
    # keys follow the calculator names: n d s h r vol delta eta di h_fi hV degV ...
    try:
        rep = bounds.bound_calculators(args.statement, inputs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _dump(rep.as_dict(), args.output)
    return EXIT_OK


def _support_from_json(path: str) -> geometry.SupportSet:
    try:
        data = json.loads(_read_text(path))
        pts = [tuple(int(x) for x in p) for p in data["points"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad support file: {exc}") from None
    if "n" in data and any(len(p) != int(data["n"]) for p in pts):
        raise UsageError("point dimension does not match n")
    return geometry.SupportSet.of(pts)


def _symbol_key(name: str):
    # U<i>_<a1>_<a2>...
    if not name.startswith("U"):
        raise UsageError(f"bad symbol {name!r}")
    parts = name[1:].split("_")
    return int(parts[0]), tuple(int(x) for x in parts[1:])


def cmd_ce_matrix(args) -> int:
    A = _support_from_json(args.support)
    spec = geometry.ce_matrix_retrying(A, seed=args.seed)
    out = spec.as_dict()
    out["row_symbol_counts"] = spec.row_symbol_counts()
    if args.specialize:
        try:
            raw = json.loads(_read_text(args.specialize))
            values = {_symbol_key(k): Fraction(v) for k, v in raw.get("values", raw).items()}
        except (ValueError, AttributeError) as exc:
            raise UsageError(f"bad specialization file: {exc}") from None
        used = {e for row in spec.entries for e in row if e is not None}
        missing = used - set(values)
        if missing:
            raise UsageError(f"specialization lacks {len(missing)} symbols")
        out["det"] = str(determinant(spec.specialize(values)))
        if A.n == 1:
            try:
                chk = geometry.ce_resultant_check(A, values, spec)
                out["resultant_check"] = chk.as_dict()
            except (ValueError, geometry.ZeroResultantError) as exc:
                out["resultant_check"] = {"skipped": str(exc)}
    _dump(out, args.output)
    return EXIT_OK


def cmd_divide(args) -> int:
    fs = read_polys(args.ideal)
    n = fs[0].nvars
    f, g = read_polys([args.divisor], n)[0], read_polys([args.dividend], n)[0]
    n = max(n, f.nvars, g.nvars)
    if len(fs) != n:
        raise UsageError(f"the ideal needs {n} generators for {n} variables, got {len(fs)}")
    fs = [h.extend(n) if h.nvars < n else h for h in fs]
    f = f.extend(n) if f.nvars < n else f
    g = g.extend(n) if g.nvars < n else g
    try:
        B = quotient.quotient_algebra(fs)
        td = quotient.pseudo_jacobian(fs)
        res = quotient.divide_trace_formula(B, td, f, g)
    except (quotient.UnitIdealError, quotient.PositiveDimensionalError) as exc:
        raise UsageError(str(exc)) from None
    except quotient.DivisionError as exc:
        _dump({"error": str(exc)}, args.output)
        return EXIT_FAIL
    _dump(res.as_dict(), args.output)
    return EXIT_OK


def cmd_certify(args) -> int:
    fs = read_polys(args.files)
    try:
        cert = nullsatz.certificate_search(fs, args.deg_bound, column_seed=args.seed or None)
    except nullsatz.InfeasibleError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "degree_bound": exc.degree_bound,
                                     "common_zero": exc.common_zero}, sort_keys=True) + "\n")
        return EXIT_INFEASIBLE
    text = cert.to_json() + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_cert(path: str) -> nullsatz.BezoutCertificate:
    try:
        return nullsatz.BezoutCertificate.from_json(_read_text(path))
    except (ValueError, ParseError) as exc:
        raise UsageError(f"bad certificate: {exc}") from None


def cmd_verify(args) -> int:
    cert = _load_cert(args.cert)
    fs = read_polys(args.files, cert.n)
    try:
        rep = nullsatz.certificate_verify(cert, fs)
    except nullsatz.ArityError as exc:
        raise UsageError(str(exc)) from None
    _dump(rep.as_dict(), args.output)
    return EXIT_OK if rep.identity else EXIT_FAIL


def cmd_fixture(args) -> int:
    n, d, H = args.n, args.d, args.H
    cert = None
    try:
        if args.family == "geo":
            fs, cert = nullsatz.fixture_geometric(n, d, H)
        elif args.family == "mp":
            fs = nullsatz.fixture_masser_philippon(n, d, H)
        else:
            fs = nullsatz.fixture_dnh(n, d, H)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"family": args.family, "n": n, "d": d, "H": str(H), "system": [render(f) for f in fs]}
    if cert is not None:
        out["certificate"] = json.loads(cert.to_json())
    if args.dir:
        folder = Path(args.dir)
        folder.mkdir(parents=True, exist_ok=True)
        names = []
        for k, f in enumerate(fs, 1):
            (folder / f"f{k}.txt").write_text(render(f) + "\n")
            names.append(f"f{k}.txt")
        if cert is not None:
            (folder / "cert.json").write_text(cert.to_json() + "\n")
            names.append("cert.json")
        out["files"] = names
    _dump(out, None)
    return EXIT_OK


def cmd_bound_report(args) -> int:
    fs = read_polys(args.files)
    cert = _load_cert(args.cert) if args.cert else None
    if cert is not None and (cert.n != fs[0].nvars or cert.s != len(fs)):
        raise UsageError("certificate does not match the system")
    reps = nullsatz.report_all_bounds(fs, cert)
    _dump({"bounds": {k: v.as_dict() for k, v in reps.items()},
           "note": "height comparisons are reports"}, args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    selected = None
    if args.only:
        selected = {int(x) for x in args.only.split(",")}
    results = acceptance.run(selected)
    _dump({"version": __version__, "criteria": [c.as_dict() for c in results],
           "passed": all(c.passed for c in results)}, args.output)
    for c in results:
        sys.stderr.write(f"criterion {c.number:>2}  {'PASS' if c.passed else 'FAIL'}  "
                         f"{c.name}  ({c.seconds:.2f}s)\n")
    return EXIT_OK if all(c.passed for c in results) else EXIT_FAIL


def _sub(subs, name, help_text):
    ids = ", ".join(STATEMENT_IDS[name])
    p = subs.add_parser(name, allow_abbrev=False, help=help_text, description=f"{help_text}. Statement ids: {ids}.")
    p.add_argument("-o", "--output", help="write JSON here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithnull", allow_abbrev=False, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = _sub(subs, "height", "local or global height of polynomials")
    p.add_argument("files", nargs="+")
    p.add_argument("--place", default="inf", help="inf or a prime")
    p.add_argument("--all-places", action="store_true", help="global height with every local term")
    p.set_defaults(func=cmd_height)

    p = _sub(subs, "mahler", "Mahler measure, exact or Monte Carlo")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=heights.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spherical", help="r:n, r groups of n variables on unit spheres")
    p.add_argument("--method", choices=["auto", "exact", "torus"], default="auto")
    p.set_defaults(func=cmd_mahler)

    p = _sub(subs, "volume", "normalized volume of the joint support")
    p.add_argument("files", nargs="+")
    p.add_argument("--frame", action="store_true", help="add 0 and the unit vectors")
    p.set_defaults(func=cmd_volume)

    p = _sub(subs, "bound", "evaluate a named bound exactly; pass inputs as --key value")
    p.add_argument("statement", help="one of: " + ", ".join(sorted(bounds.STATEMENTS)))
    p.set_defaults(func=cmd_bound, extra=True)

    p = _sub(subs, "ce-matrix", "sparse resultant matrix for a support set")
    p.add_argument("--support", required=True, help='JSON {"n": .., "points": [[..], ..]}')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--specialize", help='JSON {"values": {"U0_1": "3", ...}}')
    p.set_defaults(func=cmd_ce_matrix)

    p = _sub(subs, "divide", "division in a zero-dimensional quotient by the trace formula")
    p.add_argument("--ideal", nargs="+", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--dividend", required=True)
    p.set_defaults(func=cmd_divide)

    p = _sub(subs, "certify", "search a Bezout certificate of minimal cofactor degree")
    p.add_argument("files", nargs="+")
    p.add_argument("--deg-bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="0 keeps the canonical column order")
    p.set_defaults(func=cmd_certify)

    p = _sub(subs, "verify", "check a certificate exactly and report bounds")
    p.add_argument("cert")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("fixture", allow_abbrev=False, help="extremal example systems",
                        description="extremal example systems. Statement ids: "
                                    + ", ".join(STATEMENT_IDS["fixture"]) + ".")
    p.add_argument("family", choices=["geo", "mp", "dnh"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--H", type=int, required=True)
    p.add_argument("-o", "--dir", help="write f1.txt.. (and cert.json) into this folder")
    p.set_defaults(func=cmd_fixture)

    p = _sub(subs, "bound-report", "all applicable bounds for a system")
    p.add_argument("files", nargs="+")
    p.add_argument("--cert")
    p.set_defaults(func=cmd_bound_report)

    p = _sub(subs, "selftest", "run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "extra", False):
            return args.func(args, extra)
        if extra:
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except nullsatz.ArityError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
