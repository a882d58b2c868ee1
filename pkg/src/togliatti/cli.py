"""Command-line entry point: ``togliatti <command> ...``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on
usage or input errors.
"""

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from togliatti import __version__
from togliatti.apolar import GradedIdeal
from togliatti.catalog import (
    POINT_SETS,
    ideal_names,
    load_ideal,
    load_surface,
    point_set,
    surface_names,
    verify_ideal_membership,
)
from togliatti.errors import CorankError, TogliattiError
from togliatti.jets import expected_osculating_dim, laplace_count, osculating_dim_generic, rank_profile
from togliatti.lefschetz import slp_report
from togliatti.polycore import parse_poly
from togliatti.unexpected import FatPoint, FatPointScheme, extract_generic_curve, unexpected_check
from togliatti.verification import CheckReport, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# reference verdicts: (ideal, k_max) -> (Hilbert function, failure locations, source)
LEFSCHETZ_REFERENCE = {
    ("J", 2): ([1, 3, 6, 10, 6, 0], [(2, 2)], "reference"),
    ("I_T", 1): ([1, 3, 6, 6, 3, 0], [(2, 1)], "reference"),
    ("squares", 1): ([1, 3, 3, 1, 0], [], "trivial"),
    ("squares", 2): ([1, 3, 3, 1, 0], [], "trivial"),
}
# (point set, j) -> (actual, expected, unexpected)
UNEXPECTED_REFERENCE = {
    ("b3", 3): ((1, 0, True), "reference"),
}


class UsageError(Exception):
    pass


def _strip(line):
    return line.split("#", 1)[0].strip()


def read_ideal_file(path):
    """Ideal file: a ``ring: x,y,z`` header, then one generator per line."""
    lines = [(n, _strip(l)) for n, l in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1)]
    lines = [(n, l) for n, l in lines if l]
    if not lines or not lines[0][1].startswith("ring:"):
        raise UsageError(f"{path}: first line must be 'ring: x,y,z'")
    ring = tuple(v.strip() for v in lines[0][1][len("ring:"):].split(","))
    if not all(ring):
        raise UsageError(f"{path}: empty variable name in ring header")
    gens = []
    for n, text in lines[1:]:
        try:
            gens.append(parse_poly(text, ring))
        except TogliattiError as exc:
            raise UsageError(f"{path}:{n}: {exc}") from None
    if not gens:
        raise UsageError(f"{path}: no generators")
    try:
        return GradedIdeal(ring, tuple(gens), Path(path).name)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _parse_point(text, where):
    try:
        coords = tuple(Fraction(c.strip()) for c in text.split(","))
    except ValueError:
        raise UsageError(f"{where}: bad point {text!r}") from None
    if len(coords) != 3:
        raise UsageError(f"{where}: a point needs 3 coordinates")
    return coords


def read_scheme_file(path):
    """Scheme file: ``point: p0,p1,p2 mult: m`` lines and optionally ``generic: j``.

    Returns ``(fat points, generic multiplicity or None)``.
    """
    points, generic = [], None
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        where = f"{path}:{n}"
        if line.startswith("point:"):
            body = line[len("point:"):]
            mult = 1
            if "mult:" in body:
                body, m = body.split("mult:", 1)
                try:
                    mult = int(m)
                except ValueError:
                    raise UsageError(f"{where}: bad multiplicity {m.strip()!r}") from None
            try:
                points.append(FatPoint(_parse_point(body, where), mult))
            except ValueError as exc:
                raise UsageError(f"{where}: {exc}") from None
        elif line.startswith("generic:"):
            try:
                generic = int(line[len("generic:"):])
            except ValueError:
                raise UsageError(f"{where}: bad generic multiplicity") from None
        else:
            raise UsageError(f"{where}: expected 'point:' or 'generic:'")
    return points, generic


def _timed_report(fn):
    start = time.perf_counter()
    report = fn()
    report.wall_time = time.perf_counter() - start
    return report


def cmd_verify_ideal(args):
    entry = load_surface(args.surface)
    reports = []
    if not entry.ideal_generators:
        raise UsageError(f"surface {args.surface!r} has no stored ideal generators")
    start = time.perf_counter()
    results = verify_ideal_membership(entry)
    elapsed = (time.perf_counter() - start) / len(results)
    for i, (g, ok) in enumerate(zip(entry.ideal_generators, results)):
        reports.append(CheckReport(f"verify-ideal.{args.surface}.g{i:02d}", f"{args.surface} ideal generator",
                                   {"generator": str(g)}, {"vanishes": ok}, {"vanishes": True},
                                   "reference", wall_time=elapsed))
    return reports


def cmd_jets(args):
    entry = load_surface(args.surface)
    p = entry.default_jet_source()
    m = args.order

    def generic():
        computed = {"expected_osculating_dim": expected_osculating_dim(p, m),
                    "osculating_dim": osculating_dim_generic(p, m), "laplace": laplace_count(p, m)}
        expected, source = None, "derived"
        if m == 2 and "laplace" in entry.expected:
            expected = dict(computed, osculating_dim=entry.expected["osculating_dim"],
                            laplace=entry.expected["laplace"])
            source = "reference"
        return CheckReport(f"jets.{args.surface}.m{m}", f"{args.surface} osculating dimension",
                           {"surface": args.surface, "source": p.name, "order": m}, computed, expected, source)

    reports = [_timed_report(generic)]
    if args.at:
        pt = tuple(Fraction(c.strip()) for c in args.at.split(","))

        def at_point():
            e = rank_profile(p, m, [pt], allow_base_locus=True)[0]
            return CheckReport(f"jets.{args.surface}.m{m}.at", f"{args.surface} jet rank at a point",
                               {"point": [str(c) for c in pt], "order": m}, e.as_dict(), None, "derived")

        reports.append(_timed_report(at_point))
    return reports


def _load_ideal_arg(name):
    if name in ideal_names():
        return load_ideal(name), name
    if Path(name).is_file():
        return read_ideal_file(name), None
    raise UsageError(f"{name!r} is neither a catalog ideal {ideal_names()} nor a readable file")


def cmd_lefschetz(args):
    I, known = _load_ideal_arg(args.ideal)
    k_max = args.kmax if args.slp else 1
    label = I.name or args.ideal

    def run():
        report = slp_report(I, k_max)
        computed = {"hilbert": report.hilbert, "failures": [list(f) for f in report.failure_locations()],
                    "holds": report.holds}
        expected, source = None, "derived"
        ref = LEFSCHETZ_REFERENCE.get((known, k_max))
        if ref is not None:
            hilbert, fails, source = ref
            expected = {"hilbert": hilbert, "failures": [list(f) for f in fails], "holds": not fails}
        out = CheckReport(f"lefschetz.{label}.k{k_max}", f"{report.kind} of R/{label}",
                          {"ideal": str(I), "k_max": k_max}, computed, expected, source)
        out.notes = [f"d={e.d} k={e.k}: {e.dim_source}->{e.dim_target} rank {e.generic_rank} ({e.verdict})"
                     for e in report.entries]
        return out

    return [_timed_report(run)]


def _load_scheme_arg(name):
    if name in POINT_SETS:
        return [FatPoint(p) for p in point_set(name)], None, name
    if Path(name).is_file():
        points, generic = read_scheme_file(name)
        return points, generic, None
    raise UsageError(f"{name!r} is neither a point set {sorted(POINT_SETS)} nor a readable file")


def cmd_unexpected(args):
    points, generic, known = _load_scheme_arg(args.scheme)
    j = args.j if args.j is not None else generic
    if j is None:
        raise UsageError("--j is required unless the scheme file has a 'generic:' line")
    if j < 1:
        raise UsageError("--j must be >= 1")

    def run():
        v = unexpected_check(points, j)
        computed = {"actual_h0": v.actual, "expected_h0": v.expected, "unexpected": v.unexpected}
        expected, source = None, "derived"
        ref = UNEXPECTED_REFERENCE.get((known, j))
        if ref is not None:
            (a, e, u), source = ref
            expected = {"actual_h0": a, "expected_h0": e, "unexpected": u}
        out = CheckReport(f"unexpected.{known or Path(args.scheme).name}.j{j}", f"curves of degree {j + 1}",
                          {"points": [[str(c) for c in p.point] + [p.multiplicity] for p in points], "j": j},
                          computed, expected, source)
        out.notes.append("unexpected curve exists" if v.unexpected else "no unexpected curve")
        if v.actual == 1:
            try:
                curve = extract_generic_curve(FatPointScheme(tuple(points), j), j + 1)
                out.notes.append(f"curve: {curve}")
            except CorankError:
                pass
        return out

    return [_timed_report(run)]


def catalog_listing():
    surfaces = {name: load_surface(name).as_dict() for name in surface_names()}
    ideals = {name: [str(g) for g in load_ideal(name).generators] for name in ideal_names()}
    points = {name: [[str(c) for c in p] for p in point_set(name)] for name in sorted(POINT_SETS)}
    return {"surfaces": surfaces, "ideals": ideals, "point_sets": points}


def cmd_catalog(args):
    return []


def cmd_report_all(args):
    return run_all(seed=args.seed, samples=args.samples)


def _global_flags(defaults):
    flags = argparse.ArgumentParser(add_help=False)
    get = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    flags.add_argument("--format", choices=("text", "json"), default=get("text"))
    flags.add_argument("--seed", type=int, default=get(0))
    flags.add_argument("--samples", type=int, default=get(50))
    return flags


def build_parser():
    # flags are accepted before or after the subcommand; the subcommand
    # copies suppress their defaults so they never override the top level
    common = _global_flags(defaults=False)
    parser = argparse.ArgumentParser(prog="togliatti", parents=[_global_flags(defaults=True)],
                                     description="Exact verification of Laplace equations, "
                                                 "unexpected curves and Lefschetz properties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-ideal", parents=[common], help="check stored generators against a parametrization")
    p.add_argument("surface", choices=surface_names())
    p.set_defaults(func=cmd_verify_ideal)

    p = sub.add_parser("jets", parents=[common], help="osculating dimension and Laplace count")
    p.add_argument("surface", choices=surface_names())
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--at", help="point in the jet source, e.g. '1,2,3'")
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("lefschetz", parents=[common], help="WLP/SLP verdicts for an artinian ideal")
    p.add_argument("ideal", help=f"catalog ideal {ideal_names()} or ideal file")
    p.add_argument("--slp", action="store_true")
    p.add_argument("--kmax", type=int, default=2)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("unexpected", parents=[common], help="unexpected curve test for a point set")
    p.add_argument("scheme", help=f"point set {sorted(POINT_SETS)} or scheme file")
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_unexpected)

    p = sub.add_parser("catalog", parents=[common], help="list built-in surfaces, ideals and point sets")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("report-all", parents=[common], help="run every acceptance check")
    p.set_defaults(func=cmd_report_all)
    return parser


def _emit_text(args, reports, out):
    if args.command == "catalog":
        listing = catalog_listing()
        for name, s in listing["surfaces"].items():
            print(f"surface {name}: {s['description']} ({s['kind']}, {len(s['coordinates'])} coordinates)", file=out)
        for name, gens in listing["ideals"].items():
            print(f"ideal {name}: <{', '.join(gens)}>", file=out)
        for name, pts in listing["point_sets"].items():
            print(f"points {name}: " + " ".join("(" + ":".join(p) + ")" for p in pts), file=out)
        return
    for r in reports:
        print(r.line(), file=out)
        print(f"    computed: {json.dumps(r.computed)}", file=out)
        if r.expected is not None:
            print(f"    expected: {json.dumps(r.expected)} [{r.source}]", file=out)
        for note in r.notes:
            print(f"    {note}", file=out)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed", file=out)


def _emit_json(args, reports, out):
    doc = {"version": __version__, "seed": args.seed,
           "checks": [r.as_dict() for r in sorted(reports, key=lambda r: r.id)]}
    if args.command == "catalog":
        doc["catalog"] = catalog_listing()
    json.dump(doc, out, indent=2)
    print(file=out)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        reports = sorted(args.func(args), key=lambda r: r.id)
    except (UsageError, OSError, ValueError, TogliattiError) as exc:
        print(f"togliatti: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    (_emit_json if args.format == "json" else _emit_text)(args, reports, sys.stdout)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
