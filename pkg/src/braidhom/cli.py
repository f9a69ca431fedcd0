"""Command-line front end: verification suites and homology reports.

Exit codes: 0 success, 1 a check failed or two methods disagree, 2 bad configuration.
"""

import argparse
import csv
import io
import json
import multiprocessing
import os
import sys
from fractions import Fraction

from . import homology as hom
from . import models
from .ncalgebra import AlgebraError, Window
from .scalars import ScalarError, make_field

# symbolic elimination slows sharply past a few hundred columns per arity
BLOCK_THRESHOLD = 300
GRADED = ("braided_line", "quantum_plane", "toy3")


class ConfigError(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="braidhom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, example=True):
        if example:
            p.add_argument("example")
        p.add_argument("--lambda", dest="lam", default=None,
                       help='"generic:<scalar>" or "qpow:<k>" meaning lambda = q^(k/2)')
        p.add_argument("--sign", choices=["+", "-"], default="+")
        p.add_argument("--variant", default=None, help="bundle variant (quantum_plane: hopf)")
        p.add_argument("--p", dest="p0", default=None, help="specialize p at this rational")
        p.add_argument("--symbolic", action="store_true", help="force exact symbolic scalars")
        p.add_argument("--threshold", type=int, default=BLOCK_THRESHOLD,
                       help="largest block size computed symbolically in automatic mode")
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        p.add_argument("--out", default=None)

    def bounds(p, n=3, w=8):
        p.add_argument("--max-n", type=int, default=n)
        p.add_argument("--max-weight", "--max-degree", dest="max_weight", type=int, default=w)
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    sub.add_parser("list-examples")

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--checks", default=None, help="comma-separated; default all available")
    p.add_argument("--window", type=int, default=4)

    p = sub.add_parser("hochschild")
    common(p)
    bounds(p)
    p.add_argument("--method", choices=["bar", "resolution", "all"], default="bar")

    p = sub.add_parser("cyclic")
    common(p)
    bounds(p, n=6, w=6)

    p = sub.add_parser("tor")
    common(p)
    bounds(p)

    p = sub.add_parser("transmute")
    common(p)
    p.add_argument("--check", action="store_true")

    p = sub.add_parser("twist")
    common(p)
    p.add_argument("--check-coboundary", action="store_true")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--exponent", choices=["printed", "coboundary"], default="printed")
    return ap


# configuration

def _field(args):
    if args.symbolic and args.p0 is not None:
        raise ConfigError("--symbolic and --p are mutually exclusive")
    if args.p0 is None:
        return make_field()
    try:
        return make_field(Fraction(args.p0))
    except (ValueError, ZeroDivisionError, ScalarError) as e:
        raise ConfigError("bad --p value %r: %s" % (args.p0, e))


def _bundle(args, field):
    if args.example not in models.EXAMPLES:
        raise ConfigError("unknown example %r (try list-examples)" % args.example)
    try:
        models.parse_lambda(args.lam, field)
    except (AlgebraError, ScalarError, ValueError) as e:
        raise ConfigError("bad --lambda: %s" % e)
    try:
        return models.load_example(args.example, args.lam, 1 if args.sign == "+" else -1,
                                   field, variant=args.variant)
    except models.UnknownExample as e:
        raise ConfigError(str(e))


def _check_bounds(args):
    for name in ("max_n", "max_weight", "window"):
        v = getattr(args, name, 0)
        if v is not None and v < 0:
            raise ConfigError("--%s must be non-negative" % name.replace("_", "-"))
    if getattr(args, "workers", 1) < 1:
        raise ConfigError("--workers must be positive")


def largest_block(bundle, max_n, max_weight):
    """Size of the largest single-arity block of the bar complex in the window."""
    P = bundle.pres
    best = 0
    for deg in hom.graded_degrees(P, max_weight):
        D = sum(abs(x) for x in deg)
        best = max(best, len(hom.chain_basis(P, max_n + 1, deg, D)))
    return best


def choose_field(args, needs_blocks=True):
    """Explicit flags win; otherwise symbolic unless a block exceeds the threshold."""
    field = _field(args)
    bundle = _bundle(args, field)
    if args.symbolic or args.p0 is not None or not needs_blocks:
        return bundle
    if args.example in GRADED and largest_block(bundle, args.max_n, args.max_weight) > args.threshold:
        field = make_field(2)
        bundle = _bundle(args, field)
    return bundle


# block fan-out

_JOB = {}


def _run_chunk(degrees):
    args, kind = _JOB["args"], _JOB["kind"]
    bundle = _JOB["bundle"]
    report = _compute(kind, bundle, args, degrees)
    return [{k: r[k] for k in ("n", "degree", "dim", "soundness", "generators")}
            for r in report.results], getattr(report, "structural_failures", [])


def _compute(kind, bundle, args, degrees):
    if kind == "bar":
        return hom.hochschild_bar(bundle, args.max_n, args.max_weight, degrees=degrees)
    if kind == "resolution":
        return hom.tor_from_resolution(bundle, args.max_weight, degrees=degrees)
    return hom.cyclic_bicomplex(bundle, args.max_n, args.max_weight, degrees=degrees)


def blockwise(kind, bundle, args):
    """Run a per-degree driver, fanning degree blocks out to forked workers.

    The merged report is sorted by (n, degree), so the output does not depend on
    the pool size.
    """
    degrees = hom.graded_degrees(bundle.pres, args.max_weight)
    workers = min(args.workers, len(degrees))
    if workers <= 1 or "fork" not in multiprocessing.get_all_start_methods():
        return _compute(kind, bundle, args, None)
    _JOB.update(args=args, kind=kind, bundle=bundle)
    # heaviest blocks first, dealt round-robin
    order = sorted(degrees, key=lambda d: -sum(abs(x) for x in d))
    chunks = [order[i::workers] for i in range(workers)]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        parts = pool.map(_run_chunk, chunks)
    report = _compute(kind, bundle, args, [])
    report.structural_failures = []
    for rows, failures in parts:
        report.results.extend(rows)
        report.structural_failures.extend(failures)
    report.structural_failures.sort(key=lambda f: f[0])
    return report


# reports

def _report_rows(report):
    for r in report.sorted_results():
        if r["dim"] or r["soundness"] != "exact":
            yield r


def render(reports, fmt, extra=None):
    if fmt == "json":
        docs = [r.to_dict() for r in reports]
        out = docs[0] if len(docs) == 1 else docs
        return json.dumps(out, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["example", "method", "scalar_mode", "n", "degree", "dim", "soundness"])
        for rep in reports:
            mode = json.dumps(rep.scalar_mode, sort_keys=True)
            for r in _report_rows(rep):
                deg = "" if r["degree"] is None else " ".join(map(str, r["degree"]))
                w.writerow([rep.example, rep.method, mode, r["n"], deg, r["dim"], r["soundness"]])
        return buf.getvalue()
    lines = []
    for rep in reports:
        mode = rep.scalar_mode if rep.scalar_mode == "symbolic" else \
            "specialized p=%s" % rep.scalar_mode["specialized_p"]
        lines.append("%s [%s] lambda=%s method=%s scalars=%s" % (
            rep.example, rep.braiding, rep.lam, rep.method, mode))
        lines.append("  window: %s" % ", ".join("%s=%s" % kv for kv in sorted(rep.truncation.items())))
        lines.append("  dims: %s" % list(rep.dims(getattr(rep, "max_n", None))))
        for r in _report_rows(rep):
            deg = "" if r["degree"] is None else " degree %s" % (tuple(r["degree"]),)
            lines.append("  n=%d%s: %d (%s)" % (r["n"], deg, r["dim"], r["soundness"]))
            for g in r["generators"]:
                lines.append("      %s" % g)
    for line in extra or []:
        lines.append(line)
    return "\n".join(lines) + "\n"


def emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def render_checks(title, results, fmt):
    if fmt == "json":
        doc = {"target": title,
               "checks": {k: {"passed": not v, "failures": [repr(x) for x in v]}
                          for k, v in sorted(results.items())}}
        return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target", "check", "passed", "failures"])
        for k, v in sorted(results.items()):
            w.writerow([title, k, not v, len(v)])
        return buf.getvalue()
    lines = [title]
    for k, v in sorted(results.items()):
        lines.append("  %-16s %s" % (k, "ok" if not v else "FAILED (%d)" % len(v)))
        for x in v[:5]:
            lines.append("      %r" % (x,))
    return "\n".join(lines) + "\n"


# commands

def cmd_list(args):
    for name in models.EXAMPLES:
        b = models.load_example(name, check=False)
        print("%-16s %-12s %s" % (name, b.grading, b.pres.name))
    return 0


def cmd_verify(args):
    bundle = _bundle(args, _field(args))
    names = None if args.checks is None else [c.strip() for c in args.checks.split(",") if c.strip()]
    if names is not None:
        bad = [c for c in names if c not in models.available_checks(bundle)]
        if bad:
            raise ConfigError("checks not available for %s: %s (available: %s)" % (
                bundle.name, ", ".join(bad), ", ".join(models.available_checks(bundle))))
    res = models.run_checks(bundle, names, args.window)
    emit(render_checks(bundle.name, res, args.format), args)
    return 1 if any(res.values()) else 0


def _certified_hh0(bundle, args):
    """HH_0 = 0 certificates on filtered bundles: every monomial of filtration ≤ D
    lies in im(b_1) on F_{D+2}."""
    P = bundle.pres
    D = args.max_weight
    targets = P.enumerate_basis(Window(D))
    certs = hom.boundary_certificates(bundle, D + 2, targets)
    missing = [m for m in targets if certs[m] is None]
    rep = hom.HomologyReport(bundle.name, getattr(bundle.braiding, "name", "flip"),
                             bundle.extras.get("lambda_label", "generic"), "bar",
                             P.field.describe(), {"max_filtration": D, "image_window": D + 2})
    if missing:
        rep.add(0, None, len(missing), "kernel-window", [P.mon_str(m) for m in missing])
    else:
        rep.add(0, None, 0, "certified-zero")
    return rep, not missing


def _b_kernel(bundle, args):
    """Tor_3 of B on the window: the kernel of the last tensored map on F_D."""
    P = bundle.pres
    k = len(bundle.resolution.maps)
    mons, ker = hom.filtered_tensored_kernel(bundle, k, args.max_weight)
    rep = hom.HomologyReport(bundle.name, getattr(bundle.braiding, "name", "flip"),
                             bundle.extras.get("lambda_label", "generic"), "resolution",
                             P.field.describe(), {"max_filtration": args.max_weight})
    rep.add(k, None, len(ker), "kernel-window", [P.element_str(v) for v in ker])
    return rep


def _compare(bar, res, max_n):
    """Per (n, degree) dimension mismatches between two reports."""
    def table(rep):
        return {(r["n"], tuple(r["degree"])): r["dim"] for r in rep.results if r["n"] <= max_n}
    a, b = table(bar), table(res)
    return [(k, a.get(k, 0), b.get(k, 0)) for k in sorted(set(a) | set(b))
            if a.get(k, 0) != b.get(k, 0)]


def cmd_hochschild(args):
    if args.example.startswith("slq2"):
        bundle = _bundle(args, _field(args))
        rep, ok = _certified_hh0(bundle, args)
        emit(render([rep], args.format), args)
        return 0 if ok else 1
    if args.example == "braided_B":
        bundle = _bundle(args, _field(args))
        emit(render([_b_kernel(bundle, args)], args.format), args)
        return 0
    bundle = choose_field(args)
    reports = []
    if args.method in ("bar", "all"):
        reports.append(blockwise("bar", bundle, args))
    if args.method in ("resolution", "all"):
        if bundle.resolution is None:
            raise ConfigError("%s has no catalogued resolution" % bundle.name)
        reports.append(blockwise("resolution", bundle, args))
    for rep in reports:
        rep.max_n = args.max_n
    extra, status = [], 0
    if args.method == "all":
        bad = _compare(reports[0], reports[1], args.max_n)
        if bad:
            status = 1
            extra.append("MISMATCH bar vs resolution (n, degree, bar, resolution):")
            extra += ["  %s %s: %d vs %d" % (k[0], k[1], x, y) for k, x, y in bad]
            sys.stderr.write("error: bar and resolution methods disagree in %d blocks\n" % len(bad))
    emit(render(reports, args.format, extra if args.format == "text" else None), args)
    return status


def cmd_cyclic(args):
    if args.example not in GRADED:
        raise ConfigError("cyclic homology is computed for graded examples: %s" % ", ".join(GRADED))
    bundle = choose_field(args)
    rep = blockwise("cyclic", bundle, args)
    rep.max_n = args.max_n
    bad = getattr(rep, "structural_failures", [])
    extra = ["STRUCTURE FAILURE at degree %s: %s" % (d, f) for d, f in bad]
    emit(render([rep], args.format, extra if args.format == "text" else None), args)
    return 1 if bad else 0


def cmd_tor(args):
    if args.example == "braided_B":
        bundle = _bundle(args, _field(args))
        emit(render([_b_kernel(bundle, args)], args.format), args)
        return 0
    bundle = choose_field(args)
    if bundle.resolution is None:
        raise ConfigError("%s has no catalogued resolution" % bundle.name)
    rep = blockwise("resolution", bundle, args)
    emit(render([rep], args.format), args)
    return 0


def cmd_transmute(args):
    if args.example != "slq2":
        raise ConfigError("transmute supports only slq2")
    if not args.check:
        raise ConfigError("transmute needs --check")
    bad = models.transmutation_failures(_field(args))
    emit(render_checks("transmute slq2 -> braided_B", {"transmutation": bad}, args.format), args)
    return 1 if bad else 0


def cmd_twist(args):
    if args.example != "slq2":
        raise ConfigError("twist supports only slq2")
    if not args.check_coboundary:
        raise ConfigError("twist needs --check-coboundary")
    res = models.twist_suite(_field(args), window=args.window, exponent=args.exponent)
    emit(render_checks("twist slq2 (%s exponent)" % args.exponent, res, args.format), args)
    return 1 if any(res.values()) else 0


COMMANDS = {
    "list-examples": cmd_list,
    "verify": cmd_verify,
    "hochschild": cmd_hochschild,
    "cyclic": cmd_cyclic,
    "tor": cmd_tor,
    "transmute": cmd_transmute,
    "twist": cmd_twist,
}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        _check_bounds(args)
        return COMMANDS[args.command](args)
    except ConfigError as e:
        sys.stderr.write("config error: %s\n" % e)
        return 2
    except models.AxiomViolation as e:
        sys.stderr.write("axiom violation: %s\n" % e)
        return 1
    except hom.NotAComplex as e:
        sys.stderr.write("not a complex: %s\n" % e)
        return 1
    except AlgebraError as e:
        sys.stderr.write("error: %s\n" % e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
