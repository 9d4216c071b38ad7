"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a verification finds a
violating witness, 2 for usage or input errors, 3 when a budget or scan limit
leaves a run incomplete.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, drivers, fileio, nsc
from .errors import BudgetExceeded, MatroidError, ScanLimitExceeded
from .extend import CatalogLayer, ExtensionVector, Filters, enumerate_extensions, gamma, gamma_labels
from .iso import are_isomorphic, canonical_key
from .matroid import BinaryMatroid, dual, sort_labels
from .minors import has_minor
from .zoo import bond_matroid, graph_matroid, make_named

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3

log = logging.getLogger("nscmat")


class UsageError(Exception):
    pass


# -- matroid specs ------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def parse_spec(spec: str) -> BinaryMatroid:
    """``@file.bm``, ``name:<name>[:p...]``, ``graph:@file.g[:bond]`` or ``dual:<spec>``."""
    if spec.startswith("dual:"):
        return dual(parse_spec(spec[5:]))
    if spec.startswith("@"):
        M, perm = fileio.matroid_from_bm(_read(spec[1:]))
        if list(perm) != list(range(len(perm))):
            print(f"note: {spec[1:]} standardized; column order {[p + 1 for p in perm]}", file=sys.stderr)
        return M
    if spec.startswith("name:"):
        parts = spec[5:].split(":")
        return make_named(parts[0], *parts[1:])
    if spec.startswith("graph:@"):
        body = spec[7:]
        bond = body.endswith(":bond")
        if bond:
            body = body[: -len(":bond")]
        G = fileio.parse_graph(_read(body))
        return bond_matroid(G) if bond else graph_matroid(G)
    raise UsageError(f"bad matroid spec {spec!r}")


def _spec_from_tokens(tokens: list[str]) -> BinaryMatroid:
    if len(tokens) == 2 and tokens[1] == "bond" and tokens[0].startswith("graph:"):
        return parse_spec(tokens[0] + ":bond")
    if len(tokens) != 1:
        raise UsageError(f"expected one matroid spec, got {' '.join(tokens)!r}")
    return parse_spec(tokens[0])


# -- output ------------------------------------------------------------------------

def _document(command: str, M: BinaryMatroid | None = None, rep: nsc.NscReport | None = None,
              verdict: str = "pass", witnesses=(), incomplete: bool = False, **extra) -> dict:
    doc = {
        "tool_version": __version__,
        "command": command,
        "matroid": None if M is None else {"r": M.r, "n": M.n, "labels": list(M.labels)},
        "nsc": None, "meets": {}, "avoids": {}, "dep": {},
        "Y": [], "Ytilde": [], "ytilde_corank": None,
        "verdict": verdict, "witnesses": list(witnesses), "incomplete": incomplete,
    }
    if rep is not None and M is not None:
        doc.update(rep.to_dict(M.labels))
    doc.update(extra)
    return doc


def _emit(args, doc: dict, human: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        print(human)


def _exit_for(verdict: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "incomplete": EXIT_INCOMPLETE}[verdict]


# -- subcommands ---------------------------------------------------------------------

def cmd_nsc(args) -> int:
    M = _spec_from_tokens(args.spec)
    rep = nsc.report(M, scan_limit=args.scan_limit)
    lines = [f"{len(rep.nsc)} non-separating cocircuits of {M!r}"]
    lines += ["  {" + ", ".join(c.sorted_support()) + "}" for c in rep.nsc]
    _emit(args, _document("nsc", M, rep), "\n".join(lines))
    return EXIT_PASS


def cmd_yset(args) -> int:
    M = _spec_from_tokens(args.spec)
    rep = nsc.report(M, scan_limit=args.scan_limit)
    human = "\n".join([
        f"Y      = {{{', '.join(sort_labels(rep.Y))}}}",
        f"Ytilde = {{{', '.join(sort_labels(rep.Ytilde))}}}",
        f"corank of Ytilde = {rep.ytilde_corank}",
    ])
    _emit(args, _document("yset", M, rep), human)
    return EXIT_PASS


def cmd_iso(args) -> int:
    M1, M2 = parse_spec(args.spec1), parse_spec(args.spec2)
    same = are_isomorphic(M1, M2)
    doc = _document("iso", M1, isomorphic=same, keys=[canonical_key(M1).hex(), canonical_key(M2).hex()])
    _emit(args, doc, "isomorphic" if same else "not isomorphic")
    return EXIT_PASS


def cmd_minor(args) -> int:
    M, N = parse_spec(args.spec), parse_spec(args.minor)
    found = has_minor(M, N, budget=args.budget)
    _emit(args, _document("minor", M, has_minor=found), "minor present" if found else "no such minor")
    return EXIT_PASS


def cmd_gamma(args) -> int:
    A, labels = fileio.parse_bm(_read(args.matrix))
    labels = labels or tuple(str(j + 1) for j in range(A.cols))
    v = ExtensionVector.parse(args.vector)
    G = gamma(A, v.entries)
    new = "e"
    while new in labels:
        new += "0"
    out_labels = gamma_labels(labels, v.entries, new)
    text = fileio.emit_bm(G, out_labels)
    _emit(args, _document("gamma", None, rows=G.to_strings(), labels=out_labels), text.rstrip("\n"))
    return EXIT_PASS


def _filters(args) -> Filters:
    excluded = tuple(parse_spec(s) for s in args.exclude)
    return Filters(cosimple=not args.no_cosimple, simple=args.simple,
                   three_connected=args.three_connected, regular=args.regular,
                   excluded_minors=excluded, min_dual_ytilde_corank=args.min_ytilde,
                   scan_limit=args.scan_limit)


def cmd_layer(args) -> int:
    M = fileio.matroid_from_bm(_read(args.matrix))[0]
    seeds = CatalogLayer.from_matroids(M.r, [M])
    L = enumerate_extensions(seeds, _filters(args), orbit_prune=not args.no_orbit_prune,
                             full_vectors=args.full_vectors, workers=args.threads,
                             stats=args.stats, budget=args.budget)
    if args.out:
        fileio.write_layer(args.out, L, {"source": args.matrix, "filters": _filters(args).describe()})
    items = [{"key": it.key.hex(), "n": it.n, "vector": str(it.vector), "stats": it.stats} for it in L.items]
    lines = [f"{k}: {v}" for k, v in L.counts.items()]
    lines += [fileio.format_record(it) for it in L.items]
    incomplete = bool(L.skipped)
    doc = _document("layer", M, verdict="incomplete" if incomplete else "pass",
                    incomplete=incomplete, counts=L.counts, items=items, skipped=L.skipped)
    _emit(args, doc, "\n".join(lines))
    return EXIT_INCOMPLETE if incomplete else EXIT_PASS


def _driver_output(args, command: str, rep: drivers.DriverReport) -> int:
    doc = _document(command, verdict=rep.verdict, witnesses=rep.witnesses,
                    incomplete=rep.incomplete, checks=rep.checks, header=rep.header)
    lines = [f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" for c in rep.checks]
    lines.append(f"verdict: {rep.verdict}")
    _emit(args, doc, "\n".join(lines))
    return _exit_for(rep.verdict)


def cmd_classify(args) -> int:
    return _driver_output(args, "classify-rank4", drivers.classify_rank4())


VERIFY_TARGETS = ("initial-cases", "k33", "comput-a", "comput-b", "comput-c", "comput-d", "extremal")


def cmd_verify(args) -> int:
    t = args.target
    if t == "initial-cases":
        rep = drivers.verify_initial_cases()
    elif t == "k33":
        rep = drivers.verify_k33_family()
    elif t == "extremal":
        rep = drivers.verify_extremal()
    else:
        rep = drivers.verify_comput(t[-1], steps=args.steps, full_vectors=args.full_vectors,
                                    budget=args.budget, workers=args.threads)
    return _driver_output(args, f"verify {t}", rep)


def cmd_search(args) -> int:
    try:
        rep = drivers.conjecture_search(args.max_rank, args.thresholds, args.catalog, args.resume,
                                        workers=args.threads, full_vectors=args.full_vectors,
                                        budget=args.budget)
    except drivers.ResumeMismatch as exc:
        raise UsageError(str(exc)) from None
    return _driver_output(args, "search", rep)


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nscmat", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress on stderr")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("spec", nargs="+", help="@file.bm | name:fano | name:spike:5 | graph:@file.g [bond]")
        s.add_argument("--scan-limit", type=int, default=nsc.DEFAULT_SCAN_LIMIT)
        s.set_defaults(fn=fn)

    spec_cmd("nsc", cmd_nsc, "list the non-separating cocircuits")
    spec_cmd("yset", cmd_yset, "print Y, Ytilde and the corank of Ytilde")

    s = sub.add_parser("iso", help="test two matroids for isomorphism")
    s.add_argument("spec1")
    s.add_argument("spec2")
    s.set_defaults(fn=cmd_iso)

    s = sub.add_parser("minor", help="test for a minor")
    s.add_argument("spec")
    s.add_argument("minor")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(fn=cmd_minor)

    s = sub.add_parser("gamma", help="apply the coextension operator to a matrix")
    s.add_argument("matrix")
    s.add_argument("vector", help="entries from {0,1,2}, e.g. 0201 or 0,2,0,1")
    s.set_defaults(fn=cmd_gamma)

    s = sub.add_parser("layer", help="enumerate one layer of coextensions")
    s.add_argument("matrix")
    s.add_argument("--no-cosimple", action="store_true")
    s.add_argument("--simple", action="store_true")
    s.add_argument("--three-connected", action="store_true")
    s.add_argument("--regular", action="store_true")
    s.add_argument("--exclude", action="append", default=[], metavar="SPEC",
                   help="drop candidates with this minor (repeatable)")
    s.add_argument("--min-ytilde", type=int, default=None, metavar="K",
                   help="keep candidates whose dual has corank(Ytilde) >= K")
    s.add_argument("--stats", action="store_true", help="record dual Y statistics")
    s.add_argument("--full-vectors", action="store_true")
    s.add_argument("--no-orbit-prune", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--scan-limit", type=int, default=nsc.DEFAULT_SCAN_LIMIT)
    s.add_argument("--out", default=None, help="write the layer as a catalog into this directory")
    s.set_defaults(fn=cmd_layer)

    s = sub.add_parser("classify-rank4", help="classify rank-4 3-connected binary matroids")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("verify", help="rerun a computational lemma")
    s.add_argument("target", choices=VERIFY_TARGETS)
    s.add_argument("--steps", type=int, default=1, help="Γ steps for comput-a/c/d")
    s.add_argument("--full-vectors", action="store_true")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("search", help="layered conjecture search")
    s.add_argument("--max-rank", type=int, default=9)
    s.add_argument("--catalog", default=None)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--full-vectors", action="store_true")
    s.add_argument("--thresholds", choices=sorted(drivers.THRESHOLDS), default="proof")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(fn=cmd_search)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except (ScanLimitExceeded, BudgetExceeded) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (UsageError, fileio.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatroidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
