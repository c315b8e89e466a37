"""Command line: classify, verify, search, corpus list.

Exit codes: 0 pass, 1 property failure, 2 spec/parse/usage error,
3 resource cap (any cap when --strict is given).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .config import load_config
from .deciders import FLAG_NAMES, SCHEMA_VERSION, classify
from .errors import ResourceCapError, SpecSyntaxError
from .harness import (
    SUITES,
    CorpusEntry,
    load_corpus,
    parse_corpus,
    parse_query,
    run_suites,
    search_strictness,
)
from .rings import axiom_violation

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3

HIERARCHY = ("chained", "arithmetical", "fqp", "gaussian", "prufer")


def _emit(record: dict, out) -> None:
    out.write(json.dumps(record, ensure_ascii=False) + "\n")


def _render_report(rec: dict, out) -> None:
    flags = rec["flags"]
    out.write(f"{rec['ring']}  (size {rec['size']})\n")
    chain = "  =>  ".join(f"{n} {'yes' if flags[n] else 'no'}" for n in HIERARCHY)
    out.write(f"  hierarchy: {chain}\n")
    for name in FLAG_NAMES:
        mark = "yes" if flags[name] else "no"
        wit = rec["witnesses"].get(name)
        extra = f"   witness: {json.dumps(wit, ensure_ascii=False)}" if wit is not None else ""
        out.write(f"  {name:<20} {mark:<4}{extra}".rstrip() + "\n")
    wd = rec["wdim"]
    cases = rec["witnesses"].get("wdim")
    out.write(f"  {'wdim':<20} {wd}" + (f"   cases: {', '.join(cases['cases'])}" if cases else "") + "\n")
    if "gaussian_content" in rec["witnesses"]:
        out.write(f"  content witness      {json.dumps(rec['witnesses']['gaussian_content'], ensure_ascii=False)}\n")
    st = rec["stats"]
    verified = "yes" if rec["oracle_verified"] else "no"
    line = f"  ideals {st['ideal_count']}, oracle-verified {verified}"
    if st.get("elapsed_ms") is not None:
        line += f", {st['elapsed_ms']:.1f} ms"
    out.write(line + "\n")


def _render_suite(rec: dict, out) -> None:
    status = "SKIP" if rec["skipped"] else "PASS" if rec["passed"] else "FAIL"
    line = f"{status} {rec['suite']:<15} rings {rec['rings']:>4}  instances {rec['instances']:>7}"
    line += f"  failures {len(rec['failures'])}  caps {len(rec['caps_hit'])}"
    if rec["elapsed_ms"] is not None:
        line += f"  {rec['elapsed_ms'] / 1000:.2f}s"
    out.write(line + "\n")
    for f in rec["failures"]:
        out.write(f"    {f['ring']}: {f['message']}")
        if f["witness"] is not None:
            out.write(f"  witness={json.dumps(f['witness'], ensure_ascii=False)}")
        if f["expected"] is not None or f["got"] is not None:
            out.write(f"  expected={f['expected']} got={f['got']}")
        out.write("\n")


def _entries_from_args(args) -> list[CorpusEntry]:
    entries = []
    for text in args.specs:
        entries.extend(parse_corpus([text], "<argument>"))
    if args.file:
        for path in args.file:
            entries.extend(load_corpus([path]))
    return entries


def cmd_classify(args, config, out) -> int:
    entries = _entries_from_args(args)
    if not entries:
        raise SpecSyntaxError("no ring spec given")
    code = EXIT_OK
    for e in entries:
        try:
            R = e.build(config)
        except ResourceCapError as exc:
            sys.stderr.write(f"{e.name}: {exc}\n")
            return EXIT_CAP
        if R.size <= config.axiom_size:
            msg = axiom_violation(R)
            if msg:
                sys.stderr.write(f"{e.name}: ring axioms fail: {msg}\n")
                return EXIT_FAIL
        try:
            report = classify(R, config, oracle=not args.no_oracle, name=e.name)
        except ResourceCapError as exc:
            sys.stderr.write(f"{e.name}: {exc}\n")
            return EXIT_CAP
        rec = report.to_record(timings=args.timings)
        if config.output_format == "machine":
            _emit(rec, out)
        else:
            _render_report(rec, out)
        for key, want in e.expected.items():
            got = rec["flags"].get(key, rec.get(key))
            if got != want:
                sys.stderr.write(f"{e.name}: expected {key}={want}, got {got}\n")
                code = EXIT_FAIL
        capped = (not args.no_oracle and report.stats["oracle_skipped"]) or \
            report.stats["content_degree"] is None
        if args.strict and capped and code == EXIT_OK:
            code = EXIT_CAP
    return code


def _corpus(args) -> list[CorpusEntry]:
    return load_corpus(args.corpus) if args.corpus else load_corpus()


def cmd_verify(args, config, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        sys.stderr.write(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}\n")
        return EXIT_PARSE
    reports = run_suites(names, _corpus(args), config)
    for rep in reports:
        rec = rep.to_record(timings=args.timings)
        if config.output_format == "machine":
            _emit({"schema": SCHEMA_VERSION, **rec}, out)
        else:
            _render_suite(rec, out)
    if any(not r.passed for r in reports):
        return EXIT_FAIL
    if args.strict and any(r.caps_hit for r in reports):
        return EXIT_CAP
    return EXIT_OK


def cmd_search(args, config, out) -> int:
    q = parse_query(args.query)
    hits, caps = search_strictness(_corpus(args), args.size_max, q, config)
    if config.output_format == "machine":
        _emit({"schema": SCHEMA_VERSION, "query": args.query, "size_max": args.size_max,
               "forbidden": q.forbidden, "hits": [h.to_record() for h in hits],
               "caps_hit": caps}, out)
    else:
        out.write(f"query: {args.query}  (size <= {args.size_max}): {len(hits)} class(es)\n")
        for h in hits:
            alias = f"  also: {', '.join(h.aliases)}" if h.aliases else ""
            out.write(f"  {h.name:<24} size {h.size:>4}  {h.spec}{alias}\n")
        for c in caps:
            out.write(f"  cap: {c}\n")
    if q.forbidden and hits:
        sys.stderr.write("query is ruled out by the hierarchy but has witnesses\n")
        return EXIT_FAIL
    if args.strict and caps:
        return EXIT_CAP
    return EXIT_OK


def cmd_corpus(args, config, out) -> int:
    for e in _corpus(args):
        if args.tag and args.tag not in e.tags:
            continue
        if config.output_format == "machine":
            _emit({"schema": SCHEMA_VERSION, "name": e.name, "spec": e.spec,
                   "tags": list(e.tags), "expected": e.expected}, out)
        else:
            exp = ""
            if e.expected:
                exp = "  expect{" + ", ".join(f"{k}={str(v).lower() if isinstance(v, bool) else v}"
                                              for k, v in e.expected.items()) + "}"
            out.write(f"{e.name}: {e.spec}{exp}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--caps", default="", metavar="K=V,...",
                        help="override caps, e.g. ring_size=1024,candidates=100000")
    common.add_argument("--format", choices=("human", "machine"), default=None,
                        help="human table or JSON lines")
    common.add_argument("--strict", action="store_true", help="treat cap hits as failures (exit 3)")
    common.add_argument("--timings", action="store_true", help="include elapsed times in output")
    common.add_argument("--config", default=None, help="JSON config file (default: $FQPLAB_CONFIG)")

    p = argparse.ArgumentParser(prog="fqplab", description="Classify finite commutative rings "
                                "in the Prüfer hierarchy and check its theorems on a corpus.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify ring specs")
    c.add_argument("specs", nargs="*", help='specs like "TrivExt(Z(8),[2],1)" (optional "name:" prefix)')
    c.add_argument("-f", "--file", action="append", help="file with one spec per line")
    c.add_argument("--no-oracle", action="store_true", help="skip the brute-force cross-check")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    v.add_argument("--corpus", action="append", help="corpus file (repeatable; default: packaged)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="find corpus rings satisfying a flag formula")
    s.add_argument("query", help='e.g. "gaussian & !fqp"')
    s.add_argument("--size-max", type=int, default=16)
    s.add_argument("--corpus", action="append")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("corpus", parents=[common], help="corpus operations")
    k.add_argument("action", choices=("list",))
    k.add_argument("--corpus", action="append")
    k.add_argument("--tag", default=None)
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        config = load_config(args.config)
        if args.caps:
            config = config.with_overrides(args.caps)
        if args.format:
            config = config.replace(output_format=args.format)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_PARSE
    try:
        return args.func(args, config, out)
    except SpecSyntaxError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ResourceCapError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
