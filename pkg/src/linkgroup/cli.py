"""Command line for deriving presentations from framed link diagrams and
comparing the groups' finite-quotient invariants.

Exit codes: 0 success (or Distinguished), 10 Inconclusive, 1 input error,
2 node budget exceeded.  The only environment variable read is
LINKGROUP_THREADS (worker count); it never changes any output bytes.
"""

import argparse
import json
import os
import sys

from .corpus import load_corpus
from .diagrams import DiagramStructureError, DiagramSyntaxError, parse_diagram
from .gems import FourGraphError, gem_report, parse_fourgraph
from .homology import first_homology
from .permgroups import CatalogError, load_catalog
from .presentations import (PresentationSyntaxError, fundamental_group,
                            parse_presentation, serialize_presentation,
                            tietze_simplify)
from .quotients import (ProfileConfig, compare_profiles, distinguish, profile,
                        verify_witness)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_INCONCLUSIVE = 10

_INPUT_ERRORS = (DiagramSyntaxError, DiagramStructureError,
                 PresentationSyntaxError, FourGraphError, CatalogError,
                 OSError, ValueError)


def _workers():
    raw = os.environ.get("LINKGROUP_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_presentation(path):
    """A presentation from a file holding either presentation text or PD-JSON."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return fundamental_group(parse_diagram(text))
    return parse_presentation(text)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _config(args):
    return ProfileConfig(max_index=args.K, node_budget=args.budget,
                         simplify_budget=args.simplify_budget)


def _catalog(args):
    return load_catalog(args.catalog)


def cmd_derive(args):
    text = _read(args.file)
    if not text.lstrip().startswith("{"):
        raise DiagramSyntaxError("derive expects a PD-JSON diagram file")
    p = fundamental_group(parse_diagram(text))
    _emit(serialize_presentation(p, dialect=args.dialect), args.out)
    return EXIT_OK


def cmd_simplify(args):
    p = _load_presentation(args.file)
    simplified = tietze_simplify(p, budget=args.simplify_budget)
    _emit(serialize_presentation(simplified, dialect=args.dialect), args.out)
    return EXIT_OK


def cmd_homology(args):
    p = _load_presentation(args.file)
    doc = {"schema_version": 1, "homology": first_homology(p)}
    _emit(_json_text(doc), args.out)
    return EXIT_OK


def cmd_profile(args):
    p = _load_presentation(args.file)
    prof = profile(p, _config(args), _catalog(args), workers=_workers())
    _emit(prof.to_json(), args.out)
    return EXIT_BUDGET if prof.any_budget_exceeded else EXIT_OK


def cmd_distinguish(args):
    left = _load_presentation(args.file_a)
    right = _load_presentation(args.file_b)
    verdict = distinguish(left, right, _config(args), _catalog(args),
                          workers=_workers())
    _emit(verdict.to_json(), args.out)
    if verdict.outcome == "Distinguished":
        return EXIT_OK
    if verdict.left_profile.any_budget_exceeded or verdict.right_profile.any_budget_exceeded:
        return EXIT_BUDGET
    return EXIT_INCONCLUSIVE


def cmd_gem_check(args):
    graph = parse_fourgraph(_read(args.file))
    doc = {"schema_version": 1}
    doc.update(gem_report(graph))
    _emit(_json_text(doc), args.out)
    return EXIT_OK


def cmd_verify_witness(args):
    doc = json.loads(_read(args.verdict))
    left = _load_presentation(args.file_a)
    right = _load_presentation(args.file_b)
    ok, message = verify_witness(doc, left, right, _catalog(args),
                                 workers=_workers())
    _emit(_json_text({"schema_version": 1, "ok": ok, "message": message}),
          args.out)
    return EXIT_OK if ok else EXIT_INPUT


def cmd_corpus(args):
    entries = load_corpus()
    if not args.report:
        doc = {
            "schema_version": 1,
            "entries": [
                {"key": e.key, "label": e.label, "family": e.family,
                 "partner": e.partner}
                for e in entries.values()
            ],
        }
        _emit(_json_text(doc), args.out)
        return EXIT_OK

    config = _config(args)
    catalog = _catalog(args)
    workers = _workers()
    profiles = {}
    report_entries = {}
    for key, entry in entries.items():
        p = entry.presentation()
        prof = profile(p, config, catalog, workers=workers)
        profiles[key] = prof
        report_entries[key] = {
            "label": entry.label,
            "family": entry.family,
            "partner": entry.partner,
            "profile": prof.to_dict(),
        }
    verdicts = {}
    seen = set()
    for key, entry in entries.items():
        pair = tuple(sorted((key, entry.partner)))
        if pair in seen:
            continue
        seen.add(pair)
        lp, rp = profiles[pair[0]], profiles[pair[1]]
        witness = compare_profiles(lp, rp)
        verdicts[entry.family] = {
            "left": pair[0],
            "right": pair[1],
            "outcome": "Distinguished" if witness else "Inconclusive",
            "witness": None if witness is None else {
                "invariant": witness.invariant,
                "left": witness.left,
                "right": witness.right,
                "recheck": witness.recheck,
            },
        }
    doc = {
        "schema_version": 1,
        "config": next(iter(profiles.values())).config_dict(),
        "entries": report_entries,
        "verdicts": verdicts,
    }
    _emit(_json_text(doc), args.out)
    if any(p.any_budget_exceeded for p in profiles.values()):
        return EXIT_BUDGET
    return EXIT_OK


def _parser():
    parser = argparse.ArgumentParser(
        prog="linkgroup",
        description="Fundamental-group invariants of blackboard framed surgery "
                    "diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=False, dialect=False):
        p.add_argument("--out", default=None, help="write output to this file")
        if config:
            p.add_argument("--K", type=int, default=6,
                           help="largest subgroup index to count (default 6)")
            p.add_argument("--budget", type=int, default=10 ** 8,
                           help="search node budget (default 1e8)")
            p.add_argument("--catalog", default=None,
                           help="path to an alternate target-group catalog")
        p.add_argument("--simplify-budget", dest="simplify_budget", type=int,
                       default=10 ** 4, help="rewrite budget for simplification")
        if dialect:
            p.add_argument("--dialect", choices=("native", "plain", "gap"),
                           default="native", help="output text dialect")

    p = sub.add_parser("derive", help="presentation from a PD-JSON diagram")
    p.add_argument("file")
    common(p, dialect=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("simplify", help="rewrite a presentation smaller")
    p.add_argument("file")
    common(p, dialect=True)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("homology", help="first homology of the presented group")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("profile", help="invariant profile of one input")
    p.add_argument("file")
    common(p, config=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("distinguish", help="compare the profiles of two inputs")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p, config=True)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("gem-check", help="sphere test for a 4-colored graph")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_gem_check)

    p = sub.add_parser("verify-witness", help="replay a stored verdict witness")
    p.add_argument("verdict")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p, config=True)
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("corpus", help="list bundled entries or run the report")
    p.add_argument("--report", action="store_true",
                   help="compute profiles and pair verdicts for all entries")
    common(p, config=True)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
