"""Command-line front end: analyze, decide, audit, gallery.

Exit codes: 0 success / Yes / audit pass, 1 No / counterexample found,
2 parse or validation failure, 3 Unknown (and `analyze --strict` with any
Unknown verdict).  Verdicts go to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import report
from .config import (
    DEFAULT_D_MAX,
    DEFAULT_K_MAX,
    DEFAULT_MAX_LEN,
    DEFAULT_MH_BOUND,
    DEFAULT_PREFIX_LETTERS,
    AnalysisConfig,
)
from .deciders import (
    Verdict,
    decide_eventual_periodicity,
    decide_primitive,
    decide_uniform_recurrence,
)
from .errors import ContractError, IterAlgError, MorphismParseError
from .matrices import OccurrenceCount, incidence_matrix, occurrence_decider
from .words import Morphism, factor_closure, parse_morphism

EXIT_OK = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3

GALLERY_NAMES = ["ba-example", "fibonacci", "paper12", "periodic-ab", "thue-morse"]


def gallery_text(name: str) -> str:
    if name not in GALLERY_NAMES:
        raise ContractError(f"no gallery entry named {name!r}")
    return (
        resources.files("iteralg").joinpath(f"gallery/{name}.morph").read_text("utf-8")
    )


def _resolve_morphism(path: str) -> tuple[Morphism, str]:
    """Load from disk, falling back to the built-in gallery for gallery paths."""
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            return parse_morphism(fh.read(), filename=path), path
    base = os.path.basename(path)
    name = base[:-6] if base.endswith(".morph") else base
    if name in GALLERY_NAMES:
        label = f"gallery/{name}.morph"
        return parse_morphism(gallery_text(name), filename=label), label
    raise MorphismParseError(f"no such file or gallery entry: {path}")


def _config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(
        prefix_letters=args.prefix_letters,
        max_len=args.max_len,
        mh_bound=args.mh_bound,
        k_max=args.k_max,
        d_max=args.d_max,
        output_format=getattr(args, "format", "text"),
        strict=getattr(args, "strict", False),
    )


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(report.to_json(doc))
    else:
        sys.stdout.write(report.render_text(doc))


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    m, label = _resolve_morphism(args.path)
    doc, ctx = report.analyze(m, cfg, label)
    _emit(doc, cfg.output_format)
    if cfg.strict and ctx.has_unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def _verdict_exit(v: Verdict) -> int:
    if v.is_yes:
        return EXIT_OK
    if v.is_no:
        return EXIT_NO
    return EXIT_UNKNOWN


def cmd_decide(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    m, _ = _resolve_morphism(args.path)
    prop = args.property
    if prop == "primitive":
        verdict = decide_primitive(incidence_matrix(m), m)
    elif prop == "prime":
        occurrence = occurrence_decider(m, m.start)
        b_name = m.letters[m.start]
        if occurrence is OccurrenceCount.AT_LEAST_TWICE:
            verdict = Verdict.yes(
                {"witness": "start-occurs-at-least-twice", "letter": b_name}
            )
        else:
            verdict = Verdict.no(
                {
                    "witness": "nilpotent-ideal",
                    "generator": b_name,
                    "reason": f"{b_name} occurs exactly once",
                }
            )
    elif prop in ("periodic", "pi", "noetherian"):
        f = factor_closure(m, cfg.max_len)
        verdict = decide_eventual_periodicity(
            m, f, mh_bound=cfg.mh_bound, prefix_letters=cfg.prefix_letters
        )
    elif prop == "ur":
        f = factor_closure(m, cfg.max_len)
        verdict = decide_uniform_recurrence(m, f, k_max=cfg.k_max)
    else:  # pragma: no cover - argparse restricts choices
        raise ContractError(f"unknown property {prop!r}")
    suffix = " (conditional)" if v_conditional(verdict) else ""
    bound = f" bound={verdict.bound}" if verdict.bound is not None else ""
    sys.stdout.write(f"{prop}: {verdict.value.value}{suffix}{bound}\n")
    sys.stdout.write(
        "certificate: " + json.dumps(verdict.certificate, sort_keys=True) + "\n"
    )
    return _verdict_exit(verdict)


def v_conditional(v: Verdict) -> bool:
    return v.conditional and not v.is_unknown


def cmd_audit(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    m, label = _resolve_morphism(args.path)
    if m.degrees is None:
        sys.stderr.write("audit: morphism carries no grading\n")
        return EXIT_PARSE
    doc, passed, counterexamples = report.audit(m, cfg, label, max_len=args.max_len)
    _emit(doc, cfg.output_format)
    for c in counterexamples:
        sys.stdout.write(f"counterexample: {c}\n")
    return EXIT_OK if passed else EXIT_NO


def cmd_gallery(args: argparse.Namespace) -> int:
    if args.gallery_cmd == "list":
        for name in GALLERY_NAMES:
            sys.stdout.write(name + "\n")
        return EXIT_OK
    try:
        text = gallery_text(args.name)
    except ContractError as exc:
        sys.stderr.write(f"gallery: {exc}\n")
        return EXIT_PARSE
    sys.stdout.write(text)
    return EXIT_OK


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prefix-letters", type=int, default=DEFAULT_PREFIX_LETTERS,
                   metavar="N", help="fixed-point prefix budget in letters")
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN, metavar="L",
                   help="factor length bound")
    p.add_argument("--mh-bound", type=int, default=DEFAULT_MH_BOUND, metavar="B",
                   help="complexity lengths checked for eventual periodicity")
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX, metavar="K",
                   help="iteration depth for the block-cover recurrence test")
    p.add_argument("--d-max", type=int, default=DEFAULT_D_MAX, metavar="D",
                   help="largest graded degree audited")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iteralg",
        description="Analyze pure morphic words and their monomial algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full report for a morphism file")
    p_analyze.add_argument("path")
    _add_budget_flags(p_analyze)
    p_analyze.add_argument("--strict", action="store_true",
                           help="exit 3 when any verdict is Unknown")
    p_analyze.set_defaults(func=cmd_analyze)

    p_decide = sub.add_parser("decide", help="one property verdict with certificate")
    p_decide.add_argument("path")
    p_decide.add_argument(
        "property",
        choices=("prime", "periodic", "ur", "primitive", "pi", "noetherian"),
    )
    _add_budget_flags(p_decide)
    p_decide.set_defaults(func=cmd_decide)

    p_audit = sub.add_parser("audit", help="graded audit: chains, rotations, brackets")
    p_audit.add_argument("path")
    _add_budget_flags(p_audit)
    p_audit.set_defaults(func=cmd_audit)

    p_gallery = sub.add_parser("gallery", help="built-in example morphisms")
    gsub = p_gallery.add_subparsers(dest="gallery_cmd", required=True)
    g_list = gsub.add_parser("list")
    g_list.set_defaults(func=cmd_gallery)
    g_show = gsub.add_parser("show")
    g_show.add_argument("name")
    g_show.set_defaults(func=cmd_gallery)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MorphismParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ContractError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except IterAlgError as exc:
        sys.stderr.write(f"fatal: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
