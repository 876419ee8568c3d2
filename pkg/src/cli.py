"""
Command-line surface: parse, translate, compare, rewrite, analyse, render.

Usage:
    uv run python main.py check -s samples/twocolour.sig "o2 ; o1"
    uv run python main.py equal -s samples/twocolour.sig "mult[c] ; comult[c]" "..."
    uv run python main.py rewrite -s samples/branch.sig -r samples/branch.rules "g"
    uv run python main.py confluence -s samples/assoc.sig -r samples/assoc.rules

Results go to stdout, diagnostics to stderr. Exit codes are listed in
src/constants.py.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

from src.constants import (
    BOUND_ENV_VAR,
    DEFAULT_NORMAL_FORM_BOUND,
    DEFAULT_STEP_BOUND,
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    EXIT_NEGATIVE,
    EXIT_OK,
)
from src.errors import HyperRewriteError
from src.graphs.cospan import cospan_equal
from src.graphs.dot import cospan_to_dot, hypergraph_to_dot
from src.graphs.hypergraph import Homomorphism
from src.graphs.text_format import parse_cospan, parse_hypergraph, print_cospan, print_hypergraph
from src.logger import get_logger, set_level
from src.rewriting.confluence import (
    CONFLUENT,
    NOT_CONFLUENT,
    CriticalPair,
    JoinabilityCertificate,
    check_confluence,
    enumerate_critical_pairs,
    normal_forms,
)
from src.rewriting.dpoi import (
    DpoRule,
    describe_step,
    folded,
    rewrite_all,
    rule_from_diagrams,
    unfold,
)
from src.semantics.functor import extract, translate
from src.syntax.diagram import Diagram
from src.syntax.parser import parse_diagram, parse_rules, print_diagram
from src.syntax.signature import Signature, parse_signature

logger = get_logger(__name__)


@dataclass
class Workspace:
    """Files and options shared by every command.

    The signature is loaded on first use; rules are parsed against it.
    """

    signature_path: Path
    rule_paths: list[Path] = field(default_factory=list)
    output_format: str = "text"
    trace: bool = False

    @cached_property
    def signature(self) -> Signature:
        logger.debug("Loading signature from %s", self.signature_path)
        return parse_signature(self.signature_path.read_text(encoding="utf-8"))

    @cached_property
    def rules(self) -> list[DpoRule]:
        rules = []
        for path in self.rule_paths:
            logger.debug("Loading rules from %s", path)
            rules.extend(parse_rules(path.read_text(encoding="utf-8"), self.signature))
        names = [rule.name for rule in rules]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise HyperRewriteError(f"duplicate rule names across files: {', '.join(duplicates)}")
        logger.info("Loaded %d rules", len(rules))
        return [rule_from_diagrams(rule) for rule in rules]

    def term(self, text: str) -> Diagram:
        return parse_diagram(text, self.signature)


def _resolve_bound(cli_value: Optional[int], default: Optional[int]) -> Optional[int]:
    """Pick the step bound: flag, then HYPERREWRITE_BOUND, then the default."""
    if cli_value is not None:
        return cli_value
    configured = os.environ.get(BOUND_ENV_VAR)
    if configured is None or not configured.strip():
        return default
    try:
        value = int(configured)
    except ValueError:
        value = 0
    if value > 0:
        return value
    logger.warning(
        "Invalid %s=%r. Expected a positive integer. Falling back to %s.",
        BOUND_ENV_VAR,
        configured,
        default,
    )
    return default


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _render_cospan(workspace: Workspace, cospan, name: str = "cospan") -> str:
    if workspace.output_format == "dot":
        return cospan_to_dot(cospan, name)
    return print_cospan(cospan)


def format_witness(witness: Homomorphism) -> str:
    nodes = ", ".join(f"n{x}->n{y}" for x, y in enumerate(witness.node_map))
    edges = ", ".join(f"e{x}->e{y}" for x, y in enumerate(witness.edge_map))
    return f"witness: nodes [{nodes}] edges [{edges}]"


def format_critical_pair(pair: CriticalPair, index: int) -> str:
    """Text dump of S, J and both results of a critical pair."""
    listing = " ".join(f"n{n}" for n in pair.source.interface)
    sections = [
        f"# critical pair {index}: {pair.first_rule.name} / {pair.second_rule.name}",
        f"## S (interface: {listing or '-'})",
        print_hypergraph(pair.overlap).rstrip(),
        "## J",
        print_hypergraph(pair.interface).rstrip(),
        f"## H1 (via {pair.first_rule.name})",
        print_cospan(pair.first_result.to_cospan()).rstrip(),
        f"## H2 (via {pair.second_rule.name})",
        print_cospan(pair.second_result.to_cospan()).rstrip(),
    ]
    return "\n".join(s for s in sections if s) + "\n"


def format_certificate(certificate: Optional[JoinabilityCertificate]) -> str:
    if certificate is None:
        return "# not joined\n"
    lines = [
        f"# joined after {len(certificate.first_steps)} + {len(certificate.second_steps)} steps",
        "first: " + (" ".join(step.rule.name for step in certificate.first_steps) or "-"),
        "second: " + (" ".join(step.rule.name for step in certificate.second_steps) or "-"),
        "## W",
        print_cospan(certificate.target.to_cospan()).rstrip(),
    ]
    return "\n".join(lines) + "\n"


def cmd_check(workspace: Workspace, args: argparse.Namespace) -> int:
    d = workspace.term(args.term)
    print(f"{print_diagram(d)} : {d.dom} -> {d.cod}")
    return EXIT_OK


def cmd_translate(workspace: Workspace, args: argparse.Namespace) -> int:
    print(_render_cospan(workspace, translate(workspace.term(args.term))), end="")
    return EXIT_OK


def cmd_equal(workspace: Workspace, args: argparse.Namespace) -> int:
    a = workspace.term(args.first)
    b = workspace.term(args.second)
    if a.dom != b.dom or a.cod != b.cod:
        print(f"DIFFERENT (types {a.dom} -> {a.cod} and {b.dom} -> {b.cod})")
        return EXIT_NEGATIVE
    result = cospan_equal(translate(a), translate(b))
    if result:
        print("EQUAL")
        print(format_witness(result.witness))
        return EXIT_OK
    print("DIFFERENT")
    return EXIT_NEGATIVE


def cmd_rewrite(workspace: Workspace, args: argparse.Namespace) -> int:
    a = workspace.term(args.term)
    n = len(a.dom)
    start = folded(a)

    if args.mode == "one-step":
        steps = rewrite_all(workspace.rules, start)
        if not steps:
            print("# no rewrite applies")
        for index, step in enumerate(steps):
            if workspace.trace:
                print(describe_step(step), end="")
            result = unfold(step.target, n)
            print(f"# result {index}: {step.rule.name}")
            print(f"# term: {print_diagram(extract(result))}")
            print(_render_cospan(workspace, result, f"result{index}"), end="")
        return EXIT_OK

    bound = _resolve_bound(args.bound, DEFAULT_NORMAL_FORM_BOUND)
    found = normal_forms(start, workspace.rules, bound)
    for index, form in enumerate(found.forms):
        result = unfold(form, n)
        print(f"# normal form {index}")
        print(f"# term: {print_diagram(extract(result))}")
        print(_render_cospan(workspace, result, f"normal{index}"), end="")
    if not found.complete:
        print(f"# search stopped at bound {bound}; normal forms may be missing", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_cps(workspace: Workspace, args: argparse.Namespace) -> int:
    pairs = enumerate_critical_pairs(workspace.rules, keep_disjoint=args.keep_disjoint)
    print(f"# {len(pairs)} critical pairs")
    for index, pair in enumerate(pairs):
        print(format_critical_pair(pair, index), end="")
    return EXIT_OK


def cmd_confluence(workspace: Workspace, args: argparse.Namespace) -> int:
    default = None if args.assert_terminating else DEFAULT_STEP_BOUND
    bound = _resolve_bound(args.bound, default)
    report = check_confluence(
        workspace.rules,
        assert_terminating=args.assert_terminating,
        bound=bound,
        keep_disjoint=args.keep_disjoint,
    )
    print(report.verdict)
    print(f"# {len(report.pairs)} critical pairs, {len(report.unresolved)} unresolved")
    if report.counterexample is not None:
        index = report.pairs.index(report.counterexample)
        print(format_critical_pair(report.counterexample, index), end="")

    if args.certificates is not None:
        directory = Path(args.certificates)
        directory.mkdir(parents=True, exist_ok=True)
        for index, (pair, certificate) in enumerate(zip(report.pairs, report.certificates)):
            path = directory / f"pair_{index:03d}.txt"
            path.write_text(format_critical_pair(pair, index) + format_certificate(certificate), encoding="utf-8")
        logger.info("Wrote %d certificates to %s", len(report.pairs), directory)

    if report.verdict == CONFLUENT:
        return EXIT_OK
    if report.verdict == NOT_CONFLUENT:
        return EXIT_NEGATIVE
    return EXIT_INCONCLUSIVE


def cmd_render(workspace: Workspace, args: argparse.Namespace) -> int:
    if args.term is not None:
        print(cospan_to_dot(translate(workspace.term(args.term))), end="")
    elif args.graph is not None:
        g = parse_hypergraph(Path(args.graph).read_text(encoding="utf-8"), workspace.signature)
        print(hypergraph_to_dot(g), end="")
    else:
        f = parse_cospan(Path(args.cospan).read_text(encoding="utf-8"), workspace.signature)
        print(cospan_to_dot(f), end="")
    return EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_ERROR; 2 is reserved for negative answers."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("-s", "--signature", required=True, type=Path, help="Signature file")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    with_rules = _ArgumentParser(add_help=False)
    with_rules.add_argument(
        "-r", "--rules", action="append", type=Path, default=[], help="Rule file (repeatable)"
    )
    with_rules.add_argument("--keep-disjoint", action="store_true", help="Keep non-overlapping pairs")

    parser = _ArgumentParser(prog="hyperrewrite", description="Rewriting in free hypergraph categories")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Parse and type-check a term")
    check.add_argument("term")
    check.set_defaults(handler=cmd_check)

    translate_cmd = commands.add_parser("translate", parents=[common], help="Translate a term to a cospan")
    translate_cmd.add_argument("term")
    translate_cmd.add_argument("--format", choices=["text", "dot"], default="text")
    translate_cmd.set_defaults(handler=cmd_translate)

    equal = commands.add_parser("equal", parents=[common], help="Decide equality of two terms")
    equal.add_argument("first")
    equal.add_argument("second")
    equal.set_defaults(handler=cmd_equal)

    rewrite = commands.add_parser("rewrite", parents=[common, with_rules], help="Rewrite a term modulo Frobenius")
    rewrite.add_argument("term")
    rewrite.add_argument("--mode", choices=["one-step", "normalize"], default="one-step")
    rewrite.add_argument("--bound", type=_positive_int)
    rewrite.add_argument("--format", choices=["text", "dot"], default="text")
    rewrite.add_argument("--trace", action="store_true", help="Print L, K, R, G, C, H of each step")
    rewrite.set_defaults(handler=cmd_rewrite)

    cps = commands.add_parser("cps", parents=[common, with_rules], help="List critical pairs")
    cps.set_defaults(handler=cmd_cps)

    confluence = commands.add_parser("confluence", parents=[common, with_rules], help="Check confluence")
    confluence.add_argument("--bound", type=_positive_int)
    confluence.add_argument("--assert-terminating", action="store_true")
    confluence.add_argument("--certificates", metavar="DIR", help="Write one file per critical pair")
    confluence.set_defaults(handler=cmd_confluence)

    render = commands.add_parser("render", parents=[common], help="Print DOT for a term, graph or cospan")
    source = render.add_mutually_exclusive_group(required=True)
    source.add_argument("--term")
    source.add_argument("--graph", metavar="FILE")
    source.add_argument("--cospan", metavar="FILE")
    render.set_defaults(handler=cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_level(logging.DEBUG)

    workspace = Workspace(
        signature_path=args.signature,
        rule_paths=list(getattr(args, "rules", [])),
        output_format=getattr(args, "format", "text"),
        trace=getattr(args, "trace", False),
    )
    try:
        return args.handler(workspace, args)
    except (HyperRewriteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
