#!/usr/bin/env python3
"""
Acceptance validation for the rewriting engine.

Runs the desk-scale acceptance checks: the Frobenius axiom suite, fullness
and functoriality of translation, the homomorphism oracle, rewriting of terms
through their folded translations, discreteness of critical pair interfaces,
the two reference confluence verdicts, pushout complement completeness and
the bipartite switch theory. Property checks draw their instances with
hypothesis; failures are shrunk and printed.
For the fast unit suite, use: uv run pytest

Run everything:
    uv run python scripts/validate_acceptance.py --all

Run one check:
    uv run python scripts/validate_acceptance.py --check 7

Fewer random instances (quick smoke run):
    uv run python scripts/validate_acceptance.py --all --scale 0.1
"""

import argparse
import logging
import sys
import traceback
from pathlib import Path
from time import perf_counter

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from src.errors import InterfaceNotDiscreteError
from src.graphs.cospan import compose, cospan_equal, tensor
from src.graphs.matching import find_homomorphisms
from src.logger import set_level
from src.rewriting.brute_force import all_homomorphisms, brute_force_joinable, brute_force_rewrites
from src.rewriting.confluence import CONFLUENT, NOT_CONFLUENT, check_confluence, enumerate_critical_pairs, is_joinable
from src.rewriting.dpoi import (
    find_rewrite_steps,
    folded,
    rule_from_diagrams,
    same_up_to_iso,
    syntactic_step,
    unfold,
    validate_step,
)
from src.semantics.functor import extract, translate
from src.syntax.diagram import (
    Comult,
    Counit,
    Id,
    Mult,
    Par,
    Rule,
    Seq,
    Sym,
    Unit,
    cap,
    comult_word,
    counit_word,
    cup,
    id_word,
    mult_word,
    unit_word,
)
from src.syntax.parser import parse_rules
from src.syntax.signature import parse_signature
from tests.strategies import MIXED, SWITCH, composable_pairs, cospans, diagrams, hypergraphs

SAMPLES = Path(__file__).parent.parent / "samples"

TRICOLOUR = parse_signature("colour a\ncolour b\ncolour e\nop f : a b -> e\n")

# Rules used for the pushout complement comparison, all over MIXED
COMPLEMENT_RULES = """\
rule split : id[c] => comult[c] ; mult[c]
rule drop : u => id[c]
rule fuse : o1 ; (id[c] + q) => u
rule make : p => unit[c]
"""

# Rule whose left side is composed with random contexts
SHRINK = "rule shrink : o2 ; o1 ; (id[c] + counit[d]) => o2"


def _settings(examples: int) -> settings:
    return settings(
        max_examples=max(1, examples),
        deadline=None,
        database=None,
        suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
    )


def _equal(a, b) -> bool:
    return bool(cospan_equal(translate(a), translate(b)))


def _frobenius_equations(c):
    """(name, lhs, rhs) for the special commutative Frobenius laws on one colour."""
    return [
        ("associativity", Seq(Par(Mult(c), Id(c)), Mult(c)), Seq(Par(Id(c), Mult(c)), Mult(c))),
        ("unit", Seq(Par(Unit(c), Id(c)), Mult(c)), Id(c)),
        ("commutativity", Seq(Sym(c, c), Mult(c)), Mult(c)),
        ("coassociativity", Seq(Comult(c), Par(Comult(c), Id(c))), Seq(Comult(c), Par(Id(c), Comult(c)))),
        ("counit", Seq(Comult(c), Par(Counit(c), Id(c))), Id(c)),
        ("cocommutativity", Seq(Comult(c), Sym(c, c)), Comult(c)),
        ("frobenius", Seq(Par(Comult(c), Id(c)), Par(Id(c), Mult(c))), Seq(Mult(c), Comult(c))),
        ("frobenius (mirrored)", Seq(Par(Id(c), Comult(c)), Par(Mult(c), Id(c))), Seq(Mult(c), Comult(c))),
        ("separability", Seq(Comult(c), Mult(c)), Id(c)),
    ]


def _word_equations(w):
    """Compatibility of the word-level structure with the tensor, and the snake equation."""
    m, delta = mult_word(w), comult_word(w)
    snake = Seq(Par(cup(w), id_word(w)), Par(id_word(w), cap(w)))
    return [
        ("word separability", Seq(delta, m), id_word(w)),
        ("word unit", Seq(Par(unit_word(w), id_word(w)), m), id_word(w)),
        ("word counit", Seq(delta, Par(counit_word(w), id_word(w))), id_word(w)),
        ("word frobenius", Seq(Par(delta, id_word(w)), Par(id_word(w), m)), Seq(m, delta)),
        ("snake", snake, id_word(w)),
    ]


def check_axioms(scale: float) -> str:
    equations = []
    for colour in TRICOLOUR.colours:
        equations.extend((f"{name} [{colour.name}]", a, b) for name, a, b in _frobenius_equations(colour))
    for text in ("a b", "a b e", "e a"):
        w = TRICOLOUR.word(text)
        equations.extend((f"{name} [{w}]", a, b) for name, a, b in _word_equations(w))

    failures = [name for name, a, b in equations if not _equal(a, b)]
    assert not failures, f"equations failed: {', '.join(failures)}"
    return f"{len(equations)} equations hold"


def check_fullness(scale: float) -> str:
    count = int(500 * scale)

    @_settings(count)
    @given(cospans(max_nodes=8, max_edges=5))
    def round_trip(f):
        assert cospan_equal(translate(extract(f)), f)

    round_trip()
    return f"{count} random cospans"


def check_functoriality(scale: float) -> str:
    count = int(500 * scale)

    @_settings(count)
    @given(composable_pairs(), diagrams(), diagrams())
    def preserves(pair, a, b):
        first, second = pair
        assert cospan_equal(translate(Seq(first, second)), compose(translate(first), translate(second)))
        assert cospan_equal(translate(Par(a, b)), tensor(translate(a), translate(b)))

    preserves()
    return f"{count} random term pairs"


def check_homomorphisms(scale: float) -> str:
    count = int(200 * scale)

    @_settings(count)
    @given(hypergraphs(max_nodes=5, max_edges=4), hypergraphs(max_nodes=5, max_edges=4))
    def agree(pattern, host):
        fast = sorted((h.node_map, h.edge_map) for h in find_homomorphisms(pattern, host))
        slow = sorted((h.node_map, h.edge_map) for h in all_homomorphisms(pattern, host))
        assert fast == slow

    agree()
    return f"{count} random pattern/host pairs"


def check_bridge(scale: float) -> str:
    count = int(100 * scale)
    sig = parse_signature((SAMPLES / "twocolour.sig").read_text(encoding="utf-8"))

    # Each rule of the two-colour theory rewrites its own left side to its right side
    for rule in parse_rules((SAMPLES / "twocolour.rules").read_text(encoding="utf-8"), sig):
        steps = find_rewrite_steps(rule_from_diagrams(rule), folded(rule.lhs))
        results = [unfold(step.target, len(rule.lhs.dom)) for step in steps]
        assert any(cospan_equal(r, translate(rule.rhs)) for r in results), f"rule {rule.name}: rhs not reached"
        if rule.name == "shrink":
            assert len(steps) == 1, f"shrink: expected a single step, found {len(steps)}"

    (shrink,) = parse_rules(SHRINK, MIXED)

    @_settings(count)
    @given(diagrams(max_layers=2), st.data())
    def finds_rewritten_context(beside, data):
        placed = Par(shrink.lhs, beside)
        context = data.draw(diagrams(dom=placed.cod, max_layers=3))
        a = Seq(placed, context)
        expected = folded(Seq(Par(shrink.rhs, beside), context))
        assert any(same_up_to_iso(h, expected) for h in syntactic_step([shrink], a))

    finds_rewritten_context()
    return f"example rules plus {count} composed contexts"


@st.composite
def _rule_sets(draw):
    """Two rules w -> ε whose sides are random diagrams capped by counits."""
    rules = []
    for index in range(2):
        w = MIXED.word(draw(st.sampled_from(["c", "d", "c d"])))
        a = draw(diagrams(dom=w, max_layers=2))
        b = draw(diagrams(dom=w, max_layers=2))
        lhs = Seq(a, counit_word(a.cod))
        rhs = Seq(b, counit_word(b.cod))
        rules.append(Rule(f"r{index}", lhs, rhs))
    return rules


def check_discrete_interfaces(scale: float) -> str:
    count = max(20, int(20 * scale))
    totals = {"pairs": 0}

    @_settings(count)
    @given(_rule_sets())
    def discrete(rules):
        try:
            pairs = enumerate_critical_pairs(rules)
        except InterfaceNotDiscreteError as exc:
            raise AssertionError(str(exc)) from exc
        totals["pairs"] += len(pairs)
        assert all(pair.interface.is_discrete() for pair in pairs)

    discrete()
    return f"{count} rule sets, {totals['pairs']} critical pairs, all interfaces discrete"


def _load_system(name: str):
    sig = parse_signature((SAMPLES / f"{name}.sig").read_text(encoding="utf-8"))
    rules = parse_rules((SAMPLES / f"{name}.rules").read_text(encoding="utf-8"), sig)
    return [rule_from_diagrams(r) for r in rules]


def check_confluence_verdicts(scale: float) -> str:
    lines = []
    for name, expected in (("assoc", CONFLUENT), ("branch", NOT_CONFLUENT)):
        rules = _load_system(name)
        report = check_confluence(rules, assert_terminating=True)
        assert report.verdict == expected, f"{name}: {report.verdict}, expected {expected}"

        for pair in report.pairs:
            fast = is_joinable(pair, rules, bound=None) is not None
            slow = brute_force_joinable(pair.first_result, pair.second_result, rules) is not None
            assert fast == slow, f"{name}: joinability disagrees with the exhaustive oracle"

        if expected == NOT_CONFLUENT:
            pair = report.counterexample
            names = {pair.first_rule.name, pair.second_rule.name}
            assert names == {"g_to_f", "g_to_h"}, f"{name}: unexpected counterexample {names}"
        lines.append(f"{name}: {report.verdict} ({len(report.pairs)} pairs)")
    return "; ".join(lines)


def check_complements(scale: float) -> str:
    count = int(100 * scale)
    rules = [rule_from_diagrams(r) for r in parse_rules(COMPLEMENT_RULES, MIXED)]
    totals = {"steps": 0}

    @_settings(count)
    @given(st.sampled_from(rules), diagrams(max_layers=3))
    def complete(rule, term):
        g = folded(term)
        assume(g.graph.node_count <= 6)
        steps = find_rewrite_steps(rule, g)
        assert all(validate_step(step) for step in steps)
        fast = [step.target for step in steps]
        slow = brute_force_rewrites(rule, g, max_extra=1)
        assert len(fast) == len(slow)
        assert all(any(same_up_to_iso(h, other) for other in slow) for h in fast)
        totals["steps"] += len(steps)

    complete()
    return f"{count} instances, {totals['steps']} validated steps"


def check_bipartite(scale: float) -> str:
    count = max(20, int(20 * scale))

    @_settings(count)
    @given(diagrams(SWITCH, max_layers=5))
    def bipartite(d):
        g = translate(d).carrier
        for edge in g.edges:
            for source in edge.sources:
                for target in edge.targets:
                    assert g.nodes[source] != g.nodes[target]

    bipartite()
    return f"{count} switch diagrams"


CHECKS = [
    ("Frobenius and compact closed axiom suite", check_axioms),
    ("Fullness: translate(extract(f)) is f", check_fullness),
    ("Functoriality of translate", check_functoriality),
    ("Homomorphism search against exhaustive enumeration", check_homomorphisms),
    ("Term rewriting through folded translations", check_bridge),
    ("Critical pair interfaces are discrete", check_discrete_interfaces),
    ("Reference confluence verdicts", check_confluence_verdicts),
    ("Pushout complements against exhaustive contexts", check_complements),
    ("Switch theory translates to bipartite graphs", check_bipartite),
]

# Seconds allowed per check, by number
TIME_LIMITS = {1: 5, 2: 60, 7: 120}


def run_check(number: int, scale: float, verbose: bool = False) -> bool:
    title, check = CHECKS[number - 1]
    print(f"\n[{number}] {title}")
    start = perf_counter()
    try:
        detail = check(scale)
    except Exception as exc:  # report and keep going
        print(f"  FAIL ({perf_counter() - start:.1f}s): {exc}")
        if verbose:
            traceback.print_exc()
        return False

    elapsed = perf_counter() - start
    limit = TIME_LIMITS.get(number)
    if limit is not None and elapsed > limit:
        print(f"  FAIL ({elapsed:.1f}s): over the {limit}s limit; {detail}")
        return False
    print(f"  PASS ({elapsed:.1f}s): {detail}")
    return True


def main():
    parser = argparse.ArgumentParser(
        description="Validate the rewriting engine against its acceptance checks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s --all              Run every check
  %(prog)s --check 7          Run the confluence verdicts only
  %(prog)s --all --scale 0.1  Quick run with fewer random instances
        """,
    )
    parser.add_argument("--all", action="store_true", help="Run every check")
    parser.add_argument("--check", type=int, choices=range(1, len(CHECKS) + 1), help="Run one check by number")
    parser.add_argument("--scale", type=float, default=1.0, help="Multiplier for the number of random instances")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging and tracebacks")

    args = parser.parse_args()

    if not args.all and args.check is None:
        parser.print_help()
        print("\nError: Must specify --all or --check")
        sys.exit(1)

    if args.verbose:
        set_level(logging.DEBUG)

    numbers = range(1, len(CHECKS) + 1) if args.all else [args.check]

    print("=" * 60)
    print("RUNNING ACCEPTANCE CHECKS")
    print("=" * 60)

    passed = failed = 0
    for number in numbers:
        if run_check(number, args.scale, args.verbose):
            passed += 1
        else:
            failed += 1

    print("\n" + "=" * 60)
    print(f"RESULTS: {passed} passed, {failed} failed")
    print("=" * 60)
    sys.exit(0 if failed == 0 else 1)


if __name__ == "__main__":
    main()
