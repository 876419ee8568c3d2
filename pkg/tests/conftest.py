"""
Pytest fixtures for hyperrewrite tests.

Provides the small theories used throughout: the two-colour theory with
o1 : c -> c d and o2 : d d -> c, the bipartite switch theory, a three-colour
theory for the axiom suite, and unary rewriting systems.
"""

import pytest

from src.rewriting.confluence import ConfluenceReport, check_confluence
from src.rewriting.dpoi import DpoRule, rule_from_diagrams
from src.syntax.parser import parse_rules
from src.syntax.signature import Signature, parse_signature

TWOCOLOUR_SIGNATURE = """\
colour c
colour d
op o1 : c -> c d
op o2 : d d -> c
"""

TWOCOLOUR_RULES = """\
rule shrink : o2 ; o1 ; (id[c] + counit[d]) => o2
rule loop : o1 ; (counit[c] + id[d]) ; comult[d] ; o2 => id[c]
"""

SWITCH_SIGNATURE = """\
colour r
colour g
op gb : g -> r
op bg : r -> g
"""

TRICOLOUR_SIGNATURE = """\
colour a
colour b
colour e
op f : a b -> e
"""

UNARY_SIGNATURE = """\
colour c
op f : c -> c
op g : c -> c
op h : c -> c
"""

# g rewrites two ways; f and h are distinct normal forms
BRANCH_RULES = """\
rule g_to_f : g => f
rule g_to_h : g => h
"""

# Same branching, but h -> f closes the diamond
DIAMOND_RULES = BRANCH_RULES + "rule h_to_f : h => f\n"

ASSOC_SIGNATURE = """\
colour c
op m : c c -> c
"""

ASSOC_RULES = "rule assoc : (m + id[c]) ; m => (id[c] + m) ; m\n"


@pytest.fixture
def twocolour_sig() -> Signature:
    return parse_signature(TWOCOLOUR_SIGNATURE)


@pytest.fixture
def twocolour_rules(twocolour_sig: Signature) -> list[DpoRule]:
    return [rule_from_diagrams(r) for r in parse_rules(TWOCOLOUR_RULES, twocolour_sig)]


@pytest.fixture
def switch_sig() -> Signature:
    return parse_signature(SWITCH_SIGNATURE)


@pytest.fixture
def tri_sig() -> Signature:
    return parse_signature(TRICOLOUR_SIGNATURE)


@pytest.fixture
def unary_sig() -> Signature:
    return parse_signature(UNARY_SIGNATURE)


@pytest.fixture
def branch_rules(unary_sig: Signature) -> list[DpoRule]:
    return [rule_from_diagrams(r) for r in parse_rules(BRANCH_RULES, unary_sig)]


@pytest.fixture
def diamond_rules(unary_sig: Signature) -> list[DpoRule]:
    return [rule_from_diagrams(r) for r in parse_rules(DIAMOND_RULES, unary_sig)]


@pytest.fixture
def assoc_sig() -> Signature:
    return parse_signature(ASSOC_SIGNATURE)


@pytest.fixture
def workspace_files(tmp_path):
    """Signature and rule files on disk, as the CLI reads them."""
    files = {
        "twocolour.sig": TWOCOLOUR_SIGNATURE,
        "twocolour.rules": TWOCOLOUR_RULES,
        "unary.sig": UNARY_SIGNATURE,
        "branch.rules": BRANCH_RULES,
        "diamond.rules": DIAMOND_RULES,
        "switch.sig": SWITCH_SIGNATURE,
    }
    for name, text in files.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return tmp_path


@pytest.fixture
def assoc_rules(assoc_sig: Signature) -> list[DpoRule]:
    return [rule_from_diagrams(r) for r in parse_rules(ASSOC_RULES, assoc_sig)]


@pytest.fixture(scope="session")
def assoc_report() -> ConfluenceReport:
    """Confluence report for associativity, computed once per session."""
    sig = parse_signature(ASSOC_SIGNATURE)
    rules = [rule_from_diagrams(r) for r in parse_rules(ASSOC_RULES, sig)]
    return check_confluence(rules, assert_terminating=True)
