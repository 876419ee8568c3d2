"""DPOI rewriting of hypergraphs with interfaces and confluence analysis."""

from .confluence import (
    CONFLUENT,
    INCONCLUSIVE,
    NOT_CONFLUENT,
    ConfluenceReport,
    CriticalPair,
    JoinabilityCertificate,
    JoinSearch,
    NormalForms,
    check_confluence,
    enumerate_critical_pairs,
    is_joinable,
    is_overlapping,
    normal_forms,
    search_join,
)
from .dpoi import (
    DpoRule,
    GluingCheck,
    GraphWithInterface,
    RewriteStep,
    apply_step,
    dangling_and_identification_check,
    describe_step,
    find_rewrite_steps,
    folded,
    rewrite_all,
    rule_from_diagrams,
    successor_terms,
    syntactic_step,
    unfold,
    validate_step,
)

__all__ = [
    # DPOI
    "DpoRule",
    "GraphWithInterface",
    "RewriteStep",
    "GluingCheck",
    "rule_from_diagrams",
    "find_rewrite_steps",
    "rewrite_all",
    "dangling_and_identification_check",
    "apply_step",
    "validate_step",
    "describe_step",
    "folded",
    "unfold",
    "syntactic_step",
    "successor_terms",
    # Confluence
    "CONFLUENT",
    "NOT_CONFLUENT",
    "INCONCLUSIVE",
    "CriticalPair",
    "JoinabilityCertificate",
    "JoinSearch",
    "NormalForms",
    "ConfluenceReport",
    "enumerate_critical_pairs",
    "is_overlapping",
    "search_join",
    "is_joinable",
    "normal_forms",
    "check_confluence",
]
