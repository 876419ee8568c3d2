"""Shared constants for hyperrewrite.

Single source of truth for search bounds, exit codes and printing symbols.
Imported by the rewriting modules, the CLI and the validation script.
"""

# Rewrite steps explored from each side of a critical pair when no bound is given
DEFAULT_STEP_BOUND = 8

# Rewrite steps explored by normal form search when no bound is given
DEFAULT_NORMAL_FORM_BOUND = 32

# Hard cap on states kept by one breadth-first search (guards exhaustive mode)
MAX_SEARCH_STATES = 20_000

# Environment variable overriding DEFAULT_STEP_BOUND for the CLI
BOUND_ENV_VAR = "HYPERREWRITE_BOUND"

EPSILON_SYMBOL = "ε"

# CLI exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2  # DIFFERENT / NOT_CONFLUENT
EXIT_INCONCLUSIVE = 3
