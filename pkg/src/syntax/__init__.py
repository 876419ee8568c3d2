"""Signatures and string-diagram terms of free hypergraph categories."""

from .diagram import (
    Comult,
    Counit,
    Diagram,
    Empty,
    Gen,
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
    dual,
    fold_term,
    id_word,
    is_frobenius_free,
    mult_word,
    par_all,
    permutation_term,
    seq_all,
    sym_word,
    type_of,
    unit_word,
)
from .parser import parse_diagram, parse_rules, print_diagram, print_rule
from .signature import (
    Colour,
    OperationSymbol,
    Signature,
    Word,
    parse_signature,
    print_signature,
    word_concat,
)

__all__ = [
    # Signatures
    "Colour",
    "OperationSymbol",
    "Signature",
    "Word",
    "parse_signature",
    "print_signature",
    "word_concat",
    # Terms
    "Diagram",
    "Gen",
    "Id",
    "Sym",
    "Mult",
    "Unit",
    "Comult",
    "Counit",
    "Empty",
    "Seq",
    "Par",
    "Rule",
    "type_of",
    "is_frobenius_free",
    "seq_all",
    "par_all",
    # Derived structure
    "id_word",
    "sym_word",
    "permutation_term",
    "mult_word",
    "unit_word",
    "comult_word",
    "counit_word",
    "cup",
    "cap",
    "fold_term",
    "dual",
    # Text
    "parse_diagram",
    "print_diagram",
    "parse_rules",
    "print_rule",
]
