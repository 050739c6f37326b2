"""Executable Fraisse theory for categories of finite structures."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    FINGRAPH,
    FINGRAPH_HOM,
    FINLINORD,
    FINSET,
    Arrow,
    Category,
    FinStructure,
    chain,
    compose,
    enumerate_objects,
    finset,
    get_category,
    graph,
    hom,
    identity,
    opposite,
)
from .generic import back_and_forth, build_fraisse, embed_sequence, materialize_limit  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .properties import check_amalgamation, check_jep, find_pushout, is_dominating  # noqa: E402
from .sequences import InductiveSequence, check_A, check_E, check_U, validate_sequence  # noqa: E402

__all__ = [
    "BACKEND",
    "FINGRAPH",
    "FINGRAPH_HOM",
    "FINLINORD",
    "FINSET",
    "Arrow",
    "Category",
    "FinStructure",
    "InductiveSequence",
    "back_and_forth",
    "build_fraisse",
    "chain",
    "check_A",
    "check_E",
    "check_U",
    "check_amalgamation",
    "check_jep",
    "compose",
    "embed_sequence",
    "enumerate_objects",
    "find_pushout",
    "finset",
    "get_category",
    "graph",
    "hom",
    "identity",
    "is_dominating",
    "materialize_limit",
    "opposite",
    "validate_sequence",
]
