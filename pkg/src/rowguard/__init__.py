"""Detect and interactively correct erroneous rows in binary data tables.

A formal context holds the trusted rows.  For a new candidate row the package
generates implication questions — either from inclusion-maximal row traces
(polynomial) or from the canonical implication base (worst-case exponential,
budgeted) — that an expert answers to accept or reject each suggested
correction.  A session engine drives the loop, an HTTP service exposes it,
and a benchmark harness measures runtime and detection quality.
"""

from .bench import (
    InjectionReport,
    SynthSpec,
    error_injection_experiment,
    gen_synthetic,
    runtime_compare,
)
from .bitset import BitSet
from .canonical import BaseTimeout, canonical_base, inspect_base, pseudo_intents
from .context import CandidateObject, FormalContext
from .crucial import (
    candidates,
    incremental_questions,
    inspect_closure,
    max_candidates,
    max_intent_questions,
)
from .fixtures import error_cases, quadrangles
from .formats import (
    ParseError,
    read_csv,
    read_cxt,
    read_fimi,
    write_csv,
    write_cxt,
    write_fimi,
)
from .implications import (
    Implication,
    Inference,
    Literal,
    forward_closure,
    holds,
    parse_implication,
    render_implication,
    respects,
    support,
    to_units,
)
from .session import (
    Answer,
    Question,
    Session,
    SessionStateError,
    open_session,
)

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "BaseTimeout",
    "BitSet",
    "CandidateObject",
    "FormalContext",
    "Implication",
    "Inference",
    "InjectionReport",
    "Literal",
    "ParseError",
    "Question",
    "Session",
    "SessionStateError",
    "SynthSpec",
    "candidates",
    "canonical_base",
    "error_cases",
    "error_injection_experiment",
    "forward_closure",
    "gen_synthetic",
    "holds",
    "incremental_questions",
    "inspect_base",
    "inspect_closure",
    "max_candidates",
    "max_intent_questions",
    "open_session",
    "parse_implication",
    "pseudo_intents",
    "quadrangles",
    "read_csv",
    "read_cxt",
    "read_fimi",
    "render_implication",
    "respects",
    "runtime_compare",
    "support",
    "to_units",
    "write_csv",
    "write_cxt",
    "write_fimi",
]
