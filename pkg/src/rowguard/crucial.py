"""Question generation against a candidate row, polynomial in context size.

Instead of materializing an implication base, the inspector intersects the
candidate with every existing row and keeps the inclusion-maximal traces.
Each maximal trace yields one implication whose conclusion states exactly how
the candidate deviates from the rows that share that trace: attributes the
witnesses all carry but the candidate lacks (positive), and candidate
attributes outside the trace (negated).
"""

from __future__ import annotations

from typing import Sequence

from .bitset import BitSet
from .context import FormalContext
from .implications import Implication


def candidates(ctx: FormalContext, attrs: BitSet) -> list[BitSet]:
    """Intersections of ``attrs`` with each row, deduplicated.

    Order is by first witnessing row, which downstream code preserves so
    question lists stay stable across runs.
    """
    seen: set[int] = set()
    out: list[BitSet] = []
    for row in ctx.rows:
        trace = attrs & row
        if trace.mask not in seen:
            seen.add(trace.mask)
            out.append(trace)
    return out


def max_candidates(fam: Sequence[BitSet]) -> list[BitSet]:
    """Inclusion-maximal members of a trace family, input order kept."""
    uniq: list[BitSet] = []
    masks: set[int] = set()
    for b in fam:
        if b.mask not in masks:
            masks.add(b.mask)
            uniq.append(b)
    return [
        b
        for b in uniq
        if not any(b is not other and b.issubset(other) for other in uniq)
    ]


def inspect_closure(ctx: FormalContext, attrs: BitSet) -> list[Implication]:
    """Implications questioning ``attrs``, one per maximal row trace.

    For a maximal trace B the conclusion is ``closure(B) - attrs`` positively
    and ``attrs - B`` negated; traces where both parts vanish ask nothing and
    are dropped.  A candidate that is already an intent of the context
    therefore produces no questions, while a candidate no row fully supports
    gets one question per maximal trace.
    """
    out = []
    for b in max_candidates(candidates(ctx, attrs)):
        pos = ctx.closure(b) - attrs
        neg = attrs - b
        if pos or neg:
            out.append(Implication(b, pos, neg))
    return out


def max_intent_questions(
    ctx: FormalContext, attrs: BitSet
) -> tuple[list[Implication], list[Implication]]:
    """Checks for a candidate no existing row supports in full.

    Returns two groups, both empty when ``attrs`` has a nonempty extent:

    * extensions ``attrs -> m`` for each absent attribute, probing whether
      the candidate should grow toward the full attribute set, and
    * retractions ``attrs - a -> !a`` for each member whose removal still
      leaves the extent empty, probing whether ``a`` itself is the intruder.

    Neither kind has a supporting row, so answers have to come from domain
    knowledge rather than the data; callers surface them separately.
    """
    if ctx.extent(attrs):
        return [], []
    w = ctx.num_attributes
    empty = BitSet.empty(w)
    extensions = [
        Implication(attrs, BitSet(w, 1 << j), empty)
        for j in BitSet.full(w) - attrs
    ]
    retractions = []
    for a in attrs:
        rest = attrs.remove(a)
        if not ctx.extent(rest):
            retractions.append(Implication(rest, empty, BitSet(w, 1 << a)))
    return extensions, retractions


def incremental_questions(
    ctx: FormalContext, new_row: BitSet, attrs: BitSet
) -> list[Implication]:
    """Questions about ``attrs`` added by appending ``new_row`` to ``ctx``.

    Only the trace ``attrs & new_row`` can be new.  If some existing row
    already covers it the question set is unchanged; otherwise the appended
    row is the sole witness, so its intent stands in for the closure.
    """
    trace = attrs & new_row
    for row in ctx.rows:
        if trace.issubset(row):
            return []
    pos = new_row - attrs
    neg = attrs - new_row
    if not (pos or neg):
        return []
    return [Implication(trace, pos, neg)]
