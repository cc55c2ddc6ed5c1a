"""Minimal implication base of a context via lectic enumeration.

Pseudo-closed premises are generated in lectic order; each contributes one
implication ``P -> P''``.  The resulting set is the unique minimum-size base
for the implications valid in the context.  Enumeration cost is exponential
in the worst case, so every entry point takes a wall-clock budget.
"""

from __future__ import annotations

import time
from typing import Iterator, Optional, Sequence

from .bitset import BitSet
from .context import FormalContext
from .implications import Implication


class BaseTimeout(Exception):
    """Raised when base computation exceeds its wall-clock budget."""

    def __init__(self, budget: float, produced: int):
        super().__init__(
            f"base computation exceeded {budget:.3f}s after {produced} implications"
        )
        self.budget = budget
        self.produced = produced


def _lclose(pairs: Sequence[tuple[BitSet, BitSet]], start: BitSet) -> BitSet:
    """Close ``start`` under the implications, firing P -> C only when P is a
    proper subset of the current set.

    The proper-subset rule is what makes the enumeration produce pseudo-closed
    sets rather than closed ones: a candidate never absorbs its own conclusion.
    """
    y = start.mask
    changed = True
    while changed:
        changed = False
        for p, c in pairs:
            if p.mask & ~y:
                continue
            if p.mask == y:
                continue
            add = c.mask & ~y
            if add:
                y |= add
                changed = True
    return BitSet(start.width, y)


def _next_preclosed(
    ctx: FormalContext,
    pairs: Sequence[tuple[BitSet, BitSet]],
    current: BitSet,
) -> Optional[BitSet]:
    """Smallest L-closed set lectically above ``current``, or None."""
    w = ctx.num_attributes
    for j in range(w - 1, -1, -1):
        bit = 1 << j
        if current.mask & bit:
            continue
        candidate = BitSet(w, (current.mask & (bit - 1)) | bit)
        closed = _lclose(pairs, candidate)
        # lectic successor test: closing must not add attributes below j
        if closed.mask & ~candidate.mask & (bit - 1):
            continue
        return closed
    return None


def pseudo_intents(
    ctx: FormalContext, budget: Optional[float] = None
) -> Iterator[tuple[BitSet, BitSet]]:
    """Yield ``(pseudo_intent, its_closure)`` pairs in lectic order."""
    deadline = None if budget is None else time.monotonic() + budget
    w = ctx.num_attributes
    pairs: list[tuple[BitSet, BitSet]] = []
    produced = 0
    y: Optional[BitSet] = _lclose(pairs, BitSet.empty(w))
    while y is not None:
        if deadline is not None and time.monotonic() > deadline:
            raise BaseTimeout(budget or 0.0, produced)
        closure = ctx.closure(y)
        if closure != y:
            pairs.append((y, closure))
            produced += 1
            yield y, closure
        if y.mask == BitSet.full(w).mask:
            return
        y = _next_preclosed(ctx, pairs, y)


def canonical_base(
    ctx: FormalContext, budget: Optional[float] = None
) -> list[Implication]:
    """The Duquenne-Guigues base: one implication per pseudo-intent."""
    out = []
    empty = BitSet.empty(ctx.num_attributes)
    for p, c in pseudo_intents(ctx, budget=budget):
        out.append(Implication(p, c, empty))
    return out


def inspect_base(
    ctx: FormalContext,
    candidate: BitSet,
    budget: Optional[float] = None,
) -> list[Implication]:
    """Base implications the candidate row breaks, in base order.

    An implication is returned untouched when its premise is contained in
    ``candidate`` but its conclusion is not; a closed candidate breaks
    nothing, since closed sets are exactly the models of the base.
    """
    empty = BitSet.empty(ctx.num_attributes)
    out = []
    for p, c in pseudo_intents(ctx, budget=budget):
        if p.issubset(candidate) and not c.issubset(candidate):
            out.append(Implication(p, c, empty))
    return out
