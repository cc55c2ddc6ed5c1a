"""Attribute implications with positive premises and signed conclusions.

An implication ``A -> b1, !b2`` claims that any row containing all of ``A``
also contains ``b1`` and lacks ``b2``.  Premises are positive only; negation
is allowed in conclusions, which is exactly the fragment the questioning
engine needs (a row either misses an attribute it should have, or carries one
it should not).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitset import BitSet
from .context import FormalContext


@dataclass(frozen=True)
class Literal:
    attribute: int
    positive: bool


class Implication:
    """``premise -> positives, !negatives`` over a fixed attribute width.

    Normalization drops premise attributes from the positive conclusion; an
    attribute appearing in both conclusion polarities is rejected.
    """

    __slots__ = ("premise", "positives", "negatives")

    def __init__(self, premise: BitSet, positives: BitSet, negatives: BitSet):
        if premise.width != positives.width or premise.width != negatives.width:
            raise ValueError("implication parts must share one width")
        if positives.mask & negatives.mask:
            raise ValueError("attribute concluded with both polarities")
        self.premise = premise
        self.positives = positives - premise
        self.negatives = negatives

    @property
    def width(self) -> int:
        return self.premise.width

    def conclusion_literals(self) -> tuple[Literal, ...]:
        return tuple(
            [Literal(j, True) for j in self.positives]
            + [Literal(j, False) for j in self.negatives]
        )

    def key(self) -> tuple[int, int, int]:
        return (self.premise.mask, self.positives.mask, self.negatives.mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Implication)
            and self.width == other.width
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.width,) + self.key())

    def __repr__(self) -> str:
        parts = [str(j) for j in self.positives] + [f"!{j}" for j in self.negatives]
        return f"Implication({list(self.premise)} -> {', '.join(parts)})"


def respects(row: BitSet, imp: Implication) -> bool:
    """True unless ``row`` contains the premise but breaks the conclusion."""
    if not imp.premise.issubset(row):
        return True
    return imp.positives.issubset(row) and imp.negatives.isdisjoint(row)


def holds(ctx: FormalContext, imp: Implication) -> bool:
    return all(respects(r, imp) for r in ctx.rows)


def support(ctx: FormalContext, imp: Implication) -> BitSet:
    """Objects witnessing the implication: rows containing premise and
    positive conclusions while avoiding every negated attribute."""
    m = ctx.extent(imp.premise | imp.positives).mask
    for j in imp.negatives:
        m &= ~ctx._columns[j]
    return BitSet(ctx.num_objects, m)


def to_units(imp: Implication) -> list[Implication]:
    """Split into one implication per conclusion literal.

    Order: positive conclusions by attribute index, then negative ones.
    """
    w = imp.width
    empty = BitSet.empty(w)
    out = [Implication(imp.premise, BitSet(w, 1 << j), empty)
           for j in imp.positives]
    out += [Implication(imp.premise, empty, BitSet(w, 1 << j))
            for j in imp.negatives]
    return out


@dataclass(frozen=True)
class Inference:
    """Result of forward chaining: derived literals plus any clash."""

    positives: BitSet
    negatives: BitSet
    conflicts: BitSet

    @property
    def contradictory(self) -> bool:
        return bool(self.conflicts)

    def literals(self) -> frozenset[Literal]:
        return frozenset(
            [Literal(j, True) for j in self.positives]
            + [Literal(j, False) for j in self.negatives]
        )


def forward_closure(
    implications: Sequence[Implication], start: BitSet
) -> Inference:
    """Chase ``start`` through the implications to a fixpoint.

    Linear in total implication size: each implication keeps a count of
    premise attributes not yet derived and fires when it hits zero.  Derived
    negative literals accumulate but never unblock premises.  An attribute
    derived with both polarities is reported in ``conflicts``, not swallowed.
    """
    w = start.width
    for imp in implications:
        if imp.width != w:
            raise ValueError("implication width does not match start set")
    remaining = []
    by_attr: dict[int, list[int]] = {}
    pos = start.mask
    neg = 0
    queue = list(start)
    for idx, imp in enumerate(implications):
        missing = imp.premise.mask & ~pos
        remaining.append(missing.bit_count())
        for j in BitSet(w, missing):
            by_attr.setdefault(j, []).append(idx)
        if not missing:
            neg |= imp.negatives.mask
            new = imp.positives.mask & ~pos
            pos |= new
            queue.extend(BitSet(w, new))
    while queue:
        a = queue.pop()
        for idx in by_attr.get(a, ()):
            remaining[idx] -= 1
            if remaining[idx] == 0:
                imp = implications[idx]
                neg |= imp.negatives.mask
                new = imp.positives.mask & ~pos
                pos |= new
                queue.extend(BitSet(w, new))
    return Inference(BitSet(w, pos), BitSet(w, neg), BitSet(w, pos & neg))


# -- text form ---------------------------------------------------------------


def render_implication(imp: Implication, attribute_names: Sequence[str]) -> str:
    """``p1, p2 -> c1, !c2`` with attribute names; parse_implication inverts it."""
    if imp.width != len(attribute_names):
        raise ValueError("attribute name count does not match width")
    left = ", ".join(attribute_names[j] for j in imp.premise)
    right = ", ".join(
        [attribute_names[j] for j in imp.positives]
        + ["!" + attribute_names[j] for j in imp.negatives]
    )
    return f"{left} -> {right}".strip()


def parse_implication(text: str, attribute_names: Sequence[str]) -> Implication:
    index = {n: j for j, n in enumerate(attribute_names)}
    w = len(attribute_names)

    def resolve(name: str) -> int:
        try:
            return index[name]
        except KeyError:
            raise ValueError(f"unknown attribute {name!r}") from None

    if "->" not in text:
        raise ValueError("missing '->'")
    left, right = text.split("->", 1)
    premise = BitSet.from_indices(
        w, (resolve(p.strip()) for p in left.split(",") if p.strip())
    )
    pos = neg = 0
    for item in right.split(","):
        item = item.strip()
        if not item:
            continue
        if item.startswith("!"):
            neg |= 1 << resolve(item[1:].strip())
        else:
            pos |= 1 << resolve(item)
    return Implication(premise, BitSet(w, pos), BitSet(w, neg))
