"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the package's bitset machinery: everything is
frozensets and explicit loops, slow but obviously faithful to the
definitions, so the fast implementations are checked against something that
cannot share their bugs.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from rowguard.bitset import BitSet
from rowguard.context import FormalContext
from rowguard.fixtures import error_cases, quadrangles


@pytest.fixture(scope="session")
def quad() -> FormalContext:
    return quadrangles()


@pytest.fixture(scope="session")
def cases() -> dict[str, BitSet]:
    return error_cases()


# -- naive set-based context ---------------------------------------------------


def rows_as_sets(ctx: FormalContext) -> list[frozenset[int]]:
    return [frozenset(r) for r in ctx.rows]


def naive_extent(rows: list[frozenset[int]], attrs: frozenset[int]) -> frozenset[int]:
    return frozenset(i for i, r in enumerate(rows) if attrs <= r)


def naive_intent(rows: list[frozenset[int]], width: int,
                 objs: frozenset[int]) -> frozenset[int]:
    out = frozenset(range(width))
    for i in objs:
        out &= rows[i]
    return out


def naive_closure(rows: list[frozenset[int]], width: int,
                  attrs: frozenset[int]) -> frozenset[int]:
    return naive_intent(rows, width, naive_extent(rows, attrs))


def subsets(universe: frozenset[int]):
    items = sorted(universe)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def brute_pseudo_intents(ctx: FormalContext) -> set[frozenset[int]]:
    """All pseudo-intents by the recursive definition, smallest first."""
    rows = rows_as_sets(ctx)
    w = ctx.num_attributes
    pseudo: set[frozenset[int]] = set()
    for p in sorted(subsets(frozenset(range(w))), key=len):
        if naive_closure(rows, w, p) == p:
            continue
        if all(naive_closure(rows, w, q) <= p for q in pseudo if q < p):
            pseudo.add(p)
    return pseudo


def brute_unit_questions(
    ctx: FormalContext, attrs: BitSet
) -> set[tuple[frozenset[int], int, bool]]:
    """Every valid nonempty-support unit implication a candidate breaks.

    Returns triples (premise, attribute, positive) with premise ⊆ attrs,
    concluding an attribute the candidate lacks (positive) or carries
    (negated), holding in the context, with at least one supporting row.
    """
    rows = rows_as_sets(ctx)
    w = ctx.num_attributes
    a_set = frozenset(attrs)
    out = set()
    for premise in subsets(a_set):
        holders = [r for r in rows if premise <= r]
        for d in range(w):
            if d not in a_set:
                # positive conclusion: candidate is missing d
                if all(d in r for r in holders) and any(
                        premise | {d} <= r for r in rows):
                    out.add((premise, d, True))
            elif d not in premise:
                # negative conclusion: candidate should drop d
                if all(d not in r for r in holders) and any(
                        premise <= r and d not in r for r in rows):
                    out.add((premise, d, False))
    return out


def random_context(rng: random.Random, max_objects: int = 8,
                   max_attributes: int = 6) -> FormalContext:
    n = rng.randint(1, max_objects)
    w = rng.randint(1, max_attributes)
    rows = [BitSet(w, rng.getrandbits(w)) for _ in range(n)]
    return FormalContext(
        [f"g{i}" for i in range(n)],
        [f"m{j}" for j in range(w)],
        rows,
    )


def units_as_triples(implications) -> set[tuple[int, int, bool]]:
    """Flatten merged implications to (premise_mask, attribute, polarity)."""
    out = set()
    for imp in implications:
        for j in imp.positives:
            out.add((imp.premise.mask, j, True))
        for j in imp.negatives:
            out.add((imp.premise.mask, j, False))
    return out
