"""Synthetic-context benchmarks: runtime comparison and error injection.

Everything here is deterministic under a fixed seed — reports carry counts
and ratios only, never wall-clock values, so repeated runs compare
byte-for-byte.  Timings live in `runtime_compare`, which is the one function
whose output is hardware-bound by nature.
"""

from __future__ import annotations

import csv
import io
import json
import random
import statistics
import time
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .bitset import BitSet
from .canonical import BaseTimeout, inspect_base
from .context import FormalContext
from .crucial import inspect_closure
from .implications import to_units


@dataclass(frozen=True)
class SynthSpec:
    num_objects: int
    num_attributes: int
    density: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must be within [0, 1]")
        if self.num_objects < 0 or self.num_attributes < 0:
            raise ValueError("shape must be nonnegative")


def gen_synthetic(spec: SynthSpec) -> FormalContext:
    """Random context with i.i.d. Bernoulli(density) cells.

    Cells are drawn row-major with one generator seeded from the spec, so a
    given spec always produces the identical context.
    """
    rng = random.Random(spec.seed)
    w = spec.num_attributes
    rows = []
    for _ in range(spec.num_objects):
        mask = 0
        for j in range(w):
            if rng.random() < spec.density:
                mask |= 1 << j
        rows.append(BitSet(w, mask))
    return FormalContext(
        tuple(f"g{i}" for i in range(spec.num_objects)),
        tuple(f"m{j}" for j in range(w)),
        tuple(rows),
    )


# -- runtime comparison -------------------------------------------------------


def _sweep(ctx: FormalContext, method: str,
           budget: Optional[float]) -> tuple[float, bool]:
    """One hold-one-out pass: inspect every row against the rest.

    Returns (elapsed seconds, censored).  A budget cuts the pass short; the
    partial elapsed time is then a lower bound on the true cost.
    """
    start = time.monotonic()
    deadline = None if budget is None else start + budget
    for name in ctx.object_names:
        reduced = ctx.without_object(name)
        attrs = ctx.row(ctx.object_index(name))
        if method == "closure":
            inspect_closure(reduced, attrs)
        elif method == "base":
            remaining = None
            if deadline is not None:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    return time.monotonic() - start, True
            try:
                inspect_base(reduced, attrs, budget=remaining)
            except BaseTimeout:
                return time.monotonic() - start, True
        else:
            raise ValueError(f"unknown method {method!r}")
        if deadline is not None and time.monotonic() > deadline:
            return time.monotonic() - start, True
    return time.monotonic() - start, False


def runtime_compare(
    specs: Sequence[SynthSpec],
    methods: Sequence[str] = ("closure", "base"),
    budget: Optional[float] = None,
    repetitions: int = 3,
) -> list[dict]:
    """Median-of-n hold-one-out inspection timings per spec and method.

    Each row: spec fields, method, seconds (median over repetitions) and
    censored (true when any repetition hit the budget).
    """
    out = []
    for spec in specs:
        ctx = gen_synthetic(spec)
        for method in methods:
            times = []
            censored = False
            for _ in range(repetitions):
                elapsed, cut = _sweep(ctx, method, budget)
                times.append(elapsed)
                censored = censored or cut
                if cut:
                    break  # no point repeating a run that exhausts the budget
            out.append({
                **asdict(spec),
                "method": method,
                "seconds": statistics.median(times),
                "censored": censored,
            })
    return out


# -- error injection ----------------------------------------------------------


@dataclass(frozen=True)
class InjectionReport:
    errors_per_object: int
    trials: int
    errors_found: int
    found_ratio: float
    total_implications: int
    implications_per_object: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        fields = list(asdict(self))
        writer.writerow(fields)
        writer.writerow([getattr(self, f) for f in fields])
        return buf.getvalue()


def _covered(imp, flips_added: BitSet, flips_removed: BitSet,
             complement_space: bool) -> bool:
    """Does one implication name every flip with the correcting polarity?

    In the original context a wrongly added attribute must appear negated and
    a wrongly removed one positively; in the complement context the roles
    swap, since presence there encodes absence in the original.
    """
    if complement_space:
        need_pos, need_neg = flips_added, flips_removed
    else:
        need_pos, need_neg = flips_removed, flips_added
    return (need_pos.issubset(imp.positives)
            and need_neg.issubset(imp.negatives))


def error_injection_experiment(
    ctx: FormalContext,
    n_errors: int,
    trials: int,
    seed: int,
) -> InjectionReport:
    """Corrupt known-good rows and count how often questions expose the edit.

    Per trial: draw an object uniformly, remove it from the context, flip
    ``n_errors`` distinct attribute bits of its row, then inspect the
    corrupted row against both the reduced context and its complement.  The
    trial counts as found when a single generated implication covers every
    flipped attribute with the correcting polarity.
    """
    if not 1 <= n_errors <= ctx.num_attributes:
        raise ValueError("n_errors must be within [1, |M|]")
    if ctx.num_objects == 0:
        raise ValueError("context has no objects")
    rng = random.Random(seed)
    w = ctx.num_attributes
    found = 0
    total_units = 0
    for _ in range(trials):
        name = ctx.object_names[rng.randrange(ctx.num_objects)]
        row = ctx.row(ctx.object_index(name))
        reduced = ctx.without_object(name)
        flip_mask = 0
        for j in rng.sample(range(w), n_errors):
            flip_mask |= 1 << j
        corrupted = BitSet(w, row.mask ^ flip_mask)
        flips_added = BitSet(w, flip_mask & corrupted.mask)
        flips_removed = BitSet(w, flip_mask & ~corrupted.mask)
        original = inspect_closure(reduced, corrupted)
        complement = inspect_closure(reduced.complement(), corrupted.invert())
        total_units += sum(len(to_units(i)) for i in original)
        total_units += sum(len(to_units(i)) for i in complement)
        if (any(_covered(i, flips_added, flips_removed, False)
                for i in original)
                or any(_covered(i, flips_added, flips_removed, True)
                       for i in complement)):
            found += 1
    return InjectionReport(
        errors_per_object=n_errors,
        trials=trials,
        errors_found=found,
        found_ratio=found / trials if trials else 0.0,
        total_implications=total_units,
        implications_per_object=total_units / trials if trials else 0.0,
    )
