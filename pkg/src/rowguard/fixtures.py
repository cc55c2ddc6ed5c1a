"""Bundled demo contexts.

``quadrangles()`` is a small geometry table used throughout the tests and
docs; ``error_cases()`` holds four deliberately corrupted candidate rows for
it, keyed ``Case1`` .. ``Case4``.
"""

from __future__ import annotations

from importlib import resources

from .bitset import BitSet
from .context import FormalContext
from .formats import read_cxt


def _load(name: str) -> FormalContext:
    text = resources.files("rowguard.data").joinpath(name).read_text()
    return read_cxt(text)


def quadrangles() -> FormalContext:
    return _load("quadrangles.cxt")


def error_cases() -> dict[str, BitSet]:
    ctx = _load("tentative_errors.cxt")
    return {name: ctx.row(i) for i, name in enumerate(ctx.object_names)}
