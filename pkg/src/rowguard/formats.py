"""Readers and writers for context files: Burmeister .cxt, CSV, FIMI.

The .cxt writer is the canonical serialization; reading what it wrote gives
back an equal context, and writing what it read gives back identical bytes.
"""

from __future__ import annotations

import csv
import io

from .bitset import BitSet
from .context import FormalContext


class ParseError(ValueError):
    """Input could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def read_cxt(text: str) -> FormalContext:
    """Parse Burmeister format.

    Layout: ``B``, blank, object count, attribute count, blank, object
    names, attribute names, then one ``X``/``.`` row per object.
    """
    lines = text.split("\n")

    def need(i: int) -> str:
        if i >= len(lines):
            raise ParseError("unexpected end of file", len(lines))
        return lines[i]

    if need(0).strip() != "B":
        raise ParseError("expected header 'B'", 1)
    if need(1).strip():
        raise ParseError("expected blank line after header", 2)
    try:
        num_objects = int(need(2))
        num_attributes = int(need(3))
    except ValueError:
        raise ParseError("expected object and attribute counts", 3) from None
    if num_objects < 0 or num_attributes < 0:
        raise ParseError("counts must be nonnegative", 3)
    if need(4).strip():
        raise ParseError("expected blank line after counts", 5)
    pos = 5
    object_names = [need(pos + i) for i in range(num_objects)]
    pos += num_objects
    attribute_names = [need(pos + j) for j in range(num_attributes)]
    pos += num_attributes
    rows = []
    for i in range(num_objects):
        line = need(pos + i)
        if len(line) != num_attributes:
            raise ParseError(
                f"row has {len(line)} cells, expected {num_attributes}", pos + i + 1
            )
        mask = 0
        for j, ch in enumerate(line):
            if ch == "X":
                mask |= 1 << j
            elif ch != ".":
                raise ParseError(f"bad cell {ch!r} (column {j + 1})", pos + i + 1)
        rows.append(BitSet(num_attributes, mask))
    for extra in lines[pos + num_objects:]:
        if extra.strip():
            raise ParseError("trailing content after last row",
                             lines.index(extra) + 1)
    try:
        return FormalContext(object_names, attribute_names, rows)
    except ValueError as e:
        raise ParseError(str(e)) from None


def write_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(ctx.num_objects), str(ctx.num_attributes), ""]
    out.extend(ctx.object_names)
    out.extend(ctx.attribute_names)
    for r in ctx.rows:
        out.append("".join("X" if j in r else "." for j in range(ctx.num_attributes)))
    return "\n".join(out) + "\n"


def read_csv(text: str) -> FormalContext:
    """Parse a 0/1 table: first row attribute names, first column object names.

    The top-left corner cell is ignored.
    """
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise ParseError("empty CSV", 1)
    attribute_names = [c.strip() for c in table[0][1:]]
    object_names = []
    rows = []
    width = len(attribute_names)
    for i, record in enumerate(table[1:], start=2):
        if len(record) != width + 1:
            raise ParseError(
                f"row has {len(record)} cells, expected {width + 1}", i
            )
        object_names.append(record[0].strip())
        mask = 0
        for j, cell in enumerate(record[1:]):
            v = cell.strip()
            if v == "1":
                mask |= 1 << j
            elif v != "0":
                raise ParseError(f"bad cell {cell!r} (column {j + 2})", i)
        rows.append(BitSet(width, mask))
    try:
        return FormalContext(object_names, attribute_names, rows)
    except ValueError as e:
        raise ParseError(str(e)) from None


def write_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(ctx.attribute_names))
    for name, r in zip(ctx.object_names, ctx.rows):
        writer.writerow([name] + ["1" if j in r else "0"
                                  for j in range(ctx.num_attributes)])
    return buf.getvalue()


def read_fimi(text: str, num_attributes: int | None = None) -> FormalContext:
    """Parse transaction lines of space-separated attribute indices.

    Names are generated: objects ``g0..``, attributes ``m0..``.  The
    attribute count defaults to one past the largest index seen.
    """
    raw_rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        items = line.split()
        row = []
        for item in items:
            try:
                v = int(item)
            except ValueError:
                raise ParseError(f"bad attribute index {item!r}", lineno) from None
            if v < 0:
                raise ParseError(f"negative attribute index {v}", lineno)
            row.append(v)
        raw_rows.append(row)
    width = num_attributes
    if width is None:
        width = 1 + max((v for row in raw_rows for v in row), default=-1)
    rows = []
    for lineno, row in enumerate(raw_rows, start=1):
        bad = [v for v in row if v >= width]
        if bad:
            raise ParseError(f"attribute index {bad[0]} out of range "
                             f"(width {width})", lineno)
        rows.append(BitSet.from_indices(width, row))
    object_names = [f"g{i}" for i in range(len(rows))]
    attribute_names = [f"m{j}" for j in range(width)]
    return FormalContext(object_names, attribute_names, rows)


def write_fimi(ctx: FormalContext) -> str:
    return "".join(" ".join(str(j) for j in r) + "\n" for r in ctx.rows)


READERS = {"cxt": read_cxt, "csv": read_csv, "fimi": read_fimi}


def read_context(text: str, fmt: str) -> FormalContext:
    try:
        reader = READERS[fmt]
    except KeyError:
        raise ParseError(f"unknown format {fmt!r}") from None
    return reader(text)
