"""Formal contexts: binary object/attribute tables with derivation operators.

The two derivation maps (extent of an attribute set, intent of an object set)
form a Galois connection, and their composition is the closure operator that
drives everything else in this package.  A context is immutable; editing
operations return new contexts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitset import BitSet


@dataclass(frozen=True)
class CandidateObject:
    """A row under review: a name plus the attribute set it claims."""

    name: str
    intent: BitSet


class FormalContext:
    """A binary table over named objects (rows) and attributes (columns).

    Duplicate row contents are allowed; duplicate names are not.  Empty
    contexts (no objects, no attributes, or both) are legal.
    """

    __slots__ = ("object_names", "attribute_names", "rows", "_columns",
                 "_attr_index", "_obj_index")

    def __init__(
        self,
        object_names: Sequence[str],
        attribute_names: Sequence[str],
        rows: Sequence[BitSet],
    ):
        object_names = tuple(object_names)
        attribute_names = tuple(attribute_names)
        rows = tuple(rows)
        if len(set(object_names)) != len(object_names):
            raise ValueError("duplicate object names")
        if len(set(attribute_names)) != len(attribute_names):
            raise ValueError("duplicate attribute names")
        if len(rows) != len(object_names):
            raise ValueError("row count does not match object names")
        width = len(attribute_names)
        for r in rows:
            if r.width != width:
                raise ValueError(f"row width {r.width} does not match "
                                 f"{width} attributes")
        self.object_names = object_names
        self.attribute_names = attribute_names
        self.rows = rows
        self._attr_index = {n: j for j, n in enumerate(attribute_names)}
        self._obj_index = {n: i for i, n in enumerate(object_names)}
        # column masks over objects; extent(A) is then |A| intersections
        cols = []
        for j in range(width):
            bit = 1 << j
            m = 0
            for i, r in enumerate(rows):
                if r.mask & bit:
                    m |= 1 << i
            cols.append(m)
        self._columns = tuple(cols)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_strings(
        cls,
        object_names: Sequence[str],
        attribute_names: Sequence[str],
        rows: Sequence[str],
    ) -> "FormalContext":
        """Build from rows written as 'X.' / '10' strings."""
        width = len(attribute_names)
        parsed = []
        for s in rows:
            if len(s) != width:
                raise ValueError(f"row {s!r} has length {len(s)}, expected {width}")
            mask = 0
            for j, ch in enumerate(s):
                if ch in "X1":
                    mask |= 1 << j
                elif ch not in ".0":
                    raise ValueError(f"bad cell {ch!r} in row {s!r}")
            parsed.append(BitSet(width, mask))
        return cls(object_names, attribute_names, parsed)

    # -- basic shape ----------------------------------------------------------

    @property
    def num_objects(self) -> int:
        return len(self.object_names)

    @property
    def num_attributes(self) -> int:
        return len(self.attribute_names)

    def row(self, i: int) -> BitSet:
        return self.rows[i]

    def attribute_index(self, name: str) -> int:
        try:
            return self._attr_index[name]
        except KeyError:
            raise ValueError(f"unknown attribute {name!r}") from None

    def object_index(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise ValueError(f"unknown object {name!r}") from None

    def attribute_set(self, names: Iterable[str]) -> BitSet:
        return BitSet.from_indices(
            self.num_attributes, (self.attribute_index(n) for n in names)
        )

    def attribute_names_of(self, attrs: BitSet) -> tuple[str, ...]:
        return tuple(self.attribute_names[j] for j in attrs)

    def object_names_of(self, objs: BitSet) -> tuple[str, ...]:
        return tuple(self.object_names[i] for i in objs)

    # -- derivation operators ---------------------------------------------------

    def extent(self, attrs: BitSet) -> BitSet:
        """Objects whose rows contain every attribute in ``attrs``."""
        if attrs.width != self.num_attributes:
            raise ValueError("attribute set width does not match context")
        m = (1 << self.num_objects) - 1
        for j in attrs:
            m &= self._columns[j]
            if not m:
                break
        return BitSet(self.num_objects, m)

    def intent(self, objs: BitSet) -> BitSet:
        """Attributes common to every object in ``objs``.

        The intent of the empty object set is all attributes.
        """
        if objs.width != self.num_objects:
            raise ValueError("object set width does not match context")
        m = (1 << self.num_attributes) - 1
        for i in objs:
            m &= self.rows[i].mask
            if not m:
                break
        return BitSet(self.num_attributes, m)

    def closure(self, attrs: BitSet) -> BitSet:
        return self.intent(self.extent(attrs))

    def is_closed(self, attrs: BitSet) -> bool:
        return self.closure(attrs) == attrs

    # -- derived contexts -------------------------------------------------------

    def dichotomize(self, marker: str = "not_") -> "FormalContext":
        """Append one negated column per attribute.

        Each new column is named ``marker + name`` and holds exactly the
        complemented incidences, so every row of the result has one literal
        per original attribute.  A name collision with an existing attribute
        is rejected.
        """
        negated = [marker + n for n in self.attribute_names]
        clash = set(negated) & set(self.attribute_names)
        if clash:
            raise ValueError(f"dichotomize marker {marker!r} collides with "
                             f"attribute names: {sorted(clash)}")
        w = self.num_attributes
        full = (1 << w) - 1
        rows = [BitSet(2 * w, r.mask | ((r.mask ^ full) << w)) for r in self.rows]
        return FormalContext(
            self.object_names, tuple(self.attribute_names) + tuple(negated), rows
        )

    def complement(self) -> "FormalContext":
        """Flip every incidence.  Applying it twice returns an equal context."""
        full = (1 << self.num_attributes) - 1
        rows = [BitSet(self.num_attributes, r.mask ^ full) for r in self.rows]
        return FormalContext(self.object_names, self.attribute_names, rows)

    def reducible_objects(self) -> BitSet:
        """Objects with nonempty intent expressible as a meet of other intents.

        ``g`` qualifies iff the intersection of all other rows that contain
        ``g``'s row equals it (the empty intersection counts as the full
        attribute set).  Removing such objects changes no closure.
        """
        out = 0
        full = (1 << self.num_attributes) - 1
        for i, r in enumerate(self.rows):
            if not r.mask:
                continue
            meet = full
            for k, other in enumerate(self.rows):
                if k != i and r.mask & ~other.mask == 0:
                    meet &= other.mask
            if meet == r.mask:
                out |= 1 << i
        return BitSet(self.num_objects, out)

    # -- row editing --------------------------------------------------------------

    def with_object(self, name: str, intent: BitSet) -> "FormalContext":
        if name in self._obj_index:
            raise ValueError(f"object name {name!r} already present")
        if intent.width != self.num_attributes:
            raise ValueError("intent width does not match context")
        return FormalContext(
            self.object_names + (name,), self.attribute_names, self.rows + (intent,)
        )

    def without_object(self, which: int | str) -> "FormalContext":
        i = self.object_index(which) if isinstance(which, str) else which
        if not 0 <= i < self.num_objects:
            raise ValueError(f"no object at index {i}")
        return FormalContext(
            self.object_names[:i] + self.object_names[i + 1:],
            self.attribute_names,
            self.rows[:i] + self.rows[i + 1:],
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FormalContext)
            and self.object_names == other.object_names
            and self.attribute_names == other.attribute_names
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.object_names, self.attribute_names, self.rows))

    def __repr__(self) -> str:
        return (f"FormalContext({self.num_objects} objects, "
                f"{self.num_attributes} attributes)")
