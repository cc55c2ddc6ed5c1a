import random

import pytest
from hypothesis import given, settings, strategies as st

from rowguard.bitset import BitSet
from rowguard.context import FormalContext
from rowguard.formats import (
    ParseError,
    read_csv,
    read_cxt,
    read_fimi,
    write_csv,
    write_cxt,
    write_fimi,
)

from conftest import (
    naive_closure,
    naive_extent,
    naive_intent,
    random_context,
    rows_as_sets,
    subsets,
)


def attrs(ctx, *names):
    return ctx.attribute_set(names)


# -- shape and validation -------------------------------------------------------


def test_fixture_shape(quad):
    assert quad.num_objects == 12
    assert quad.num_attributes == 7
    assert quad.object_names[0] == "Square"
    # cross count of the bundled table and its complement partition the grid
    crosses = sum(len(r) for r in quad.rows)
    assert crosses == 42
    assert sum(len(r) for r in quad.complement().rows) == 12 * 7 - 42


def test_duplicate_names_rejected():
    with pytest.raises(ValueError, match="duplicate object"):
        FormalContext(["a", "a"], ["m"], [BitSet(1), BitSet(1)])
    with pytest.raises(ValueError, match="duplicate attribute"):
        FormalContext(["a"], ["m", "m"], [BitSet(2)])


def test_duplicate_rows_allowed():
    ctx = FormalContext.from_strings(["a", "b"], ["m", "n"], ["X.", "X."])
    assert ctx.rows[0] == ctx.rows[1]


def test_row_width_checked():
    with pytest.raises(ValueError, match="width"):
        FormalContext(["a"], ["m", "n"], [BitSet(1, 1)])


def test_empty_contexts_are_legal():
    no_objects = FormalContext([], ["m"], [])
    assert no_objects.extent(BitSet(1, 1)) == BitSet.empty(0)
    assert no_objects.intent(BitSet.empty(0)) == BitSet.full(1)
    assert no_objects.closure(BitSet.empty(1)) == BitSet.full(1)
    no_attributes = FormalContext(["g"], [], [BitSet(0)])
    assert no_attributes.closure(BitSet.empty(0)) == BitSet.empty(0)


def test_unknown_names():
    ctx = FormalContext.from_strings(["a"], ["m"], ["X"])
    with pytest.raises(ValueError, match="unknown attribute 'z'"):
        ctx.attribute_index("z")
    with pytest.raises(ValueError, match="unknown object"):
        ctx.object_index("z")


# -- derivation operators --------------------------------------------------------


def test_extent_examples(quad):
    assert len(quad.extent(BitSet.empty(7))) == 12
    a = attrs(quad, "has equal legs", "has equal angles",
              "at least 3 different angles", "at least 3 different legs")
    assert quad.object_names_of(quad.extent(a)) == (
        "Rectangular trapezium with 2 equal legs",
        "Quadrangle with 2 equal legs and 2 equal angles",
    )
    assert not quad.extent(BitSet.full(7))


def test_intent_examples(quad):
    square = BitSet.from_indices(12, [quad.object_index("Square")])
    assert quad.attribute_names_of(quad.intent(square)) == (
        "has equal legs", "has equal angles", "has right angle",
        "all legs equal", "all angles equal")
    assert quad.intent(BitSet.empty(12)) == BitSet.full(7)
    both = BitSet.from_indices(
        12, [quad.object_index("Square"), quad.object_index("Quadrangle")])
    assert quad.intent(both) == BitSet.empty(7)


def test_closure_examples(quad, cases):
    assert quad.closure(cases["Case4"]) == BitSet.full(7)
    assert quad.closure(BitSet.empty(7)) == BitSet.empty(7)
    square_row = quad.row(quad.object_index("Square"))
    assert quad.closure(square_row) == square_row
    assert quad.is_closed(square_row)


def test_galois_connection_exhaustive():
    rng = random.Random(11)
    for _ in range(25):
        ctx = random_context(rng, max_objects=5, max_attributes=5)
        rows = rows_as_sets(ctx)
        w = ctx.num_attributes
        n = ctx.num_objects
        for a_set in subsets(frozenset(range(w))):
            a = BitSet.from_indices(w, a_set)
            assert frozenset(ctx.extent(a)) == naive_extent(rows, a_set)
            assert frozenset(ctx.closure(a)) == naive_closure(rows, w, a_set)
        for x_set in subsets(frozenset(range(n))):
            x = BitSet.from_indices(n, x_set)
            assert frozenset(ctx.intent(x)) == naive_intent(rows, w, x_set)
        # the connection itself: X ⊆ extent(A)  ⇔  A ⊆ intent(X)
        for a_set in subsets(frozenset(range(w))):
            a = BitSet.from_indices(w, a_set)
            for x_set in subsets(frozenset(range(n))):
                x = BitSet.from_indices(n, x_set)
                assert x.issubset(ctx.extent(a)) == a.issubset(ctx.intent(x))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 30), st.integers(0, 2 ** 25 - 1),
       st.integers(0, 2 ** 25 - 1))
def test_closure_operator_laws(seed, m1, m2):
    rng = random.Random(seed)
    ctx = random_context(rng, max_objects=7, max_attributes=25)
    w = ctx.num_attributes
    a1 = BitSet(w, m1 & ((1 << w) - 1))
    a2 = BitSet(w, m2 & ((1 << w) - 1))
    c1 = ctx.closure(a1)
    assert a1.issubset(c1)
    assert ctx.closure(c1) == c1
    if a1.issubset(a2):
        assert c1.issubset(ctx.closure(a2))
    # antimonotone derivations
    if a1.issubset(a2):
        assert ctx.extent(a2).issubset(ctx.extent(a1))


# -- derived contexts -------------------------------------------------------------


def test_dichotomize_partitions_rows(quad):
    d = quad.dichotomize()
    assert d.num_objects == 12
    assert d.num_attributes == 14
    square = d.row(d.object_index("Square"))
    assert len(square) == 7
    assert d.attribute_names_of(square) == (
        "has equal legs", "has equal angles", "has right angle",
        "all legs equal", "all angles equal",
        "not_at least 3 different angles", "not_at least 3 different legs")
    for row in d.rows:
        for j in range(7):
            assert (j in row) != (j + 7 in row)


def test_dichotomize_single_empty_cell():
    ctx = FormalContext.from_strings(["g"], ["m"], ["."])
    d = ctx.dichotomize()
    assert d.attribute_names_of(d.row(0)) == ("not_m",)


def test_dichotomize_collision_rejected():
    ctx = FormalContext.from_strings(["g"], ["m", "not_m"], [".."])
    with pytest.raises(ValueError, match="collides"):
        ctx.dichotomize()
    # a different marker sidesteps the clash
    assert ctx.dichotomize(marker="no ").num_attributes == 4


def test_complement_involution(quad):
    assert quad.complement().complement() == quad
    square = quad.complement().row(quad.object_index("Square"))
    assert quad.attribute_names_of(square) == (
        "at least 3 different angles", "at least 3 different legs")


def test_reducible_parallelogram(quad):
    red = quad.reducible_objects()
    names = quad.object_names_of(red)
    assert "Parallelogram" in names
    # removing any reducible object preserves every closure
    rng = random.Random(5)
    for name in names:
        reduced = quad.without_object(name)
        for _ in range(100):
            a = BitSet(7, rng.getrandbits(7))
            assert reduced.closure(a) == quad.closure(a)


def test_reducible_excludes_empty_intents():
    # an all-empty row is the meet of any two other rows, but stays
    ctx = FormalContext.from_strings(["a", "b", "c"], ["m", "n"],
                                     ["X.", ".X", ".."])
    assert not ctx.reducible_objects()


def test_reducible_incomparable_singletons():
    ctx = FormalContext.from_strings(["a", "b", "c"], ["m", "n", "o"],
                                     ["X..", ".X.", "..X"])
    assert not ctx.reducible_objects()


def test_reducible_brute_force():
    rng = random.Random(23)
    for _ in range(40):
        ctx = random_context(rng, max_objects=6, max_attributes=5)
        rows = rows_as_sets(ctx)
        expected = set()
        for i, r in enumerate(rows):
            if not r:
                continue
            others = [s for k, s in enumerate(rows) if k != i and r <= s]
            meet = frozenset(range(ctx.num_attributes))
            for s in others:
                meet &= s
            if meet == r:
                expected.add(i)
        assert set(ctx.reducible_objects()) == expected


def test_with_without_object(quad):
    bigger = quad.with_object("Case", BitSet(7, 0b101))
    assert bigger.num_objects == 13
    assert bigger.row(12) == BitSet(7, 0b101)
    with pytest.raises(ValueError, match="already present"):
        quad.with_object("Square", BitSet(7))
    with pytest.raises(ValueError, match="width"):
        quad.with_object("Case", BitSet(6))
    assert quad.without_object("Square").num_objects == 11
    assert bigger.without_object(12) == quad


# -- file formats -----------------------------------------------------------------


def test_cxt_roundtrip_bit_exact(quad):
    text = write_cxt(quad)
    again = read_cxt(text)
    assert again == quad
    assert write_cxt(again) == text
    assert text.endswith("\n") and not text.endswith("\n\n")


def test_cxt_writer_matches_bundled_file(quad):
    from importlib import resources

    shipped = (resources.files("rowguard") / "data" / "quadrangles.cxt").read_text()
    assert write_cxt(quad) == shipped


def test_cxt_diagnostics():
    with pytest.raises(ParseError, match="line 1"):
        read_cxt("Z\n")
    with pytest.raises(ParseError, match="unexpected end"):
        read_cxt("B\n\n2\n1\n\ng1\n")
    bad_cell = "B\n\n1\n2\n\ng1\nm1\nm2\nXq\n"
    with pytest.raises(ParseError, match="bad cell 'q'"):
        read_cxt(bad_cell)
    try:
        read_cxt(bad_cell)
    except ParseError as e:
        assert e.line == 9
    with pytest.raises(ParseError, match="trailing"):
        read_cxt("B\n\n1\n1\n\ng1\nm1\nX\nextra\n")
    with pytest.raises(ParseError, match="row has 1 cells"):
        read_cxt("B\n\n1\n2\n\ng1\nm1\nm2\nX\n")


def test_csv_roundtrip(quad):
    assert read_csv(write_csv(quad)) == quad
    with pytest.raises(ParseError, match="bad cell"):
        read_csv(",m\ng,2\n")
    with pytest.raises(ParseError, match="empty"):
        read_csv("")


def test_fimi_roundtrip():
    text = "0 2\n\n1\n"
    ctx = read_fimi(text)
    assert ctx.num_objects == 3
    assert ctx.num_attributes == 3
    assert ctx.object_names == ("g0", "g1", "g2")
    assert list(ctx.rows[0]) == [0, 2]
    assert not ctx.rows[1]
    assert write_fimi(ctx) == "0 2\n\n1\n"
    with pytest.raises(ParseError, match="bad attribute index"):
        read_fimi("0 x\n")
    with pytest.raises(ParseError, match="out of range"):
        read_fimi("5\n", num_attributes=3)


def test_fimi_quadrangles_roundtrip(quad):
    # names are lost, bits are not
    again = read_fimi(write_fimi(quad), num_attributes=7)
    assert again.rows == quad.rows
