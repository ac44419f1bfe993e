import json

import pytest
from hypothesis import given, settings, strategies as st

from conceptcat import Context, ParseError
from conceptcat.io import (
    context_from_json,
    context_to_json,
    emit_cxt,
    lattice_to_dot,
    lattice_to_json,
    pair_from_json,
    pair_to_json,
    parse_cxt,
    parse_cxt_named,
)
from conceptcat.lattice import build_concept_lattice
from conceptcat.morphisms import MappingPair
from conceptcat.oracle import random_contexts

from conftest import CHAIN, DIAG

DIAG_CXT = "B\ndiag\n2\n2\n\ng1\ng2\nm1\nm2\nX.\n.X\n"


def test_parse_and_emit_cxt():
    name, ctx = parse_cxt_named(DIAG_CXT)
    assert name == "diag" and ctx == DIAG
    assert emit_cxt(DIAG, "diag") == DIAG_CXT


@pytest.mark.parametrize(
    "text, line",
    [
        ("A\n\n0\n0\n\n", 1),
        ("B\n\nx\n0\n\n", 3),
        ("B\n\n1\n1\n\ng\nm\nXX\n", 8),
        ("B\n\n1\n1\n\ng\nm\nY\n", 8),
        ("B\n\n1\n1\n\ng\nm\n", 8),
        ("B\n\n2\n0\n\ng\ng\n\n\n", 7),
        ("B\n\n0\n0\n", 5),
    ],
)
def test_cxt_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_cxt(text)
    assert e.value.line == line


def test_cxt_needs_trailing_newline():
    with pytest.raises(ParseError):
        parse_cxt(DIAG_CXT[:-1])


def test_empty_context_round_trip():
    ctx = Context([], [], [])
    assert parse_cxt(emit_cxt(ctx)) == ctx


def test_json_round_trip_and_validation():
    assert context_from_json(context_to_json(CHAIN)) == CHAIN
    for bad in (
        [],
        {"objects": ["g"], "attributes": ["m"]},
        {"objects": ["g"], "attributes": ["m"], "incidence": [[1]]},
        {"objects": ["g"], "attributes": ["m"], "incidence": [[True, False]]},
        {"objects": ["g", "g"], "attributes": [], "incidence": [[], []]},
    ):
        with pytest.raises(ParseError):
            context_from_json(bad)


def test_pair_json():
    p = MappingPair(DIAG, CHAIN, (0, 1), (1, 1))
    data = pair_to_json(p)
    assert data == {"alpha": {"g1": "g1", "g2": "g2"}, "beta": {"m1": "m2", "m2": "m2"}}
    assert pair_from_json(json.loads(json.dumps(data)), DIAG, CHAIN) == p
    with pytest.raises(ParseError):
        pair_from_json({"alpha": {"g1": "g1"}, "beta": {"m1": "m1", "m2": "m2"}}, DIAG, CHAIN)
    with pytest.raises(ParseError):
        pair_from_json({"alpha": {"g1": "g1", "g2": "zz"}, "beta": {"m1": "m1", "m2": "m2"}}, DIAG, CHAIN)


def test_lattice_outputs():
    cl = build_concept_lattice(DIAG)
    dot = lattice_to_dot(cl)
    assert dot.startswith('digraph "concepts" {') and "rankdir=BT" in dot
    assert dot.count("->") == 4
    data = lattice_to_json(cl)
    assert len(data["concepts"]) == 4 and len(data["covers"]) == 4


def test_random_round_trips():
    for ctx in random_contexts(100, 4, 4, 99):
        assert parse_cxt(emit_cxt(ctx)) == ctx
        assert context_from_json(json.loads(json.dumps(context_to_json(ctx)))) == ctx


names = st.text(alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters="\n\r"), max_size=6)


@st.composite
def contexts(draw):
    objs = draw(st.lists(names, max_size=4, unique=True))
    atts = draw(st.lists(names, max_size=4, unique=True))
    rows = [draw(st.integers(0, (1 << len(atts)) - 1)) for _ in objs]
    return Context(objs, atts, rows)


@settings(max_examples=200, deadline=None)
@given(contexts(), names)
def test_cxt_round_trip_property(ctx, name):
    got_name, got = parse_cxt_named(emit_cxt(ctx, name))
    assert got == ctx and got_name == name


@settings(max_examples=200, deadline=None)
@given(contexts())
def test_json_round_trip_property(ctx):
    assert context_from_json(json.loads(json.dumps(context_to_json(ctx)))) == ctx
