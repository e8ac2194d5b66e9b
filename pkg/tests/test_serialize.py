from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from quadrica import (
    CpModule,
    MapTable,
    build_example,
    dumps,
    free_cp_pair,
    from_doc,
    loads,
    regular_module,
    to_doc,
    verify_cp_module,
)
from quadrica.errors import NotAGroup, NotARing, ParseError

GOLDEN = Path(__file__).parent / "data" / "rnil2_rank1.cpmod"


def test_golden_document_is_stable():
    text = GOLDEN.read_text()
    pair = loads(text)
    assert isinstance(pair, CpModule)
    assert verify_cp_module(pair).passed
    assert dumps(to_doc(pair)) + "\n" == text
    # and the canonical form is what the builder produces today
    assert dumps(to_doc(free_cp_pair(build_example("rnil", 2)))) + "\n" == text


@pytest.mark.parametrize("kind,n", [("sym", 2), ("tensor", 3), ("gamma", 4)])
def test_square_ring_round_trip(kind, n):
    sr = build_example(kind, n)
    back = from_doc(to_doc(sr))
    assert np.array_equal(back.re.mul, sr.re.mul)
    assert np.array_equal(back.act, sr.act)
    assert np.array_equal(back.h, sr.h)
    assert dumps(to_doc(back)) == dumps(to_doc(sr))


def test_module_and_map_round_trip():
    sr = build_example("sym", 2)
    reg = regular_module(sr)
    pair = free_cp_pair(sr)
    assert from_doc(to_doc(reg)).tables_equal(reg)
    back = from_doc(to_doc(pair))
    assert back.tables_equal(pair) and back.aset == pair.aset
    f = MapTable(pair, pair, np.array([0, 1, 0, 1]))
    g = from_doc(to_doc(f))
    assert isinstance(g, MapTable)
    assert np.array_equal(g.table, f.table)
    assert g.dom.tables_equal(f.dom) and g.cod.tables_equal(f.cod)


def test_dumps_is_deterministic():
    sr = build_example("tensor", 2)
    assert dumps(to_doc(sr)) == dumps(to_doc(build_example("tensor", 2)))


def test_loads_rejects_malformed_text():
    with pytest.raises(ParseError):
        loads("this is not a document {")
    with pytest.raises(ParseError):
        loads(json.dumps({"kind": "heptagon"}))
    with pytest.raises(ParseError):
        loads(json.dumps({"no": "kind"}))
    with pytest.raises(ParseError):
        loads(json.dumps({"kind": "bhp_module"}))  # missing fields


def test_ragged_tables_are_a_parse_failure():
    doc = json.loads(GOLDEN.read_text())
    doc["group"]["add"] = [[0, 1], [1]]
    with pytest.raises(ParseError) as info:
        from_doc(doc)
    assert info.value.__cause__ is None


def test_axiom_failures_keep_their_cause():
    """A well-formed table that is not a group (or ring) is a verification
    failure, not a parse failure; the original error rides along so callers
    can tell the two apart."""
    doc = json.loads(GOLDEN.read_text())
    doc["group"]["add"] = [[0, 1], [1, 1]]
    with pytest.raises(ParseError) as info:
        from_doc(doc)
    assert isinstance(info.value.__cause__, NotAGroup)

    ring_doc = json.loads(GOLDEN.read_text())["square_ring"]
    ring_doc["re"]["mul"] = [[1, 1], [1, 1]]
    with pytest.raises(ParseError) as info:
        from_doc(ring_doc)
    assert isinstance(info.value.__cause__, NotARing)


def test_declared_unit_must_match():
    doc = json.loads(GOLDEN.read_text())["square_ring"]
    doc["re"]["one"] = 0
    with pytest.raises(ParseError):
        from_doc(doc)


def test_map_endpoints_must_be_modules():
    sr = build_example("sym", 2)
    doc = {"kind": "map", "dom": to_doc(sr), "cod": to_doc(sr), "table": [0]}
    with pytest.raises(ParseError):
        from_doc(doc)


def test_to_doc_refuses_unknown_objects():
    with pytest.raises(ParseError):
        to_doc(object())
