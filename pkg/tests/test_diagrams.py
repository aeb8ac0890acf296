import json

import pytest

from linkgroup.diagrams import (Crossing, DiagramStructureError,
                                DiagramSyntaxError, LinkDiagram, blackboardize,
                                parse_diagram, self_writhe, serialize_diagram,
                                under_walk, validate)
from conftest import data_text

UNKNOT0 = '{"components": [["a"]], "crossings": []}'

TREFOIL = json.dumps({
    "name": "trefoil",
    "components": [["a", "b", "c"]],
    "crossings": [
        {"over": "c", "under_in": "a", "under_out": "b", "sign": 1},
        {"over": "a", "under_in": "b", "under_out": "c", "sign": 1},
        {"over": "b", "under_in": "c", "under_out": "a", "sign": 1},
    ],
})


def test_crossingless_unknot():
    d = parse_diagram(UNKNOT0)
    assert d.arcs == frozenset({"a"})
    assert d.crossings == ()
    assert validate(d) == []
    assert under_walk(d, 0) == []
    assert self_writhe(d, 0) == 0


def test_trefoil_structure():
    d = parse_diagram(TREFOIL)
    assert d.name == "trefoil"
    assert len(d.components) == 1
    assert d.arcs == frozenset({"a", "b", "c"})
    assert len(d.crossings) == 3
    assert validate(d) == []
    assert self_writhe(d, 0) == 3
    walk = under_walk(d, 0)
    assert [(c.under_in, c.under_out) for c in walk] == [("a", "b"), ("b", "c"), ("c", "a")]


def test_bundled_diagram_shape():
    d = parse_diagram(data_text("u1466.pd.json"))
    assert len(d.components) == 2
    assert tuple(d.components[0]) == ("a", "b", "c", "d", "e")
    assert tuple(d.components[1]) == ("f", "g", "h", "i")
    assert len(d.crossings) == 9
    assert validate(d) == []


def test_serialize_round_trip():
    for text in (UNKNOT0, TREFOIL, data_text("u2165.pd.json")):
        d = parse_diagram(text)
        assert parse_diagram(serialize_diagram(d)) == d


def test_syntax_errors():
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("not json")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram('{"components": [["a"]], "crossings": [], "extra": 1}')
    with pytest.raises(DiagramSyntaxError):
        parse_diagram('{"components": "a", "crossings": []}')
    # booleans are not acceptable signs even though bool subclasses int
    bad_sign = ('{"components": [["a"]], "crossings": '
                '[{"over": "a", "under_in": "a", "under_out": "a", "sign": true}]}')
    with pytest.raises(DiagramSyntaxError):
        parse_diagram(bad_sign)


def test_missing_crossing_is_an_arc_degree_violation():
    d = LinkDiagram(
        components=(("x", "y"),),
        crossings=(Crossing(over="x", under_in="y", under_out="x", sign=1),),
    )
    problems = validate(d)
    assert any(v.invariant == "arc-degree" and v.element == "x" for v in problems)
    with pytest.raises(DiagramStructureError):
        parse_diagram(serialize_diagram(d))


def test_duplicate_arc_violation():
    d = LinkDiagram(components=(("a",), ("a",)), crossings=())
    problems = validate(d)
    assert any(v.invariant == "arc-unique" for v in problems)


def test_component_of():
    d = parse_diagram(data_text("u1466.pd.json"))
    assert d.component_of("a") == 0
    assert d.component_of("i") == 1
    with pytest.raises(KeyError):
        d.component_of("zz")


def test_blackboardize_positive_curl_on_crossingless_circle():
    d = parse_diagram(UNKNOT0)
    d1 = blackboardize(d, [1])
    assert self_writhe(d1, 0) == 1
    assert len(d1.crossings) == 1
    assert validate(d1) == []
    # writhe already on target: the very same object comes back
    assert blackboardize(d, [0]) is d


def test_blackboardize_multiple_negative_curls():
    d = parse_diagram(TREFOIL)
    d0 = blackboardize(d, [0])
    assert self_writhe(d0, 0) == 0
    assert len(d0.crossings) == 6
    assert validate(d0) == []
    # the original crossings keep their signs
    signs = sorted(c.sign for c in d0.crossings)
    assert signs == [-1, -1, -1, 1, 1, 1]


def test_blackboardize_two_components():
    d = parse_diagram(data_text("u2125.pd.json"))
    before = [self_writhe(d, 0), self_writhe(d, 1)]
    targets = [before[0] + 2, before[1] - 1]
    d2 = blackboardize(d, targets)
    assert [self_writhe(d2, 0), self_writhe(d2, 1)] == targets
    assert validate(d2) == []


def test_blackboardize_target_count_mismatch():
    d = parse_diagram(UNKNOT0)
    with pytest.raises(ValueError):
        blackboardize(d, [1, 2])
