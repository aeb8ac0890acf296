import pytest

from linkgroup.diagrams import LinkDiagram, Crossing, parse_diagram, under_walk
from linkgroup.presentations import (GroupPresentation, PresentationSyntaxError,
                                     Relator, _reduce_generators,
                                     fundamental_group, parse_presentation,
                                     serialize_presentation, tietze_simplify,
                                     transition_name, wirtinger)
from linkgroup.homology import first_homology
from linkgroup.words import Word
from conftest import CORPUS_KEYS, data_text


def test_transition_name():
    assert transition_name("a", "b") == "t_ab"
    assert transition_name("a", "bw1") == "t_a_bw1"


def test_wirtinger_conventions():
    # positive crossing: under_in * over = over * under_out
    d = LinkDiagram(components=(("a", "b"), ("c",)),
                    crossings=(Crossing(over="c", under_in="a", under_out="b", sign=1),))
    r = wirtinger(d).relators[0]
    assert r.lhs.letters == (("a", 1), ("c", 1))
    assert r.rhs.letters == (("c", 1), ("b", 1))
    # negative crossing: under_out * over = over * under_in
    d = LinkDiagram(components=(("a", "b"), ("c",)),
                    crossings=(Crossing(over="c", under_in="a", under_out="b", sign=-1),))
    r = wirtinger(d).relators[0]
    assert r.lhs.letters == (("b", 1), ("c", 1))
    assert r.rhs.letters == (("c", 1), ("a", 1))


def test_fundamental_group_layout():
    d = parse_diagram(data_text("u1563.pd.json"))
    p = fundamental_group(d)
    # transition generators first, in walk order, then the arcs
    assert p.generators[:9] == tuple(
        transition_name(c.under_in, c.under_out)
        for i in range(2) for c in under_walk(d, i))
    assert p.generators[9:] == tuple(a for comp in d.components for a in comp)
    # relators: 9 definitions, 2 fillings, 9 conjugations
    assert len(p.relators) == 20
    fillings = p.relators[9:11]
    assert all(r.rhs == Word() for r in fillings)
    assert sum(len(r.lhs) for r in fillings) == 9


def test_corpus_round_trip_single_entry():
    d = parse_diagram(data_text("u2165.pd.json"))
    assert serialize_presentation(fundamental_group(d)) == data_text("u2165.pres")


def test_parse_serialize_idempotent_on_corpus():
    for key in CORPUS_KEYS:
        text = data_text(key + ".pres")
        p = parse_presentation(text)
        assert serialize_presentation(p) == text
        assert parse_presentation(serialize_presentation(p)) == p


def test_parse_errors():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("rels: a\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\ngens: b\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a,\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nrels: b\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nrels: a^0\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nrels: a b\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("gens: a\nrels: a = = a\n")


def test_parse_empty_word_and_powers():
    p = parse_presentation("gens: a, b\nrels: 1; a^3 = b^-2; ;\n")
    assert len(p.relators) == 2
    assert p.relators[0].word == Word()
    assert p.relators[1].lhs.letters == (("a", 1),) * 3
    assert p.relators[1].rhs.letters == (("b", -1),) * 2
    # comments and blank lines are ignored
    q = parse_presentation("# header\ngens: a, b\n\nrels: 1; a^3 = b^-2\n")
    assert q == p


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(("a", "a"), ())
    with pytest.raises(ValueError):
        GroupPresentation(("a",), (Relator(Word((("b", 1),))),))
    with pytest.raises(ValueError):
        GroupPresentation(("9bad",), ())


def test_serialize_dialects():
    p = parse_presentation("gens: a, b\nrels: a*b = b*a; a^2\n")
    assert serialize_presentation(p, dialect="plain") == "< a, b | a*b = b*a; a*a >\n"
    gap = serialize_presentation(p, dialect="gap")
    assert 'F := FreeGroup( "a", "b" );;' in gap
    assert "a*b*a^-1*b^-1" in gap
    assert gap.endswith('Print( AbelianInvariants( G ), "\\n" );\n')
    with pytest.raises(ValueError):
        serialize_presentation(p, dialect="latex")


def test_tietze_phase1_counts_on_corpus():
    for key in CORPUS_KEYS:
        p = parse_presentation(data_text(key + ".pres"))
        q = tietze_simplify(p, phases=(1,))
        assert len(q.generators) == 9
        assert len(q.relators) == 11


def test_tietze_budget_zero_is_identity():
    p = parse_presentation(data_text("u1466.pres"))
    q = tietze_simplify(p, budget=0)
    assert q.generators == p.generators
    assert len(q.relators) == len(p.relators)


def test_tietze_drops_trivial_relators():
    p = parse_presentation("gens: a, b\nrels: a*a^-1; b = b; a^2\n")
    q = tietze_simplify(p, phases=(2,))
    assert len(q.relators) == 1
    assert q.generators == ("a", "b")


def test_tietze_kills_trivial_group_presentation():
    p = parse_presentation("gens: a, b\nrels: a; b\n")
    q = tietze_simplify(p)
    assert q.generators == ()
    assert q.relators == ()


def test_tietze_eliminates_defined_generator():
    p = parse_presentation("gens: a, b, c\nrels: c = a*b; c^2*a\n")
    q = tietze_simplify(p, phases=(1,))
    assert "c" not in q.generators
    assert all("c" not in r.generators() for r in q.relators)
    assert first_homology(q) == first_homology(p)


def test_tietze_preserves_homology():
    for key in ("u1466", "u2125"):
        p = parse_presentation(data_text(key + ".pres"))
        assert first_homology(tietze_simplify(p)) == first_homology(p)


def test_reduce_generators_eliminates_and_preserves_homology():
    p = parse_presentation("gens: a, b, c\nrels: c = a*b; a^2*c; b^3\n")
    q = _reduce_generators(p)
    assert len(q.generators) < 3
    assert first_homology(q) == first_homology(p)
    for key in CORPUS_KEYS:
        full = parse_presentation(data_text(key + ".pres"))
        reduced = _reduce_generators(full)
        assert len(reduced.generators) <= 4
        assert first_homology(reduced) == first_homology(full) == []
