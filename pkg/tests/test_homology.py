import random

import pytest
from hypothesis import given, settings, strategies as st

from linkgroup.homology import (IntegerMatrix, SmithDecomposition,
                                abelianization_matrix, first_homology,
                                is_perfect, smith_normal_form)
from linkgroup.presentations import parse_presentation, tietze_simplify
from conftest import CORPUS_KEYS, data_text
from oracles import minor_gcd_invariant_factors


def mat(rows, cols=None):
    return IntegerMatrix.from_rows(rows, cols)


def test_matrix_validation():
    with pytest.raises(ValueError):
        mat([[1, 2], [3]])
    with pytest.raises(ValueError):
        mat([[True]])
    with pytest.raises(ValueError):
        mat([])
    assert mat([], cols=3).rows == 0


def test_det():
    assert mat([[2, 0], [0, 3]]).det() == 6
    assert mat([[0, 1], [1, 0]]).det() == -1
    assert mat([[1, 2], [2, 4]]).det() == 0
    assert IntegerMatrix.identity(4).det() == 1
    assert mat([], cols=0).det() == 1
    with pytest.raises(ValueError):
        mat([[1, 2]]).det()


def test_matmul():
    a = mat([[1, 2], [3, 4]])
    assert (a @ IntegerMatrix.identity(2)) == a
    with pytest.raises(ValueError):
        a @ mat([[1, 2, 3]])


def test_snf_known_cases():
    assert smith_normal_form(mat([[2, 0], [0, 3]])).invariant_factors == (1, 6)
    assert smith_normal_form(mat([[2, 4], [4, 8]])).invariant_factors == (2,)
    assert smith_normal_form(IntegerMatrix.zeros(3, 2)).invariant_factors == ()
    assert smith_normal_form(IntegerMatrix.identity(3)).invariant_factors == (1, 1, 1)
    # the classic 2x2 with a unit: [[2,1],[0,2]] ~ diag(1, 4)
    assert smith_normal_form(mat([[2, 1], [0, 2]])).invariant_factors == (1, 4)


def test_snf_verify_rejects_tampering():
    m = mat([[2, 0], [0, 3]])
    good = smith_normal_form(m)
    assert good.verify(m)
    bad = SmithDecomposition(mat([[2, 0], [0, 3]]), IntegerMatrix.identity(2),
                             IntegerMatrix.identity(2))
    assert not bad.verify(m)  # 2 does not divide 3
    swapped = SmithDecomposition(good.d, good.v, good.u)
    assert not swapped.verify(m)


def test_snf_matches_minor_gcd_oracle_on_seeded_randoms():
    rng = random.Random(20260814)
    for _ in range(150):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        m = mat(rows, c)
        dec = smith_normal_form(m)
        assert dec.verify(m)
        assert dec.invariant_factors == minor_gcd_invariant_factors(rows, c)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_snf_divisibility_chain(rows):
    dec = smith_normal_form(mat(rows, 3))
    factors = dec.invariant_factors
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0
    assert all(f > 0 for f in factors)


def test_abelianization_matrix():
    p = parse_presentation("gens: a, b\nrels: a*b*a^-1*b^-1; a^3 = b\n")
    m = abelianization_matrix(p)
    assert m.entries == ((0, 0), (3, -1))


def test_first_homology_small_groups():
    assert first_homology(parse_presentation("gens: a\nrels:\n")) == [0]
    assert first_homology(parse_presentation("gens: a\nrels: a^2\n")) == [2]
    assert first_homology(parse_presentation("gens: a, b\nrels: a^2; b^3\n")) == [6]
    assert first_homology(parse_presentation("gens: a, b\nrels: a*b*a^-1*b^-1\n")) == [0, 0]
    trefoil = parse_presentation(data_text("trefoil.pres"))
    assert first_homology(trefoil) == [0]
    assert not is_perfect(trefoil)


def test_corpus_presentations_are_perfect():
    for key in CORPUS_KEYS:
        p = parse_presentation(data_text(key + ".pres"))
        assert first_homology(p) == []
        assert is_perfect(p)


def test_homology_invariant_under_simplification_on_randoms():
    rng = random.Random(7)
    names = ("a", "b", "c")
    for _ in range(40):
        n_gens = rng.randint(1, 3)
        gens = names[:n_gens]
        rels = []
        for _ in range(rng.randint(0, 3)):
            letters = "*".join(
                "%s^%d" % (rng.choice(gens), rng.choice((1, -1)))
                for _ in range(rng.randint(1, 5)))
            rels.append(letters)
        text = "gens: %s\nrels: %s\n" % (", ".join(gens), "; ".join(rels))
        p = parse_presentation(text)
        assert first_homology(tietze_simplify(p)) == first_homology(p)
