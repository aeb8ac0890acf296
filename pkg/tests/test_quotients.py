import json
import random

import pytest

from linkgroup.presentations import parse_presentation, tietze_simplify
from linkgroup.quotients import (HomCount, InvariantProfile, ProfileConfig,
                                 SubgroupCount, Verdict, Witness,
                                 compare_profiles, count_homs, distinguish,
                                 low_index_single, low_index_subgroups,
                                 presentation_hash, profile, recompute_entry,
                                 verify_witness)
from conftest import data_text, pres
from oracles import naive_hom_counts

Z = "gens: a\nrels:\n"
Z2 = "gens: a\nrels: a^2\n"
Z3 = "gens: a\nrels: a^3\n"
F2 = "gens: a, b\nrels:\n"
S3_PRES = "gens: a, b\nrels: a^2; b^3; a*b*a*b\n"


def random_presentation(rng, max_gens=3, max_rels=4, max_len=6):
    names = ("a", "b", "c", "d")[:rng.randint(1, max_gens)]
    rels = []
    for _ in range(rng.randint(0, max_rels)):
        letters = "*".join("%s^%d" % (rng.choice(names), rng.choice((1, -1)))
                           for _ in range(rng.randint(1, max_len)))
        rels.append(letters)
    text = "gens: %s\nrels: %s\n" % (", ".join(names), "; ".join(rels))
    return parse_presentation(text)


def test_count_homs_hand_checked(catalog):
    c3 = catalog.by_name("C3")
    s3 = catalog.by_name("S3")
    assert count_homs(pres(Z), c3) == HomCount(3, 2)
    assert count_homs(pres(Z), s3) == HomCount(6, 0)
    # x^2 = e in S3: the identity and the three transpositions
    assert count_homs(pres(Z2), s3) == HomCount(4, 0)
    assert count_homs(pres(F2), c3) == HomCount(9, 8)
    # no generators at all: only the trivial homomorphism
    assert count_homs(pres("gens:\nrels:\n"), s3) == HomCount(1, 0)
    assert count_homs(pres("gens:\nrels:\n"), catalog.by_name("C2")) == HomCount(1, 0)


def test_count_homs_against_naive_on_randoms(catalog):
    rng = random.Random(99)
    small = [g for g in catalog.groups if g.order <= 12]
    for _ in range(40):
        p = random_presentation(rng)
        for g in small:
            got = count_homs(p, g)
            assert not got.budget_exceeded
            assert (got.total, got.surjective) == naive_hom_counts(p, g)


def test_count_homs_invariant_under_simplification(catalog):
    rng = random.Random(5)
    targets = [catalog.by_name("S3"), catalog.by_name("D4")]
    for _ in range(15):
        p = random_presentation(rng)
        q = tietze_simplify(p)
        for g in targets:
            assert count_homs(p, g) == count_homs(q, g)


def test_count_homs_budget_flag(catalog):
    a5 = catalog.by_name("A5")
    flagged = count_homs(pres(F2), a5, node_budget=1)
    assert flagged == HomCount(0, 0, True)
    ok = count_homs(pres(F2), a5, node_budget=10 ** 8)
    assert not ok.budget_exceeded
    assert ok.total == 3600


def test_count_homs_worker_split_matches_serial(catalog):
    trefoil = parse_presentation(data_text("trefoil.pres"))
    for name in ("A5", "S4"):
        g = catalog.by_name(name)
        serial = count_homs(trefoil, g, workers=1)
        split = count_homs(trefoil, g, workers=4)
        assert serial == split


def test_low_index_hand_checked():
    # Z has one subgroup of each index, always normal
    assert low_index_subgroups(pres(Z), 6) == {
        k: SubgroupCount(1, 1) for k in range(2, 7)}
    # F2 at index 2: three subgroups, all normal
    assert low_index_single(pres(F2), 2) == SubgroupCount(3, 3)
    # C2 has only the trivial subgroup below it
    assert low_index_subgroups(pres(Z2), 4) == {
        2: SubgroupCount(1, 1), 3: SubgroupCount(0, 0), 4: SubgroupCount(0, 0)}
    # S3: one A3, one class of three order-2 subgroups, the trivial subgroup
    assert low_index_subgroups(pres(S3_PRES), 6) == {
        2: SubgroupCount(1, 1), 3: SubgroupCount(1, 3), 4: SubgroupCount(0, 0),
        5: SubgroupCount(0, 0), 6: SubgroupCount(1, 1)}


def test_low_index_f2_known_table():
    # classes / totals for the free group of rank 2
    expected = {2: (3, 3), 3: (7, 13), 4: (26, 71), 5: (97, 461)}
    got = low_index_subgroups(pres(F2), 5)
    assert {k: (sc.classes, sc.total) for k, sc in got.items()} == expected


def test_low_index_budget_flags_every_index():
    got = low_index_subgroups(pres(F2), 5, node_budget=3)
    assert all(sc == SubgroupCount(0, 0, True) for sc in got.values())
    single = low_index_single(pres(F2), 4, node_budget=3)
    assert single.budget_exceeded


def test_low_index_invariant_under_simplification():
    rng = random.Random(11)
    for _ in range(10):
        p = random_presentation(rng, max_gens=2, max_rels=2, max_len=4)
        q = tietze_simplify(p)
        assert low_index_subgroups(p, 4) == low_index_subgroups(q, 4)


def test_profile_of_z(catalog):
    prof = profile(pres(Z))
    assert prof.homology == (0,)
    for name, hc in prof.hom_counts:
        assert hc.total == catalog.by_name(name).order
        assert not hc.budget_exceeded
    assert dict(prof.low_index) == {k: SubgroupCount(1, 1) for k in range(2, 7)}
    assert not prof.any_budget_exceeded
    doc = json.loads(prof.to_json())
    assert doc["schema_version"] == 1
    assert doc["config"]["max_index"] == 6
    assert doc["presentation"]["generators"] == 1
    assert "presentation" not in json.loads(prof.comparable_json())


def test_profile_json_is_stable(catalog):
    a = profile(pres(Z2)).to_json()
    b = profile(pres(Z2)).to_json()
    assert a == b


def test_presentation_hash_tracks_serialization():
    p = pres(Z2)
    assert presentation_hash(p) == presentation_hash(pres(Z2))
    assert presentation_hash(p) != presentation_hash(pres(Z3))


def test_compare_profiles_skips_flagged_entries():
    lp = profile(pres(Z2))
    rp = profile(pres(Z3))
    w = compare_profiles(lp, rp)
    assert w.invariant == "homology"
    assert (w.left, w.right) == ([2], [3])
    # identical profiles compare clean
    assert compare_profiles(lp, profile(pres(Z2))) is None
    # a flagged entry on either side is not a witness
    tiny = ProfileConfig(node_budget=1)
    fl = profile(pres(F2), tiny)
    fr = profile(pres(F2), tiny)
    assert fl.any_budget_exceeded
    assert compare_profiles(fl, fr) is None


def test_distinguish_and_witness_replay():
    left, right = pres(Z2), pres(Z3)
    verdict = distinguish(left, right)
    assert verdict.outcome == "Distinguished"
    assert verdict.witness.invariant == "homology"
    doc = verdict.to_dict()
    ok, message = verify_witness(doc, left, right)
    assert ok, message
    tampered = json.loads(json.dumps(doc))
    tampered["witness"]["left"] = [5]
    ok, message = verify_witness(tampered, left, right)
    assert not ok
    assert "recomputed" in message and "[2]" in message


def test_distinguish_same_input_is_inconclusive():
    verdict = distinguish(pres(Z2), pres(Z2))
    assert verdict.outcome == "Inconclusive"
    assert verdict.witness is None
    assert (verdict.left_profile.comparable_json()
            == verdict.right_profile.comparable_json())


def test_verify_witness_rejects_witnessless_and_bad_catalog():
    verdict = distinguish(pres(Z2), pres(Z2))
    ok, message = verify_witness(verdict.to_dict(), pres(Z2), pres(Z2))
    assert not ok and "no witness" in message
    doc = distinguish(pres(Z2), pres(Z3)).to_dict()
    doc["config"]["catalog"] = ["C2"]
    ok, message = verify_witness(doc, pres(Z2), pres(Z3))
    assert not ok and "catalog" in message


def test_recompute_entry_kinds(catalog):
    config = ProfileConfig()
    p = pres(Z2)
    assert recompute_entry(p, {"kind": "homology"}, config, catalog) == [2]
    got = recompute_entry(p, {"kind": "hom_count", "group": "S3"}, config, catalog)
    assert got == {"total": 4, "surjective": 0}
    got = recompute_entry(p, {"kind": "low_index", "index": 2}, config, catalog)
    assert got == {"classes": 1, "total": 1}
    with pytest.raises(ValueError):
        recompute_entry(p, {"kind": "volume"}, config, catalog)


def test_count_validation():
    with pytest.raises(ValueError):
        HomCount(1, 2)
    with pytest.raises(ValueError):
        SubgroupCount(2, 1)
    # flagged counts are exempt from the range check
    HomCount(0, 0, True)
