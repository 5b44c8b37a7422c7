import math
from collections import Counter

import numpy as np
import pytest

from newstrend import coref, forest
from newstrend.errors import InvalidThreshold
from newstrend.forest import (
    Forest,
    MergeConfig,
    ObjectNode,
    RoleTree,
    VerbNode,
    build_forest,
    filter_verbs,
    merge_objects,
    merge_verbs,
    object_shares,
    object_weight,
    verb_ranking,
)

from conftest import (
    cluster_sentence,
    embedding_slice,
    frame_sentence,
    make_corpus,
    make_doc,
)


def tree(subject, *verbs):
    """verbs: (label, [(obj, w), ...], bare_count)"""
    nodes = []
    for label, objs, bare in verbs:
        onodes = [ObjectNode(o, w) for o, w in objs]
        nodes.append(VerbNode(label, sum(w for _, w in objs) + bare, onodes))
    nodes.sort(key=lambda v: (-v.weight, v.label))
    return RoleTree(subject, nodes)


def total_mass(t: RoleTree) -> tuple[int, int]:
    return (sum(v.weight for v in t.verbs), sum(o.weight for v in t.verbs for o in v.objects))


def hand_tfidf_cosine(docs: list[str], i: int, j: int) -> float:
    """Independent TF-IDF oracle: tf = count, idf = ln((1+N)/(1+df)) + 1."""
    bags = [Counter(d.split()) for d in docs]
    df = Counter()
    for b in bags:
        df.update(b.keys())
    idf = {t: math.log((1 + len(docs)) / (1 + n)) + 1.0 for t, n in df.items()}
    u = {t: c * idf[t] for t, c in bags[i].items()}
    v = {t: c * idf[t] for t, c in bags[j].items()}
    dot = sum(w * v.get(t, 0.0) for t, w in u.items())
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    return dot / (nu * nv)


class TestBuildForest:
    def test_figure_style_counts(self):
        docs = [
            make_doc("a", "2018-06-01",
                     [frame_sentence("Trump", "blamed", "democrats")] * 3
                     + [frame_sentence("Trump", "liked", "the tweet")] * 2),
        ]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        t = f.trees["trump"]
        assert [(v.label, v.weight) for v in t.verbs] == [("blamed", 3), ("liked", 2)]

    def test_modifier_prefix_and_coref(self):
        docs = [
            make_doc("a", "2018-06-01", [
                frame_sentence("he", "resign", None, modifier="might"),
                cluster_sentence("Trump", "he"),
            ]),
        ]
        corp = make_corpus(docs)
        gset = coref.merge_global(coref.local_clusters(corp))
        gset = coref.assign_centers(gset, coref.CenterPolicy("longest"), {})
        f = build_forest(corp, gset, MergeConfig())
        assert list(f.trees) == ["trump"]
        assert f.trees["trump"].verbs[0].label == "might resign"

    def test_negation_marker(self):
        docs = [make_doc("a", "2018-06-01",
                         [frame_sentence("senate", "approve", "the bill", negated=True)])]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        assert f.trees["senate"].verbs[0].label == "not approve"

    def test_modifier_plus_negation_order(self):
        docs = [make_doc("a", "2018-06-01",
                         [frame_sentence("he", "resign", None, modifier="might", negated=True)])]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        assert f.trees["he"].verbs[0].label == "might not resign"

    def test_lemmatize_option(self):
        docs = [make_doc("a", "2018-06-01",
                         [frame_sentence("lakers", "won", "the game", verb_lemma="win")])]
        raw = build_forest(make_corpus(docs), None, MergeConfig(lemmatize=False))
        lem = build_forest(make_corpus(docs), None, MergeConfig(lemmatize=True))
        assert raw.trees["lakers"].verbs[0].label == "won"
        assert lem.trees["lakers"].verbs[0].label == "win"

    def test_empty_corpus(self):
        docs = [make_doc("a", "2018-06-01", [])]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        assert f.trees == {}

    def test_objectless_frames_count_toward_verb(self):
        docs = [make_doc("a", "2018-06-01",
                         [frame_sentence("lebron", "make", None)] * 4
                         + [frame_sentence("lebron", "make", "his return")])]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        v = f.trees["lebron"].verbs[0]
        assert v.weight == 5
        assert v.object_mass == 1

    def test_counts_match_brute_force_oracle(self, rng):
        subjects = ["lebron james", "lakers", "trump", "the eagles"]
        verbs = ["beat", "sign", "miss", "leave", "lead"]
        objects = ["davis", "games", "the team", None]
        sentences = []
        expected_vw = Counter()
        expected_ow = Counter()
        for _ in range(1000):
            s = subjects[rng.integers(len(subjects))]
            v = verbs[rng.integers(len(verbs))]
            o = objects[rng.integers(len(objects))]
            sentences.append(frame_sentence(s, v, o))
            expected_vw[(s, v)] += 1
            if o is not None:
                expected_ow[(s, v, o)] += 1
        docs = [make_doc(f"d{i}", "2019-01-02", sentences[i * 50:(i + 1) * 50])
                for i in range(20)]
        f = build_forest(make_corpus(docs), None, MergeConfig())
        got_vw = {(s, v.label): v.weight for s, t in f.trees.items() for v in t.verbs}
        got_ow = {
            (s, v.label, o.label): o.weight
            for s, t in f.trees.items() for v in t.verbs for o in v.objects
        }
        assert got_vw == dict(expected_vw)
        assert got_ow == dict(expected_ow)


class TestMergeObjects:
    def test_identical_text_coalesces(self):
        t = RoleTree("x", [VerbNode("won", 5, [ObjectNode("the game", 2), ObjectNode("the game", 3)])])
        m = merge_objects(t, 1.0)
        assert [(o.label, o.weight) for o in m.verbs[0].objects] == [("the game", 5)]

    def test_orthogonal_never_merge(self):
        t = tree("x", ("saw", [("trade rumors", 2), ("warriors lineup", 3)], 0))
        for threshold in (0.01, 0.3, 0.9):
            m = merge_objects(t, threshold)
            assert len(m.verbs[0].objects) == 2

    def test_hand_tfidf_oracle_case(self):
        docs = ["the cavaliers", "cleveland cavaliers", "trade rumors"]
        cav = hand_tfidf_cosine(docs, 0, 1)
        assert cav == pytest.approx(0.3664468162665, abs=1e-12)
        assert hand_tfidf_cosine(docs, 0, 2) == 0.0
        t = tree("lebron", ("beat", [("the cavaliers", 4), ("cleveland cavaliers", 2), ("trade rumors", 1)], 0))
        m = merge_objects(t, 0.3)
        assert [(o.label, o.weight) for o in m.verbs[0].objects] == [
            ("the cavaliers", 6), ("trade rumors", 1),
        ]
        # just above the oracle cosine nothing groups
        m2 = merge_objects(t, cav + 1e-6)
        assert len(m2.verbs[0].objects) == 3

    def test_symmetric_corpus_merges_everything(self):
        # "the finals" shares "the" exactly as strongly as the cavaliers pair
        # shares "cavaliers": both cosines are equal by symmetry, so a
        # threshold below them groups all three.
        docs = ["the cavaliers", "cleveland cavaliers", "the finals"]
        assert hand_tfidf_cosine(docs, 0, 1) == pytest.approx(hand_tfidf_cosine(docs, 0, 2))
        t = tree("lebron", ("beat", [("the cavaliers", 4), ("cleveland cavaliers", 2), ("the finals", 1)], 0))
        m = merge_objects(t, 0.3)
        assert [(o.label, o.weight) for o in m.verbs[0].objects] == [("the cavaliers", 7)]

    def test_invalid_threshold(self):
        t = tree("x", ("v", [("a", 1)], 0))
        for bad in (-0.1, 1.5):
            with pytest.raises(InvalidThreshold):
                merge_objects(t, bad)

    def test_mass_conserved_and_idempotent(self, rng):
        terms = ["game", "rumors", "davis", "trade", "cavaliers", "the", "finals", "team"]
        for trial in range(25):
            verbs = []
            for vi in range(int(rng.integers(1, 4))):
                objs = []
                seen = set()
                for oi in range(int(rng.integers(1, 6))):
                    n = int(rng.integers(1, 3))
                    phrase = " ".join(rng.choice(terms, size=n, replace=False))
                    if phrase in seen:
                        continue
                    seen.add(phrase)
                    objs.append((phrase, int(rng.integers(1, 6))))
                if objs:
                    verbs.append((f"v{vi}", objs, int(rng.integers(0, 3))))
            if not verbs:
                continue
            t = tree("s", *verbs)
            threshold = float(rng.uniform(0.05, 0.95))
            once = merge_objects(t, threshold)
            assert total_mass(once) == total_mass(t), f"trial {trial}"
            twice = merge_objects(once, threshold)
            assert twice == once, f"trial {trial}"

    def test_threshold_monotonicity(self, rng):
        terms = ["a", "b", "c", "d", "e"]
        for trial in range(20):
            objs = []
            seen = set()
            for oi in range(6):
                n = int(rng.integers(1, 4))
                phrase = " ".join(rng.choice(terms, size=n, replace=False))
                if phrase not in seen:
                    seen.add(phrase)
                    objs.append((phrase, int(rng.integers(1, 5))))
            t = tree("s", ("v", objs, 0))
            counts = [
                len(merge_objects(t, th).verbs[0].objects)
                for th in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
            ]
            assert counts == sorted(counts), f"trial {trial}: {counts}"


class TestMergeVerbs:
    def vectors(self):
        # unit vectors with hand-set cosines: cos(run, sprint) = 0.9,
        # cos(run, eat) = 0.1, cos(sprint, eat) = 0.09 - 0.4337 < 0
        return embedding_slice("2019-01", {
            "run": [1.0, 0.0],
            "sprint": [0.9, math.sqrt(1 - 0.81)],
            "eat": [0.1, -math.sqrt(1 - 0.01)],
        })

    def test_synthetic_angles(self):
        t = tree("x", ("run", [("race", 3)], 0), ("sprint", [("race", 1)], 1), ("eat", [("lunch", 2)], 0))
        m = merge_verbs(t, self.vectors(), 0.5)
        assert [(v.label, v.weight) for v in m.verbs] == [("run", 5), ("eat", 2)]
        assert [(o.label, o.weight) for o in m.verbs[0].objects] == [("race", 4)]

    def test_mutually_similar_triple(self):
        vecs = embedding_slice("2019-01", {"believe": [1.0, 0.0], "think": [1.0, 0.0], "say": [1.0, 0.0]})
        t = tree("x", ("say", [("it", 900)], 0), ("believe", [("it", 3)], 0), ("think", [("it", 2)], 0))
        m = merge_verbs(t, vecs, 0.8)
        assert [(v.label, v.weight) for v in m.verbs] == [("say", 905)]

    def test_single_verb_identity(self):
        t = tree("x", ("run", [("race", 3)], 0))
        assert merge_verbs(t, self.vectors(), 0.5) == t

    def test_out_of_vocabulary_never_merges(self):
        t = tree("x", ("run", [], 2), ("gallop", [], 3))
        m = merge_verbs(t, self.vectors(), -1.0)
        assert len(m.verbs) == 2

    def test_merged_label_highest_weight_tie_lexicographic(self):
        vecs = embedding_slice("2019-01", {"p": [1.0, 0.0], "q": [1.0, 0.0]})
        t = tree("x", ("q", [], 3), ("p", [], 3))
        m = merge_verbs(t, vecs, 0.9)
        assert m.verbs[0].label == "p"

    def test_invalid_threshold(self):
        t = tree("x", ("run", [], 1))
        with pytest.raises(InvalidThreshold):
            merge_verbs(t, self.vectors(), 1.5)

    def test_mass_conserved(self):
        t = tree("x", ("run", [("race", 3)], 1), ("sprint", [("dash", 2)], 2), ("eat", [("lunch", 2)], 0))
        m = merge_verbs(t, self.vectors(), 0.5)
        assert total_mass(m) == total_mass(t)

    def test_idempotent(self):
        t = tree("x", ("run", [("race", 3)], 0), ("sprint", [("race", 1)], 1), ("eat", [("lunch", 2)], 0))
        once = merge_verbs(t, self.vectors(), 0.5)
        assert merge_verbs(once, self.vectors(), 0.5) == once


class TestFilterVerbs:
    def test_range_filter(self):
        t = tree("x", ("say", [("it", 900)], 0), ("miss", [("games", 12)], 0), ("suffer", [("injury", 7)], 0))
        m = filter_verbs(t, 2, 100)
        assert sorted(v.label for v in m.verbs) == ["miss", "suffer"]

    def test_full_range_identity(self):
        t = tree("x", ("say", [("it", 900)], 0), ("miss", [("games", 12)], 0))
        assert filter_verbs(t, 0, 10**9) == t

    def test_surviving_weights_in_range(self, rng):
        for _ in range(20):
            verbs = [(f"v{i}", [("o", int(rng.integers(1, 50)))], 0) for i in range(8)]
            t = tree("x", *verbs)
            lo, hi = sorted(rng.integers(1, 50, size=2).tolist())
            kept = filter_verbs(t, lo, hi)
            assert all(lo <= v.weight <= hi for v in kept.verbs)


def january_table_forest():
    """Monthly forests seeded with the January ranking shape."""
    months = {
        "2018-10": [("leave", "cleveland cavaliers", 10), ("score", "points", 6), ("lead", "the team", 3)],
        "2019-01": [("miss", "games", 9), ("suffer", "a groin strain injury", 8),
                    ("make", None, 7), ("leave", "cleveland cavaliers", 6), ("lead", "the team", 5)],
    }
    out = {}
    for month, rows in months.items():
        sentences = []
        for verb, obj, count in rows:
            sentences.extend([frame_sentence("lebron james", verb, obj)] * count)
        docs = [make_doc(f"{month}-doc", f"{month}-15", sentences)]
        out[month] = build_forest(make_corpus(docs), None, MergeConfig())
    return out


class TestVerbRanking:
    def test_january_ranking_with_main_objects(self):
        ranking = verb_ranking(january_table_forest(), "lebron james")
        january = ranking["2019-01"]
        assert [r.verb for r in january] == ["miss", "suffer", "make", "leave", "lead"]
        assert [r.main_object for r in january] == [
            "games", "a groin strain injury", None, "cleveland cavaliers", "the team",
        ]

    def test_leave_drops_from_top(self):
        ranking = verb_ranking(january_table_forest(), "lebron james")
        october = [r.verb for r in ranking["2018-10"]]
        january = [r.verb for r in ranking["2019-01"]]
        assert october[0] == "leave"
        assert january.index("leave") > 0

    def test_empty_month(self):
        forests = january_table_forest()
        ranking = verb_ranking(forests, "nobody")
        assert all(r == [] for r in ranking.values())


class TestObjectWeight:
    def test_hand_sum(self):
        t = tree("lakers", ("beat", [("davis", 3)], 0), ("sign", [("davis", 2)], 0))
        assert object_weight(t, "davis") == 5

    def test_absent_object(self):
        t = tree("lakers", ("beat", [("davis", 3)], 0))
        assert object_weight(t, "lebron") == 0

    def test_conservation(self, rng):
        objs = [(f"o{i}", int(rng.integers(1, 9))) for i in range(5)]
        t = tree("s", ("v1", objs[:3], 2), ("v2", objs[2:], 0))
        labels = {o.label for v in t.verbs for o in v.objects}
        assert sum(object_weight(t, l) for l in labels) == total_mass(t)[1]


def shares_fixture():
    months = {
        "2018-12": [("james", 6), ("game", 5), ("ariza", 4), ("davis", 1)],
        "2019-01": [("davis", 10), ("james", 5), ("game", 4), ("ariza", 2)],
        "2019-02": [("davis", 6), ("james", 5), ("game", 5), ("ariza", 1), ("rumors", 1)],
        "2019-03": [("james", 6), ("game", 5), ("ariza", 1), ("rumors", 1)],
    }
    out = {}
    for month, pairs in months.items():
        sentences = []
        for obj, count in pairs:
            sentences.extend([frame_sentence("lakers", "face", obj)] * count)
        docs = [make_doc(f"{month}-doc", f"{month}-10", sentences)]
        out[month] = build_forest(make_corpus(docs), None, MergeConfig())
    return out


class TestObjectShares:
    def test_global_top_objects_match_report(self):
        shares = object_shares(shares_fixture(), "lakers", 4)
        for month, entries in shares.items():
            assert [label for label, _ in entries] == ["james", "game", "davis", "ariza", "Others"]

    def test_shares_sum_to_one(self):
        shares = object_shares(shares_fixture(), "lakers", 4)
        for month, entries in shares.items():
            assert sum(s for _, s in entries) == pytest.approx(1.0, abs=1e-9)

    def test_davis_rises_then_disappears(self):
        shares = object_shares(shares_fixture(), "lakers", 4)
        series = {m: dict(e)["davis"] for m, e in shares.items()}
        assert series["2019-01"] > series["2018-12"]
        assert series["2019-01"] > series["2019-02"] > series["2019-03"]
        assert series["2019-03"] == 0.0

    def test_single_object_full_share(self):
        f = {
            "2019-01": Forest({"x": tree("x", ("v", [("only", 3)], 0))}, "2019-01"),
            "2019-02": Forest({"x": tree("x", ("v", [("only", 7)], 0))}, "2019-02"),
        }
        shares = object_shares(f, "x", 1)
        for entries in shares.values():
            assert dict(entries)["only"] == 1.0
            assert dict(entries)["Others"] == 0.0

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            object_shares(shares_fixture(), "lakers", 0)


class TestExport:
    def test_rows_round_trip(self):
        f = Forest({"x": tree("x", ("v", [("a", 2), ("b", 1)], 3))}, "2019-01")
        text = forest.forest_to_jsonl(f)
        again = forest.forest_from_jsonl(text, "2019-01")
        assert again == f

    def test_graph_payload(self):
        t = tree("trump", ("blamed", [("democrats", 3)], 0), ("liked", [("the tweet", 2)], 0))
        g = forest.tree_to_graph(t)
        assert g["subject"] == "trump"
        kinds = Counter(n["kind"] for n in g["nodes"])
        assert kinds == Counter({"subject": 1, "verb": 2, "object": 2})
        assert sum(e["weight"] for e in g["edges"] if e["source"] == "subject") == 5
