import numpy as np
import pytest

from newstrend import coref
from newstrend.coref import (
    CenterPolicy,
    MentionCluster,
    assign_centers,
    canonicalize,
    merge_global,
    normalize_mention,
    select_center,
)
from newstrend.errors import MissingLexicon

from conftest import cluster_sentence, frame_sentence, make_corpus, make_doc


def clusters(*groups: set[str]) -> list[MentionCluster]:
    return [MentionCluster(frozenset(g), f"doc{i}") for i, g in enumerate(groups)]


def members(gset) -> list[set[str]]:
    return sorted((set(c.mentions) for c in gset.clusters), key=min)


class TestNormalize:
    def test_case_fold_and_whitespace(self):
        assert normalize_mention("  The   Philadelphia  EAGLES ") == "the philadelphia eagles"

    def test_edge_punctuation_stripped(self):
        assert normalize_mention('"Hilary Clinton,"') == "hilary clinton"

    def test_internal_punctuation_kept(self):
        assert normalize_mention("record-low") == "record-low"


class TestMergeGlobal:
    def test_transitive_chain(self):
        gset = merge_global(clusters({"A", "B"}, {"B", "C"}))
        assert members(gset) == [{"a", "b", "c"}]

    def test_disjoint_stay_apart(self):
        gset = merge_global(clusters({"A", "B"}, {"C", "D"}))
        assert members(gset) == [{"a", "b"}, {"c", "d"}]

    def test_figure_like_two_components(self):
        gset = merge_global(
            clusters(
                {"the Philadelphia Eagles", "the Eagles"},
                {"the Eagles", "they"},
                {"Hilary", "Hilary Clinton"},
            )
        )
        assert members(gset) == [
            {"hilary", "hilary clinton"},
            {"the eagles", "the philadelphia eagles", "they"},
        ]

    def test_pronouns_never_link(self):
        gset = merge_global(clusters({"he", "Trump"}, {"he", "Obama"}))
        assert members(gset) == [{"obama"}, {"trump"}]

    def test_unambiguous_pronoun_retained(self):
        gset = merge_global(clusters({"he", "Trump"}, {"Trump", "Donald Trump"}))
        assert members(gset) == [{"donald trump", "he", "trump"}]

    def test_pronoun_only_cluster_vanishes(self):
        gset = merge_global(clusters({"he", "him"}, {"Trump"}))
        assert members(gset) == [{"trump"}]

    def test_order_invariance(self, rng):
        base = clusters({"a", "b"}, {"b", "c"}, {"d"}, {"d", "e"}, {"x", "y"}, {"he", "x"})
        expected = members(merge_global(base))
        for _ in range(10):
            perm = [base[i] for i in rng.permutation(len(base))]
            assert members(merge_global(perm)) == expected

    def brute_force_components(self, cluster_sets, pronouns):
        """Independent oracle: saturating graph walk over shared mentions."""
        links = [frozenset(m for m in c if m not in pronouns) for c in cluster_sets]
        mentions = sorted(set().union(*links)) if links else []
        seen: set[str] = set()
        out: list[set[str]] = []
        for seed in mentions:
            if seed in seen:
                continue
            group = {seed}
            while True:
                grew = False
                for link in links:
                    if link & group and not link <= group:
                        group |= link
                        grew = True
                if not grew:
                    break
            seen |= group
            out.append(group)
        return sorted(out, key=min)

    def test_matches_component_oracle_on_random_inputs(self, rng):
        vocab = [f"m{i}" for i in range(60)] + ["he", "she", "it"]
        for trial in range(200):
            n_clusters = int(rng.integers(1, 12))
            sets = []
            for _ in range(n_clusters):
                size = int(rng.integers(1, 5))
                sets.append(frozenset(rng.choice(vocab, size=size, replace=False)))
            local = [MentionCluster(s, f"d{i}") for i, s in enumerate(sets)]
            got = [
                set(m for m in c.mentions if m not in coref.DEFAULT_PRONOUNS)
                for c in merge_global(local).clusters
            ]
            got = sorted((g for g in got if g), key=min)
            expected = self.brute_force_components(sets, coref.DEFAULT_PRONOUNS)
            assert got == expected, f"trial {trial}"


class TestSelectCenter:
    def test_longest_span(self):
        c = MentionCluster(frozenset({"hilary", "hilary clinton"}), "global")
        assert select_center(c, CenterPolicy("longest"), {}) == "hilary clinton"

    def test_entity_most_frequent_tie_longest(self):
        c = MentionCluster(frozenset({"he", "the eagles", "the philadelphia eagles"}), "global")
        policy = CenterPolicy("entity", frozenset({"the eagles", "the philadelphia eagles"}))
        freq = {"the eagles": 5, "the philadelphia eagles": 5}
        assert select_center(c, policy, freq) == "the philadelphia eagles"

    def test_entity_frequency_dominates(self):
        c = MentionCluster(frozenset({"the eagles", "the philadelphia eagles"}), "global")
        policy = CenterPolicy("entity", frozenset({"the eagles", "the philadelphia eagles"}))
        assert select_center(c, policy, {"the eagles": 9, "the philadelphia eagles": 2}) == "the eagles"

    def test_wordnet_prefers_out_of_lexicon(self):
        c = MentionCluster(frozenset({"the team", "the warriors"}), "global")
        policy = CenterPolicy("wordnet", frozenset({"the team"}))
        assert select_center(c, policy, {"the team": 50, "the warriors": 3}) == "the warriors"

    def test_empty_candidates_fall_back_to_longest(self):
        c = MentionCluster(frozenset({"ab", "c"}), "global")
        policy = CenterPolicy("entity", frozenset({"zzz"}))
        assert select_center(c, policy, {"c": 99}) == "ab"

    def test_singleton(self):
        c = MentionCluster(frozenset({"trump"}), "global")
        for policy in (CenterPolicy("longest"), CenterPolicy("entity", frozenset({"trump"}))):
            assert select_center(c, policy, {}) == "trump"

    def test_missing_lexicon(self):
        with pytest.raises(MissingLexicon):
            CenterPolicy("wordnet")
        with pytest.raises(ValueError):
            CenterPolicy("longest", frozenset({"x"}))

    def test_deterministic(self):
        c = MentionCluster(frozenset({"aa", "bb", "cc"}), "global")
        results = {select_center(c, CenterPolicy("longest"), {}) for _ in range(5)}
        assert results == {"aa"}  # equal length -> lexicographic


class TestCanonicalize:
    def figure_set(self):
        gset = merge_global(
            clusters({"the Philadelphia Eagles", "the Eagles"}, {"Hilary", "Hilary Clinton"})
        )
        return assign_centers(gset, CenterPolicy("longest"), {})

    def test_maps_to_center(self):
        assert canonicalize("the Eagles", self.figure_set()) == "the philadelphia eagles"

    def test_unseen_subject_passthrough(self):
        assert canonicalize("zion", self.figure_set()) == "zion"

    def test_idempotent(self):
        gset = self.figure_set()
        for text in ("the Eagles", "HILARY", "zion", "the philadelphia eagles"):
            once = canonicalize(text, gset)
            assert canonicalize(once, gset) == once


class TestCorpusHelpers:
    def test_local_clusters_and_frequencies(self):
        docs = [
            make_doc("d1", "2019-01-01", [
                frame_sentence("trump", "blamed", "democrats"),
                cluster_sentence("Trump", "he"),
            ]),
            make_doc("d2", "2019-01-02", [
                frame_sentence("trump", "liked", "democrats"),
            ]),
        ]
        corp = make_corpus(docs)
        local = coref.local_clusters(corp)
        assert [set(c.mentions) for c in local] == [{"trump", "he"}]
        assert local[0].source_doc == "d1"
        freq = coref.mention_frequencies(corp)
        assert freq["trump"] == 2
        assert freq["democrats"] == 2

    def test_lexicon_load(self, tmp_path):
        p = tmp_path / "lex.txt"
        p.write_text("The Eagles\n\n  Hilary Clinton \n", encoding="utf-8")
        assert coref.load_lexicon(p) == frozenset({"the eagles", "hilary clinton"})
