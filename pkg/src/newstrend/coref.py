"""Cross-document coreference: global cluster merging and center-role selection.

Document-local clusters are unioned into global ones whenever they share a
normalized mention, repeatedly, until no two clusters share one. Each global
cluster then gets a single representative ("center") mention chosen by one of
three policies, and subjects are canonicalized to the center of the cluster
containing them.

Pronouns never trigger a merge (otherwise every cluster containing "he"
collapses into one); they stay inside a cluster only when they occur in
exactly one global cluster, which keeps clusters pairwise disjoint and the
result independent of input order.
"""
from __future__ import annotations

import json
import string
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import Corpus
from .errors import MissingLexicon

DEFAULT_PRONOUNS = frozenset(
    """
    i me my mine myself we us our ours ourselves you your yours yourself
    he him his himself she her hers herself it its itself they them their
    theirs themselves this that these those who whom which
    """.split()
)

_EDGE_PUNCT = string.punctuation + string.whitespace


def normalize_mention(text: str) -> str:
    """Case-fold, collapse internal whitespace, strip edge punctuation."""
    folded = " ".join(text.casefold().split())
    return folded.strip(_EDGE_PUNCT)


@dataclass(frozen=True)
class MentionCluster:
    mentions: frozenset[str]
    source_doc: str

    def __post_init__(self):
        if not self.mentions:
            raise ValueError("cluster must hold at least one mention")


@dataclass(frozen=True)
class CenterPolicy:
    """How to pick a cluster's representative mention.

    kind:
      longest  -- longest mention wins.
      wordnet  -- mentions absent from the lexicon are the candidates
                  (in-lexicon spans are generic nouns); most frequent wins.
      entity   -- mentions present in the entity lexicon are the candidates;
                  most frequent wins.

    Ties fall back to longest length, then lexicographic order. If a policy's
    candidate set is empty the longest-span rule decides over all mentions.
    """

    kind: str
    lexicon: frozenset[str] | None = None

    KINDS = ("longest", "wordnet", "entity")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind == "longest":
            if self.lexicon is not None:
                raise ValueError("longest-span policy takes no lexicon")
        elif self.lexicon is None:
            raise MissingLexicon(f"policy {self.kind!r} requires a lexicon")


@dataclass
class GlobalClusterSet:
    clusters: list[MentionCluster]
    centers: dict[int, str] = field(default_factory=dict)
    mention_index: dict[str, int] = field(default_factory=dict)

    def cluster_of(self, mention: str) -> int | None:
        return self.mention_index.get(normalize_mention(mention))


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def add(self, x: str) -> None:
        self.parent.setdefault(x, x)

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def merge_global(
    local: Iterable[MentionCluster],
    pronouns: frozenset[str] = DEFAULT_PRONOUNS,
) -> GlobalClusterSet:
    """Union local clusters into global ones via shared non-pronoun mentions.

    Two mentions land in the same global cluster iff a chain of local
    clusters connects them, each adjacent pair sharing a mention. Centers are
    left unset. Clusters made of pronouns only contribute nothing.
    """
    uf = _UnionFind()
    normalized: list[list[str]] = []
    for cluster in local:
        keys = sorted({normalize_mention(m) for m in cluster.mentions} - {""})
        normalized.append(keys)
        linkable = [k for k in keys if k not in pronouns]
        for k in linkable:
            uf.add(k)
        for a, b in zip(linkable, linkable[1:]):
            uf.union(a, b)

    groups: dict[str, set[str]] = defaultdict(set)
    pronoun_homes: dict[str, set[str]] = defaultdict(set)
    for keys in normalized:
        linkable = [k for k in keys if k not in pronouns]
        if not linkable:
            continue
        root = uf.find(linkable[0])
        groups[root].update(linkable)
        for k in keys:
            if k in pronouns:
                pronoun_homes[k].add(root)

    for pronoun, roots in pronoun_homes.items():
        if len(roots) == 1:
            groups[next(iter(roots))].add(pronoun)

    ordered = sorted(groups.values(), key=lambda ms: min(ms))
    clusters = [MentionCluster(frozenset(ms), "global") for ms in ordered]
    index = {m: i for i, cluster in enumerate(clusters) for m in cluster.mentions}
    return GlobalClusterSet(clusters, {}, index)


def _longest(mentions: Iterable[str]) -> str:
    return min(mentions, key=lambda m: (-len(m), m))


def select_center(
    cluster: MentionCluster,
    policy: CenterPolicy,
    frequency: Mapping[str, int],
) -> str:
    """Pick the cluster's representative mention under the given policy.

    Ties break by longest character length, then lexicographic order.
    """
    mentions = sorted(cluster.mentions)
    if policy.kind == "longest":
        return _longest(mentions)
    if policy.lexicon is None:
        raise MissingLexicon(f"policy {policy.kind!r} requires a lexicon")
    if policy.kind == "wordnet":
        candidates = [m for m in mentions if m not in policy.lexicon]
    else:
        candidates = [m for m in mentions if m in policy.lexicon]
    if not candidates:
        return _longest(mentions)
    return min(candidates, key=lambda m: (-frequency.get(m, 0), -len(m), m))


def assign_centers(
    globals_: GlobalClusterSet,
    policy: CenterPolicy,
    frequency: Mapping[str, int],
) -> GlobalClusterSet:
    centers = {
        i: select_center(cluster, policy, frequency)
        for i, cluster in enumerate(globals_.clusters)
    }
    return GlobalClusterSet(globals_.clusters, centers, globals_.mention_index)


def canonicalize(subject_text: str, globals_: GlobalClusterSet) -> str:
    """Map a subject to its cluster's center; unknown subjects pass through.

    Requires centers to be assigned. Idempotent: centers map to themselves.
    """
    norm = normalize_mention(subject_text)
    idx = globals_.mention_index.get(norm)
    if idx is None:
        return norm
    if idx not in globals_.centers:
        raise ValueError("centers have not been assigned")
    return globals_.centers[idx]


def local_clusters(corpus: Corpus) -> list[MentionCluster]:
    """Collect every document-local cluster as normalized mention strings."""
    out = []
    for doc in corpus.documents:
        for sent in doc.sentences:
            for spans in sent.clusters:
                mentions = {normalize_mention(sp.text) for sp in spans} - {""}
                if mentions:
                    out.append(MentionCluster(frozenset(mentions), doc.doc_id))
    return out


def mention_frequencies(corpus: Corpus) -> Counter:
    """Frames in which a mention occurs as subject or object, corpus-wide."""
    freq: Counter = Counter()
    for doc in corpus.documents:
        for sent in doc.sentences:
            for frame in sent.frames:
                freq[normalize_mention(frame.subject.text)] += 1
                if frame.object is not None:
                    freq[normalize_mention(frame.object.text)] += 1
    return freq


def load_lexicon(path: str | Path) -> frozenset[str]:
    """One normalized phrase per line; blank lines ignored."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            normalize_mention(line) for line in fh if line.strip()
        ) - frozenset([""])


def write_cluster_report(globals_: GlobalClusterSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in cluster_report_lines(globals_):
            fh.write(line + "\n")


def cluster_report_lines(globals_: GlobalClusterSet) -> list[str]:
    lines = []
    for i, cluster in enumerate(globals_.clusters):
        lines.append(
            json.dumps(
                {
                    "id": i,
                    "center": globals_.centers.get(i),
                    "members": sorted(cluster.mentions),
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    return lines
