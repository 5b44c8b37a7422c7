"""Subject-rooted role trees and their merging / ranking analytics.

A tree has one canonical subject at the root, verb nodes in the first layer
and object leaves under each verb; every edge weight is a raw co-occurrence
count. Similar objects merge via TF-IDF bag-of-words cosine, similar verbs
via word-vector cosine; both groupings are single-link connected components
over the at-or-above-threshold similarity graph, so they are deterministic
and order independent.
"""
from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping

from . import coref
from .corpus import Corpus
from .errors import InvalidThreshold

if TYPE_CHECKING:
    from .embeddings import EmbeddingSlice


@dataclass
class ObjectNode:
    label: str
    weight: int


@dataclass
class VerbNode:
    label: str
    weight: int
    objects: list[ObjectNode] = field(default_factory=list)

    @property
    def object_mass(self) -> int:
        return sum(o.weight for o in self.objects)


@dataclass
class RoleTree:
    subject: str
    verbs: list[VerbNode] = field(default_factory=list)

    @property
    def total_mass(self) -> int:
        return sum(v.weight for v in self.verbs)


@dataclass
class Forest:
    trees: dict[str, RoleTree]
    slice_label: str


@dataclass
class MergeConfig:
    object_sim_threshold: float = 0.7
    verb_sim_threshold: float = 0.6
    min_edge_weight: int = 1
    max_edge_weight: int = 10**9
    lemmatize: bool = False
    attach_modifiers: bool = True
    mark_negation: bool = True

    def __post_init__(self):
        if self.min_edge_weight > self.max_edge_weight:
            raise ValueError("min_edge_weight exceeds max_edge_weight")


def _verb_label(frame, config: MergeConfig) -> str:
    verb = frame.verb_lemma if (config.lemmatize and frame.verb_lemma) else frame.verb.text
    parts = []
    if config.attach_modifiers:
        parts += [coref.normalize_mention(m.text) for m in sorted(frame.modifiers, key=lambda s: s.start)]
    if config.mark_negation and frame.negated:
        parts.append("not")
    parts.append(coref.normalize_mention(verb))
    return " ".join(p for p in parts if p)


def build_forest(
    corpus_slice: Corpus,
    globals_: coref.GlobalClusterSet | None,
    config: MergeConfig,
) -> Forest:
    """Aggregate all frames of one time slice into subject-rooted trees.

    Subjects are canonicalized through the global coreference clusters when
    given (plain normalization otherwise); weights are raw counts. Verbs sort
    by weight descending then label, objects likewise, so output is stable.
    """
    counts: dict[str, dict[str, Counter]] = defaultdict(lambda: defaultdict(Counter))
    bare: dict[str, Counter] = defaultdict(Counter)
    for doc in corpus_slice.documents:
        for sent in doc.sentences:
            for frame in sent.frames:
                if globals_ is not None:
                    subject = coref.canonicalize(frame.subject.text, globals_)
                else:
                    subject = coref.normalize_mention(frame.subject.text)
                if not subject:
                    continue
                verb = _verb_label(frame, config)
                if frame.object is None:
                    bare[subject][verb] += 1
                else:
                    counts[subject][verb][coref.normalize_mention(frame.object.text)] += 1

    trees: dict[str, RoleTree] = {}
    for subject in sorted(set(counts) | set(bare)):
        verbs = []
        for label in set(counts[subject]) | set(bare[subject]):
            objs = [
                ObjectNode(obj, w)
                for obj, w in sorted(counts[subject][label].items(), key=lambda kv: (-kv[1], kv[0]))
            ]
            weight = sum(o.weight for o in objs) + bare[subject][label]
            verbs.append(VerbNode(label, weight, objs))
        verbs.sort(key=lambda v: (-v.weight, v.label))
        trees[subject] = RoleTree(subject, verbs)
    label = corpus_slice.slices[0].label if corpus_slice.slices else ""
    return Forest(trees, label)


# --- object merging -----------------------------------------------------

def _tfidf_vectors(docs: list[str]) -> list[dict[str, float]]:
    """One sparse TF-IDF vector per phrase; idf is the smoothed variant
    log((1 + N) / (1 + df)) + 1 so single-corpus phrases keep nonzero weight.
    """
    bags = [Counter(doc.split()) for doc in docs]
    df: Counter = Counter()
    for bag in bags:
        df.update(bag.keys())
    n = len(docs)
    idf = {t: math.log((1 + n) / (1 + d)) + 1.0 for t, d in df.items()}
    return [{t: c * idf[t] for t, c in bag.items()} for bag in bags]


def _sparse_cosine(u: Mapping[str, float], v: Mapping[str, float]) -> float:
    if len(v) < len(u):
        u, v = v, u
    dot = sum(w * v.get(t, 0.0) for t, w in u.items())
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def _components(n: int, linked) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if linked(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _coalesce(objects: list[ObjectNode]) -> list[ObjectNode]:
    acc: dict[str, int] = defaultdict(int)
    for o in objects:
        acc[o.label] += o.weight
    return [ObjectNode(l, w) for l, w in acc.items()]


def _merge_objects_pass(tree: RoleTree, threshold: float) -> tuple[RoleTree, bool]:
    corpus_phrases = [o.label for v in tree.verbs for o in v.objects]
    vectors = _tfidf_vectors(corpus_phrases)
    vec_of = {}
    for phrase, vec in zip(corpus_phrases, vectors):
        vec_of[phrase] = vec

    changed = False
    new_verbs = []
    for verb in tree.verbs:
        objs = _coalesce(verb.objects)
        if len(objs) != len(verb.objects):
            changed = True
        groups = _components(
            len(objs),
            lambda i, j: _sparse_cosine(vec_of[objs[i].label], vec_of[objs[j].label]) >= threshold,
        )
        merged = []
        for group in groups:
            members = [objs[i] for i in group]
            if len(members) > 1:
                changed = True
            label = min(members, key=lambda o: (-o.weight, -len(o.label), o.label)).label
            merged.append(ObjectNode(label, sum(o.weight for o in members)))
        merged.sort(key=lambda o: (-o.weight, o.label))
        new_verbs.append(VerbNode(verb.label, verb.weight, merged))
    return RoleTree(tree.subject, new_verbs), changed


def merge_objects(tree: RoleTree, threshold: float) -> RoleTree:
    """Group similar objects under each verb and sum their edge weights.

    Similarity is cosine over TF-IDF bags where each object phrase is one
    document and the corpus is every object phrase in the tree. Grouping is
    single-link; the surviving label is the heaviest member's (ties: longer
    string, then lexicographic). Passes repeat until a fixpoint because
    relabeling shifts document frequencies, which guarantees idempotence.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidThreshold(f"object threshold {threshold} outside [0, 1]")
    while True:
        tree, changed = _merge_objects_pass(tree, threshold)
        if not changed:
            return tree


# --- verb merging -------------------------------------------------------

def _verb_vector(label: str, vectors: "EmbeddingSlice"):
    idx = vectors.vocab.index.get(label)
    if idx is None and " " in label:
        idx = vectors.vocab.index.get(label.replace(" ", "_"))
    return None if idx is None else vectors.matrix[idx]


def merge_verbs(
    tree: RoleTree,
    vectors: "EmbeddingSlice | None",
    threshold: float,
    object_threshold: float = 1.0,
) -> RoleTree:
    """Group verbs whose word vectors have cosine at or above the threshold.

    Out-of-vocabulary verbs never merge. The merged node takes the heaviest
    member's label (ties lexicographic), object lists are concatenated and
    re-merged through merge_objects at ``object_threshold``.
    """
    if not -1.0 <= threshold <= 1.0:
        raise InvalidThreshold(f"verb threshold {threshold} outside [-1, 1]")
    verbs = tree.verbs
    if vectors is None or len(verbs) < 2:
        return merge_objects(tree, object_threshold)

    rows = [_verb_vector(v.label, vectors) for v in verbs]

    def linked(i: int, j: int) -> bool:
        a, b = rows[i], rows[j]
        if a is None or b is None:
            return False
        denom = float((a @ a) ** 0.5 * (b @ b) ** 0.5)
        if denom == 0.0:
            return False
        return float(a @ b) / denom >= threshold

    new_verbs = []
    for group in _components(len(verbs), linked):
        members = [verbs[i] for i in group]
        label = min(members, key=lambda v: (-v.weight, v.label)).label
        objects = [o for v in members for o in v.objects]
        new_verbs.append(VerbNode(label, sum(v.weight for v in members), _coalesce(objects)))
    new_verbs.sort(key=lambda v: (-v.weight, v.label))
    return merge_objects(RoleTree(tree.subject, new_verbs), object_threshold)


def filter_verbs(tree: RoleTree, min_w: int, max_w: int) -> RoleTree:
    """Keep verb nodes whose weight lies in [min_w, max_w]."""
    if min_w > max_w:
        raise ValueError("min_w exceeds max_w")
    kept = [v for v in tree.verbs if min_w <= v.weight <= max_w]
    return RoleTree(tree.subject, kept)


# --- analytics ----------------------------------------------------------

@dataclass(frozen=True)
class RankedVerb:
    verb: str
    weight: int
    main_object: str | None


def verb_ranking(
    forest_by_month: Mapping[str, Forest],
    subject: str,
) -> dict[str, list[RankedVerb]]:
    """Per month, the subject's verbs by weight descending (ties by label).

    main_object is the heaviest object under the verb, None for verbs seen
    only without objects.
    """
    out: dict[str, list[RankedVerb]] = {}
    for month in sorted(forest_by_month):
        tree = forest_by_month[month].trees.get(subject)
        ranked = []
        if tree is not None:
            for verb in sorted(tree.verbs, key=lambda v: (-v.weight, v.label)):
                main = None
                if verb.objects:
                    main = min(verb.objects, key=lambda o: (-o.weight, o.label)).label
                ranked.append(RankedVerb(verb.label, verb.weight, main))
        out[month] = ranked
    return out


def object_weight(tree: RoleTree, object_label: str) -> int:
    """Total edge weight from any verb down to the given object."""
    return sum(
        o.weight for v in tree.verbs for o in v.objects if o.label == object_label
    )


def object_shares(
    forest_by_month: Mapping[str, Forest],
    subject: str,
    k: int,
) -> dict[str, list[tuple[str, float]]]:
    """Monthly share of each of the global top-k objects, plus "Others".

    The top-k set is fixed across months (ranked by total weight over all
    months); each month's shares divide by that month's total object mass, so
    they sum to 1 for any month with at least one object edge. Months where
    the subject has no object mass report all-zero shares.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    monthly: dict[str, Counter] = {}
    total: Counter = Counter()
    for month, forest in forest_by_month.items():
        tree = forest.trees.get(subject)
        weights: Counter = Counter()
        if tree is not None:
            for verb in tree.verbs:
                for obj in verb.objects:
                    weights[obj.label] += obj.weight
        monthly[month] = weights
        total.update(weights)

    top = [label for label, _ in sorted(total.items(), key=lambda kv: (-kv[1], kv[0]))[:k]]
    out: dict[str, list[tuple[str, float]]] = {}
    for month in sorted(monthly):
        weights = monthly[month]
        mass = sum(weights.values())
        if mass == 0:
            out[month] = [(label, 0.0) for label in top] + [("Others", 0.0)]
            continue
        shares = [(label, weights.get(label, 0) / mass) for label in top]
        out[month] = shares + [("Others", 1.0 - sum(s for _, s in shares))]
    return out


# --- export -------------------------------------------------------------

def forest_to_rows(forest: Forest) -> list[dict]:
    """Line-delimited export: one row per verb-object edge; verbs seen
    without an object get a row with object null carrying that bare count."""
    rows = []
    for subject in sorted(forest.trees):
        tree = forest.trees[subject]
        for verb in tree.verbs:
            for obj in verb.objects:
                rows.append(
                    {
                        "subject": subject,
                        "verb": verb.label,
                        "object": obj.label,
                        "weight": obj.weight,
                        "month": forest.slice_label,
                    }
                )
            bare = verb.weight - verb.object_mass
            if bare > 0:
                rows.append(
                    {
                        "subject": subject,
                        "verb": verb.label,
                        "object": None,
                        "weight": bare,
                        "month": forest.slice_label,
                    }
                )
    return rows


def rows_to_forest(rows: Iterable[dict], slice_label: str) -> Forest:
    counts: dict[str, dict[str, Counter]] = defaultdict(lambda: defaultdict(Counter))
    bare: dict[str, Counter] = defaultdict(Counter)
    for row in rows:
        if row["month"] != slice_label:
            continue
        if row["object"] is None:
            bare[row["subject"]][row["verb"]] += row["weight"]
        else:
            counts[row["subject"]][row["verb"]][row["object"]] += row["weight"]
    trees = {}
    for subject in sorted(set(counts) | set(bare)):
        verbs = []
        for label in set(counts[subject]) | set(bare[subject]):
            objs = [
                ObjectNode(obj, w)
                for obj, w in sorted(counts[subject][label].items(), key=lambda kv: (-kv[1], kv[0]))
            ]
            weight = sum(o.weight for o in objs) + bare[subject][label]
            verbs.append(VerbNode(label, weight, objs))
        verbs.sort(key=lambda v: (-v.weight, v.label))
        trees[subject] = RoleTree(subject, verbs)
    return Forest(trees, slice_label)


def forest_to_jsonl(forest: Forest) -> str:
    return "".join(
        json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n"
        for row in forest_to_rows(forest)
    )


def forest_from_jsonl(text: str, slice_label: str) -> Forest:
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    return rows_to_forest(rows, slice_label)


def tree_to_graph(tree: RoleTree) -> dict:
    """Hierarchical payload for the explorer UI: nodes carry ids, labels and
    weights; edges carry the co-occurrence weight."""
    nodes = [{"id": "subject", "label": tree.subject, "weight": tree.total_mass, "kind": "subject"}]
    edges = []
    for verb in tree.verbs:
        vid = f"v:{verb.label}"
        nodes.append({"id": vid, "label": verb.label, "weight": verb.weight, "kind": "verb"})
        edges.append({"source": "subject", "target": vid, "weight": verb.weight})
        for obj in verb.objects:
            oid = f"o:{verb.label}:{obj.label}"
            nodes.append({"id": oid, "label": obj.label, "weight": obj.weight, "kind": "object"})
            edges.append({"source": vid, "target": oid, "weight": obj.weight})
    return {"subject": tree.subject, "nodes": nodes, "edges": edges}
