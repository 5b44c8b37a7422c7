"""End-to-end batch pipeline: ingest -> coref -> forests -> embeddings ->
alignment -> reports, materialized as an artifact store.

Configuration is a YAML (or JSON) document; every knob mirrors a module
default, so a config naming only the corpus and output directory is valid.
In deterministic mode (the default) reruns over unchanged inputs leave every
artifact byte-identical and untouched on disk.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from . import alignment, coref, corpus as corpus_mod, embeddings, forest, projection, trends
from .errors import PipelineError
from .store import ArtifactStore


@dataclass
class ReportConfig:
    keys: list[str] = field(default_factory=list)
    neighbor_n: int = 5
    drift_pool: int = 100
    drift_top: int = 10
    projection_n: int = 8
    perplexity: float = 15.0
    iterations: int = 1000
    tsne_seed: int = 42


@dataclass
class PipelineConfig:
    corpus: str = ""
    out_dir: str = "store"
    topic_prefix: str | None = None
    coref_policy: str = "longest"
    lexicon: str | None = None
    pronouns: list[str] | None = None
    merge: forest.MergeConfig = field(default_factory=forest.MergeConfig)
    phrases_enabled: bool = True
    phrase_min_count: int = 5
    phrase_threshold: float = 10.0
    train: embeddings.TrainConfig = field(default_factory=embeddings.TrainConfig)
    anchor: str | None = None
    shared_top: int | None = 5000
    reports: ReportConfig = field(default_factory=ReportConfig)
    deterministic: bool = True


def load_config(path: str | Path) -> PipelineConfig:
    raw: dict[str, Any] = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    base = Path(path).parent

    def respath(value):
        if value is None:
            return None
        p = Path(value)
        return str(p if p.is_absolute() else base / p)

    cfg = PipelineConfig(
        corpus=respath(raw.get("corpus", "")) or "",
        out_dir=respath(raw.get("store", raw.get("out_dir", "store"))) or "store",
        topic_prefix=raw.get("topic_prefix"),
        deterministic=bool(raw.get("deterministic", True)),
    )
    co = raw.get("coref", {})
    cfg.coref_policy = co.get("policy", "longest")
    cfg.lexicon = respath(co.get("lexicon"))
    cfg.pronouns = co.get("pronouns")
    fo = raw.get("forest", {})
    cfg.merge = forest.MergeConfig(**fo) if fo else forest.MergeConfig()
    ph = raw.get("phrases", {})
    cfg.phrases_enabled = bool(ph.get("enabled", True))
    cfg.phrase_min_count = int(ph.get("min_count", 5))
    cfg.phrase_threshold = float(ph.get("score_threshold", 10.0))
    em = raw.get("embedding", {})
    cfg.train = embeddings.TrainConfig(**em) if em else embeddings.TrainConfig()
    al = raw.get("alignment", {})
    cfg.anchor = al.get("anchor")
    cfg.shared_top = al.get("shared_top", 5000)
    re_ = raw.get("reports", {})
    cfg.reports = ReportConfig(**re_) if re_ else ReportConfig()
    return cfg


def _subject_slug(subject: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in subject)


def run_pipeline(cfg: PipelineConfig) -> ArtifactStore:
    """Run every stage and return the finalized store."""
    store = ArtifactStore(cfg.out_dir)

    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PipelineError:
            raise
        except Exception as e:
            raise PipelineError(name, e) from e

    corp = stage("ingest", corpus_mod.load_corpus, cfg.corpus)
    if cfg.topic_prefix:
        corp = corpus_mod.filter_by_topic(corp, cfg.topic_prefix)
    store.write_text("corpus.jsonl", _corpus_text(corp))

    # coref: global clusters + centers
    def coref_stage():
        locals_ = coref.local_clusters(corp)
        pronouns = (
            frozenset(cfg.pronouns) if cfg.pronouns is not None else coref.DEFAULT_PRONOUNS
        )
        globals_ = coref.merge_global(locals_, pronouns)
        lexicon = coref.load_lexicon(cfg.lexicon) if cfg.lexicon else None
        policy = coref.CenterPolicy(cfg.coref_policy, lexicon)
        freq = coref.mention_frequencies(corp)
        return coref.assign_centers(globals_, policy, freq)

    globals_ = stage("coref", coref_stage)
    store.write_text("coref/clusters.jsonl", "\n".join(coref.cluster_report_lines(globals_)) + "\n")

    # per-slice unmerged forests
    def forests_stage():
        out = {}
        for ts in corp.slices:
            sliced = corpus_mod.slice(corp, ts.label)
            out[ts.label] = forest.build_forest(sliced, globals_, cfg.merge)
        return out

    forests = stage("forest", forests_stage)
    subjects = sorted({s for f in forests.values() for s in f.trees})
    for label, f in forests.items():
        store.write_text(f"forests/{label}.jsonl", forest.forest_to_jsonl(f))
    for label, f in forests.items():
        for subject, tree in f.trees.items():
            payload = forest.tree_to_graph(tree)
            payload["month"] = label
            store.write_text(
                f"graphs/{label}/{_subject_slug(subject)}.json",
                json.dumps(payload, ensure_ascii=False, sort_keys=True) + "\n",
            )

    # phrases on the full corpus, then one embedding model per slice
    def phrases_stage():
        if not cfg.phrases_enabled:
            return None
        return embeddings.learn_phrases(
            embeddings.token_sentences(corp),
            min_count=cfg.phrase_min_count,
            score_threshold=cfg.phrase_threshold,
        )

    phrase_model = stage("phrases", phrases_stage)
    if phrase_model is not None:
        store.write_text(
            "phrases.json",
            json.dumps(
                {p: round(s, 6) for p, s in sorted(phrase_model.phrase_scores.items())},
                ensure_ascii=False,
                sort_keys=True,
                indent=0,
            )
            + "\n",
        )

    def embed_stage():
        out = []
        for ts in corp.slices:
            sliced = corpus_mod.slice(corp, ts.label)
            sliced = corpus_mod.Corpus(sliced.documents, [ts])  # keep global index
            out.append(embeddings.train_slice(sliced, phrase_model, cfg.train))
        return out

    slices = stage("embed", embed_stage)
    for s in slices:
        store.write_text(f"embeddings/{s.slice.label}.txt", _embedding_text(s))

    def align_stage():
        return alignment.align_series(slices, cfg.anchor, cfg.shared_top)

    aligned, amap = stage("align", align_stage)
    for s in aligned.slices:
        store.write_text(f"aligned/{s.slice.label}.txt", _embedding_text(s))
    for label, R in amap.transforms.items():
        rows = "\n".join(" ".join(repr(float(x)) for x in row) for row in R)
        store.write_text(f"aligned/transforms/{label}.txt", rows + "\n")

    def reports_stage():
        for key in cfg.reports.keys:
            present = [s for s in aligned.slices if key in s.vocab.index]
            if not present:
                continue
            table = trends.neighbors(aligned, key, cfg.reports.neighbor_n)
            lines = ["word\tslice\tcosine"]
            for label in aligned.labels:
                for word, cos in table.per_slice[label]:
                    lines.append(f"{word}\t{label}\t{cos:.6f}")
            store.write_text(f"reports/neighbors_{_subject_slug(key)}.tsv", "\n".join(lines) + "\n")

            if len(present) == len(aligned.slices) and len(aligned.slices) >= 2:
                report = trends.top_drift_words(
                    aligned, key, cfg.reports.drift_pool, cfg.reports.drift_top
                )
                lines = ["word\tdrift"]
                for word, value in report.candidates:
                    lines.append(f"{word}\t{value:.6f}")
                store.write_text(f"reports/drift_{_subject_slug(key)}.tsv", "\n".join(lines) + "\n")
                lines = ["word\tslice\tcosine"]
                for word in sorted(report.series):
                    for label, value in zip(aligned.labels, report.series[word]):
                        lines.append(f"{word}\t{label}\t{value:.6f}")
                store.write_text(f"reports/series_{_subject_slug(key)}.tsv", "\n".join(lines) + "\n")

            points = projection.pool_neighbors(aligned, key, cfg.reports.projection_n)
            n = len(points.labels)
            perp = min(cfg.reports.perplexity, (n - 1) / 3.0 - 1e-9)
            if n >= 3 and perp >= 1.0:
                proj = projection.tsne(points, perp, cfg.reports.iterations, cfg.reports.tsne_seed)
                lines = ["label\tx\ty"]
                for label in points.labels:
                    x, y = proj.coords[label]
                    lines.append(f"{label}\t{x:.6f}\t{y:.6f}")
                store.write_text(f"reports/projection_{_subject_slug(key)}.tsv", "\n".join(lines) + "\n")

    stage("reports", reports_stage)

    store.meta = {
        "slices": [ts.label for ts in corp.slices],
        "subjects": subjects,
        "anchor": amap.anchor,
        "report_keys": list(cfg.reports.keys),
        "merge_defaults": {
            "object_sim_threshold": cfg.merge.object_sim_threshold,
            "verb_sim_threshold": cfg.merge.verb_sim_threshold,
            "min_edge_weight": cfg.merge.min_edge_weight,
            "max_edge_weight": cfg.merge.max_edge_weight,
        },
    }
    store.finalize()
    return store


def _corpus_text(corp: corpus_mod.Corpus) -> str:
    return "".join(
        json.dumps(corpus_mod.document_to_json(d), ensure_ascii=False, sort_keys=True) + "\n"
        for d in corp.documents
    )


def _embedding_text(s: embeddings.EmbeddingSlice) -> str:
    header = f"{s.vocab.size} {s.d} {s.slice.label}"
    if s.aligned_to is not None:
        header += f" aligned_to: {s.aligned_to}"
    lines = [header]
    for i, word in enumerate(s.vocab.words):
        lines.append(word + " " + " ".join(repr(float(x)) for x in s.matrix[i]))
    return "\n".join(lines) + "\n"
