"""Shared builders for synthetic annotated documents and embeddings."""
from __future__ import annotations

from datetime import date
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

from newstrend.corpus import (
    AnnotatedDocument,
    Corpus,
    Frame,
    Sentence,
    TimeSlice,
    TokenSpan,
)
from newstrend.embeddings import EmbeddingSlice, Vocabulary


def span(tokens: list[str], start: int, end: int) -> TokenSpan:
    return TokenSpan(start, end, " ".join(tokens[start:end]))


def frame_sentence(
    subject: str,
    verb: str,
    obj: str | None = None,
    modifier: str | None = None,
    negated: bool = False,
    verb_lemma: str | None = None,
) -> Sentence:
    """One sentence holding exactly one frame, tokens laid out in order."""
    subj_toks = subject.split()
    mod_toks = [modifier] if modifier else []
    obj_toks = obj.split() if obj else []
    tokens = subj_toks + mod_toks + [verb] + obj_toks
    i = len(subj_toks)
    subj_span = span(tokens, 0, i)
    modifiers = []
    if modifier:
        modifiers.append(span(tokens, i, i + 1))
        i += 1
    verb_span = span(tokens, i, i + 1)
    i += 1
    obj_span = span(tokens, i, i + len(obj_toks)) if obj_toks else None
    return Sentence(
        tokens,
        [Frame(subj_span, verb_span, obj_span, modifiers, negated, verb_lemma)],
    )


def cluster_sentence(*phrases: str) -> Sentence:
    """A sentence whose only annotation is one coref cluster over phrases."""
    tokens: list[str] = []
    spans = []
    for phrase in phrases:
        toks = phrase.split()
        spans.append(span(tokens + toks, len(tokens), len(tokens) + len(toks)))
        tokens.extend(toks)
    return Sentence(tokens, [], [spans])


def make_doc(
    doc_id: str,
    day: str,
    sentences: list[Sentence],
    topic: str | None = None,
) -> AnnotatedDocument:
    return AnnotatedDocument(doc_id, date.fromisoformat(day), sentences, topic)


def make_corpus(docs: list[AnnotatedDocument]) -> Corpus:
    months = sorted({d.month for d in docs})
    return Corpus(docs, [TimeSlice(m, i + 1) for i, m in enumerate(months)])


def embedding_slice(
    label: str,
    words: dict[str, np.ndarray] | dict[str, list[float]],
    index: int = 1,
    counts: dict[str, int] | None = None,
) -> EmbeddingSlice:
    names = list(words)
    matrix = np.array([np.asarray(words[w], dtype=np.float64) for w in names])
    cnt = np.array([(counts or {}).get(w, 1) for w in names], dtype=np.int64)
    vocab = Vocabulary(names, cnt, {w: i for i, w in enumerate(names)})
    return EmbeddingSlice(TimeSlice(label, index), vocab, matrix, matrix.shape[1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def fixture_store(tmp_path_factory):
    """The bundled 200-document corpus run through the full pipeline once."""
    from newstrend import pipeline

    out = tmp_path_factory.mktemp("store")
    cfg = pipeline.load_config(FIXTURES / "pipeline.yaml")
    cfg.out_dir = str(out)
    return pipeline.run_pipeline(cfg)
