"""Annotation data model and corpus IO.

A corpus is a UTF-8 JSON-lines file, one document per line:

    {"doc_id": "...", "published_at": "2019-01-17", "topic": "/sports/basketball" | null,
     "sentences": [{"tokens": ["..."],
                    "frames": [{"subject": {"start": 0, "end": 1},
                                "verb": {"start": 1, "end": 2},
                                "object": {"start": 2, "end": 4} | null,
                                "modifiers": [{"start": ..., "end": ...}],
                                "negated": false,
                                "verb_lemma": "..." | null}],
                    "clusters": [[{"start": 0, "end": 1}, {"start": 5, "end": 7}]]}]}

Documents are bucketed into calendar-month time slices by their publication
date. Loading validates every span against the sentence token bounds and
rejects the whole file on the first malformed record.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Iterable, Iterator

from .errors import EmptyCorpus, MalformedRecord, UnknownSlice


@dataclass(frozen=True)
class TokenSpan:
    """Half-open token range [start, end) with its cached surface text."""

    start: int
    end: int
    text: str


@dataclass
class Frame:
    """One subject-verb(-object) tuple extracted from a sentence."""

    subject: TokenSpan
    verb: TokenSpan
    object: TokenSpan | None = None
    modifiers: list[TokenSpan] = field(default_factory=list)
    negated: bool = False
    verb_lemma: str | None = None


@dataclass
class Sentence:
    tokens: list[str]
    frames: list[Frame] = field(default_factory=list)
    clusters: list[list[TokenSpan]] = field(default_factory=list)


@dataclass
class AnnotatedDocument:
    doc_id: str
    published_at: date
    sentences: list[Sentence]
    topic: str | None = None

    @property
    def month(self) -> str:
        return f"{self.published_at.year:04d}-{self.published_at.month:02d}"


@dataclass(frozen=True)
class TimeSlice:
    """One calendar month; ``index`` is the 1-based chronological position."""

    label: str
    index: int


@dataclass
class Corpus:
    documents: list[AnnotatedDocument]
    slices: list[TimeSlice]

    @property
    def slice_labels(self) -> list[str]:
        return [s.label for s in self.slices]


def _make_slices(documents: Iterable[AnnotatedDocument]) -> list[TimeSlice]:
    months = sorted({doc.month for doc in documents})
    return [TimeSlice(label, i + 1) for i, label in enumerate(months)]


def _parse_span(obj, tokens: list[str], what: str) -> TokenSpan:
    if not isinstance(obj, dict) or "start" not in obj or "end" not in obj:
        raise ValueError(f"{what} span must be an object with start/end")
    start, end = obj["start"], obj["end"]
    if not isinstance(start, int) or not isinstance(end, int):
        raise ValueError(f"{what} span indices must be integers")
    if start < 0 or end > len(tokens):
        raise ValueError(f"{what} span [{start}, {end}) outside token bounds 0..{len(tokens)}")
    if start >= end:
        raise ValueError(f"{what} span [{start}, {end}) is empty")
    return TokenSpan(start, end, " ".join(tokens[start:end]))


def _spans_overlap(a: TokenSpan, b: TokenSpan) -> bool:
    return a.start < b.end and b.start < a.end


def parse_document(obj) -> AnnotatedDocument:
    """Build a validated document from one decoded JSON record.

    Raises ValueError with a human-readable reason on any schema or span
    violation; the loader attaches the offending line number.
    """
    if not isinstance(obj, dict):
        raise ValueError("record is not a JSON object")
    doc_id = obj.get("doc_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise ValueError("doc_id missing or empty")
    try:
        published_at = date.fromisoformat(obj.get("published_at", ""))
    except (TypeError, ValueError):
        raise ValueError("published_at is not an ISO-8601 date") from None
    topic = obj.get("topic")
    if topic is not None and not isinstance(topic, str):
        raise ValueError("topic must be a string or null")

    sentences = []
    for s_i, sent_obj in enumerate(obj.get("sentences", [])):
        tokens = sent_obj.get("tokens")
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ValueError(f"sentence {s_i}: tokens must be a list of strings")
        frames = []
        for f_i, frame_obj in enumerate(sent_obj.get("frames", [])):
            where = f"sentence {s_i} frame {f_i}"
            subject = _parse_span(frame_obj.get("subject"), tokens, f"{where} subject")
            verb = _parse_span(frame_obj.get("verb"), tokens, f"{where} verb")
            if _spans_overlap(subject, verb):
                raise ValueError(f"{where}: subject and verb spans overlap")
            obj_span = frame_obj.get("object")
            object_ = None if obj_span is None else _parse_span(obj_span, tokens, f"{where} object")
            modifiers = [
                _parse_span(m, tokens, f"{where} modifier {m_i}")
                for m_i, m in enumerate(frame_obj.get("modifiers", []))
            ]
            negated = bool(frame_obj.get("negated", False))
            lemma = frame_obj.get("verb_lemma")
            if lemma is not None:
                if not isinstance(lemma, str) or not lemma or lemma != lemma.lower():
                    raise ValueError(f"{where}: verb_lemma must be non-empty lowercase")
            frames.append(Frame(subject, verb, object_, modifiers, negated, lemma))
        clusters = [
            [_parse_span(sp, tokens, f"sentence {s_i} cluster {c_i}") for sp in cluster]
            for c_i, cluster in enumerate(sent_obj.get("clusters", []))
        ]
        sentences.append(Sentence(list(tokens), frames, clusters))
    return AnnotatedDocument(doc_id, published_at, sentences, topic)


def document_to_json(doc: AnnotatedDocument) -> dict:
    def span(s: TokenSpan) -> dict:
        return {"start": s.start, "end": s.end}

    return {
        "doc_id": doc.doc_id,
        "published_at": doc.published_at.isoformat(),
        "topic": doc.topic,
        "sentences": [
            {
                "tokens": sent.tokens,
                "frames": [
                    {
                        "subject": span(f.subject),
                        "verb": span(f.verb),
                        "object": None if f.object is None else span(f.object),
                        "modifiers": [span(m) for m in f.modifiers],
                        "negated": f.negated,
                        "verb_lemma": f.verb_lemma,
                    }
                    for f in sent.frames
                ],
                "clusters": [[span(sp) for sp in cluster] for cluster in sent.clusters],
            }
            for sent in doc.sentences
        ],
    }


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate a JSON-lines corpus file.

    Raises MalformedRecord (with the 1-based line number) on the first bad
    record and EmptyCorpus when the file holds no documents.
    """
    documents: list[AnnotatedDocument] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise MalformedRecord(line_no, f"invalid JSON: {e.msg}") from None
            try:
                doc = parse_document(obj)
            except ValueError as e:
                raise MalformedRecord(line_no, str(e)) from None
            if doc.doc_id in seen_ids:
                raise MalformedRecord(line_no, f"duplicate doc_id {doc.doc_id!r}")
            seen_ids.add(doc.doc_id)
            documents.append(doc)
    if not documents:
        raise EmptyCorpus(f"no documents in {path}")
    return Corpus(documents, _make_slices(documents))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in corpus.documents:
            fh.write(json.dumps(document_to_json(doc), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def slice(corpus: Corpus, label: str) -> Corpus:  # noqa: A001 - domain operation name
    """Restrict a corpus to the documents of one month."""
    if label not in corpus.slice_labels:
        raise UnknownSlice(label)
    docs = [d for d in corpus.documents if d.month == label]
    return Corpus(docs, [TimeSlice(label, 1)])


def filter_by_topic(corpus: Corpus, prefix: str) -> Corpus:
    """Keep documents whose topic starts with ``prefix``; order preserved.

    Documents with no topic only survive the empty prefix.
    """
    docs = [d for d in corpus.documents if (d.topic or "").startswith(prefix)]
    return Corpus(docs, _make_slices(docs))


def iter_frames(corpus: Corpus) -> Iterator[tuple[AnnotatedDocument, Sentence, Frame]]:
    for doc in corpus.documents:
        for sent in doc.sentences:
            for frame in sent.frames:
                yield doc, sent, frame
