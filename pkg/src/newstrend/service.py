"""Read-only HTTP facade over a finalized artifact store.

Everything is precomputed except tree merging and projections, which are
cheap enough to recompute per request so the UI can expose live threshold
sliders. Responses are JSON; errors carry a machine-readable ``code`` plus a
human message. The store is loaded once at startup and never mutated.
"""
from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import forest, projection, trends
from .alignment import AlignedSeries
from .embeddings import load_embedding
from .errors import (
    InvalidThreshold,
    NewstrendError,
    PerplexityTooHigh,
    TooFewPoints,
    TooFewSlices,
    UnknownWord,
)
from .store import ArtifactStore


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _load_series(store: ArtifactStore) -> AlignedSeries:
    slices = []
    for i, label in enumerate(store.slices):
        path = store.root / "aligned" / f"{label}.txt"
        slices.append(load_embedding(path, index=i + 1))
    return AlignedSeries(slices)


def _load_forests(store: ArtifactStore) -> dict[str, forest.Forest]:
    out = {}
    for label in store.slices:
        text = store.read_text(f"forests/{label}.jsonl")
        out[label] = forest.forest_from_jsonl(text, label)
    return out


def _load_clusters(store: ArtifactStore) -> list[dict]:
    text = store.read_text("coref/clusters.jsonl")
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def create_app(store: ArtifactStore, webui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="newstrend", docs_url=None, redoc_url=None)
    forests = _load_forests(store)
    series = _load_series(store)
    clusters = _load_clusters(store)
    mention_to_cluster = {m: c for c in clusters for m in c["members"]}
    defaults = store.meta.get("merge_defaults", {})

    @app.exception_handler(ApiError)
    async def api_error_handler(_req: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "MALFORMED_PARAMETER", "message": str(exc)}
        )

    def positive(value: int, name: str) -> int:
        if value < 1:
            raise ApiError(400, "MALFORMED_PARAMETER", f"{name} must be at least 1")
        return value

    @app.get("/api/subjects")
    def subjects(q: str = Query(default="")):
        prefix = q.casefold()
        return {"subjects": [s for s in store.subjects if s.startswith(prefix)]}

    @app.get("/api/tree")
    def tree(
        subject: str,
        month: str,
        min_w: int | None = None,
        max_w: int | None = None,
        object_threshold: float | None = None,
        verb_threshold: float | None = None,
    ):
        if month not in forests:
            raise ApiError(404, "UNKNOWN_MONTH", f"no slice {month!r}")
        base = forests[month].trees.get(subject.casefold())
        if base is None:
            raise ApiError(404, "UNKNOWN_SUBJECT", f"no tree for {subject!r} in {month}")
        ot = object_threshold if object_threshold is not None else defaults.get("object_sim_threshold", 0.7)
        vt = verb_threshold if verb_threshold is not None else defaults.get("verb_sim_threshold", 0.6)
        lo = min_w if min_w is not None else defaults.get("min_edge_weight", 1)
        hi = max_w if max_w is not None else defaults.get("max_edge_weight", 10**9)
        if lo > hi:
            raise ApiError(400, "MALFORMED_PARAMETER", "min_w exceeds max_w")
        vectors = series.by_label(month)
        try:
            merged = forest.merge_verbs(base, vectors, vt, ot)
        except InvalidThreshold as e:
            raise ApiError(400, "INVALID_THRESHOLD", str(e)) from None
        merged = forest.filter_verbs(merged, lo, hi)
        payload = forest.tree_to_graph(merged)
        payload["month"] = month
        return payload

    @app.get("/api/verb-ranking")
    def verb_ranking(subject: str):
        name = subject.casefold()
        if all(name not in f.trees for f in forests.values()):
            raise ApiError(404, "UNKNOWN_SUBJECT", f"no tree for {subject!r}")
        ranking = forest.verb_ranking(forests, name)
        return {
            "subject": name,
            "months": {
                month: [
                    {"verb": r.verb, "weight": r.weight, "main_object": r.main_object}
                    for r in ranked
                ]
                for month, ranked in ranking.items()
            },
        }

    @app.get("/api/object-shares")
    def object_shares(subject: str, k: int = 4):
        positive(k, "k")
        name = subject.casefold()
        if all(name not in f.trees for f in forests.values()):
            raise ApiError(404, "UNKNOWN_SUBJECT", f"no tree for {subject!r}")
        shares = forest.object_shares(forests, name, k)
        return {
            "subject": name,
            "months": {
                month: [{"object": o, "share": s} for o, s in entries]
                for month, entries in shares.items()
            },
        }

    @app.get("/api/neighbors")
    def neighbors_ep(key: str, n: int = 5):
        positive(n, "n")
        try:
            table = trends.neighbors(series, key, n)
        except UnknownWord as e:
            raise ApiError(404, "UNKNOWN_WORD", str(e)) from None
        return {
            "key": key,
            "n": n,
            "slices": {
                label: [{"word": w, "cosine": c} for w, c in ranked]
                for label, ranked in table.per_slice.items()
            },
        }

    @app.get("/api/drift")
    def drift_ep(key: str, pool: int = 100, top: int = 10):
        positive(pool, "pool")
        positive(top, "top")
        try:
            report = trends.top_drift_words(series, key, pool, top)
        except UnknownWord as e:
            raise ApiError(404, "UNKNOWN_WORD", str(e)) from None
        except TooFewSlices as e:
            raise ApiError(400, "TOO_FEW_SLICES", str(e)) from None
        return {
            "key": key,
            "slices": series.labels,
            "candidates": [{"word": w, "drift": d} for w, d in report.candidates],
            "series": report.series,
        }

    @app.get("/api/similarity")
    def similarity_ep(key: str, word: str):
        known = set()
        for s in series.slices:
            known.update((k for k in (key, word) if k in s.vocab.index))
        if key not in known:
            raise ApiError(404, "UNKNOWN_WORD", f"{key!r} absent from every slice")
        if word not in known:
            raise ApiError(404, "UNKNOWN_WORD", f"{word!r} absent from every slice")
        return {
            "key": key,
            "word": word,
            "slices": series.labels,
            "values": trends.similarity_series(series, key, word),
        }

    @app.get("/api/projection")
    def projection_ep(key: str, n: int = 8, perplexity: float | None = None, seed: int = 42):
        positive(n, "n")
        try:
            points = projection.pool_neighbors(series, key, n)
        except UnknownWord as e:
            raise ApiError(404, "UNKNOWN_WORD", str(e)) from None
        count = len(points.labels)
        # clamp so the default stays usable on small pooled sets
        perp = min(perplexity or 15.0, (count - 1) / 3.0 - 1e-9)
        if count < 3 or perp < 1.0:
            raise ApiError(400, "TOO_FEW_POINTS", f"only {count} pooled points")
        try:
            proj = projection.tsne(points, perp, iterations=500, seed=seed)
        except (TooFewPoints, PerplexityTooHigh) as e:
            raise ApiError(400, "TOO_FEW_POINTS", str(e)) from None
        return {
            "key": key,
            "points": [
                {"label": label, "x": proj.coords[label][0], "y": proj.coords[label][1]}
                for label in points.labels
            ],
            "params": proj.params,
        }

    @app.get("/api/coref")
    def coref_ep(mention: str):
        from .coref import normalize_mention

        norm = normalize_mention(mention)
        cluster = mention_to_cluster.get(norm)
        if cluster is None:
            raise ApiError(404, "UNKNOWN_MENTION", f"no cluster contains {mention!r}")
        return {
            "mention": norm,
            "cluster_id": cluster["id"],
            "center": cluster["center"],
            "members": cluster["members"],
        }

    @app.get("/api/meta")
    def meta():
        return {
            "slices": store.slices,
            "subjects": store.subjects,
            "anchor": store.anchor,
            "report_keys": store.meta.get("report_keys", []),
            "merge_defaults": defaults,
        }

    if webui_dir and Path(webui_dir).joinpath("index.html").exists():
        app.mount("/", StaticFiles(directory=webui_dir, html=True), name="webui")

    return app


def serve(store: ArtifactStore, host: str, port: int, webui_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(store, webui_dir), host=host, port=port, log_level="warning")
