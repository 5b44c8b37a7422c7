"""Trend analytics over role-annotated news corpora.

Pipeline: ingest annotated documents, merge coreference clusters globally,
aggregate frames into subject-rooted role forests per month, train one
skip-gram embedding model per month, rotate all months into a common space,
then explore rankings, shares, neighbors, drift and 2D shifts through the
CLI, the HTTP API or the web UI.
"""

__version__ = "0.1.0"
