"""Plain-text formats for 3-graphs and graphs.

Both formats are ASCII with LF line endings: a header ``n m`` followed by
``m`` edge lines in ascending lexicographic (integer) order.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import Graph, Hypergraph3
from .errors import FormatError

__all__ = [
    "serialize_h3",
    "parse_h3",
    "serialize_graph",
    "parse_graph",
    "read_h3",
    "write_h3",
    "read_graph",
    "write_graph",
]


def _serialize(n: int, rows: np.ndarray, arity: int) -> str:
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, arity)
    if len(rows):
        rows = rows[np.lexsort(rows.T[::-1])]
    lines = [f"{n} {len(rows)}"]
    lines.extend(" ".join(map(str, r)) for r in rows.tolist())
    return "\n".join(lines) + "\n"


def _parse(text: str, arity: int, kind: str) -> tuple[int, np.ndarray]:
    if not text.endswith("\n"):
        raise FormatError(f"{kind} file must end with a newline")
    if "\r" in text:
        raise FormatError(f"{kind} file must use LF line endings")
    lines = text[:-1].split("\n")
    try:
        n, m = (int(x) for x in lines[0].split(" "))
    except ValueError:
        raise FormatError(f"bad {kind} header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise FormatError("negative header value")
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, found {len(lines) - 1}")
    rows = []
    for no, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        try:
            row = tuple(int(x) for x in parts)
        except ValueError:
            raise FormatError(f"line {no}: non-integer token in {line!r}") from None
        if len(row) != arity or " ".join(map(str, row)) != line:
            raise FormatError(f"line {no}: expected {arity} canonical integers, got {line!r}")
        if not all(a < b for a, b in zip(row, row[1:])) or row[0] < 0 or row[-1] >= n:
            raise FormatError(f"line {no}: vertices must be increasing and in [0, {n})")
        if rows and rows[-1] >= row:
            raise FormatError(f"line {no}: lines must be sorted without duplicates")
        rows.append(row)
    return n, np.array(rows, dtype=np.int64).reshape(len(rows), arity)


def serialize_h3(H: Hypergraph3) -> str:
    return _serialize(H.n, H.edge_array(), 3)


def parse_h3(text: str) -> Hypergraph3:
    n, rows = _parse(text, 3, "H3")
    return Hypergraph3(n, rows)


def serialize_graph(G: Graph) -> str:
    a, b = np.nonzero(np.triu(G.adj, 1))
    return _serialize(G.n, np.stack([a, b], axis=1), 2)


def parse_graph(text: str) -> Graph:
    n, rows = _parse(text, 2, "graph")
    return Graph(n, rows)


def read_h3(path) -> Hypergraph3:
    return parse_h3(Path(path).read_bytes().decode("ascii"))


def write_h3(H: Hypergraph3, path) -> None:
    Path(path).write_bytes(serialize_h3(H).encode("ascii"))


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_bytes().decode("ascii"))


def write_graph(G: Graph, path) -> None:
    Path(path).write_bytes(serialize_graph(G).encode("ascii"))
