"""Hypergraph container, text format, degrees, validation, random generation.

A hypergraph is stored as per-hyperedge sorted vertex tuples plus a derived
per-vertex list of incident hyperedges. Both directions always describe the
same incidence relation. Instances are immutable after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp


class HypergraphError(ValueError):
    """Invalid hypergraph data."""


class ParseError(HypergraphError):
    """Malformed hypergraph text; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph with 0-based dense vertex/hyperedge ids.

    ``edges[e]`` is the sorted tuple of vertices incident to hyperedge ``e``.
    Empty hyperedges are representable (flagged by :func:`validate`), and
    duplicate hyperedges are kept as distinct hyperedges.
    """

    num_vertices: int
    edges: tuple[tuple[int, ...], ...]
    _vertex_edges: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise HypergraphError("negative vertex count")
        by_vertex: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for e, verts in enumerate(self.edges):
            seen = set()
            for v in verts:
                if not 0 <= v < self.num_vertices:
                    raise HypergraphError(f"vertex {v} out of range in hyperedge {e}")
                if v in seen:
                    raise HypergraphError(f"duplicate vertex {v} in hyperedge {e}")
                seen.add(v)
            if list(verts) != sorted(verts):
                raise HypergraphError(f"hyperedge {e} vertices not sorted")
            for v in verts:
                by_vertex[v].append(e)
        object.__setattr__(self, "_vertex_edges", tuple(tuple(es) for es in by_vertex))

    @property
    def num_hyperedges(self) -> int:
        return len(self.edges)

    def vertex_edges(self, v: int) -> tuple[int, ...]:
        """Sorted hyperedge ids incident to vertex ``v``."""
        return self._vertex_edges[v]

    def pairs(self) -> list[tuple[int, int]]:
        """All incidence pairs (v, e), sorted by (v, e)."""
        return [(v, e) for v in range(self.num_vertices) for e in self._vertex_edges[v]]

    @property
    def num_pairs(self) -> int:
        return sum(len(e) for e in self.edges)


@dataclass(frozen=True)
class DegreeVector:
    """Per-vertex d(v) or per-hyperedge delta(e) counts."""

    values: tuple[int, ...]
    kind: str  # "vertex-degree" | "hyperedge-degree"

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    empty_hyperedges: tuple[int, ...]
    isolated_vertices: tuple[int, ...]
    duplicate_hyperedges: tuple[tuple[int, int], ...]


def vertex_degrees(h: Hypergraph) -> DegreeVector:
    """d(v) = number of hyperedges containing v."""
    return DegreeVector(
        tuple(len(h.vertex_edges(v)) for v in range(h.num_vertices)), "vertex-degree"
    )


def hyperedge_degrees(h: Hypergraph) -> DegreeVector:
    """delta(e) = number of vertices in hyperedge e."""
    return DegreeVector(tuple(len(e) for e in h.edges), "hyperedge-degree")


def incidence_matrix(h: Hypergraph) -> sp.csr_array:
    """|V| x |E| binary incidence matrix."""
    rows, cols = [], []
    for e, verts in enumerate(h.edges):
        for v in verts:
            rows.append(v)
            cols.append(e)
    data = np.ones(len(rows), dtype=np.float64)
    return sp.csr_array((data, (rows, cols)), shape=(h.num_vertices, h.num_hyperedges))


def validate(h: Hypergraph) -> ValidationReport:
    """Report empty hyperedges, isolated vertices, and duplicate hyperedges.

    ``ok`` requires no empty hyperedges: the expansion formulas divide by
    delta(e). Isolated vertices and duplicates are warnings only.
    """
    empty = tuple(e for e, verts in enumerate(h.edges) if not verts)
    isolated = tuple(v for v in range(h.num_vertices) if not h.vertex_edges(v))
    seen: dict[tuple[int, ...], int] = {}
    dups = []
    for e, verts in enumerate(h.edges):
        if verts in seen:
            dups.append((seen[verts], e))
        else:
            seen[verts] = e
    return ValidationReport(not empty, empty, isolated, tuple(dups))


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the hypergraph text format.

    Line 1: ``<num_vertices> <num_hyperedges>``; then one line per hyperedge
    with its space-separated 0-based vertex ids. Blank lines and ``#``
    comments are ignored. LF or CRLF.
    """
    lines = text.splitlines()
    content: list[tuple[int, str]] = []
    for i, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        content.append((i, stripped))
    if not content:
        raise ParseError("missing header", 1)
    line_no, header = content[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be '<num_vertices> <num_hyperedges>'", line_no)
    try:
        nv, ne = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("non-integer header", line_no) from None
    if nv < 0 or ne < 0:
        raise ParseError("negative counts in header", line_no)
    body = content[1:]
    if len(body) != ne:
        raise ParseError(
            f"expected {ne} hyperedge lines, found {len(body)}",
            body[-1][0] if body else line_no,
        )
    edges = []
    for line_no, line in body:
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError("non-integer vertex id", line_no) from None
        seen = set()
        for v in verts:
            if not 0 <= v < nv:
                raise ParseError(f"vertex id {v} out of range", line_no)
            if v in seen:
                raise ParseError(f"duplicate vertex {v} within hyperedge", line_no)
            seen.add(v)
        edges.append(tuple(sorted(verts)))
    return Hypergraph(nv, tuple(edges))


def render_hypergraph(h: Hypergraph) -> str:
    """Serialize to the text format; inverse of :func:`parse_hypergraph`."""
    out = [f"{h.num_vertices} {h.num_hyperedges}"]
    for verts in h.edges:
        out.append(" ".join(str(v) for v in verts))
    return "\n".join(out) + "\n"


# PRNG used for the whole artifact: NumPy's default_rng (PCG64), 64-bit seed.
def random_hypergraph(nv: int, ne: int, p: float, seed: int) -> Hypergraph:
    """Each (v, e) pair included independently with probability p.

    A hyperedge left empty is redrawn (up to 64 times), then assigned one
    uniform vertex, so delta(e) >= 1 always. Deterministic for a fixed seed.
    """
    if nv <= 0:
        raise HypergraphError("nv must be positive")
    if ne < 0:
        raise HypergraphError("ne must be nonnegative")
    if not 0 < p <= 1:
        raise HypergraphError("p must be in (0, 1]")
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(ne):
        verts: tuple[int, ...] = ()
        for _ in range(64):
            mask = rng.random(nv) < p
            if mask.any():
                verts = tuple(int(v) for v in np.flatnonzero(mask))
                break
        if not verts:
            verts = (int(rng.integers(nv)),)
        edges.append(verts)
    return Hypergraph(nv, tuple(edges))
