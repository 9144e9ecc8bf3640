"""Graph embeddings as superpositions of bound edges, plus query operations.

A directed graph embeds as the sum of its bound edges. Two representative
operations are provided: the first-order vertex query (what does v point
to?) and the second-order edge composition followed by an edge query (is
the two-step edge (s, t) present?). Query outputs are signal plus
cross-term noise; :func:`cleanup` recovers a discrete answer by argmax
dot-product similarity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .bindings import BindingKind, BindingScheme, bind
from .codes import Codebook, CodeScheme, CodeVector, dot
from .errors import (
    DimensionMismatchError,
    SingularKeyError,
    UnknownVertexError,
    UnsupportedCompositionError,
    UnsupportedSchemeError,
)

__all__ = [
    "GraphSpec",
    "GraphEmbedding",
    "QueryOutcome",
    "parse_edge_list",
    "embed_graph",
    "embed_edge_arrays",
    "vertex_query",
    "cleanup",
    "edge_compose",
    "edge_query",
    "max_connectivity",
]


@dataclass(frozen=True)
class GraphSpec:
    """Vertex ids plus a directed edge list (domain, codomain).

    Duplicate edges are allowed; the superposition of a multigraph is
    well-defined. Every edge endpoint must be a declared vertex.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((d, c) for d, c in self.edges))
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        for d, c in self.edges:
            if d not in known or c not in known:
                raise UnknownVertexError(f"edge ({d!r}, {c!r}) references an unknown vertex")

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def parse_edge_list(text: str) -> GraphSpec:
    """Parse the plain edge-list format: one ``domain codomain`` pair per line.

    Ids are whitespace-free strings; blank lines and ``#`` comments are
    skipped. Vertices are collected in order of first appearance.
    """
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'domain codomain', got {raw!r}")
        for v in parts:
            if v not in seen:
                seen.add(v)
                vertices.append(v)
        edges.append((parts[0], parts[1]))
    return GraphSpec(tuple(vertices), tuple(edges))


@dataclass(frozen=True, eq=False)
class GraphEmbedding:
    """Sum of bound edges: a (d, d) matrix under tensor, a length-d vector otherwise."""

    payload: np.ndarray
    binding: BindingScheme
    code_scheme: CodeScheme | None
    edge_count: int
    composed: bool = False

    @property
    def dim(self) -> int:
        return self.payload.shape[0]


def embed_edge_arrays(
    binding: BindingScheme,
    domains: np.ndarray,
    codomains: np.ndarray,
    code_scheme: CodeScheme | None = None,
) -> GraphEmbedding:
    """Embed from stacked code rows: payload = sum_i bind(domains[i], codomains[i]).

    The fast path for tensor and Hadamard-family bindings; other kinds
    accumulate one bound edge at a time.
    """
    domains = np.atleast_2d(domains)
    codomains = np.atleast_2d(codomains)
    if domains.shape != codomains.shape:
        raise DimensionMismatchError(
            f"domain rows {domains.shape} != codomain rows {codomains.shape}"
        )
    k, d = domains.shape
    kind = binding.kind
    cplx = np.iscomplexobj(domains) or np.iscomplexobj(codomains)
    if kind is BindingKind.PERMUTED_HADAMARD:
        domains = domains[:, binding.perm_for(d)]
        kind = BindingKind.HADAMARD
    if kind is BindingKind.TENSOR:
        payload = domains.T @ codomains if cplx else kernels.sum_outer(domains, codomains)
    elif kind is BindingKind.HADAMARD:
        payload = (
            np.einsum("kd,kd->d", domains, codomains)
            if cplx
            else kernels.sum_hadamard(domains, codomains)
        )
    else:
        acc = np.zeros(d, dtype=np.complex128 if cplx else np.float64)
        for i in range(k):
            acc = acc + bind(binding, domains[i], codomains[i]).payload
        payload = acc
    return GraphEmbedding(payload, binding, code_scheme, k)


def embed_graph(g: GraphSpec, cb: Codebook, binding: BindingScheme) -> GraphEmbedding:
    """Embed ``g`` with codes from ``cb``: the sum of its bound edges.

    An empty edge list gives a zero payload. Unknown vertex ids raise.
    """
    for v in g.vertices:
        if v not in cb:
            raise UnknownVertexError(f"vertex {v!r} has no code in the codebook")
    if not g.edges:
        shape = (cb.dim, cb.dim) if binding.kind is BindingKind.TENSOR else (cb.dim,)
        dtype = np.complex128 if cb.scheme.is_complex else np.float64
        return GraphEmbedding(np.zeros(shape, dtype=dtype), binding, cb.scheme, 0)
    dom_idx = [cb.index_of(d) for d, _ in g.edges]
    cod_idx = [cb.index_of(c) for _, c in g.edges]
    return embed_edge_arrays(binding, cb.matrix[dom_idx], cb.matrix[cod_idx], cb.scheme)


def _query_key_entries(v: CodeVector, g: GraphEmbedding) -> np.ndarray:
    if v.dim != g.dim:
        raise DimensionMismatchError(f"query dim {v.dim} != embedding dim {g.dim}")
    return v.entries


def vertex_query(v: CodeVector, g: GraphEmbedding, side: str = "left") -> np.ndarray:
    """Unbind ``v`` from the superposition; the answer code plus noise.

    Tensor: contract on the requested side (``left`` returns the
    superposition of codomains of edges leaving v, ``right`` the domains of
    edges entering it). Hadamard: multiply again for Rademacher keys,
    divide entrywise for continuous ones; the symmetric product has no
    sides. Phasor superpositions admit no one-sided query and raise.
    No cleanup is applied here.
    """
    kv = _query_key_entries(v, g)
    kind = g.binding.kind
    if kind is BindingKind.TENSOR:
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        return kv @ g.payload if side == "left" else g.payload @ kv
    if kind is BindingKind.HADAMARD:
        if v.scheme is CodeScheme.RADEMACHER:
            return kv * g.payload
        if v.scheme is CodeScheme.PHASOR:
            raise UnsupportedSchemeError(
                "phasor superpositions have no well-defined one-sided vertex query"
            )
        if v.scheme.is_continuous:
            if np.any(kv == 0):
                raise SingularKeyError("continuous key has a zero entry")
            return g.payload / kv
        raise UnsupportedSchemeError(f"no vertex query for {v.scheme.value} keys")
    raise UnsupportedSchemeError(f"vertex query not defined under {kind.value} binding")


@dataclass(frozen=True)
class QueryOutcome:
    """Cleanup result: similarity per candidate, the argmax winner, and
    correctness when ground truth was supplied. Ties break to the lowest
    candidate index."""

    scores: tuple[tuple[str, float], ...]
    winner: str
    correct: bool | None = None


def cleanup(
    output: np.ndarray | CodeVector,
    candidates: Sequence[tuple[str, CodeVector | np.ndarray]],
    true_id: str | None = None,
) -> QueryOutcome:
    """Recover a discrete answer: argmax of Re<candidate, output>."""
    if len(candidates) == 0:
        raise ValueError("cleanup needs at least one candidate")
    out = output.entries if isinstance(output, CodeVector) else np.asarray(output)
    scores = []
    for cid, cand in candidates:
        s = dot(cand, out)
        scores.append((cid, s.real if isinstance(s, complex) else s))
    values = np.array([s for _, s in scores])
    winner = scores[int(np.argmax(values))][0]
    return QueryOutcome(
        scores=tuple(scores),
        winner=winner,
        correct=None if true_id is None else winner == true_id,
    )


def edge_compose(g: GraphEmbedding) -> GraphEmbedding:
    """Second-order composition of a graph with itself.

    Tensor: the matrix square, which maps edge pairs (u,v),(v,w) onto
    (u,w). Hadamard with Rademacher codes: the entrywise square. Other
    schemes cannot compose and raise. Note the Hadamard product is
    symmetric, so a composable pair is matched twice and self-pairings
    contribute all-ones terms; the composed payload is taken verbatim, with
    no de-duplication.
    """
    kind = g.binding.kind
    if kind is BindingKind.TENSOR:
        return GraphEmbedding(
            g.payload @ g.payload, g.binding, g.code_scheme, g.edge_count, composed=True
        )
    if kind is BindingKind.HADAMARD:
        if g.code_scheme is not None and g.code_scheme is not CodeScheme.RADEMACHER:
            raise UnsupportedSchemeError(
                f"Hadamard composition needs Rademacher codes, not {g.code_scheme.value}"
            )
        return GraphEmbedding(
            g.payload * g.payload, g.binding, g.code_scheme, g.edge_count, composed=True
        )
    raise UnsupportedCompositionError(f"{kind.value} cannot compose edges")


def edge_query(s: CodeVector, t: CodeVector, g: GraphEmbedding, raw: bool = False) -> float:
    """Score the presence of edge (s, t) in a graph or composed embedding.

    Tensor: s^T G t, with ideal value 1 for a planted edge. Hadamard:
    sum(s * t * G) normalized by d so the ideal is also 1; ``raw=True``
    returns the unnormalized sum (ideal d).
    """
    sv = _query_key_entries(s, g)
    tv = _query_key_entries(t, g)
    kind = g.binding.kind
    if np.iscomplexobj(g.payload):
        raise UnsupportedSchemeError("edge query is defined for real-code embeddings only")
    if kind is BindingKind.TENSOR:
        return float(sv @ g.payload @ tv)
    if kind is BindingKind.HADAMARD:
        val = float(np.sum(sv * tv * g.payload))
        return val if raw else val / g.dim
    raise UnsupportedSchemeError(f"edge query not defined under {kind.value} binding")


def max_connectivity(g: GraphSpec) -> int:
    """Maximum over vertices of the number of incident edges (in plus out).

    A self-loop counts once on each side of its vertex.
    """
    if not g.edges:
        return 0
    degree = {v: 0 for v in g.vertices}
    for d, c in g.edges:
        degree[d] += 1
        degree[c] += 1
    return max(degree.values())
