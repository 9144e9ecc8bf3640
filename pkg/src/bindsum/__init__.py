"""Bind-and-sum graph embeddings.

Embeds a directed graph as the superposition of its bound edges and
compares coding/binding schemes -- spherical codes with tensor-product
binding against Rademacher/phasor/continuous codes with Hadamard-family
bindings -- on graph functionality and superposition capacity. Includes
a closed-form theory calculator and a Monte Carlo benchmark harness.
"""

from . import analysis, bindings, codes, graphs, sweep, trials, verify
from .analysis import Operation, SchemeOp, SchemePair
from .bindings import (
    BindingKind,
    BindingScheme,
    EdgeEmbedding,
    bind,
    bind_via_fft,
    circular_correlation,
    compose_edges,
    compression_view,
    convolution,
    hadamard,
    permuted_hadamard,
    tensor,
    unbind,
)
from .codes import (
    Codebook,
    CodeScheme,
    CodeVector,
    dot,
    make_codebook,
    ratio_moment_divergence,
    sample_code,
    theoretical_dot_moments,
)
from .errors import (
    BindsumError,
    DimensionMismatchError,
    InvalidDimensionError,
    SingularKeyError,
    UnknownVertexError,
    UnsupportedCompositionError,
    UnsupportedSchemeError,
)
from .graphs import (
    GraphEmbedding,
    GraphSpec,
    QueryOutcome,
    cleanup,
    edge_compose,
    edge_query,
    embed_graph,
    max_connectivity,
    parse_edge_list,
    vertex_query,
)
from .kernels import BACKEND as kernel_backend

__version__ = "0.1.0"
