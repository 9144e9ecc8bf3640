"""Binding operations on vertex codes and their algebraic identities.

Four families: the tensor (outer) product, the Hadamard product, circular
convolution and circular correlation, plus the permuted-Hadamard variant
that restores directedness. Convolution and correlation indices wrap
modulo d, which is what makes their Fourier-transform identities and the
wrapped-diagonal compression views exact.

Edge composition is deliberately refused for permuted-Hadamard,
convolution and correlation: those schemes provably cannot compose edges,
and the library surfaces that as an error rather than returning noise.
The defect itself is demonstrated by :func:`bindsum.trials.defect_similarities`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .codes import CodeScheme, CodeVector
from .errors import (
    DimensionMismatchError,
    SingularKeyError,
    UnsupportedCompositionError,
    UnsupportedSchemeError,
)

__all__ = [
    "BindingKind",
    "BindingScheme",
    "EdgeEmbedding",
    "tensor",
    "hadamard",
    "permuted_hadamard",
    "convolution",
    "circular_correlation",
    "bind",
    "bind_via_fft",
    "unbind",
    "compose_edges",
    "compression_view",
    "flip",
]


class BindingKind(enum.Enum):
    TENSOR = "tensor"
    HADAMARD = "hadamard"
    PERMUTED_HADAMARD = "permuted-hadamard"
    CONVOLUTION = "convolution"
    CIRCULAR_CORRELATION = "circular-correlation"


@dataclass(frozen=True, eq=False)
class BindingScheme:
    """A binding operation; permuted-Hadamard carries its permutation.

    ``permutation`` maps via gather: (Pa)[i] = a[permutation[i]]. When left
    as None for permuted-Hadamard, a cyclic shift by one is used.
    """

    kind: BindingKind
    permutation: np.ndarray | None = None

    def __post_init__(self):
        if self.permutation is not None:
            if self.kind is not BindingKind.PERMUTED_HADAMARD:
                raise ValueError("only permuted-Hadamard takes a permutation")
            p = np.asarray(self.permutation, dtype=np.intp)
            if p.ndim != 1 or not np.array_equal(np.sort(p), np.arange(p.shape[0])):
                raise ValueError("permutation must be a rearrangement of 0..d-1")
            object.__setattr__(self, "permutation", p)

    def __eq__(self, other):
        if not isinstance(other, BindingScheme):
            return NotImplemented
        if self.kind is not other.kind:
            return False
        if (self.permutation is None) != (other.permutation is None):
            return False
        return self.permutation is None or np.array_equal(
            self.permutation, other.permutation
        )

    def __hash__(self):
        p = None if self.permutation is None else self.permutation.tobytes()
        return hash((self.kind, p))

    def perm_for(self, d: int) -> np.ndarray:
        if self.permutation is not None:
            if self.permutation.shape[0] != d:
                raise DimensionMismatchError(
                    f"permutation over {self.permutation.shape[0]} indices used at dim {d}"
                )
            return self.permutation
        return (np.arange(d) - 1) % d  # cyclic shift by one


def tensor() -> BindingScheme:
    return BindingScheme(BindingKind.TENSOR)


def hadamard() -> BindingScheme:
    return BindingScheme(BindingKind.HADAMARD)


def permuted_hadamard(permutation=None) -> BindingScheme:
    return BindingScheme(
        BindingKind.PERMUTED_HADAMARD,
        None if permutation is None else np.asarray(permutation),
    )


def convolution() -> BindingScheme:
    return BindingScheme(BindingKind.CONVOLUTION)


def circular_correlation() -> BindingScheme:
    return BindingScheme(BindingKind.CIRCULAR_CORRELATION)


@dataclass(frozen=True, eq=False)
class EdgeEmbedding:
    """A bound edge: a d x d matrix for tensor, a length-d vector otherwise."""

    payload: np.ndarray
    scheme: BindingScheme

    def __post_init__(self):
        object.__setattr__(self, "payload", np.asarray(self.payload))
        want = 2 if self.scheme.kind is BindingKind.TENSOR else 1
        if self.payload.ndim != want:
            raise ValueError(
                f"{self.scheme.kind.value} payload must be {want}-dimensional"
            )

    @property
    def dim(self) -> int:
        return self.payload.shape[0]


def _as_entries(x) -> np.ndarray:
    return x.entries if isinstance(x, CodeVector) else np.asarray(x)


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    av, bv = _as_entries(a), _as_entries(b)
    if av.shape != bv.shape or av.ndim != 1:
        raise DimensionMismatchError(f"cannot bind shapes {av.shape} and {bv.shape}")
    return av, bv


def flip(a) -> np.ndarray:
    """Index negation mod d: flip(a)[i] = a[(-i) mod d]."""
    av = _as_entries(a)
    return av[(-np.arange(av.shape[0])) % av.shape[0]]


def bind(scheme: BindingScheme, a, b) -> EdgeEmbedding:
    """Bind two codes into an edge embedding.

    Tensor gives the outer product a b^T (domain first); Hadamard the
    entrywise product; permuted-Hadamard permutes its first argument before
    multiplying; convolution and correlation are circular, by direct
    summation (see :func:`bind_via_fft` for the transform route).
    """
    av, bv = _pair(a, b)
    kind = scheme.kind
    cplx = np.iscomplexobj(av) or np.iscomplexobj(bv)
    if kind is BindingKind.TENSOR:
        return EdgeEmbedding(np.outer(av, bv), scheme)
    if kind is BindingKind.HADAMARD:
        return EdgeEmbedding(av * bv, scheme)
    if kind is BindingKind.PERMUTED_HADAMARD:
        return EdgeEmbedding(av[scheme.perm_for(av.shape[0])] * bv, scheme)
    if kind is BindingKind.CONVOLUTION:
        if cplx:
            d = av.shape[0]
            idx = (np.arange(d)[:, None] - np.arange(d)[None, :]) % d
            return EdgeEmbedding(bv[idx] @ av, scheme)
        return EdgeEmbedding(kernels.circ_convolve(av, bv), scheme)
    if kind is BindingKind.CIRCULAR_CORRELATION:
        if cplx:
            d = av.shape[0]
            idx = (np.arange(d)[:, None] + np.arange(d)[None, :]) % d
            return EdgeEmbedding(bv[idx] @ av, scheme)
        return EdgeEmbedding(kernels.circ_correlate(av, bv), scheme)
    raise UnsupportedSchemeError(f"unknown binding {kind!r}")


def bind_via_fft(scheme: BindingScheme, a, b) -> EdgeEmbedding:
    """Convolution/correlation through the Fourier transform.

    conv: F^-1(F(a) . F(b)); corr: F^-1(conj(F(a)) . F(b)). The conjugation
    identity assumes a real first argument, so complex inputs route through
    F(flip(a)), which realizes the same operator for any dtype. Results
    match :func:`bind` to ~1e-8 relative error.
    """
    av, bv = _pair(a, b)
    kind = scheme.kind
    if kind is BindingKind.CONVOLUTION:
        out = np.fft.ifft(np.fft.fft(av) * np.fft.fft(bv))
    elif kind is BindingKind.CIRCULAR_CORRELATION:
        if np.iscomplexobj(av):
            fa = np.fft.fft(flip(av))
        else:
            fa = np.conj(np.fft.fft(av))
        out = np.fft.ifft(fa * np.fft.fft(bv))
    else:
        raise UnsupportedSchemeError(
            f"FFT route exists for convolution and correlation, not {kind.value}"
        )
    if not (np.iscomplexobj(av) or np.iscomplexobj(bv)):
        out = out.real
    return EdgeEmbedding(out, scheme)


def unbind(scheme: BindingScheme, key: CodeVector, e: EdgeEmbedding, side: str | None = None):
    """Remove ``key`` from a bound edge.

    Hadamard uses the key scheme's inverse: multiply again for Rademacher
    (exact), conjugate-multiply for phasor, entrywise division for
    continuous codes. Tensor contracts the key on the requested side
    (``left`` recovers the codomain, ``right`` the domain). Returns a plain
    length-d array.
    """
    if not isinstance(key, CodeVector):
        raise TypeError("unbind key must be a CodeVector (its scheme picks the inverse)")
    kv = key.entries
    if kv.shape[0] != e.dim:
        raise DimensionMismatchError(f"key dim {kv.shape[0]} != edge dim {e.dim}")
    kind = scheme.kind
    if kind is BindingKind.TENSOR:
        if side not in ("left", "right"):
            raise ValueError("tensor unbind needs side='left' or side='right'")
        return kv @ e.payload if side == "left" else e.payload @ kv
    if side is not None:
        raise ValueError("side applies to tensor (matrix) payloads only")
    if kind is BindingKind.HADAMARD:
        if key.scheme is CodeScheme.RADEMACHER:
            return kv * e.payload
        if key.scheme is CodeScheme.PHASOR:
            return np.conj(kv) * e.payload
        if key.scheme.is_continuous:
            if np.any(kv == 0):
                raise SingularKeyError("continuous key has a zero entry")
            return e.payload / kv
        raise UnsupportedSchemeError(f"no Hadamard unbinding for {key.scheme.value} keys")
    raise UnsupportedSchemeError(f"unbind not defined for {kind.value}")


def compose_edges(e1: EdgeEmbedding, e2: EdgeEmbedding) -> EdgeEmbedding:
    """Compose two edges: (a,b) then (b,c) to (a,c).

    Hadamard composes by another Hadamard product; tensor by matrix
    multiplication. The remaining schemes cannot compose (the permutation
    noise never cancels) and raise.
    """
    if e1.scheme != e2.scheme:
        raise UnsupportedSchemeError("cannot compose edges bound under different schemes")
    if e1.dim != e2.dim:
        raise DimensionMismatchError(f"edge dims differ: {e1.dim} vs {e2.dim}")
    kind = e1.scheme.kind
    if kind is BindingKind.HADAMARD:
        return EdgeEmbedding(e1.payload * e2.payload, e1.scheme)
    if kind is BindingKind.TENSOR:
        return EdgeEmbedding(e1.payload @ e2.payload, e1.scheme)
    raise UnsupportedCompositionError(
        f"{kind.value} cannot compose edges; see trials.defect_similarities"
    )


def compression_view(scheme: BindingScheme, a, b) -> np.ndarray:
    """Realize a compressed binding as sums over the outer product a b^T.

    Hadamard is the main diagonal; correlation sums the wrapped
    superdiagonals (entry k pairs the unwrapped diagonals k and k-d);
    convolution sums the wrapped anti-diagonals. Each equals
    ``bind(scheme, a, b)`` to 1e-9.
    """
    av, bv = _pair(a, b)
    mat = np.outer(av, bv)
    kind = scheme.kind
    if kind is BindingKind.HADAMARD:
        return np.diagonal(mat).copy()
    cplx = np.iscomplexobj(mat)
    d = mat.shape[0]
    if kind is BindingKind.CONVOLUTION:
        if cplx:
            idx = (np.arange(d)[:, None] - np.arange(d)[None, :]) % d
            return mat[np.arange(d)[None, :], idx].sum(axis=1)
        return kernels.conv_diag_sums(mat)
    if kind is BindingKind.CIRCULAR_CORRELATION:
        if cplx:
            idx = (np.arange(d)[:, None] + np.arange(d)[None, :]) % d
            return mat[np.arange(d)[None, :], idx].sum(axis=1)
        return kernels.corr_diag_sums(mat)
    raise UnsupportedSchemeError(
        f"compression views exist for Hadamard, convolution and correlation, not {kind.value}"
    )
