"""Random vertex codes and their dot-product statistics.

Five code families are supported. Spherical codes are unit vectors drawn
uniformly from the hypersphere (iid Gaussian, normalized); Rademacher codes
have iid +/-1 entries and are stored unnormalized so that Hadamard unbinding
stays exact; phasor codes have unit-modulus complex entries with uniform
phase; Gaussian, Cauchy and uniform codes exist mainly to demonstrate why
entrywise-division unbinding fails for them.

All sampling is driven by explicit ``numpy.random.Generator`` state. A
:class:`Codebook` derives one counter-based Philox stream per code from
``(seed, index)``, so reconstruction is bit-identical and codes can be
generated independently in parallel.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    UnsupportedSchemeError,
)

__all__ = [
    "CodeScheme",
    "CodeVector",
    "Codebook",
    "DivergenceReport",
    "sample_code",
    "sample_matrix",
    "make_codebook",
    "dot",
    "theoretical_dot_moments",
    "ratio_moment_divergence",
    "code_rng",
]


class CodeScheme(enum.Enum):
    """The random code families."""

    SPHERICAL = "spherical"
    RADEMACHER = "rademacher"
    PHASOR = "phasor"
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"
    UNIFORM_UNIT = "uniform-unit"

    @property
    def is_complex(self) -> bool:
        return self is CodeScheme.PHASOR

    @property
    def is_continuous(self) -> bool:
        """True when Hadamard unbinding requires entrywise division."""
        return self in (
            CodeScheme.SPHERICAL,
            CodeScheme.GAUSSIAN,
            CodeScheme.CAUCHY,
            CodeScheme.UNIFORM_UNIT,
        )


@dataclass(frozen=True, eq=False)
class CodeVector:
    """One vertex embedding: a dense length-d array plus its scheme tag."""

    entries: np.ndarray
    scheme: CodeScheme

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise InvalidDimensionError("CodeVector entries must be a nonempty 1-d array")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def sample_matrix(scheme: CodeScheme, n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Sample ``n`` codes as the rows of an (n, d) array, advancing ``rng``."""
    if d < 1:
        raise InvalidDimensionError(f"code dimension must be >= 1, got {d}")
    if n < 1:
        raise InvalidDimensionError(f"code count must be >= 1, got {n}")
    if scheme is CodeScheme.SPHERICAL:
        x = rng.standard_normal((n, d))
        return x / np.linalg.norm(x, axis=1, keepdims=True)
    if scheme is CodeScheme.RADEMACHER:
        return rng.integers(0, 2, size=(n, d)).astype(np.float64) * 2.0 - 1.0
    if scheme is CodeScheme.PHASOR:
        return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=(n, d)))
    if scheme is CodeScheme.GAUSSIAN:
        return rng.standard_normal((n, d))
    if scheme is CodeScheme.CAUCHY:
        return rng.standard_cauchy((n, d))
    if scheme is CodeScheme.UNIFORM_UNIT:
        return rng.random((n, d))
    raise UnsupportedSchemeError(f"unknown code scheme {scheme!r}")


def sample_code(scheme: CodeScheme, d: int, rng: np.random.Generator) -> CodeVector:
    """Sample a single code of dimension ``d``, advancing ``rng``."""
    return CodeVector(sample_matrix(scheme, 1, d, rng)[0], scheme)


def code_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based (Philox) generator keyed by ``(seed, index)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, index))))


@dataclass(frozen=True, eq=False)
class Codebook:
    """Immutable, reproducible collection of codes for a vertex universe.

    Code ``i`` is drawn from a Philox stream keyed by ``(seed, i)``:
    rebuilding with the same ``(n, dim, scheme, seed)`` yields bit-identical
    entries, and individual codes could be regenerated independently.
    """

    dim: int
    scheme: CodeScheme
    seed: int
    matrix: np.ndarray
    ids: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.ids:
            object.__setattr__(self, "ids", tuple(str(i) for i in range(len(self.matrix))))
        if len(self.ids) != len(self.matrix):
            raise ValueError("ids and matrix length differ")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.ids)})
        self.matrix.setflags(write=False)

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def index_of(self, vertex_id: str) -> int:
        return self._index[vertex_id]

    def __contains__(self, vertex_id: str) -> bool:
        return vertex_id in self._index

    def code(self, key: int | str) -> CodeVector:
        """Code by integer position or vertex id."""
        i = key if isinstance(key, int) else self.index_of(key)
        return CodeVector(self.matrix[i], self.scheme)

    def save_csv(self, path) -> None:
        """Write the documented CSV form: a header line, then one row per code.

        Header: ``bindsum-codebook,<n>,<dim>,<scheme>,<seed>,<complex01>``.
        Rows: ``id,e0,e1,...`` with complex entries flattened to
        ``re,im`` pairs. Floats use ``repr`` and round-trip exactly.
        """
        buf = io.StringIO()
        cplx = 1 if self.scheme.is_complex else 0
        buf.write(f"bindsum-codebook,{len(self)},{self.dim},{self.scheme.value},{self.seed},{cplx}\n")
        for vid, row in zip(self.ids, self.matrix):
            if cplx:
                flat = [f"{x.real!r},{x.imag!r}" for x in row]
            else:
                flat = [repr(float(x)) for x in row]
            buf.write(vid + "," + ",".join(flat) + "\n")
        with open(path, "w") as fh:
            fh.write(buf.getvalue())

    @classmethod
    def load_csv(cls, path) -> "Codebook":
        with open(path) as fh:
            header = fh.readline().rstrip("\n").split(",")
            if header[0] != "bindsum-codebook" or len(header) != 6:
                raise ValueError(f"not a bindsum codebook file: {path}")
            n, dim = int(header[1]), int(header[2])
            scheme = CodeScheme(header[3])
            seed = int(header[4])
            cplx = bool(int(header[5]))
            ids, rows = [], []
            for line in fh:
                parts = line.rstrip("\n").split(",")
                ids.append(parts[0])
                vals = np.array([float(x) for x in parts[1:]])
                if cplx:
                    vals = vals[0::2] + 1j * vals[1::2]
                rows.append(vals)
        mat = np.array(rows)
        if mat.shape != (n, dim):
            raise ValueError("codebook file is truncated or malformed")
        return cls(dim=dim, scheme=scheme, seed=seed, matrix=mat, ids=tuple(ids))


def make_codebook(
    n: int,
    d: int,
    scheme: CodeScheme,
    seed: int,
    ids: Sequence[str] | None = None,
    real_only: bool = False,
) -> Codebook:
    """Build ``n`` reproducible codes of dimension ``d``.

    ``real_only=True`` mirrors builds without complex support and rejects
    phasor codes. Collisions between codes are permitted (Rademacher
    codebooks with n > 2**d necessarily repeat) and are not an error.
    """
    if n < 1:
        raise InvalidDimensionError(f"codebook size must be >= 1, got {n}")
    if d < 1:
        raise InvalidDimensionError(f"code dimension must be >= 1, got {d}")
    if real_only and scheme.is_complex:
        raise UnsupportedSchemeError("phasor codes requested but real_only=True")
    dtype = np.complex128 if scheme.is_complex else np.float64
    mat = np.empty((n, d), dtype=dtype)
    for i in range(n):
        mat[i] = sample_matrix(scheme, 1, d, code_rng(seed, i))[0]
    return Codebook(
        dim=d,
        scheme=scheme,
        seed=seed,
        matrix=mat,
        ids=tuple(ids) if ids is not None else (),
    )


def dot(a, b):
    """Inner product of two codes; conjugate-linear in the first argument.

    Accepts :class:`CodeVector` or plain arrays. Returns a Python float for
    real inputs and a complex scalar otherwise.
    """
    av = a.entries if isinstance(a, CodeVector) else np.asarray(a)
    bv = b.entries if isinstance(b, CodeVector) else np.asarray(b)
    if av.shape != bv.shape:
        raise DimensionMismatchError(f"dot of dim {av.shape} with {bv.shape}")
    out = np.vdot(av, bv)
    return complex(out) if np.iscomplexobj(out) else float(out.real)


def theoretical_dot_moments(scheme: CodeScheme, d: int) -> tuple[float, float]:
    """(mean, variance) of the dot of two independent codes.

    Closed forms exist for spherical (0, 1/d) and Rademacher (0, d) codes
    only; the remaining schemes raise.
    """
    if d < 1:
        raise InvalidDimensionError(f"code dimension must be >= 1, got {d}")
    if scheme is CodeScheme.SPHERICAL:
        return 0.0, 1.0 / d
    if scheme is CodeScheme.RADEMACHER:
        return 0.0, float(d)
    raise UnsupportedSchemeError(f"no closed-form dot moments for {scheme.value} codes")


@dataclass(frozen=True)
class DivergenceReport:
    """Running-mean diagnostics for the entrywise-ratio distribution.

    ``diverged`` is True when any pair of successive running means differs
    by more than ``growth_factor`` (an empirical non-convergence flag, not a
    proof), False when all stay within it, and None when fewer than two
    checkpoints were requested.
    """

    scheme: CodeScheme
    sample_sizes: tuple[int, ...]
    running_means: tuple[float, ...]
    step_ratios: tuple[float, ...]
    growth_factor: float
    diverged: bool | None


_RATIO_SCHEMES = (CodeScheme.GAUSSIAN, CodeScheme.CAUCHY, CodeScheme.UNIFORM_UNIT)


def ratio_moment_divergence(
    scheme: CodeScheme,
    sample_sizes: Sequence[int],
    rng: np.random.Generator,
    growth_factor: float = 1.2,
) -> DivergenceReport:
    """Demonstrate that the entry ratio t/u of two iid codes has no mean.

    Draws ``max(sample_sizes)`` iid ratios and reports the running mean of
    |t/u| at each checkpoint. For all three schemes in scope the mean is
    undefined, so the running means keep drifting; the flag fires when a
    successive pair of checkpoints moves by more than ``growth_factor``.
    """
    if scheme not in _RATIO_SCHEMES:
        raise UnsupportedSchemeError(
            f"ratio divergence applies to continuous codes with undefined "
            f"ratio moments, not {scheme.value}"
        )
    sizes = tuple(int(s) for s in sample_sizes)
    if not sizes or any(s < 1 for s in sizes) or list(sizes) != sorted(set(sizes)):
        raise ValueError("sample_sizes must be a strictly increasing list of positive ints")
    total = sizes[-1]
    num = sample_matrix(scheme, 1, total, rng)[0]
    den = sample_matrix(scheme, 1, total, rng)[0]
    ratios = np.abs(num / den)
    csum = np.cumsum(ratios)
    means = tuple(float(csum[s - 1] / s) for s in sizes)
    steps = tuple(means[i + 1] / means[i] for i in range(len(means) - 1))
    if len(sizes) < 2:
        diverged = None
    else:
        diverged = any(max(r, 1.0 / r) > growth_factor for r in steps)
    return DivergenceReport(
        scheme=scheme,
        sample_sizes=sizes,
        running_means=means,
        step_ratios=steps,
        growth_factor=growth_factor,
        diverged=diverged,
    )
