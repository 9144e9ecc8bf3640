"""Capacity sweep harness: score curves over the edge count.

For each k in the grid, ``trials`` independent graphs are built, one
target is planted, and the edge query (or edge composition followed by
an edge query) is scored for the planted target (present) and for a
freshly drawn non-target (absent). Under ``fixed-codebook`` sampling,
edge endpoints are drawn with replacement from one shared codebook, so
vertices repeat across edges, as graphs are built in practice; under
``fresh-codes`` every endpoint is independent, matching the theorems.

Determinism: each (k, trial) pair derives its own counter-based stream
from the sweep seed, and per-k results are reduced in grid order, so the
output is byte-identical for any worker count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis import SchemeOp, SchemePair, recovery_lower_bound, snr_theory
from .codes import CodeScheme, CodeVector, make_codebook, sample_matrix
from .graphs import GraphEmbedding, edge_compose, edge_query, embed_edge_arrays
from .parallel import pmap
from .trials import _scheme_parts, trial_rng

__all__ = [
    "SweepOp",
    "SamplingMode",
    "SweepConfig",
    "SweepRow",
    "run_sweep",
    "rows_to_csv",
    "CSV_HEADER",
]

_TAG_SWEEP = 4

CSV_HEADER = (
    "k,mean_present,sd_present,mean_absent,sd_absent,"
    "recovery_rate,theory_snr,theory_recovery_bound"
)


class SweepOp(enum.Enum):
    EDGE_QUERY = "edge-query"
    EDGE_COMPOSITION = "edge-composition"

    @property
    def order(self) -> int:
        return 1 if self is SweepOp.EDGE_QUERY else 2


class SamplingMode(enum.Enum):
    FRESH_CODES = "fresh-codes"
    FIXED_CODEBOOK = "fixed-codebook"


@dataclass(frozen=True)
class SweepConfig:
    scheme: SchemePair
    op: SweepOp
    d: int
    k_grid: tuple[int, ...]
    trials: int
    codebook_size: int = 256
    sampling_mode: SamplingMode = SamplingMode.FIXED_CODEBOOK
    seed: int = 0
    raw: bool = False

    def __post_init__(self):
        object.__setattr__(self, "k_grid", tuple(int(k) for k in self.k_grid))
        if not self.k_grid or list(self.k_grid) != sorted(set(self.k_grid)):
            raise ValueError("k_grid must be a nonempty ascending list")
        kmin = 2 if self.op is SweepOp.EDGE_COMPOSITION else 1
        if self.k_grid[0] < kmin:
            raise ValueError(f"{self.op.value} sweeps need k >= {kmin}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.codebook_size < 2:
            raise ValueError("codebook_size must be >= 2")


@dataclass(frozen=True)
class SweepRow:
    k: int
    mean_present: float
    sd_present: float
    mean_absent: float
    sd_absent: float
    recovery_rate: float
    theory_snr: float
    theory_recovery_bound: float

    def csv_row(self) -> str:
        return ",".join(
            [str(self.k)]
            + [
                repr(float(x))
                for x in (
                    self.mean_present,
                    self.sd_present,
                    self.mean_absent,
                    self.sd_absent,
                    self.recovery_rate,
                    self.theory_snr,
                    self.theory_recovery_bound,
                )
            ]
        )


def _sample_fixed_edges(rng, n_cb, k, op):
    """Edge index lists with the planted target first; returns the absent pair too."""
    if op is SweepOp.EDGE_QUERY:
        dom = rng.integers(0, n_cb, size=k)
        cod = rng.integers(0, n_cb, size=k)
        present = (int(dom[0]), int(cod[0]))
        edges = set(zip(dom.tolist(), cod.tolist()))
        while True:
            a, b = (int(x) for x in rng.integers(0, n_cb, size=2))
            if (a, b) not in edges:
                return dom, cod, present, (a, b)
    u, v, w = (int(x) for x in rng.integers(0, n_cb, size=3))
    dom = np.concatenate([[u, v], rng.integers(0, n_cb, size=k - 2)])
    cod = np.concatenate([[v, w], rng.integers(0, n_cb, size=k - 2)])
    out_nbrs: dict[int, set[int]] = {}
    for x, y in zip(dom.tolist(), cod.tolist()):
        out_nbrs.setdefault(x, set()).add(y)
    while True:
        a, b = (int(x) for x in rng.integers(0, n_cb, size=2))
        if not any(b in out_nbrs.get(x, ()) for x in out_nbrs.get(a, ())):
            return dom, cod, (u, w), (a, b)


def _point(cfg: SweepConfig, k: int) -> SweepRow:
    cs, binding = _scheme_parts(cfg.scheme)
    fixed = cfg.sampling_mode is SamplingMode.FIXED_CODEBOOK
    cb = make_codebook(cfg.codebook_size, cfg.d, cs, cfg.seed).matrix if fixed else None
    present_scores = np.empty(cfg.trials)
    absent_scores = np.empty(cfg.trials)
    recovered = 0
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, _TAG_SWEEP, cfg.d, k, t)
        if fixed:
            dom_i, cod_i, present, absent = _sample_fixed_edges(
                rng, cfg.codebook_size, k, cfg.op
            )
            dom, cod = cb[dom_i], cb[cod_i]
            s_p, t_p = cb[present[0]], cb[present[1]]
            s_a, t_a = cb[absent[0]], cb[absent[1]]
        else:
            if cfg.op is SweepOp.EDGE_QUERY:
                dom = sample_matrix(cs, k, cfg.d, rng)
                cod = sample_matrix(cs, k, cfg.d, rng)
                s_p, t_p = dom[0], cod[0]
            else:
                uvw = sample_matrix(cs, 3, cfg.d, rng)
                rest_d = sample_matrix(cs, k - 2, cfg.d, rng) if k > 2 else np.empty((0, cfg.d))
                rest_c = sample_matrix(cs, k - 2, cfg.d, rng) if k > 2 else np.empty((0, cfg.d))
                dom = np.vstack([uvw[0][None], uvw[1][None], rest_d])
                cod = np.vstack([uvw[1][None], uvw[2][None], rest_c])
                s_p, t_p = uvw[0], uvw[2]
            fresh = sample_matrix(cs, 2, cfg.d, rng)
            s_a, t_a = fresh[0], fresh[1]
        g = embed_edge_arrays(binding, dom, cod, cs)
        if cfg.op is SweepOp.EDGE_COMPOSITION:
            g = edge_compose(g)
        p = edge_query(CodeVector(s_p, cs), CodeVector(t_p, cs), g, raw=cfg.raw)
        a = edge_query(CodeVector(s_a, cs), CodeVector(t_a, cs), g, raw=cfg.raw)
        present_scores[t] = p
        absent_scores[t] = a
        recovered += int(p >= a)
    ddof = 1 if cfg.trials > 1 else 0
    so = SchemeOp(cfg.scheme, cfg.op.order)
    if cfg.op is SweepOp.EDGE_COMPOSITION and k < 3:
        snr = float("nan")
        bound = float("nan")
    else:
        snr = snr_theory(so, cfg.d, k).snr
        bound = recovery_lower_bound(so, cfg.d, k, 1)
    return SweepRow(
        k=k,
        mean_present=float(present_scores.mean()),
        sd_present=float(present_scores.std(ddof=ddof)),
        mean_absent=float(absent_scores.mean()),
        sd_absent=float(absent_scores.std(ddof=ddof)),
        recovery_rate=recovered / cfg.trials,
        theory_snr=snr,
        theory_recovery_bound=bound,
    )


def _point_job(args) -> SweepRow:
    cfg, k = args
    return _point(cfg, k)


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> list[SweepRow]:
    """One :class:`SweepRow` per grid point, in grid order."""
    return pmap(_point_job, [(cfg, k) for k in cfg.k_grid], workers)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in rows]) + "\n"
