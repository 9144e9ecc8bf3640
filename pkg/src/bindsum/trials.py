"""Monte Carlo trial runners for the capacity theory.

Two protocols, matching the theorems' sampling assumptions:

* Vertex-query trials build the fixed graph with one planted edge (v, u)
  plus k distractor edges, every endpoint a fresh independent code, then
  query v and record signal/noise norms and cleanup success against M
  fresh wrong candidates.

* Edge-composition trials sample the composed superposition in the form
  the second-order theorems analyze: the planted composed edge plus an
  explicit sum of independent noise terms (k^2 - 2k weighted outer
  products under tensor/spherical, k^2 + 2k Rademacher vectors under
  Hadamard/Rademacher). Composing a literal (k+1)-edge graph contains
  extra structure the theorems ignore -- the symmetric Hadamard product
  matches the composable pair twice and every edge self-pairs -- so its
  noise norm is provably larger ((3k^2+4k-2)d instead of (k^2+2k)d for
  Hadamard); see ``graphs.edge_compose`` for the literal operation.

Per-trial generators are split off a counter-based root keyed by
(seed, protocol tag, d, k, trial), so trials are independent of execution
order and safe to fan out across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import SchemePair
from .bindings import bind, hadamard, permuted_hadamard, tensor
from .codes import CodeScheme, CodeVector, dot, sample_matrix
from .graphs import GraphEmbedding, cleanup, edge_query, embed_edge_arrays, vertex_query

__all__ = [
    "TrialRecord",
    "trial_rng",
    "run_vertex_query_trials",
    "run_edge_composition_trials",
    "defect_similarities",
]

_TAG_VQ = 1
_TAG_EC = 2
_TAG_DEFECT = 3


@dataclass(frozen=True)
class TrialRecord:
    """One trial's measured norms, similarity scores and recovery flag."""

    scheme: SchemePair
    order: int
    d: int
    k: int
    signal_sq: float
    noise_sq: float
    true_score: float
    best_false_score: float
    correct: bool | None


def trial_rng(seed: int, tag: int, d: int, k: int, trial: int) -> np.random.Generator:
    """Philox stream for one trial, keyed by the full trial coordinates."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(tag, d, k, trial))
    return np.random.Generator(np.random.Philox(ss))


def _scheme_parts(scheme: SchemePair):
    if scheme is SchemePair.TENSOR_SPHERICAL:
        return CodeScheme.SPHERICAL, tensor()
    return CodeScheme.RADEMACHER, hadamard()


def run_vertex_query_trials(
    scheme: SchemePair,
    d: int,
    k: int,
    n_trials: int,
    seed: int,
    distractors: int = 31,
) -> list[TrialRecord]:
    """First-order trials: query v against G = bind(v,u) + sum bind(q_i, r_i).

    All 2k+2 endpoint codes and the ``distractors`` wrong cleanup
    candidates are fresh and independent every trial.
    """
    if k < 1 or d < 1 or n_trials < 1:
        raise ValueError("d, k and n_trials must all be >= 1")
    cs, binding = _scheme_parts(scheme)
    records = []
    for t in range(n_trials):
        rng = trial_rng(seed, _TAG_VQ, d, k, t)
        mat = sample_matrix(cs, 2 * k + 2 + distractors, d, rng)
        v, u = mat[0], mat[1]
        q = mat[2 : 2 + k]
        r = mat[2 + k : 2 + 2 * k]
        g = embed_edge_arrays(
            binding, np.vstack([v[None], q]), np.vstack([u[None], r]), cs
        )
        out = vertex_query(CodeVector(v, cs), g)
        noise = out - u
        candidates = [("true", u)] + [
            (f"f{j}", mat[2 + 2 * k + j]) for j in range(distractors)
        ]
        outcome = cleanup(out, candidates, true_id="true")
        scores = dict(outcome.scores)
        false_scores = [s for cid, s in outcome.scores if cid != "true"]
        records.append(
            TrialRecord(
                scheme=scheme,
                order=1,
                d=d,
                k=k,
                signal_sq=float(u @ u),
                noise_sq=float(noise @ noise),
                true_score=scores["true"],
                best_false_score=max(false_scores) if false_scores else float("-inf"),
                correct=outcome.correct,
            )
        )
    return records


def run_edge_composition_trials(
    scheme: SchemePair,
    d: int,
    k: int,
    n_trials: int,
    seed: int,
    distractors: int = 31,
) -> list[TrialRecord]:
    """Second-order trials under the theorems' noise model.

    The composed embedding is the planted edge (u, w) plus the analyzed
    number of independent noise terms. The edge query scores the true pair
    against ``distractors`` fresh pairs.
    """
    if k < 3:
        raise ValueError(f"edge-composition trials need k >= 3, got {k}")
    if d < 1 or n_trials < 1:
        raise ValueError("d and n_trials must be >= 1")
    cs, binding = _scheme_parts(scheme)
    is_ts = scheme is SchemePair.TENSOR_SPHERICAL
    n_noise = k * k - 2 * k if is_ts else k * k + 2 * k
    records = []
    for t in range(n_trials):
        rng = trial_rng(seed, _TAG_EC, d, k, t)
        if is_ts:
            mat = sample_matrix(cs, 2 + 4 * n_noise + 2 * distractors, d, rng)
            u, w = mat[0], mat[1]
            a = mat[2 : 2 + n_noise]
            b = mat[2 + n_noise : 2 + 2 * n_noise]
            dd = mat[2 + 2 * n_noise : 2 + 3 * n_noise]
            cc = mat[2 + 3 * n_noise : 2 + 4 * n_noise]
            falses = mat[2 + 4 * n_noise :]
            coeffs = np.einsum("nd,nd->n", a, b)
            noise_payload = (dd * coeffs[:, None]).T @ cc
            signal_payload = np.outer(u, w)
        else:
            mat = sample_matrix(cs, 2 + n_noise + 2 * distractors, d, rng)
            u, w = mat[0], mat[1]
            noise_payload = mat[2 : 2 + n_noise].sum(axis=0)
            signal_payload = u * w
            falses = mat[2 + n_noise :]
        g2 = GraphEmbedding(
            signal_payload + noise_payload, binding, cs, edge_count=k + 1, composed=True
        )
        true_score = edge_query(CodeVector(u, cs), CodeVector(w, cs), g2)
        false_scores = [
            edge_query(CodeVector(falses[2 * j], cs), CodeVector(falses[2 * j + 1], cs), g2)
            for j in range(distractors)
        ]
        best_false = max(false_scores) if false_scores else float("-inf")
        records.append(
            TrialRecord(
                scheme=scheme,
                order=2,
                d=d,
                k=k,
                signal_sq=float(np.sum(signal_payload * signal_payload)),
                noise_sq=float(np.sum(noise_payload * noise_payload)),
                true_score=true_score,
                best_false_score=best_false,
                correct=true_score >= best_false,
            )
        )
    return records


def defect_similarities(kind: str, d: int, n_trials: int, seed: int) -> np.ndarray:
    """Normalized similarity between a directly bound edge (a, c) and the
    edge obtained by composing (a, b) with (b, c) outside the supported
    composition API.

    ``"hadamard"``: Rademacher codes, plain Hadamard product; the match is
    exact, similarity 1. ``"permuted-hadamard"``: the permutation noise
    b * Pb never cancels, so similarity concentrates near 0.
    ``"phasor"``: conjugate unbinding strips the wrong factor, leaving
    conj(a) * c against a * c; complex similarities concentrate near 0.
    """
    if kind not in ("hadamard", "permuted-hadamard", "phasor"):
        raise ValueError(f"unknown defect kind {kind!r}")
    sims = []
    for t in range(n_trials):
        rng = trial_rng(seed, _TAG_DEFECT, d, 0, t)
        if kind == "phasor":
            mat = sample_matrix(CodeScheme.PHASOR, 3, d, rng)
            a, b, c = mat
            scheme = hadamard()
            composed = np.conj(bind(scheme, a, b).payload) * bind(scheme, b, c).payload
            target = bind(scheme, a, c).payload
        else:
            mat = sample_matrix(CodeScheme.RADEMACHER, 3, d, rng)
            a, b, c = mat
            scheme = hadamard() if kind == "hadamard" else permuted_hadamard()
            composed = bind(scheme, a, b).payload * bind(scheme, b, c).payload
            target = bind(scheme, a, c).payload
        sims.append(dot(target, composed) / d)
    return np.asarray(sims)
