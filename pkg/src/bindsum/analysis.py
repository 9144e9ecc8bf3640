"""Closed-form capacity theory and Monte Carlo estimators.

Every theoretical quantity has a single home here: expected signal/noise
norms and their ratio, the Gaussian/Bernstein-style tail bounds on false
positives and missed signals, the recovery-probability lower bounds given
M wrong candidates, and the capacity-memory ratio for operations of any
order. The companion estimators compute the same quantities from recorded
Monte Carlo trials (see :mod:`bindsum.trials`).

Conventions: ``d`` is the code dimension, ``k`` the edge/noise-term count
parameter of the fixed graph under study, ``n`` the operation order
(vertex query 1, edge composition 2). Only the fully specified bounds are
implemented; the constant-C two-sided companions are out of scope.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

__all__ = [
    "SchemePair",
    "Operation",
    "SchemeOp",
    "SnrTheory",
    "ConnectivitySnr",
    "TailBounds",
    "CapacityMemory",
    "TheoryReport",
    "EmpiricalSnr",
    "RecoveryRate",
    "snr_theory",
    "snr_theory_connectivity",
    "tail_bounds",
    "recovery_lower_bound",
    "capacity_memory_ratio",
    "empirical_snr",
    "empirical_recovery_rate",
    "theory_report",
]

Z95 = 1.959963984540054  # two-sided 95% normal quantile


class SchemePair(enum.Enum):
    """Coding/binding pairings under comparison."""

    TENSOR_SPHERICAL = "tensor-spherical"
    HADAMARD_RADEMACHER = "hadamard-rademacher"


class Operation(enum.Enum):
    """Graph operations by the number of times the embedding enters."""

    VERTEX_QUERY = 1
    EDGE_COMPOSITION = 2

    @property
    def order(self) -> int:
        return self.value


@dataclass(frozen=True)
class SchemeOp:
    """A (scheme, operation order) pair; orders 1 and 2 have named ops."""

    scheme: SchemePair
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"operation order must be >= 1, got {self.order}")

    @classmethod
    def vertex_query(cls, scheme: SchemePair) -> "SchemeOp":
        return cls(scheme, Operation.VERTEX_QUERY.order)

    @classmethod
    def edge_composition(cls, scheme: SchemePair) -> "SchemeOp":
        return cls(scheme, Operation.EDGE_COMPOSITION.order)


def _check_dk(so: SchemeOp, d: int, k: int) -> None:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if so.order == 2 and k < 3:
        raise ValueError(f"edge composition formulas need k >= 3, got {k}")
    if so.order not in (1, 2):
        raise ValueError(f"closed forms exist for orders 1 and 2, got order {so.order}")


_HR = SchemePair.HADAMARD_RADEMACHER
_TS = SchemePair.TENSOR_SPHERICAL


@dataclass(frozen=True)
class SnrTheory:
    signal_sq: float
    noise_sq: float
    snr: float


def snr_theory(so: SchemeOp, d: int, k: int) -> SnrTheory:
    """Expected squared signal/noise norms and their ratio.

    Vertex query: Hadamard/Rademacher (d, kd, 1/k); tensor/spherical
    (1, k/d, d/k). Edge composition: HR (d, (k^2+2k)d, 1/(k^2+2k)) from the
    (k+1)^2 - 1 distributed cross terms; TS (1, (k^2-2k)/d, d/(k^2-2k)).
    """
    _check_dk(so, d, k)
    if so.order == 1:
        if so.scheme is _HR:
            return SnrTheory(float(d), float(k * d), 1.0 / k)
        return SnrTheory(1.0, k / d, d / k)
    terms_hr = k * k + 2 * k
    terms_ts = k * k - 2 * k
    if so.scheme is _HR:
        return SnrTheory(float(d), float(terms_hr * d), 1.0 / terms_hr)
    return SnrTheory(1.0, terms_ts / d, d / terms_ts)


_CONNECTIVITY_NOTE = (
    "the stated ratio 1/(4L^2kd) is dimensionally inconsistent with the "
    "stated norms d and 4L^2kd; snr is derived from the norms"
)


@dataclass(frozen=True)
class ConnectivitySnr:
    """Loose vertex-query norms for graphs with maximum connectivity L.

    ``snr`` is the ratio of the stated norms; ``stated_snr`` reproduces the
    source ratio verbatim, which disagrees with its own norms (see
    ``note``).
    """

    signal_sq: float
    noise_sq: float
    snr: float
    stated_snr: float
    note: str = _CONNECTIVITY_NOTE


def snr_theory_connectivity(d: int, k: int, L: int) -> ConnectivitySnr:
    """Hadamard/Rademacher vertex-query norms when vertices repeat.

    A graph whose every vertex touches at most L edges splits into at most
    2L distinct-vertex subgraphs, giving the loose noise bound 4L^2 k d.
    """
    if d < 1 or k < 1 or L < 1:
        raise ValueError("d, k and L must all be >= 1")
    noise = 4.0 * L * L * k * d
    return ConnectivitySnr(
        signal_sq=float(d),
        noise_sq=noise,
        snr=d / noise,
        stated_snr=1.0 / (4.0 * L * L * k * d),
    )


@dataclass(frozen=True)
class TailBounds:
    """Upper bounds on P(false score exceeds the ideal signal) and
    P(true score falls below zero)."""

    false_positive: float
    true_negative: float


def tail_bounds(so: SchemeOp, d: int, k: int) -> TailBounds:
    """The exponential tail bounds for each scheme and operation."""
    _check_dk(so, d, k)
    if so.order == 1:
        if so.scheme is _HR:
            return TailBounds(
                math.exp(-d / (2.0 * (k + 1))),
                math.exp(-d / (2.0 * k)),
            )
        return TailBounds(
            math.exp(-(d * d) / (2.0 * k)),
            math.exp(-(d * d) / k),
        )
    if so.scheme is _HR:
        return TailBounds(
            math.exp(-d / (2.0 * (k + 1) ** 2)),
            math.exp(-d / (2.0 * (k * k - 2 * k))),
        )
    return TailBounds(
        math.exp(-(d ** 3) / (2.0 * k * k)),
        math.exp(-(d ** 3) / (2.0 * k * k)),
    )


def recovery_lower_bound(so: SchemeOp, d: int, k: int, m: int) -> float:
    """Lower bound on recovering the true answer against ``m`` wrong candidates.

    Clamped to [0, 1]. ``m=0`` means no competitors, so probability 1. The
    tensor bounds are large-d approximations and can exceed what finite-d
    Monte Carlo achieves; see the verification grid's handling.
    """
    _check_dk(so, d, k)
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if m == 0:
        return 1.0
    if so.order == 1:
        if so.scheme is _HR:
            exponent = d / (2.0 * (2 * k + 1))
        else:
            exponent = (d * d) / k
    else:
        if so.scheme is _HR:
            exponent = d / (4.0 * (k + 1) ** 2 - 2.0)
        else:
            exponent = (d ** 3) / (k * k)
    return min(1.0, max(0.0, 1.0 - m * math.exp(-exponent)))


@dataclass(frozen=True)
class CapacityMemory:
    """Edges storable with accurate recovery vs embedding dimension."""

    capacity: float
    memory: float
    ratio: float


def capacity_memory_ratio(scheme: SchemePair, order: int, d: int) -> CapacityMemory:
    """Capacity-memory ratio for an order-n operation: d^(-(n-1)/n).

    Hadamard/Rademacher stores d^(1/n) edges in d dimensions;
    tensor/spherical stores d^((n+1)/n) in d^2. Both ratios are computed by
    the same expression, so the equal-ratio identity holds exactly.
    """
    if order < 1:
        raise ValueError(f"operation order must be >= 1, got {order}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    ratio = float(d) ** (-(order - 1) / order)
    if scheme is _HR:
        return CapacityMemory(float(d) ** (1.0 / order), float(d), ratio)
    return CapacityMemory(float(d) ** ((order + 1) / order), float(d) ** 2, ratio)


@dataclass(frozen=True)
class TheoryReport:
    """All closed-form quantities for one (scheme, op, d, k, M) setting."""

    scheme: str
    order: int
    d: int
    k: int
    m: int
    signal_sq_norm: float
    noise_sq_norm: float
    snr: float
    false_positive_bound: float
    true_negative_bound: float
    recovery_lower_bound: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def csv_row(self) -> str:
        vals = asdict(self)
        return ",".join(str(vals[k]) for k in self.csv_header().split(","))

    @staticmethod
    def csv_header() -> str:
        return (
            "scheme,order,d,k,m,signal_sq_norm,noise_sq_norm,snr,"
            "false_positive_bound,true_negative_bound,recovery_lower_bound"
        )


def theory_report(so: SchemeOp, d: int, k: int, m: int) -> TheoryReport:
    snr = snr_theory(so, d, k)
    tails = tail_bounds(so, d, k)
    return TheoryReport(
        scheme=so.scheme.value,
        order=so.order,
        d=d,
        k=k,
        m=m,
        signal_sq_norm=snr.signal_sq,
        noise_sq_norm=snr.noise_sq,
        snr=snr.snr,
        false_positive_bound=min(1.0, tails.false_positive),
        true_negative_bound=min(1.0, tails.true_negative),
        recovery_lower_bound=recovery_lower_bound(so, d, k, m),
    )


@dataclass(frozen=True)
class EmpiricalSnr:
    """Sample means of per-trial squared norms, their standard errors, and
    the plug-in SNR estimate."""

    signal_sq_mean: float
    noise_sq_mean: float
    snr: float
    signal_sq_se: float
    noise_sq_se: float
    n_trials: int


def _mean_se(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def empirical_snr(records) -> EmpiricalSnr:
    """Estimate signal/noise norms and SNR from trial records."""
    if len(records) < 2:
        raise ValueError("empirical_snr needs at least 2 trial records")
    sig_mean, sig_se = _mean_se([r.signal_sq for r in records])
    noise_mean, noise_se = _mean_se([r.noise_sq for r in records])
    return EmpiricalSnr(
        signal_sq_mean=sig_mean,
        noise_sq_mean=noise_mean,
        snr=sig_mean / noise_mean,
        signal_sq_se=sig_se,
        noise_sq_se=noise_se,
        n_trials=len(records),
    )


@dataclass(frozen=True)
class RecoveryRate:
    rate: float
    wilson_low: float
    wilson_high: float
    n_trials: int


def empirical_recovery_rate(records) -> RecoveryRate:
    """Fraction of correct recoveries with a 95% Wilson score interval."""
    flagged = [r for r in records if r.correct is not None]
    if not flagged:
        raise ValueError("no trial records carry a ground-truth correctness flag")
    n = len(flagged)
    p = sum(1 for r in flagged if r.correct) / n
    z2 = Z95 * Z95
    denom = 1.0 + z2 / n
    center = (p + z2 / (2 * n)) / denom
    half = Z95 * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    return RecoveryRate(
        rate=p,
        wilson_low=max(0.0, center - half),
        wilson_high=min(1.0, center + half),
        n_trials=n,
    )
