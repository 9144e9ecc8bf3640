"""Theory-versus-simulation verification grid.

Runs the Monte Carlo trial protocols over a grid of (scheme, operation,
d, k) points and checks each against the closed-form predictions:

* vertex-query SNR within 25% of theory, edge-composition SNR within 30%;
* recovery rate at least the theoretical lower bound with M=31 wrong
  candidates. Bounds above 0.99 sit beyond Monte Carlo resolution at
  these trial counts (they are also large-d approximations in the tensor
  case), so the effective threshold is capped at 0.99;
* the equal capacity-memory ratio identity, exactly;
* monotonicity of every tail and recovery bound in d, k and M.

The report is deterministic text: same seed, same bytes, any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (
    SchemeOp,
    SchemePair,
    capacity_memory_ratio,
    empirical_recovery_rate,
    empirical_snr,
    recovery_lower_bound,
    snr_theory,
    tail_bounds,
)
from .parallel import pmap
from .trials import run_edge_composition_trials, run_vertex_query_trials

__all__ = ["CheckRow", "GRIDS", "run_verification", "format_report"]

VQ_TOLERANCE = 0.25
EC_TOLERANCE = 0.30
RECOVERY_CAP = 0.99
DISTRACTORS = 31

#: Grid presets: (vq_points, ec_points, trials) where points are (d, k).
GRIDS = {
    "small": {
        "vq": [(32, 4), (32, 16), (64, 4), (64, 16)],
        "ec": [(64, 4), (64, 8)],
        "trials": 200,
    },
    "full": {
        "vq": [(d, k) for d in (32, 64, 128) for k in (4, 8, 16, 32)],
        "ec": [(d, k) for d in (64, 128) for k in (4, 8, 16)],
        "trials": 500,
    },
}


@dataclass(frozen=True)
class CheckRow:
    name: str
    observed: float
    required: str
    passed: bool


def _point_checks(args) -> list[CheckRow]:
    scheme, order, d, k, trials, seed = args
    so = SchemeOp(scheme, order)
    if order == 1:
        records = run_vertex_query_trials(scheme, d, k, trials, seed, DISTRACTORS)
        tol = VQ_TOLERANCE
        opname = "vq"
    else:
        records = run_edge_composition_trials(scheme, d, k, trials, seed, DISTRACTORS)
        tol = EC_TOLERANCE
        opname = "ec"
    emp = empirical_snr(records)
    theory = snr_theory(so, d, k)
    ratio = emp.snr / theory.snr
    rate = empirical_recovery_rate(records).rate
    bound = recovery_lower_bound(so, d, k, DISTRACTORS)
    threshold = min(bound, RECOVERY_CAP)
    tag = f"{opname}[{scheme.value},d={d},k={k}]"
    return [
        CheckRow(
            f"{tag} snr-ratio",
            ratio,
            f"in [{1 - tol}, {1 + tol}]",
            1 - tol <= ratio <= 1 + tol,
        ),
        CheckRow(
            f"{tag} recovery",
            rate,
            f">= {threshold!r} (bound {bound!r} capped at {RECOVERY_CAP})",
            rate >= threshold,
        ),
    ]


def _equal_ratio_checks() -> list[CheckRow]:
    rows = []
    for n in (1, 2, 3, 4):
        for d in (16, 64, 256, 1024, 4096):
            hr = capacity_memory_ratio(SchemePair.HADAMARD_RADEMACHER, n, d).ratio
            ts = capacity_memory_ratio(SchemePair.TENSOR_SPHERICAL, n, d).ratio
            rows.append(
                CheckRow(
                    f"capacity-ratio-equal[n={n},d={d}]",
                    hr - ts,
                    "== 0 exactly",
                    hr == ts,
                )
            )
    return rows


def _monotonicity_checks() -> list[CheckRow]:
    """Bounds must shrink as d grows and grow with k; recovery bounds the
    reverse, and they fall as M grows."""
    rows = []
    ds = (32, 64, 128, 256)
    ks = (4, 8, 16, 32)
    for scheme in SchemePair:
        for order, opname in ((1, "vq"), (2, "ec")):
            ok = True
            for k in ks:
                vals_d = [tail_bounds(SchemeOp(scheme, order), d, k) for d in ds]
                ok &= all(
                    a.false_positive >= b.false_positive and a.true_negative >= b.true_negative
                    for a, b in zip(vals_d, vals_d[1:])
                )
            for d in ds:
                vals_k = [tail_bounds(SchemeOp(scheme, order), d, k) for k in ks]
                ok &= all(
                    a.false_positive <= b.false_positive and a.true_negative <= b.true_negative
                    for a, b in zip(vals_k, vals_k[1:])
                )
            rows.append(
                CheckRow(f"tail-monotone[{scheme.value},{opname}]", float(ok), "is 1", ok)
            )
            ok = True
            for k in ks:
                rec_d = [recovery_lower_bound(SchemeOp(scheme, order), d, k, 31) for d in ds]
                ok &= all(a <= b for a, b in zip(rec_d, rec_d[1:]))
            for d in ds:
                rec_k = [recovery_lower_bound(SchemeOp(scheme, order), d, k, 31) for k in ks]
                ok &= all(a >= b for a, b in zip(rec_k, rec_k[1:]))
            for d, k in ((64, 8), (128, 16)):
                rec_m = [recovery_lower_bound(SchemeOp(scheme, order), d, k, m) for m in (1, 8, 64)]
                ok &= all(a >= b for a, b in zip(rec_m, rec_m[1:]))
            rows.append(
                CheckRow(f"recovery-monotone[{scheme.value},{opname}]", float(ok), "is 1", ok)
            )
    return rows


def run_verification(
    grid: str = "small",
    seed: int = 0,
    trials: int | None = None,
    workers: int | None = None,
) -> list[CheckRow]:
    """Run every check; rows come back in a fixed, grid-determined order."""
    if grid not in GRIDS:
        raise ValueError(f"grid must be one of {sorted(GRIDS)}, got {grid!r}")
    spec = GRIDS[grid]
    n_trials = trials if trials is not None else spec["trials"]
    jobs = []
    for scheme in (SchemePair.TENSOR_SPHERICAL, SchemePair.HADAMARD_RADEMACHER):
        for d, k in spec["vq"]:
            jobs.append((scheme, 1, d, k, n_trials, seed))
        for d, k in spec["ec"]:
            jobs.append((scheme, 2, d, k, n_trials, seed))
    rows: list[CheckRow] = []
    for chunk in pmap(_point_checks, jobs, workers):
        rows.extend(chunk)
    rows.extend(_equal_ratio_checks())
    rows.extend(_monotonicity_checks())
    return rows


def format_report(rows: list[CheckRow]) -> str:
    width = max(len(r.name) for r in rows)
    lines = []
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name.ljust(width)}  observed={r.observed!r}  required {r.required}")
    n_fail = sum(1 for r in rows if not r.passed)
    lines.append(f"{len(rows) - n_fail}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"
