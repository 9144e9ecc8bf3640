"""Command-line harness.

Subcommands::

    sweep          run a capacity sweep, write CSV (and optionally SVG)
    verify-theory  run the theory-vs-simulation grid, print a check table
    codes-stats    distribution fits and moment checks for the code families
    defects-demo   composition-defect similarities and ratio divergence
    plot           render a sweep CSV to SVG

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.
Config may come from a JSON file (``--config``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
from scipy import stats

from . import kernels
from .analysis import SchemePair
from .codes import (
    CodeScheme,
    ratio_moment_divergence,
    sample_matrix,
    theoretical_dot_moments,
)
from .svgplot import sweep_svg
from .sweep import (
    CSV_HEADER,
    SamplingMode,
    SweepConfig,
    SweepOp,
    rows_to_csv,
    run_sweep,
)
from .trials import defect_similarities, trial_rng
from .verify import format_report, run_verification

_SCHEMES = {
    "tensor": SchemePair.TENSOR_SPHERICAL,
    "hadamard": SchemePair.HADAMARD_RADEMACHER,
}
USAGE_ERROR = 2


def _parse_k_grid(text: str) -> tuple[int, ...]:
    """Either a comma list ``8,16,32`` or a doubling range ``8..500``
    (powers of two from the start, the endpoint always included)."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad k range {text!r}")
        grid = []
        k = lo
        while k < hi:
            grid.append(k)
            k *= 2
        grid.append(hi)
        return tuple(grid)
    return tuple(int(x) for x in text.split(","))


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $BINDSUM_WORKERS or 1)")


def _build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(prog="bindsum", description=__doc__,
                                   formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="capacity sweep over edge counts")
    p.add_argument("--config", help="JSON file with sweep settings; flags override")
    p.add_argument("--scheme", choices=sorted(_SCHEMES))
    p.add_argument("--op", choices=[o.value for o in SweepOp])
    p.add_argument("--d", type=int)
    p.add_argument("--k", help="comma list '8,16,32' or doubling range '8..500'")
    p.add_argument("--trials", type=int)
    p.add_argument("--codebook-size", type=int)
    p.add_argument("--sampling", choices=[m.value for m in SamplingMode])
    p.add_argument("--raw", action="store_true",
                   help="unnormalized Hadamard edge scores (ideal d instead of 1)")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.add_argument("--svg", help="also render the curves to this SVG path")
    _add_common(p)

    p = sub.add_parser("verify-theory", help="theory-vs-simulation check grid")
    p.add_argument("--grid", choices=["small", "full"], default="small")
    p.add_argument("--trials", type=int, default=None, help="override the grid's trial count")
    p.add_argument("-o", "--output", help="also write the report here")
    _add_common(p)

    p = sub.add_parser("codes-stats", help="distribution fits for the code families")
    p.add_argument("--pairs", type=int, default=10_000)
    _add_common(p)

    p = sub.add_parser("defects-demo", help="composition defects and ratio divergence")
    p.add_argument("--d", type=int, default=256)
    p.add_argument("--trials", type=int, default=200)
    _add_common(p)

    p = sub.add_parser("plot", help="render a sweep CSV to SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--title", default="")
    return root


def _cmd_sweep(args) -> int:
    settings = {}
    if args.config:
        with open(args.config) as fh:
            settings.update(json.load(fh))
    for key, val in (
        ("scheme", args.scheme),
        ("op", args.op),
        ("d", args.d),
        ("k", args.k),
        ("trials", args.trials),
        ("codebook_size", args.codebook_size),
        ("sampling", args.sampling),
    ):
        if val is not None:
            settings[key] = val
    if args.raw:
        settings["raw"] = True
    missing = [k for k in ("scheme", "op", "d", "k", "trials") if k not in settings]
    if missing:
        print(f"sweep: missing settings {missing}; pass flags or --config", file=sys.stderr)
        return USAGE_ERROR
    k_grid = settings["k"]
    if isinstance(k_grid, str):
        k_grid = _parse_k_grid(k_grid)
    cfg = SweepConfig(
        scheme=_SCHEMES[settings["scheme"]],
        op=SweepOp(settings["op"]),
        d=int(settings["d"]),
        k_grid=tuple(k_grid),
        trials=int(settings["trials"]),
        codebook_size=int(settings.get("codebook_size", 256)),
        sampling_mode=SamplingMode(settings.get("sampling", "fixed-codebook")),
        seed=args.seed,
        raw=bool(settings.get("raw", False)),
    )
    rows = run_sweep(cfg, workers=args.workers)
    with open(args.output, "w") as fh:
        fh.write(rows_to_csv(rows))
    if args.svg:
        ideal = float(cfg.d) if cfg.raw else 1.0
        svg = sweep_svg(
            [r.k for r in rows],
            [r.mean_present for r in rows],
            [r.mean_absent for r in rows],
            title=f"{settings['scheme']} {cfg.op.value} d={cfg.d}",
            present_ideal=ideal,
        )
        with open(args.svg, "w") as fh:
            fh.write(svg)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


def _cmd_verify(args) -> int:
    rows = run_verification(args.grid, seed=args.seed, trials=args.trials,
                            workers=args.workers)
    report = format_report(rows)
    sys.stdout.write(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(report)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_codes_stats(args) -> int:
    n = args.pairs
    failures = 0
    print(f"kernel backend: {kernels.BACKEND}")
    print(f"distribution fits over {n} dot-product pairs (significance 0.01)")
    for d in (4, 16, 64):
        rng = trial_rng(args.seed, 10, d, 0, 0)
        a = sample_matrix(CodeScheme.SPHERICAL, n, d, rng)
        b = sample_matrix(CodeScheme.SPHERICAL, n, d, rng)
        x = np.einsum("nd,nd->n", a, b)
        res = stats.kstest((x + 1) / 2, "beta", args=((d - 1) / 2, (d - 1) / 2))
        ok = res.pvalue > 0.01
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  spherical d={d}: KS vs Beta p={res.pvalue:.4f}")
    for d in (8, 16):
        rng = trial_rng(args.seed, 11, d, 0, 0)
        a = sample_matrix(CodeScheme.RADEMACHER, n, d, rng)
        b = sample_matrix(CodeScheme.RADEMACHER, n, d, rng)
        x = np.einsum("nd,nd->n", a, b)
        pval = _binom_chisquare_pvalue(x, d, n)
        ok = pval > 0.01
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  rademacher d={d}: chi2 vs Binom p={pval:.4f}")
    for scheme, d in ((CodeScheme.SPHERICAL, 256), (CodeScheme.RADEMACHER, 256)):
        rng = trial_rng(args.seed, 12, d, 0, 0)
        a = sample_matrix(scheme, n, d, rng)
        b = sample_matrix(scheme, n, d, rng)
        x = np.einsum("nd,nd->n", a, b)
        mean_t, var_t = theoretical_dot_moments(scheme, d)
        se_mean = np.sqrt(var_t / n)
        ok = abs(x.mean() - mean_t) < 3 * se_mean and abs(x.var() / var_t - 1) < 0.15
        failures += not ok
        print(
            f"{'PASS' if ok else 'FAIL'}  {scheme.value} d={d}: "
            f"mean={x.mean():.5f} (theory {mean_t}), var={x.var():.5f} (theory {var_t})"
        )
    return 1 if failures else 0


def _binom_chisquare_pvalue(x: np.ndarray, d: int, n: int) -> float:
    """Chi-square fit of (X+d)/2 against Binom(d, 1/2), merging thin tails."""
    y = ((x + d) / 2).astype(int)
    counts = np.bincount(y, minlength=d + 1).astype(float)
    expected = stats.binom.pmf(np.arange(d + 1), d, 0.5) * n
    lo = 0
    while expected[: lo + 1].sum() < 5:
        lo += 1
    hi = d
    while expected[hi:].sum() < 5:
        hi -= 1
    f_obs = np.concatenate([[counts[: lo + 1].sum()], counts[lo + 1 : hi], [counts[hi:].sum()]])
    f_exp = np.concatenate([[expected[: lo + 1].sum()], expected[lo + 1 : hi], [expected[hi:].sum()]])
    f_exp *= f_obs.sum() / f_exp.sum()
    return float(stats.chisquare(f_obs, f_exp).pvalue)


def _cmd_defects(args) -> int:
    d, trials = args.d, args.trials
    failures = 0
    plain = defect_similarities("hadamard", d, trials, args.seed)
    ph = defect_similarities("permuted-hadamard", d, trials, args.seed)
    phasor = defect_similarities("phasor", d, trials, args.seed)
    ok = bool(np.all(plain == 1.0))
    failures += not ok
    print(f"{'PASS' if ok else 'FAIL'}  hadamard composition similarity == 1 exactly "
          f"(mean {plain.mean():.6f})")
    for name, sims in (("permuted-hadamard", ph), ("phasor", phasor)):
        m = abs(complex(sims.mean())) if np.iscomplexobj(sims) else abs(float(sims.mean()))
        ok = m < 0.1
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name} composition |mean similarity| = "
              f"{m:.4f} (< 0.1; d={d}, {trials} trials)")
    sizes = (100, 1_000, 10_000, 100_000, 1_000_000)
    for i, scheme in enumerate((CodeScheme.GAUSSIAN, CodeScheme.CAUCHY, CodeScheme.UNIFORM_UNIT)):
        rng = trial_rng(args.seed, 13, 0, i, 0)
        report = ratio_moment_divergence(scheme, sizes, rng)
        ok = report.diverged is True
        failures += not ok
        mean_str = ", ".join(f"{m:.3f}" for m in report.running_means)
        print(f"{'PASS' if ok else 'FAIL'}  {scheme.value} ratio running means "
              f"[{mean_str}] flagged non-convergent: {report.diverged}")
    return 1 if failures else 0


def _cmd_plot(args) -> int:
    with open(args.input) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        print(f"plot: {args.input} is not a bindsum sweep CSV", file=sys.stderr)
        return USAGE_ERROR
    ks, present, absent = [], [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        ks.append(int(parts[0]))
        present.append(float(parts[1]))
        absent.append(float(parts[3]))
    svg = sweep_svg(ks, present, absent, title=args.title)
    with open(args.output, "w") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code not in (0,) else 0
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "verify-theory":
            return _cmd_verify(args)
        if args.command == "codes-stats":
            return _cmd_codes_stats(args)
        if args.command == "defects-demo":
            return _cmd_defects(args)
        if args.command == "plot":
            return _cmd_plot(args)
    except (ValueError, OSError) as exc:
        print(f"bindsum {args.command}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
