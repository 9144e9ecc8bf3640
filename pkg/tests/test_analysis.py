import json
import math

import pytest

from bindsum.analysis import (
    SchemeOp,
    SchemePair,
    TheoryReport,
    capacity_memory_ratio,
    empirical_recovery_rate,
    empirical_snr,
    recovery_lower_bound,
    snr_theory,
    snr_theory_connectivity,
    tail_bounds,
    theory_report,
)
from bindsum.trials import TrialRecord

HR = SchemePair.HADAMARD_RADEMACHER
TS = SchemePair.TENSOR_SPHERICAL


def _record(signal_sq=1.0, noise_sq=0.5, correct=True):
    return TrialRecord(
        scheme=TS, order=1, d=8, k=2,
        signal_sq=signal_sq, noise_sq=noise_sq,
        true_score=1.0, best_false_score=0.0, correct=correct,
    )


def test_snr_theory_vertex_query_values():
    hr = snr_theory(SchemeOp.vertex_query(HR), 1024, 16)
    assert (hr.signal_sq, hr.noise_sq, hr.snr) == (1024.0, 16384.0, 0.0625)
    ts = snr_theory(SchemeOp.vertex_query(TS), 64, 16)
    assert (ts.signal_sq, ts.noise_sq, ts.snr) == (1.0, 0.25, 4.0)


def test_snr_theory_edge_composition_values():
    ts = snr_theory(SchemeOp.edge_composition(TS), 64, 8)
    assert ts.signal_sq == 1.0
    assert ts.noise_sq == pytest.approx(48 / 64)
    assert ts.snr == pytest.approx(64 / 48)
    hr = snr_theory(SchemeOp.edge_composition(HR), 64, 8)
    assert hr.noise_sq == pytest.approx((64 + 16) * 64)
    assert hr.snr == pytest.approx(1 / 80)


def test_snr_theory_domain_errors():
    with pytest.raises(ValueError):
        snr_theory(SchemeOp.edge_composition(TS), 64, 2)  # k^2-2k would be 0
    with pytest.raises(ValueError):
        snr_theory(SchemeOp.vertex_query(TS), 0, 4)
    with pytest.raises(ValueError):
        snr_theory(SchemeOp(TS, 3), 64, 8)  # no closed form beyond order 2
    with pytest.raises(ValueError):
        SchemeOp(TS, 0)


def test_connectivity_norms_and_flagged_ratio():
    res = snr_theory_connectivity(64, 4, 1)
    assert res.noise_sq == 1024.0
    assert res.snr == pytest.approx(64 / 1024)
    assert res.stated_snr == pytest.approx(1.0 / (4 * 1 * 1 * 4 * 64))
    assert "inconsistent" in res.note
    degenerate = snr_theory_connectivity(16, 1, 1)
    assert degenerate.noise_sq == 4 * 16


def test_tail_bounds_values():
    hr = tail_bounds(SchemeOp.vertex_query(HR), 1024, 15)
    assert hr.false_positive == pytest.approx(math.exp(-32))
    assert hr.true_negative == pytest.approx(math.exp(-1024 / 30))
    ts = tail_bounds(SchemeOp.vertex_query(TS), 32, 64)
    assert ts.false_positive == pytest.approx(math.exp(-8))
    assert ts.true_negative == pytest.approx(math.exp(-16))
    hr_ec = tail_bounds(SchemeOp.edge_composition(HR), 64, 4)
    assert hr_ec.false_positive == pytest.approx(math.exp(-64 / 50))
    ts_ec = tail_bounds(SchemeOp.edge_composition(TS), 8, 4)
    assert ts_ec.false_positive == pytest.approx(math.exp(-512 / 32))
    assert ts_ec.true_negative == ts_ec.false_positive


def test_tail_bounds_monotone_in_k():
    so = SchemeOp.vertex_query(HR)
    for k in (2, 4, 8, 16):
        a = tail_bounds(so, 256, k)
        b = tail_bounds(so, 256, k + 1)
        assert b.false_positive >= a.false_positive
        assert b.true_negative >= a.true_negative


def test_recovery_lower_bound_values():
    got = recovery_lower_bound(SchemeOp.vertex_query(HR), 1024, 16, 99)
    assert got == pytest.approx(1 - 99 * math.exp(-1024 / 66))
    got_ts = recovery_lower_bound(SchemeOp.edge_composition(TS), 16, 64, 1)
    assert got_ts == pytest.approx(1 - math.exp(-1.0))
    assert recovery_lower_bound(SchemeOp.vertex_query(TS), 64, 4, 0) == 1.0
    # heavy competition clamps to zero
    assert recovery_lower_bound(SchemeOp.vertex_query(HR), 8, 64, 1000) == 0.0
    with pytest.raises(ValueError):
        recovery_lower_bound(SchemeOp.vertex_query(HR), 8, 4, -1)


def test_capacity_memory_ratio_values():
    r1 = capacity_memory_ratio(HR, 1, 256)
    assert (r1.capacity, r1.memory, r1.ratio) == (256.0, 256.0, 1.0)
    r2 = capacity_memory_ratio(HR, 2, 256)
    assert r2.ratio == pytest.approx(0.0625)
    r2ts = capacity_memory_ratio(TS, 2, 16)
    assert r2ts.ratio == pytest.approx(0.25)
    assert r2ts.memory == 256.0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
@pytest.mark.parametrize("d", [16, 64, 256, 1024, 4096])
def test_capacity_ratio_equal_across_schemes(n, d):
    assert (
        capacity_memory_ratio(HR, n, d).ratio
        == capacity_memory_ratio(TS, n, d).ratio
    )


def test_empirical_snr_constant_records():
    records = [_record(2.0, 0.5) for _ in range(10)]
    est = empirical_snr(records)
    assert est.signal_sq_mean == 2.0
    assert est.noise_sq_mean == 0.5
    assert est.snr == 4.0
    assert est.signal_sq_se == 0.0 and est.noise_sq_se == 0.0
    with pytest.raises(ValueError):
        empirical_snr(records[:1])


def test_empirical_recovery_rate_and_wilson():
    records = [_record(correct=True)] * 8 + [_record(correct=False)] * 2
    est = empirical_recovery_rate(records)
    assert est.rate == pytest.approx(0.8)
    # hand-computed Wilson 95% interval for 8/10
    assert est.wilson_low == pytest.approx(0.4901620491959126, abs=1e-9)
    assert est.wilson_high == pytest.approx(0.9433090633722756, abs=1e-9)
    all_good = [_record(correct=True)] * 5
    assert empirical_recovery_rate(all_good).rate == 1.0
    with pytest.raises(ValueError):
        empirical_recovery_rate([_record(correct=None)])


def test_theory_report_serializable_and_clamped():
    rep = theory_report(SchemeOp.vertex_query(HR), 64, 32, 31)
    data = json.loads(rep.to_json())
    assert data["scheme"] == "hadamard-rademacher"
    assert 0.0 <= data["false_positive_bound"] <= 1.0
    assert 0.0 <= data["recovery_lower_bound"] <= 1.0
    assert data["snr"] > 0
    header_fields = TheoryReport.csv_header().split(",")
    assert len(rep.csv_row().split(",")) == len(header_fields)
