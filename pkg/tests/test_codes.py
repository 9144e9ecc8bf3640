import numpy as np
import pytest
from scipy import stats

from bindsum.codes import (
    Codebook,
    CodeScheme,
    CodeVector,
    code_rng,
    dot,
    make_codebook,
    ratio_moment_divergence,
    sample_code,
    sample_matrix,
    theoretical_dot_moments,
)
from bindsum.errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    UnsupportedSchemeError,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def test_spherical_unit_norm():
    v = sample_code(CodeScheme.SPHERICAL, 4, rng(0))
    assert abs(np.linalg.norm(v.entries) - 1.0) < 1e-9


def test_rademacher_entries_and_norm():
    v = sample_code(CodeScheme.RADEMACHER, 8, rng(5))
    assert set(np.unique(v.entries)) <= {-1.0, 1.0}
    assert v.entries @ v.entries == 8.0


def test_phasor_unit_modulus():
    v = sample_code(CodeScheme.PHASOR, 16, rng(1))
    assert np.iscomplexobj(v.entries)
    assert np.max(np.abs(np.abs(v.entries) - 1.0)) < 1e-9


def test_uniform_unit_range():
    v = sample_code(CodeScheme.UNIFORM_UNIT, 64, rng(2))
    assert np.all(v.entries >= 0.0) and np.all(v.entries <= 1.0)


def test_zero_dimension_rejected():
    with pytest.raises(InvalidDimensionError):
        sample_code(CodeScheme.SPHERICAL, 0, rng(0))


def test_spherical_dot_variance_matches_theory():
    # Var of the pairwise dot at d=256 is 1/d
    r = rng(42)
    a = sample_matrix(CodeScheme.SPHERICAL, 10_000, 256, r)
    b = sample_matrix(CodeScheme.SPHERICAL, 10_000, 256, r)
    x = np.einsum("nd,nd->n", a, b)
    assert abs(x.var() - 1 / 256) / (1 / 256) < 0.15


@pytest.mark.parametrize("scheme", [CodeScheme.SPHERICAL, CodeScheme.RADEMACHER])
def test_empirical_moments_within_three_se(scheme):
    d, n = 64, 10_000
    r = rng(7)
    a = sample_matrix(scheme, n, d, r)
    b = sample_matrix(scheme, n, d, r)
    x = np.einsum("nd,nd->n", a, b)
    mean_t, var_t = theoretical_dot_moments(scheme, d)
    assert abs(x.mean() - mean_t) < 3 * np.sqrt(var_t / n)
    # variance of the sample variance ~ 2 var^2 / n for near-normal dots
    assert abs(x.var() - var_t) < 3 * var_t * np.sqrt(2 / n) + 1e-12


def test_spherical_beta_fit():
    d, n = 16, 10_000
    r = rng(2)
    a = sample_matrix(CodeScheme.SPHERICAL, n, d, r)
    b = sample_matrix(CodeScheme.SPHERICAL, n, d, r)
    x = np.einsum("nd,nd->n", a, b)
    res = stats.kstest((x + 1) / 2, "beta", args=((d - 1) / 2, (d - 1) / 2))
    assert res.pvalue > 0.01


def test_rademacher_dot_binomial_fit():
    d, n = 8, 10_000
    r = rng(2)
    a = sample_matrix(CodeScheme.RADEMACHER, n, d, r)
    b = sample_matrix(CodeScheme.RADEMACHER, n, d, r)
    x = np.einsum("nd,nd->n", a, b)
    y = ((x + d) / 2).astype(int)
    counts = np.bincount(y, minlength=d + 1).astype(float)
    expected = stats.binom.pmf(np.arange(d + 1), d, 0.5) * n
    keep = expected >= 5
    f_obs = np.concatenate([[counts[~keep].sum()], counts[keep]])
    f_exp = np.concatenate([[expected[~keep].sum()], expected[keep]])
    f_exp *= f_obs.sum() / f_exp.sum()
    assert stats.chisquare(f_obs, f_exp).pvalue > 0.01


def test_theoretical_dot_moments_values():
    assert theoretical_dot_moments(CodeScheme.SPHERICAL, 100) == (0.0, 0.01)
    assert theoretical_dot_moments(CodeScheme.RADEMACHER, 100) == (0.0, 100.0)
    # d=1 spherical codes are just +/-1
    assert theoretical_dot_moments(CodeScheme.SPHERICAL, 1) == (0.0, 1.0)
    with pytest.raises(UnsupportedSchemeError):
        theoretical_dot_moments(CodeScheme.GAUSSIAN, 10)


def test_dot_values_and_errors():
    r = rng(3)
    s = sample_code(CodeScheme.SPHERICAL, 32, r)
    assert abs(dot(s, s) - 1.0) < 1e-9
    v = sample_code(CodeScheme.RADEMACHER, 16, r)
    assert dot(v, v) == 16.0
    with pytest.raises(DimensionMismatchError):
        dot(np.ones(4), np.ones(5))


def test_dot_complex_conjugate_linearity():
    r = rng(4)
    a = sample_code(CodeScheme.PHASOR, 8, r)
    b = sample_code(CodeScheme.PHASOR, 8, r)
    assert abs(dot(a, b) - np.conj(dot(b, a))) < 1e-12
    assert abs(dot(a, a) - 8.0) < 1e-9


def test_codebook_reconstruction_bit_identical():
    kwargs = dict(n=4, d=16, scheme=CodeScheme.SPHERICAL, seed=123)
    one = make_codebook(**kwargs)
    two = make_codebook(**kwargs)
    assert one.matrix.tobytes() == two.matrix.tobytes()


def test_codebook_single_code_deterministic():
    a = make_codebook(1, 2, CodeScheme.SPHERICAL, seed=7)
    b = make_codebook(1, 2, CodeScheme.SPHERICAL, seed=7)
    assert np.array_equal(a.matrix, b.matrix)


def test_codebook_per_index_streams():
    # code i depends only on (seed, i), not on the codebook size
    small = make_codebook(2, 8, CodeScheme.RADEMACHER, seed=9)
    large = make_codebook(6, 8, CodeScheme.RADEMACHER, seed=9)
    assert np.array_equal(small.matrix, large.matrix[:2])
    direct = sample_matrix(CodeScheme.RADEMACHER, 1, 8, code_rng(9, 1))[0]
    assert np.array_equal(direct, small.matrix[1])


def test_codebook_rademacher_distinct_at_pinned_seed():
    cb = make_codebook(3, 4, CodeScheme.RADEMACHER, seed=1)
    assert len({tuple(row) for row in cb.matrix}) == 3


def test_codebook_pigeonhole_collision_allowed():
    # 2^3 = 8 possible codes, 9 requested: a repeat is guaranteed, not an error
    cb = make_codebook(9, 3, CodeScheme.RADEMACHER, seed=0)
    assert len({tuple(row) for row in cb.matrix}) < 9


def test_codebook_real_only_rejects_phasor():
    with pytest.raises(UnsupportedSchemeError):
        make_codebook(2, 4, CodeScheme.PHASOR, seed=0, real_only=True)


def test_codebook_ids_and_lookup():
    cb = make_codebook(3, 4, CodeScheme.SPHERICAL, seed=0, ids=["a", "b", "c"])
    assert "b" in cb and "z" not in cb
    assert np.array_equal(cb.code("c").entries, cb.code(2).entries)


@pytest.mark.parametrize("scheme", [CodeScheme.SPHERICAL, CodeScheme.PHASOR])
def test_codebook_csv_round_trip(tmp_path, scheme):
    cb = make_codebook(3, 5, scheme, seed=11)
    path = tmp_path / "cb.csv"
    cb.save_csv(path)
    back = Codebook.load_csv(path)
    assert back.scheme is scheme and back.seed == 11 and back.dim == 5
    assert np.array_equal(back.matrix, cb.matrix)
    assert back.ids == cb.ids


def test_ratio_divergence_flags_all_three_schemes():
    sizes = [100, 1_000, 10_000, 100_000]
    for scheme in (CodeScheme.GAUSSIAN, CodeScheme.CAUCHY, CodeScheme.UNIFORM_UNIT):
        report = ratio_moment_divergence(scheme, sizes, rng(0))
        assert report.diverged is True
        assert len(report.running_means) == len(sizes)
        assert len(report.step_ratios) == len(sizes) - 1


def test_ratio_divergence_degenerate_single_size():
    report = ratio_moment_divergence(CodeScheme.GAUSSIAN, [1], rng(0))
    assert report.diverged is None
    assert len(report.running_means) == 1


def test_ratio_divergence_rejects_bounded_schemes():
    with pytest.raises(UnsupportedSchemeError):
        ratio_moment_divergence(CodeScheme.SPHERICAL, [10, 100], rng(0))
    with pytest.raises(ValueError):
        ratio_moment_divergence(CodeScheme.GAUSSIAN, [100, 10], rng(0))


def test_code_vector_validation():
    with pytest.raises(InvalidDimensionError):
        CodeVector(np.zeros((2, 2)), CodeScheme.GAUSSIAN)
