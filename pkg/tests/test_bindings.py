import numpy as np
import pytest

from bindsum.bindings import (
    BindingKind,
    BindingScheme,
    bind,
    bind_via_fft,
    circular_correlation,
    compose_edges,
    compression_view,
    convolution,
    flip,
    hadamard,
    permuted_hadamard,
    tensor,
    unbind,
)
from bindsum.codes import CodeScheme, CodeVector, sample_code, sample_matrix
from bindsum.errors import (
    DimensionMismatchError,
    SingularKeyError,
    UnsupportedCompositionError,
    UnsupportedSchemeError,
)

ALL_SCHEMES = [tensor(), hadamard(), permuted_hadamard(), convolution(), circular_correlation()]


def rng(seed=0):
    return np.random.default_rng(seed)


def oracle_convolve(a, b):
    d = len(a)
    return np.array([sum(a[i] * b[(k - i) % d] for i in range(d)) for k in range(d)])


def oracle_correlate(a, b):
    d = len(a)
    return np.array([sum(a[i] * b[(k + i) % d] for i in range(d)) for k in range(d)])


def test_tensor_basis_outer_product():
    e0 = np.array([1.0, 0.0])
    e1 = np.array([0.0, 1.0])
    out = bind(tensor(), e0, e1)
    assert np.array_equal(out.payload, [[0.0, 1.0], [0.0, 0.0]])


def test_hadamard_rademacher_self_is_ones():
    v = sample_code(CodeScheme.RADEMACHER, 16, rng(1))
    assert np.array_equal(bind(hadamard(), v, v).payload, np.ones(16))


def test_convolution_identity_element():
    out = bind(convolution(), np.array([1.0, 2.0, 3.0]), np.array([1.0, 0.0, 0.0]))
    assert np.allclose(out.payload, [1.0, 2.0, 3.0], atol=1e-12)


def test_correlation_is_flipped_convolution():
    r = rng(3)
    a, b = r.standard_normal(8), r.standard_normal(8)
    corr = bind(circular_correlation(), a, b).payload
    conv_flip = bind(convolution(), flip(a), b).payload
    assert np.allclose(corr, conv_flip, atol=1e-12)


@pytest.mark.parametrize("d", [2, 4, 8, 64, 256])
@pytest.mark.parametrize("kind", [convolution(), circular_correlation()])
def test_fft_matches_direct(kind, d):
    r = rng(d)
    a, b = r.standard_normal(d), r.standard_normal(d)
    direct = bind(kind, a, b).payload
    via_fft = bind_via_fft(kind, a, b).payload
    scale = max(1.0, np.max(np.abs(direct)))
    assert np.max(np.abs(direct - via_fft)) / scale < 1e-8


def test_fft_matches_direct_complex_inputs():
    r = rng(9)
    a = sample_matrix(CodeScheme.PHASOR, 1, 16, r)[0]
    b = sample_matrix(CodeScheme.PHASOR, 1, 16, r)[0]
    for kind in (convolution(), circular_correlation()):
        direct = bind(kind, a, b).payload
        via_fft = bind_via_fft(kind, a, b).payload
        assert np.max(np.abs(direct - via_fft)) < 1e-8


def test_fft_zero_vector():
    z = np.zeros(8)
    b = rng(0).standard_normal(8)
    assert np.allclose(bind_via_fft(convolution(), z, b).payload, 0.0)
    assert np.allclose(bind(convolution(), z, b).payload, 0.0)


def test_correlation_delta_oracle():
    # a = e0: correlation against 100 random b, checked against O(d^2) sums
    d = 4
    a = np.array([1.0, 0.0, 0.0, 0.0])
    r = rng(11)
    for _ in range(100):
        b = r.standard_normal(d)
        got = bind_via_fft(circular_correlation(), a, b).payload
        assert np.allclose(got, oracle_correlate(a, b), atol=1e-10)


def test_fft_route_rejects_other_schemes():
    with pytest.raises(UnsupportedSchemeError):
        bind_via_fft(hadamard(), np.ones(4), np.ones(4))


def test_bind_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        bind(hadamard(), np.ones(4), np.ones(5))


def test_unbind_hadamard_rademacher_exact():
    r = rng(5)
    a = sample_code(CodeScheme.RADEMACHER, 32, r)
    b = sample_code(CodeScheme.RADEMACHER, 32, r)
    e = bind(hadamard(), a, b)
    assert np.array_equal(unbind(hadamard(), a, e), b.entries)


def test_unbind_hadamard_phasor_conjugate():
    r = rng(6)
    a = sample_code(CodeScheme.PHASOR, 16, r)
    b = sample_code(CodeScheme.PHASOR, 16, r)
    e = bind(hadamard(), a, b)
    assert np.max(np.abs(unbind(hadamard(), a, e) - b.entries)) < 1e-9


def test_unbind_hadamard_continuous_division():
    r = rng(7)
    a = sample_code(CodeScheme.GAUSSIAN, 16, r)
    b = sample_code(CodeScheme.GAUSSIAN, 16, r)
    e = bind(hadamard(), a, b)
    assert np.allclose(unbind(hadamard(), a, e), b.entries, atol=1e-9)


def test_unbind_singular_continuous_key():
    key = CodeVector(np.array([1.0, 0.0, 2.0]), CodeScheme.GAUSSIAN)
    e = bind(hadamard(), np.ones(3), np.ones(3))
    with pytest.raises(SingularKeyError):
        unbind(hadamard(), key, e)


def test_unbind_tensor_unit_key_both_sides():
    r = rng(8)
    v = sample_code(CodeScheme.SPHERICAL, 32, r)
    u = sample_code(CodeScheme.SPHERICAL, 32, r)
    e = bind(tensor(), v, u)
    assert np.max(np.abs(unbind(tensor(), v, e, side="left") - u.entries)) < 1e-9
    assert np.max(np.abs(unbind(tensor(), u, e, side="right") - v.entries)) < 1e-9


def test_unbind_side_validation():
    r = rng(9)
    a = sample_code(CodeScheme.RADEMACHER, 8, r)
    b = sample_code(CodeScheme.RADEMACHER, 8, r)
    vec_edge = bind(hadamard(), a, b)
    with pytest.raises(ValueError):
        unbind(hadamard(), a, vec_edge, side="left")
    mat_edge = bind(tensor(), a, b)
    with pytest.raises(ValueError):
        unbind(tensor(), a, mat_edge)


def test_compose_hadamard_chain():
    r = rng(10)
    a, b, c = (sample_code(CodeScheme.RADEMACHER, 64, r) for _ in range(3))
    e1 = bind(hadamard(), a, b)
    e2 = bind(hadamard(), b, c)
    composed = compose_edges(e1, e2)
    assert np.array_equal(composed.payload, bind(hadamard(), a, c).payload)


def test_compose_hadamard_mismatch_leaves_binary_noise():
    r = rng(11)
    a, b, b2, c = (sample_code(CodeScheme.RADEMACHER, 64, r) for _ in range(4))
    composed = compose_edges(bind(hadamard(), a, b), bind(hadamard(), b2, c))
    noise = bind(hadamard(), b, b2).payload
    assert np.array_equal(composed.payload, bind(hadamard(), a, c).payload * noise)
    assert set(np.unique(noise)) <= {-1.0, 1.0}
    assert not np.all(noise == noise[0])


def test_compose_tensor_orthonormal_triple():
    u, v, w = np.eye(3)
    composed = compose_edges(bind(tensor(), u, v), bind(tensor(), v, w))
    assert np.array_equal(composed.payload, np.outer(u, w))


@pytest.mark.parametrize(
    "scheme", [permuted_hadamard(), convolution(), circular_correlation()]
)
def test_compose_refused_for_noncomposable(scheme):
    r = rng(12)
    a, b = r.standard_normal(8), r.standard_normal(8)
    e = bind(scheme, a, b)
    with pytest.raises(UnsupportedCompositionError):
        compose_edges(e, e)


def test_compose_scheme_mismatch():
    a = np.ones(4)
    with pytest.raises(UnsupportedSchemeError):
        compose_edges(bind(hadamard(), a, a), bind(convolution(), a, a))


def test_compression_hadamard_is_main_diagonal_exact():
    r = rng(13)
    a, b = r.standard_normal(8), r.standard_normal(8)
    view = compression_view(hadamard(), a, b)
    assert np.array_equal(view, a * b)


@pytest.mark.parametrize("d", [2, 4, 8, 64, 256])
@pytest.mark.parametrize("kind", [convolution(), circular_correlation()])
def test_compression_views_match_bind(kind, d):
    r = rng(d + 1)
    a, b = r.standard_normal(d), r.standard_normal(d)
    view = compression_view(kind, a, b)
    direct = bind(kind, a, b).payload
    assert np.max(np.abs(view - direct)) < 1e-9


def test_compression_convolution_oracle():
    r = rng(14)
    a, b = r.standard_normal(4), r.standard_normal(4)
    assert np.allclose(compression_view(convolution(), a, b), oracle_convolve(a, b), atol=1e-12)


def test_compression_correlation_with_delta_is_flip():
    a = rng(15).standard_normal(8)
    b = np.zeros(8)
    b[0] = 1.0
    assert np.allclose(compression_view(circular_correlation(), a, b), flip(a), atol=1e-12)


def test_compression_rejects_tensor():
    with pytest.raises(UnsupportedSchemeError):
        compression_view(tensor(), np.ones(4), np.ones(4))


@pytest.mark.parametrize("scheme", ALL_SCHEMES)
def test_bilinearity(scheme):
    r = rng(16)
    a, a2, b = (r.standard_normal(16) for _ in range(3))
    alpha = 0.7321
    left = bind(scheme, alpha * a + a2, b).payload
    right = alpha * bind(scheme, a, b).payload + bind(scheme, a2, b).payload
    assert np.max(np.abs(left - right)) < 1e-9
    left_b = bind(scheme, b, alpha * a + a2).payload
    right_b = alpha * bind(scheme, b, a).payload + bind(scheme, b, a2).payload
    assert np.max(np.abs(left_b - right_b)) < 1e-9


def test_hadamard_symmetric_tensor_not():
    r = rng(17)
    a, b = r.standard_normal(8), r.standard_normal(8)
    assert np.array_equal(bind(hadamard(), a, b).payload, bind(hadamard(), b, a).payload)
    ab = bind(tensor(), a, b).payload
    ba = bind(tensor(), b, a).payload
    assert np.array_equal(ab, ba.T)
    assert not np.allclose(ab, ba)


def test_permuted_hadamard_directed():
    r = rng(18)
    a, b = r.standard_normal(8), r.standard_normal(8)
    ph = permuted_hadamard()
    assert not np.allclose(bind(ph, a, b).payload, bind(ph, b, a).payload)


def test_permuted_hadamard_custom_and_invalid_permutation():
    perm = np.array([2, 0, 1])
    a, b = np.array([1.0, 2.0, 3.0]), np.array([1.0, 1.0, 1.0])
    out = bind(permuted_hadamard(perm), a, b)
    assert np.array_equal(out.payload, [3.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        permuted_hadamard(np.array([0, 0, 1]))
    with pytest.raises(DimensionMismatchError):
        bind(permuted_hadamard(perm), np.ones(4), np.ones(4))


def test_binding_scheme_equality():
    assert hadamard() == hadamard()
    assert permuted_hadamard(np.array([1, 0])) == permuted_hadamard(np.array([1, 0]))
    assert permuted_hadamard(np.array([1, 0])) != permuted_hadamard(np.array([0, 1]))
    assert hadamard() != tensor()


def test_edge_embedding_payload_shape_checked():
    from bindsum.bindings import EdgeEmbedding

    with pytest.raises(ValueError):
        EdgeEmbedding(np.ones(3), tensor())
    with pytest.raises(ValueError):
        EdgeEmbedding(np.ones((3, 3)), hadamard())
    assert BindingScheme(BindingKind.TENSOR).kind is BindingKind.TENSOR
