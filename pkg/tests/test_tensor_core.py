import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fingerprint_lab import (
    BipartiteState,
    DimensionError,
    NormalizationError,
    SchmidtForm,
    haar_random_unitary,
    is_unitary,
    kron,
    reconstruct,
    schmidt_decompose,
    trace_inner_product,
)

from _schemes import PAULI_X, PAULI_Z


def _rand(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _random_form(seed, n, ns):
    rng = np.random.default_rng(seed)
    lam = np.sort(rng.uniform(0.1, 1.0, ns))[::-1]
    lam = lam / np.linalg.norm(lam)
    return SchmidtForm(lam, haar_random_unitary(n, rng), haar_random_unitary(n, rng))


class TestTraceInnerProduct:
    def test_identity(self):
        assert trace_inner_product(np.eye(2), np.eye(2)) == 2 + 0j

    def test_distinct_paulis(self):
        assert trace_inner_product(PAULI_X, PAULI_Z) == 0

    def test_self_product_is_entrywise_sum(self):
        a = _rand(np.random.default_rng(3), 3, 3)
        expected = 0.0
        for i in range(3):
            for j in range(3):
                expected += a[i, j].real ** 2 + a[i, j].imag ** 2
        val = trace_inner_product(a, a)
        assert val.imag == pytest.approx(0, abs=1e-14)
        assert val.real == pytest.approx(expected, rel=1e-14)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            trace_inner_product(np.eye(2), np.eye(3))
        with pytest.raises(DimensionError):
            trace_inner_product(np.ones((2, 3)), np.ones((2, 3)))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5))
    def test_conjugate_symmetric_and_sesquilinear(self, seed, n):
        rng = np.random.default_rng(seed)
        a, b, c = _rand(rng, n, n), _rand(rng, n, n), _rand(rng, n, n)
        s, t = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        scale = np.linalg.norm(a) * (np.linalg.norm(b) + np.linalg.norm(c)) * (1 + abs(s) + abs(t))
        assert abs(trace_inner_product(a, b) - np.conj(trace_inner_product(b, a))) <= 1e-12 * scale
        lhs = trace_inner_product(a, s * b + t * c)
        rhs = s * trace_inner_product(a, b) + t * trace_inner_product(a, c)
        assert abs(lhs - rhs) <= 1e-12 * scale
        lhs = trace_inner_product(s * a, b)
        assert abs(lhs - np.conj(s) * trace_inner_product(a, b)) <= 1e-12 * scale


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_flip_first_factor(self):
        e00 = np.array([1, 0, 0, 0], dtype=complex)
        e10 = np.array([0, 0, 1, 0], dtype=complex)
        np.testing.assert_array_equal(kron(PAULI_X, np.eye(2)) @ e00, e10)

    def test_matches_index_definition(self):
        rng = np.random.default_rng(11)
        a, b = _rand(rng, 2, 2), _rand(rng, 2, 2)
        expected = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        expected[i * 2 + k, j * 2 + l] = a[i, j] * b[k, l]
        np.testing.assert_allclose(kron(a, b), expected, rtol=1e-14, atol=1e-15)


class TestSchmidt:
    def test_bell_state(self):
        bell = BipartiteState(np.eye(2) / np.sqrt(2))
        form = schmidt_decompose(bell)
        np.testing.assert_allclose(form.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-15)
        assert form.schmidt_number == 2

    def test_product_state(self):
        amps = np.zeros((2, 2))
        amps[0, 1] = 1
        form = schmidt_decompose(amps)
        np.testing.assert_allclose(form.coefficients, [1.0])
        assert form.schmidt_number == 1
        assert form.ambient_dim == 2

    def test_random_round_trip(self):
        rng = np.random.default_rng(5)
        amps = _rand(rng, 4, 4)
        state = BipartiteState(amps / np.linalg.norm(amps))
        back = reconstruct(schmidt_decompose(state))
        assert np.max(np.abs(back.amplitudes - state.amplitudes)) < 1e-10

    def test_unnormalized(self):
        with pytest.raises(NormalizationError):
            schmidt_decompose(np.eye(2))

    def test_tolerance_counts_rank(self):
        amps = np.diag([np.sqrt(1 - 1e-24), 1e-12, 0.0])
        assert schmidt_decompose(amps).schmidt_number == 1
        assert schmidt_decompose(amps, schmidt_tolerance=1e-13).schmidt_number == 2

    def test_phase_convention(self):
        rng = np.random.default_rng(8)
        amps = _rand(rng, 3, 3)
        form = schmidt_decompose(amps / np.linalg.norm(amps))
        for col in form.base_a.T:
            pivot = col[np.argmax(np.abs(col))]
            assert pivot.real >= 0 and abs(pivot.imag) < 1e-15
        assert is_unitary(form.base_a) and is_unitary(form.base_b)

    def test_reconstruct_trivial(self):
        form = SchmidtForm([1.0], np.eye(2), np.eye(2))
        np.testing.assert_array_equal(reconstruct(form).amplitudes, [[1, 0], [0, 0]])
        bell = SchmidtForm([1 / np.sqrt(2)] * 2, np.eye(2), np.eye(2))
        np.testing.assert_allclose(reconstruct(bell).amplitudes, np.eye(2) / np.sqrt(2))

    @pytest.mark.parametrize("seed", range(20))
    def test_round_trip_on_coefficients(self, seed):
        n = 2 + seed % 4
        form = _random_form(seed, n, 1 + seed % n)
        again = schmidt_decompose(reconstruct(form))
        np.testing.assert_allclose(again.coefficients, form.coefficients, atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
    def test_coefficients_normalized(self, seed, n):
        amps = _rand(np.random.default_rng(seed), n, n)
        form = schmidt_decompose(amps / np.linalg.norm(amps))
        assert abs(np.sum(form.coefficients**2) - 1) <= 1e-10

    def test_form_invariants_rejected(self):
        with pytest.raises(DimensionError):
            SchmidtForm([0.6, 0.8], np.eye(2), np.eye(2))
        with pytest.raises(NormalizationError):
            SchmidtForm([0.9, 0.1], np.eye(2), np.eye(2))


class TestUnitary:
    def test_examples(self):
        assert is_unitary(np.eye(3), 1e-10)
        assert not is_unitary(2 * np.eye(2), 1e-10)

    def test_haar_against_column_gram(self):
        u = haar_random_unitary(5, 2024)
        assert is_unitary(u, 1e-10)
        for i in range(5):
            for j in range(5):
                ip = sum(np.conj(u[k, i]) * u[k, j] for k in range(5))
                assert abs(ip - (i == j)) < 1e-10

    def test_n_one(self):
        u = haar_random_unitary(1, 0)
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1) < 1e-15

    def test_deterministic(self):
        np.testing.assert_array_equal(haar_random_unitary(4, 99), haar_random_unitary(4, 99))

    def test_zero_dimension(self):
        with pytest.raises(DimensionError):
            haar_random_unitary(0, 1)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_unitary_over_seeds(self, n):
        assert all(is_unitary(haar_random_unitary(n, s), 1e-10) for s in range(100))

    def test_haar_second_moment(self):
        # E|tr U|^2 = 1 over the Haar measure
        rng = np.random.default_rng(123)
        vals = np.array([abs(np.trace(haar_random_unitary(4, rng))) ** 2 for _ in range(1000)])
        se = vals.std(ddof=1) / np.sqrt(vals.size)
        assert abs(vals.mean() - 1.0) <= 3 * se
