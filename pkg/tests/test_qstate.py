import itertools
import json

import numpy as np
import pytest

from tanglekit import qstate
from tanglekit.errors import DimensionError, InvalidStateError, NormalizationError
from tanglekit.monotones import concurrence_pure, tau3_poly
from tanglekit.filters import builtin, evaluate
from tanglekit.qstate import (
    Partition,
    bipartitions,
    catalog_state,
    density_matrix,
    from_kets,
    make_state,
    partial_trace,
    random_haar_state,
    random_product_state,
    tensor_product,
)

import oracles


def basis(n, index):
    v = np.zeros(2**n)
    v[index] = 1
    return make_state(n, v)


def test_make_state_basis():
    s = make_state(1, [1, 0])
    np.testing.assert_allclose(s.amplitudes, [1, 0])


def test_make_state_normalizes_bell():
    s = make_state(2, [1, 0, 0, 1])
    np.testing.assert_allclose(s.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_make_state_unnormalized_phi1():
    v = np.zeros(16)
    v[0] = v[15] = 1 / np.sqrt(2)
    s = make_state(4, v, normalize=False)
    np.testing.assert_allclose(s.amplitudes, catalog_state("GHZ4").amplitudes)


def test_make_state_errors():
    with pytest.raises(DimensionError):
        make_state(2, [1, 0, 0])
    with pytest.raises(InvalidStateError):
        make_state(1, [0, 0])
    with pytest.raises(DimensionError):
        make_state(13, np.ones(2**13))


def test_amplitudes_are_read_only():
    s = make_state(1, [1, 0])
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2


def test_catalog_coefficients():
    np.testing.assert_allclose(
        catalog_state("GHZ4").amplitudes[[0, 15]], [1 / np.sqrt(2)] * 2
    )
    phi2 = catalog_state("PHI2").amplitudes
    expected = np.zeros(16)
    expected[0b1111] = np.sqrt(2)
    expected[[0b1000, 0b0100, 0b0010, 0b0001]] = 1
    np.testing.assert_allclose(phi2, expected / np.sqrt(6))
    phi3 = catalog_state("PHI3").amplitudes
    expected = np.zeros(16)
    expected[[0b1111, 0b1100, 0b0010, 0b0001]] = 0.5
    np.testing.assert_allclose(phi3, expected)
    w4 = catalog_state("W4").amplitudes
    assert set(np.flatnonzero(w4)) == {0b0111, 0b1011, 0b1101, 0b1110}
    with pytest.raises(KeyError):
        catalog_state("GHZ9")


def test_catalog_alias_and_case():
    np.testing.assert_array_equal(catalog_state("phi1").amplitudes, catalog_state("GHZ4").amplitudes)


def test_tensor_product_examples():
    s = tensor_product(basis(1, 0), basis(1, 1))
    np.testing.assert_allclose(s.amplitudes, [0, 1, 0, 0])
    s = tensor_product(catalog_state("BELL"), basis(1, 0))
    np.testing.assert_allclose(s.amplitudes, np.array([1, 0, 0, 0, 0, 0, 1, 0]) / np.sqrt(2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ordering_round_trip_exhaustive(n):
    # qubit 0 is the most significant bit
    for bits in itertools.product((0, 1), repeat=n):
        s = basis(1, bits[0])
        for b in bits[1:]:
            s = tensor_product(s, basis(1, b))
        idx = int("".join(map(str, bits)), 2)
        assert np.argmax(np.abs(s.amplitudes)) == idx
        assert from_kets({"".join(map(str, bits)): 1}).amplitudes[idx] == 1


def test_partial_trace_examples():
    half = np.eye(2) / 2
    rho = partial_trace(density_matrix(catalog_state("GHZ4")), {0})
    np.testing.assert_allclose(rho.matrix, half, atol=1e-12)
    rho = partial_trace(density_matrix(basis(2, 0)), {1})
    np.testing.assert_allclose(rho.matrix, [[1, 0], [0, 0]])
    rho = partial_trace(density_matrix(catalog_state("PHI3")), {2})
    np.testing.assert_allclose(rho.matrix, half, atol=1e-12)


def test_partial_trace_errors():
    rho = density_matrix(catalog_state("BELL"))
    with pytest.raises(DimensionError):
        partial_trace(rho, set())
    with pytest.raises(DimensionError):
        partial_trace(rho, {2})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_partial_trace_matches_loop_oracle(n):
    rng = np.random.default_rng(7)
    psi = oracles.random_amplitudes(rng, n)
    rho = np.outer(psi, psi.conj())
    for k in range(1, n + 1):
        for keep in itertools.combinations(range(n), k):
            got = partial_trace(qstate.DensityMatrix(n, rho), keep).matrix
            np.testing.assert_allclose(got, oracles.partial_trace_loops(rho, n, keep), atol=1e-12)
            assert abs(np.trace(got) - 1) < 1e-10


def test_partial_trace_nested_consistency():
    s = random_haar_state(4, seed=3)
    rho = density_matrix(s)
    nested = partial_trace(partial_trace(rho, {0, 1, 3}), {0, 2})
    np.testing.assert_allclose(nested.matrix, partial_trace(rho, {0, 3}).matrix, atol=1e-12)


@pytest.mark.parametrize("name", ["GHZ4", "PHI2", "PHI3"])
def test_four_qubit_reference_marginals_maximally_mixed(name):
    rho = density_matrix(catalog_state(name))
    for q in range(4):
        np.testing.assert_allclose(partial_trace(rho, {q}).matrix, np.eye(2) / 2, atol=1e-10)


def test_haar_normalization_and_determinism():
    rng = qstate.make_rng(11)
    worst = 0.0
    for i in range(1000):
        s = random_haar_state(1 + i % 4, rng)
        worst = max(worst, abs(s.norm() - 1))
    assert worst < 1e-12
    a = random_haar_state(3, 42).amplitudes
    b = random_haar_state(3, 42).amplitudes
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, random_haar_state(3, 43).amplitudes)


def test_random_product_state_examples():
    s = random_product_state([[0], [1]], seed=1)
    assert concurrence_pure(s) < 1e-10
    s = random_product_state([[0, 1], [2, 3]], seed=2)
    assert evaluate(builtin("F4_1"), s).modulus < 1e-10
    s = random_product_state([[0], [1], [2]], seed=3)
    assert tau3_poly(s) < 1e-10


def test_random_product_state_noncontiguous_blocks_factor():
    s = random_product_state([[0, 3], [1, 2]], seed=5)
    # reorder to (0,3 | 1,2) and check the matrix is rank one
    t = s.tensor().transpose(0, 3, 1, 2).reshape(4, 4)
    assert np.linalg.svd(t, compute_uv=False)[1] < 1e-12


def test_partition_validation():
    with pytest.raises(InvalidStateError):
        Partition(((0, 1), (1, 2)))
    with pytest.raises(InvalidStateError):
        Partition(((0,), (2,)))
    with pytest.raises(InvalidStateError):
        Partition(((0,), ()))
    assert Partition(((1, 0), (2,))).blocks == ((0, 1), (2,))


@pytest.mark.parametrize("n, count", [(2, 1), (3, 3), (4, 7), (5, 15)])
def test_bipartition_count(n, count):
    parts = list(bipartitions(n))
    assert len(parts) == count
    assert len({str(p) for p in parts}) == count
    assert all(len(p.blocks) == 2 for p in parts)


def test_density_matrix_validation():
    qstate.make_density_matrix(np.eye(4) / 4)
    with pytest.raises(InvalidStateError):
        qstate.make_density_matrix(np.eye(4) / 3)
    with pytest.raises(InvalidStateError):
        qstate.make_density_matrix(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(InvalidStateError):
        qstate.make_density_matrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(NormalizationError):
        density_matrix(make_state(1, [2, 0], normalize=False))


def test_state_file_round_trip(tmp_path):
    s = random_haar_state(3, seed=9)
    path = tmp_path / "psi.state"
    qstate.dump_state(s, path)
    data = json.loads(path.read_text())
    assert data["n_qubits"] == 3 and len(data["amplitudes"]) == 8
    back = qstate.load_state(path)
    rel = np.abs(back.amplitudes - s.amplitudes).max() / np.abs(s.amplitudes).max()
    assert rel <= 1e-15


def test_state_file_errors(tmp_path):
    bad = tmp_path / "bad.state"
    bad.write_text("{not json")
    with pytest.raises(InvalidStateError):
        qstate.load_state(bad)
    bad.write_text(json.dumps({"n_qubits": 1, "amplitudes": [1, 0]}))
    with pytest.raises(InvalidStateError):
        qstate.load_state(bad)
    bad.write_text(json.dumps({"n_qubits": 2, "amplitudes": [[1, 0], [0, 0]]}))
    with pytest.raises(DimensionError):
        qstate.load_state(bad)


def test_state_file_normalize_flag(tmp_path):
    path = tmp_path / "bell.state"
    path.write_text(json.dumps({"n_qubits": 2, "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]], "normalize": True}))
    assert qstate.load_state(path).is_normalized()
