import itertools

import numpy as np
import pytest

from tanglekit.comb import PAULI
from tanglekit.errors import DimensionError
from tanglekit.filters import BUILTIN_NAMES, builtin, evaluate
from tanglekit.qstate import catalog_state, from_kets, make_rng, random_haar_state
from tanglekit.slocc import (
    FilterSignature,
    apply_local,
    check_local_ops,
    classify4,
    invariance_check,
    random_local_ops,
    random_sl2,
    random_su2,
    separating_filters,
)

SY = PAULI[2]


@pytest.mark.parametrize("seed", range(20))
def test_random_sl2_properties(seed):
    v = random_sl2(seed)
    assert abs(np.linalg.det(v) - 1) < 1e-12
    np.testing.assert_allclose(v @ np.linalg.inv(v), np.eye(2), atol=1e-10)
    np.testing.assert_allclose(v @ SY @ v.T, SY, atol=1e-10)


def test_random_su2_properties():
    for seed in range(20):
        u = random_su2(seed)
        assert check_local_ops([u], "SU") == []


def test_pair_comb_operator_identity():
    # (V x V)(sum_mu g s_mu x s_mu)(V^T x V^T) is unchanged
    g = {0: -1, 1: 1, 3: 1}
    op = sum(g[m] * np.kron(PAULI[m], PAULI[m]) for m in g)
    for seed in range(10):
        v = random_sl2(seed)
        vv = np.kron(v, v)
        np.testing.assert_allclose(vv @ op @ vv.T, op, atol=1e-10)


def test_sl2_is_deterministic():
    np.testing.assert_array_equal(random_sl2(3), random_sl2(3))


def test_check_local_ops():
    assert check_local_ops([np.eye(2)], "SL") == []
    assert check_local_ops([2 * np.eye(2)], "SL") != []
    assert check_local_ops([np.zeros((2, 2))]) != []
    assert check_local_ops([random_sl2(1)], "SU") != []


def test_apply_local_examples():
    bell = catalog_state("BELL")
    out = apply_local(bell, [np.eye(2), np.eye(2)])
    np.testing.assert_allclose(out.amplitudes, bell.amplitudes)
    one = apply_local(from_kets({"0": 1}), [PAULI[1]])
    np.testing.assert_allclose(one.amplitudes, [0, 1])
    with pytest.raises(DimensionError):
        apply_local(bell, [np.eye(2)])


def test_apply_local_matches_kron():
    psi = random_haar_state(3, 2)
    ops = random_local_ops(3, "SL", 4)
    full = np.kron(np.kron(ops[0], ops[1]), ops[2])
    np.testing.assert_allclose(apply_local(psi, ops).amplitudes, full @ psi.amplitudes, atol=1e-12)
    assert apply_local(psi, ops, renormalize=True).is_normalized()


def test_ghz3_value_preserved_under_sl():
    ghz = catalog_state("GHZ3")
    ref = evaluate(builtin("F3_1"), ghz).complex_value
    moved = apply_local(ghz, random_local_ops(3, "SL", 9))
    assert abs(evaluate(builtin("F3_1"), moved, allow_unnormalized=True).complex_value - ref) < 1e-8


def test_invariance_check_examples():
    assert invariance_check(builtin("F3_1"), catalog_state("GHZ3"), "SL", 100, 0, 1e-8).passed
    r = invariance_check(builtin("F4_1"), catalog_state("PHI2"), "SL", 100, 1, 1e-8)
    assert r.passed and abs(r.reference) == pytest.approx(8 / 9, abs=1e-12)
    assert invariance_check(builtin("F2_1"), catalog_state("BELL"), "SU", 100, 2, 1e-10).passed


def test_invariance_check_detects_non_invariant():
    # a product of sigma_x is not SL-invariant
    from tanglekit.filters import parse_filter

    r = invariance_check(parse_filter("(X,X)"), random_haar_state(2, 0), "SL", 20, 0, 1e-8)
    assert not r.passed


def test_invariance_check_errors():
    with pytest.raises(ValueError):
        invariance_check(builtin("F2_1"), catalog_state("BELL"), "GL")
    with pytest.raises(DimensionError):
        invariance_check(builtin("F2_1"), catalog_state("GHZ3"))


def test_scaling_by_non_unit_multiple_of_identity():
    # c * 1 on each of N sites scales an order-n value by |c|^(2 n N)
    c = 1.3 * np.exp(0.4j)
    for name in BUILTIN_NAMES:
        f = builtin(name)
        psi = random_haar_state(f.n_qubits, 17)
        moved = apply_local(psi, [c * np.eye(2)] * f.n_qubits)
        got = evaluate(f, moved, allow_unnormalized=True).modulus
        want = abs(c) ** (2 * f.order * f.n_qubits) * evaluate(f, psi).modulus
        assert got == pytest.approx(want, rel=1e-9)


def test_classify_reference_states():
    sig = classify4(catalog_state("GHZ4"))
    np.testing.assert_allclose(sig.values, [1, 1, 0.5], atol=1e-9)
    assert sig.label == "ghz4"
    sig = classify4(catalog_state("PHI2"))
    np.testing.assert_allclose(sig.values, [8 / 9, 0, 0], atol=1e-9)
    assert sig.label == "phi2"
    sig = classify4(catalog_state("PHI3"))
    np.testing.assert_allclose(sig.values, [0, 0, 1], atol=1e-9)
    assert sig.label == "phi3"
    sig = classify4(catalog_state("W4"))
    assert sig.values == pytest.approx((0, 0, 0), abs=1e-12)
    assert sig.label == "none"
    with pytest.raises(DimensionError):
        classify4(catalog_state("GHZ3"))


@pytest.mark.parametrize(
    "values, label",
    [
        ((1, 1, 1), "ghz4"),
        ((1, 0, 1), "phi2"),
        ((1, 0, 0), "phi2"),
        ((0, 0, 1), "phi3"),
        ((0, 0, 0), "none"),
        ((1, 1, 0), "unclassified-signature"),
        ((0, 1, 0), "unclassified-signature"),
    ],
)
def test_signature_labels(values, label):
    assert FilterSignature(values).label == label


@pytest.mark.parametrize("name", ["GHZ4", "PHI2", "PHI3", "W4"])
def test_signature_stable_under_sl(name):
    psi = catalog_state(name)
    ref = classify4(psi)
    rng = make_rng(61)
    for _ in range(20):
        moved = apply_local(psi, random_local_ops(4, "SL", rng))
        np.testing.assert_allclose(
            [evaluate(builtin(f), moved, allow_unnormalized=True).modulus for f in ("F4_1", "F4_2", "F4_3")],
            ref.values,
            atol=1e-8,
        )
        # renormalizing divides an order-n modulus by |psi'|^(2n)
        sig = classify4(moved.normalized())
        scale = [moved.norm() ** (2 * builtin(f).order) for f in ("F4_1", "F4_2", "F4_3")]
        np.testing.assert_allclose(np.multiply(sig.values, scale), ref.values, atol=1e-8)


def test_renormalized_flags_with_absolute_threshold():
    # with a fixed 1e-8 threshold, a strongly squeezing tuple can push the
    # order-6 value of PHI3 under the cut; flags only agree for mild tuples
    psi = catalog_state("PHI3")
    rng = make_rng(61)
    agree = 0
    for _ in range(50):
        moved = apply_local(psi, random_local_ops(4, "SL", rng))
        sig = classify4(moved.normalized())
        assert sig.zero_flags[:2] == (True, True)
        if moved.norm() < 2:
            assert sig.label == "phi3"
        agree += sig.label == "phi3"
    assert agree > 0


def test_pairwise_inequivalence_witnesses():
    sigs = {n: classify4(catalog_state(n)) for n in ("GHZ4", "PHI2", "PHI3")}
    for a, b in itertools.permutations(sigs, 2):
        assert separating_filters(sigs[a], sigs[b]), (a, b)
    # F4_2 alone separates the GHZ state from the other two
    assert "F4_2" in separating_filters(sigs["GHZ4"], sigs["PHI2"])
    assert "F4_2" in separating_filters(sigs["GHZ4"], sigs["PHI3"])
