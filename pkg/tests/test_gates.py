import numpy as np
import pytest
from hypothesis import given, settings

from qsimplex import gates, oracle
from qsimplex.core import map_state, p_of
from qsimplex.errors import DimensionMismatch, NotBlockStructured, NotUnitary, OutOfRange
from qsimplex.gates import (
    AffineTransform,
    apply,
    build_transform,
    canonicalize,
    compose,
    hadamard,
    phase,
    rabi,
)

from conftest import angles, states

R2 = 1 / np.sqrt(2)

# Hadamard matrix written out entry by entry.
HADAMARD_LITERAL = R2 * np.array(
    [
        [1, 0, 0, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 1, 1],
    ]
)


def commute_error(u, m, psi):
    lhs = map_state(np.asarray(u) @ psi).entries
    return np.max(np.abs(lhs - apply(m, map_state(psi)).entries))


def test_identity_transform():
    np.testing.assert_array_equal(build_transform(np.eye(2)).matrix, np.eye(8))


def test_hadamard_literal():
    np.testing.assert_array_equal(hadamard().matrix, HADAMARD_LITERAL)
    row = hadamard().matrix[0]
    assert row[0] == row[3] == R2
    assert np.count_nonzero(row) == 2


def test_hadamard_is_a_representative_of_the_canonical_form():
    # the nonnegative matrix and R(x)Re(U_H) differ entrywise but agree after canonicalization
    canon = build_transform(oracle.U_H).matrix
    assert np.max(np.abs(canon - hadamard().matrix)) > 0.5
    np.testing.assert_allclose(canonicalize(hadamard()).matrix, canon, atol=1e-15)


def test_hadamard_on_zero():
    s = apply(hadamard(), map_state([1, 0])).entries
    want = np.array([1 + R2, 1 + R2, 1 - R2, 1 - R2, 1, 1, 1, 1]) / 8
    np.testing.assert_allclose(s, want, atol=1e-15)


def test_hadamard_twice_matches_oracle():
    s0 = map_state([1, 0])
    twice = apply(hadamard(), apply(hadamard(), s0)).entries
    want = map_state(oracle.U_H @ oracle.U_H @ np.array([1, 0])).entries
    np.testing.assert_allclose(twice, want, atol=1e-15)
    # U_H^2 is a quarter turn, so |0> goes to |1>, not back to |0>
    np.testing.assert_allclose(twice, map_state([0, 1]).entries, atol=1e-15)


def test_rabi_special_angles():
    np.testing.assert_allclose(rabi(0.0).matrix, np.eye(8), atol=0)
    np.testing.assert_allclose(rabi(np.pi / 4).matrix, hadamard().matrix, atol=1e-15)


def test_rabi_sweep_first_entry():
    s0 = map_state([1, 0])
    for theta in np.linspace(0, 2 * np.pi, 37):
        s1 = apply(rabi(theta), s0).entries[0]
        assert abs(s1 - (1 + np.cos(theta)) / 8) < 1e-15


def test_phase_special_cases():
    np.testing.assert_array_equal(phase(0.0).matrix, np.eye(8))
    out = apply(phase(np.pi / 2), map_state([R2, R2])).entries
    np.testing.assert_allclose(out, map_state([R2, 1j * R2]).entries, atol=1e-15)


def test_phase_on_one():
    out = apply(phase(np.pi / 2), map_state([0, 1])).entries
    np.testing.assert_allclose(out, map_state([0, 1j]).entries, atol=1e-15)


@given(angles)
@settings(max_examples=50, deadline=None)
def test_closed_forms_match_build_transform(a):
    np.testing.assert_allclose(phase(a).matrix, build_transform(oracle.u_phase(a)).matrix, atol=1e-15)
    np.testing.assert_allclose(
        canonicalize(rabi(a)).matrix, build_transform(oracle.u_rabi(a)).matrix, atol=1e-15
    )


@given(states(2), angles, angles)
@settings(max_examples=200, deadline=None)
def test_commuting_diagram_named_gates(psi, theta, alpha):
    assert commute_error(oracle.U_H, hadamard(), psi) < 1e-10
    assert commute_error(oracle.u_rabi(theta), rabi(theta), psi) < 1e-10
    assert commute_error(oracle.u_phase(alpha), phase(alpha), psi) < 1e-10


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_commuting_diagram_random_unitary(k):
    rng = np.random.default_rng(100 + k)
    for _ in range(100):
        u = oracle.random_unitary(k, rng)
        psi = oracle.random_state(k, rng).amplitudes
        assert commute_error(u, build_transform(u), psi) < 1e-10


def test_build_transform_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        build_transform([[1, 0], [0, 2]])


def test_row_squared_sums():
    rng = np.random.default_rng(8)
    for _ in range(50):
        u = oracle.random_unitary(3, rng)
        np.testing.assert_allclose(gates.row_squared_sums(build_transform(u)), 1, atol=1e-12)


def test_output_structure():
    rng = np.random.default_rng(9)
    m = build_transform(oracle.random_unitary(2, rng))
    for _ in range(50):
        p = p_of(map_state(oracle.random_state(2, rng)))
        assert gates.output_structure_residual(m, p) < 1e-14


def test_affinity_and_nonlinearity():
    t = AffineTransform.from_matrix(hadamard())
    s = map_state([1, 0]).entries
    s2 = map_state([0.6, 0.8j]).entries
    lam = 0.3
    lhs = apply(t, lam * s + (1 - lam) * s2).entries
    rhs = lam * apply(t, s).entries + (1 - lam) * apply(t, s2).entries
    assert np.max(np.abs(lhs - rhs)) < 1e-15
    # T(s + s') picks up the offset once, T(s) + T(s') twice
    lin = apply(t, s + s2).entries
    assert np.max(np.abs(lin - (apply(t, s).entries + apply(t, s2).entries))) > 1e-6


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply(hadamard(), map_state(oracle.random_state(4, seed=0)))


def test_canonicalize_leaves_canonical_alone():
    m = build_transform(oracle.random_unitary(2, seed=1))
    np.testing.assert_array_equal(canonicalize(m).matrix, m.matrix)


def test_canonicalize_alternate_form():
    alt = gates.build_transform_alternate(oracle.U_H)
    assert alt.form == gates.ALTERNATE
    np.testing.assert_allclose(canonicalize(alt).matrix, build_transform(oracle.U_H).matrix, atol=1e-15)
    np.testing.assert_allclose(canonicalize(alt).matrix, canonicalize(hadamard()).matrix, atol=1e-15)


def test_canonicalize_preserves_action_on_random_block_matrix():
    rng = np.random.default_rng(10)
    blocks = [rng.standard_normal((2, 2)) for _ in range(4)]
    m = gates.real_block_form(*blocks)
    c = canonicalize(m)
    for _ in range(100):
        p = p_of(map_state(oracle.random_state(2, rng))).entries
        assert np.max(np.abs(m @ p - c.matrix @ p)) < 1e-12


def test_canonicalize_rejects_unstructured():
    m = np.zeros((8, 8))
    m[0, 0] = 1.0
    with pytest.raises(NotBlockStructured):
        canonicalize(m)


def test_compose_identity():
    m = build_transform(oracle.random_unitary(2, seed=5))
    np.testing.assert_array_equal(compose(gates.identity(2), m).matrix, m.matrix)


def test_compose_hadamard_squared():
    m = build_transform(oracle.U_H)
    lhs = canonicalize(compose(m, m)).matrix
    np.testing.assert_allclose(lhs, build_transform(oracle.U_H @ oracle.U_H).matrix, atol=1e-15)


def test_compose_action_matches_product():
    rng = np.random.default_rng(12)
    u1, u2 = oracle.random_unitary(2, rng), oracle.random_unitary(2, rng)
    raw = compose(build_transform(u2), build_transform(u1))
    direct = build_transform(u2 @ u1)
    for _ in range(100):
        s = map_state(oracle.random_state(2, rng))
        assert np.max(np.abs(apply(raw, s).entries - apply(direct, s).entries)) < 1e-10


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(gates.identity(2), gates.identity(3))


def test_cascade_order():
    rng = np.random.default_rng(13)
    us = [oracle.random_unitary(2, rng) for _ in range(3)]
    m = gates.cascade(*(build_transform(u) for u in us))
    np.testing.assert_allclose(canonicalize(m).matrix, build_transform(us[2] @ us[1] @ us[0]).matrix, atol=1e-12)


def test_or_realization_left_example():
    pa = pb = (1 + R2) / 8
    r = gates.hadamard_row_via_or(pa, pb)
    s = map_state([R2, -R2])
    assert s.entries[0] == pytest.approx(pa) and s.entries[3] == pytest.approx(pb)
    assert r.p_or == pytest.approx(apply(hadamard(), s).entries[0], abs=1e-15)
    assert r.p_or == pytest.approx(0.25, abs=1e-15)


def test_or_realization_balanced_fixed_point():
    r = gates.hadamard_row_via_or(1 / 8, 1 / 8)
    assert r.p_or == pytest.approx(1 / 8, abs=1e-16)
    assert r.p_and == pytest.approx((2 - 2 * R2 + np.sqrt(2) - 1) / 8, abs=1e-16)


def test_or_realization_range():
    with pytest.raises(OutOfRange):
        gates.hadamard_row_via_or(0.3, 0.1)


def test_or_feasibility_scan_reports_a_fraction():
    frac, ok, total = gates.or_feasibility_scan(12)
    assert total == 12**3
    assert 0.0 <= frac <= 1.0 and ok == round(frac * total)
    print(f"AND-probability feasibility over {total} grid states: {frac:.4f}")
