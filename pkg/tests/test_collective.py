import numpy as np
import pytest

from mesphase.collective import (
    COLLECTIVE_GENERATORS,
    HopResult,
    PhasePoint,
    collective_ops,
    collective_permutation,
    collective_to_particle,
    format_word,
    hop,
    hop_dense,
    hop_trajectory,
    local_action,
    parse_word,
    particle_to_collective,
    point_state_minus,
    point_state_plus,
    word_matrix,
)
from mesphase.errors import WordParseError
from mesphase.mes import mes_basis, mes_state, universal_state
from mesphase.schwinger import CB, clock_z, omega_powers, shift_x
from mesphase.states import Ket, is_mes, partial_trace, tensor

rng = np.random.default_rng(42)


# -- index maps ---------------------------------------------------------------


def test_symmetric_pair_maps_to_zero_relative():
    for d in (3, 7):
        for m in range(d):
            idx = particle_to_collective(d, m, m)
            assert (idx.nc, idx.nr) == (m, 0)


def test_known_index_value():
    # oracle: the inverse map sends (nc, nr) = (4, 4) to (8, 0) = (1, 0) mod 7
    assert collective_to_particle(7, 4, 4) == (1, 0)
    idx = particle_to_collective(7, 1, 0)
    assert (idx.nc, idx.nr) == (4, 4)


@pytest.mark.parametrize("d", [3, 5, 7, 11, 13])
def test_index_roundtrip_exhaustive(d):
    for n1 in range(d):
        for n2 in range(d):
            idx = particle_to_collective(d, n1, n2)
            assert collective_to_particle(d, idx.nc, idx.nr) == (n1, n2)
            assert (idx.nc + idx.nr) % d == n1
            assert (idx.nc - idx.nr) % d == n2


# -- permutation ---------------------------------------------------------------


@pytest.mark.parametrize("d", [3, 5, 7, 11, 13])
def test_permutation_structure(d):
    p = collective_permutation(d).matrix
    assert np.all(np.isin(np.abs(p), [0.0, 1.0]))
    assert np.all(p.sum(axis=0) == 1)
    assert np.all(p.sum(axis=1) == 1)
    assert np.abs(p @ p.conj().T - np.eye(d * d)).max() == 0.0


def test_permutation_fixes_origin():
    d = 5
    p = collective_permutation(d).matrix
    e00 = tensor(Ket.basis(d, 0), Ket.basis(d, 0)).amplitudes
    assert np.abs(p @ e00 - e00).max() == 0.0


# -- point states ---------------------------------------------------------------


def plus_oracle(d, q, p):
    """Direct sum over the pair basis, independent of the permutation route."""
    w = omega_powers(d)
    vec = np.zeros(d * d, dtype=complex)
    for m in range(d):
        vec[((m + q) % d) * d + (m - q) % d] += w[(-m * p) % d]
    return vec / np.sqrt(d)


@pytest.mark.parametrize("d", [3, 5])
def test_plus_states_match_oracle(d):
    for q in range(d):
        for p in range(d):
            assert np.abs(
                point_state_plus(d, (q, p)).amplitudes - plus_oracle(d, q, p)
            ).max() < 1e-13


def test_plus_at_origin_is_diagonal_pair():
    d = 7
    expected = np.zeros(d * d, dtype=complex)
    for m in range(d):
        expected[m * d + m] = 1 / np.sqrt(d)
    assert np.abs(point_state_plus(d, (0, 0)).amplitudes - expected).max() < 1e-14


@pytest.mark.parametrize("d", [3, 5, 7])
def test_point_bases_orthonormal_and_unbiased(d):
    plus = np.array(
        [point_state_plus(d, (q, p)).amplitudes for q in range(d) for p in range(d)]
    )
    minus = np.array(
        [point_state_minus(d, (q, p)).amplitudes for q in range(d) for p in range(d)]
    )
    eye = np.eye(d * d)
    assert np.abs(plus.conj() @ plus.T - eye).max() < 1e-12
    assert np.abs(minus.conj() @ minus.T - eye).max() < 1e-12
    # every cross overlap has modulus exactly 1/d
    assert np.abs(np.abs(minus.conj() @ plus.T) - 1 / d).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_point_states_are_maximally_entangled(d):
    for q in range(d):
        for p in range(d):
            assert is_mes(point_state_plus(d, (q, p)))
            assert is_mes(point_state_minus(d, (q, p)))


def test_cb_basis_element_factorizes_with_phase():
    for d in (3, 5, 7):
        w = omega_powers(d)
        for q in range(d):
            for p in range(d):
                element = mes_state(d, CB, CB, (2 * q) % d, p)
                overlap = np.vdot(
                    point_state_plus(d, (q, p)).amplitudes, element.vector.amplitudes
                )
                assert abs(overlap - w[(-q * p) % d]) < 1e-12


def test_point_states_from_generator_words():
    # translations from the origin produce the point states with phase 1
    d = 5
    ops = collective_ops(d)
    powm = np.linalg.matrix_power
    for q in range(d):
        for p in range(d):
            via_ops = powm(ops.zc.matrix, d - p) @ powm(ops.xr.matrix, q) @ point_state_plus(d, (0, 0)).amplitudes
            assert np.abs(via_ops - point_state_plus(d, (q, p)).amplitudes).max() < 1e-12
            via_ops = powm(ops.xc.matrix, q) @ powm(ops.zr.matrix, d - p) @ point_state_minus(d, (0, 0)).amplitudes
            assert np.abs(via_ops - point_state_minus(d, (q, p)).amplitudes).max() < 1e-12


# -- operator algebra -------------------------------------------------------------


@pytest.mark.parametrize("d", [3, 5, 7])
def test_factorization_identities(d):
    ops = collective_ops(d)
    z, x, eye = clock_z(d).matrix, shift_x(d).matrix, np.eye(d)
    powm = np.linalg.matrix_power
    h = (d + 1) // 2  # modular half of 1
    assert np.abs(np.kron(z, eye) - ops.zr.matrix @ ops.zc.matrix).max() < 1e-12
    assert np.abs(np.kron(eye, z) - powm(ops.zr.matrix, d - 1) @ ops.zc.matrix).max() < 1e-12
    assert np.abs(np.kron(x, eye) - powm(ops.xr.matrix, h) @ powm(ops.xc.matrix, h)).max() < 1e-12
    assert np.abs(np.kron(eye, x) - powm(ops.xr.matrix, d - h) @ powm(ops.xc.matrix, h)).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_collective_commutation(d):
    ops = collective_ops(d)
    w = omega_powers(d)[1]
    for xs, zs in ((ops.xc, ops.zc), (ops.xr, ops.zr)):
        assert np.abs(zs.matrix @ xs.matrix - w * xs.matrix @ zs.matrix).max() < 1e-12
    for a, b in ((ops.xc, ops.zr), (ops.xr, ops.zc), (ops.xc, ops.xr), (ops.zc, ops.zr)):
        assert np.abs(a.matrix @ b.matrix - b.matrix @ a.matrix).max() < 1e-12
    for s in (ops.xc, ops.zc, ops.xr, ops.zr):
        assert np.abs(np.linalg.matrix_power(s.matrix, d) - np.eye(d * d)).max() < 1e-12


# -- words ------------------------------------------------------------------------


def test_parse_word():
    assert parse_word("Xc^2 Xr^6 Zr^-1") == [("Xc", 2), ("Xr", 6), ("Zr", -1)]
    assert parse_word("Xc Zc") == [("Xc", 1), ("Zc", 1)]
    assert parse_word("") == []
    assert parse_word("   ") == []
    assert format_word(parse_word("Xc^2  Xr")) == "Xc^2 Xr^1"


def test_parse_word_rejects_bad_factors():
    for bad in ("Xq^2", "Xc^", "Xc^x", "xc^2 $", "Y^1"):
        with pytest.raises(WordParseError):
            parse_word(bad)
    with pytest.raises(WordParseError):
        parse_word("Xc^2", generators=("X", "Z"))


def test_word_matrix_respects_written_order():
    d = 5
    ops = collective_ops(d)
    expected = ops.xc.matrix @ np.linalg.matrix_power(ops.zc.matrix, 2)
    assert np.abs(word_matrix(d, "Xc Zc^2") - expected).max() < 1e-12


# -- local action -------------------------------------------------------------------


def test_local_action_identity_word():
    state = universal_state(5, CB)
    assert np.abs(local_action(state, 1, "").amplitudes - state.amplitudes).max() == 0.0


@pytest.mark.parametrize("d", [3, 5, 7])
def test_doubled_shift_moves_relative_label(d):
    universal = universal_state(d, CB)
    moved_1 = local_action(universal, 1, "X^2")
    moved_2 = local_action(universal, 2, "X^2")
    # acting on particle 1 advances the relative label; acting on particle 2
    # retreats it, landing on relative label d-1
    assert abs(np.vdot(point_state_plus(d, (1, 0)).amplitudes, moved_1.amplitudes) - 1) < 1e-12
    assert abs(np.vdot(point_state_plus(d, (d - 1, 0)).amplitudes, moved_2.amplitudes) - 1) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_single_particle_action_leaves_reductions_alone(d):
    universal = universal_state(d, CB)
    moved = local_action(universal, 1, "X^2")
    for state in (universal, moved):
        for keep in (1, 2):
            rho = partial_trace(state, keep).matrix
            assert np.abs(rho - np.eye(d) / d).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5])
def test_random_single_particle_words_preserve_mes(d):
    elements = mes_basis(d, CB, CB)
    for _ in range(50):
        word = [
            (str(rng.choice(["X", "Z"])), int(rng.integers(-d, d + 1)))
            for _ in range(rng.integers(1, 4))
        ]
        state = elements[rng.integers(0, d * d)].vector
        moved = local_action(state, int(rng.integers(1, 3)), word)
        assert is_mes(moved, 1e-10)


# -- hopping -----------------------------------------------------------------------


def test_hop_known_word():
    # frozen: doubled center shift plus six relative shifts picks up phase 6p
    d = 7
    result = hop(d, (1, 2), "Xc^2 Xr^6")
    assert result == HopResult(PhasePoint(3, 2), (6 * 2) % d)
    dense, fidelity = hop_dense(d, (1, 2), "Xc^2 Xr^6")
    assert dense == result and abs(fidelity - 1) < 1e-12


def test_hop_empty_word():
    result = hop(5, (2, 3), "")
    assert result == HopResult(PhasePoint(2, 3), 0)


def test_hop_relative_shift_keeps_point():
    d = 5
    for q in range(d):
        for p in range(d):
            sym = hop(d, (q, p), "Xr")
            assert sym.point == PhasePoint(q, p)
            assert sym.phase_exponent == p
            dense, fidelity = hop_dense(d, (q, p), "Xr")
            assert dense == sym and abs(fidelity - 1) < 1e-12


def test_hop_order_sensitivity():
    # diagonal factors see the labels current at their turn
    d = 5
    q = 2
    a = hop(d, (q, 0), "Zc Xc")  # shift first: phase q+1
    b = hop(d, (q, 0), "Xc Zc")  # clock first: phase q
    assert a.phase_exponent == (q + 1) % d
    assert b.phase_exponent == q
    for word in ("Zc Xc", "Xc Zc"):
        sym = hop(d, (q, 0), word)
        dense, fidelity = hop_dense(d, (q, 0), word)
        assert dense == sym and abs(fidelity - 1) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_hop_random_words_match_dense_action(d):
    for _ in range(100):
        word = [
            (str(rng.choice(COLLECTIVE_GENERATORS)), int(rng.integers(-9, 10)))
            for _ in range(rng.integers(0, 5))
        ]
        q, p = int(rng.integers(0, d)), int(rng.integers(0, d))
        sym = hop(d, (q, p), word)
        dense, fidelity = hop_dense(d, (q, p), word)
        assert abs(fidelity - 1) < 1e-10
        assert dense == sym


def test_hop_trajectory_steps():
    d = 7
    steps = hop_trajectory(d, (1, 2), "Xc^2 Xr^6")
    assert steps[0][1] == HopResult(PhasePoint(1, 2), 0)
    # rightmost factor first: the relative shifts act before the center shift
    assert steps[1][0] == "Xr^6"
    assert steps[1][1] == HopResult(PhasePoint(1, 2), 5)
    assert steps[-1][1] == hop(d, (1, 2), "Xc^2 Xr^6")
