import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilatonw import measures, oracle, qmat
from dilatonw.measures import MeasurementFrame, OptimizerConfig
from dilatonw.qmat import DensityMatrix
from conftest import random_density, random_unitary

FAST = OptimizerConfig(restarts=12)


def _planar(*angles):
    return np.array([[math.cos(a), math.sin(a), 0.0] for a in angles])


def _random_x_state(rng):
    a, b, c, d = rng.dirichlet(np.ones(4))
    w = rng.uniform(0, math.sqrt(a * d)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    z = rng.uniform(0, math.sqrt(b * c)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    m = np.diag([a, b, c, d]).astype(complex)
    m[0, 3], m[3, 0] = w, np.conj(w)
    m[1, 2], m[2, 1] = z, np.conj(z)
    return DensityMatrix.qubits(m)


def _product3(rng):
    return DensityMatrix.qubits(qmat.kron_all(*(random_density(1, rng).matrix for _ in range(3))))


# concurrence ---------------------------------------------------------------

def test_concurrence_examples(bell, w_state):
    assert measures.concurrence(bell) == pytest.approx(1, abs=1e-12)
    prod = np.zeros((4, 4))
    prod[1, 1] = 1
    assert measures.concurrence(prod) == pytest.approx(0, abs=1e-12)
    pair = qmat.partial_trace(w_state, (0, 1))
    assert measures.concurrence(pair) == pytest.approx(2 / 3, abs=1e-10)


def test_concurrence_x_examples(bell):
    assert measures.concurrence_x(bell) == pytest.approx(1, abs=1e-15)
    assert measures.concurrence_x(np.eye(4) / 4) == 0


def test_x_paths_agree_with_general(rng):
    for _ in range(100):
        rho = _random_x_state(rng)
        assert measures.concurrence_x(rho) == pytest.approx(measures.concurrence_wootters(rho), abs=1e-12)
        assert measures.chsh_x(rho) == pytest.approx(measures.chsh_max(rho), abs=1e-10)


def test_general_states_use_spin_flip_route(rng):
    for _ in range(20):
        rho = random_density(2, rng, rank=2)
        assert measures.concurrence(rho) == measures.concurrence_wootters(rho)


def test_near_singular_x_state_is_exact():
    # zero concurrence with one eigenvalue around 1e-14; the spectrum route is off by ~1e-7 here
    b2 = 1 - 1.7e-7
    m = np.diag([b2 * (2 + b2), 1 - b2 * b2, 1 - b2 * b2, (1 - b2) ** 2]) / 3
    m[1, 2] = m[2, 1] = (1 - b2) / 3
    assert measures.concurrence(m) == 0


def test_x_form_rejects_general_state(rng):
    with pytest.raises(ValueError):
        measures.x_form(random_density(2, rng))


def test_wrong_dimension(ghz, bell):
    with pytest.raises(ValueError):
        measures.concurrence(ghz)
    with pytest.raises(ValueError):
        measures.chsh_max(ghz)
    with pytest.raises(ValueError):
        measures.pi_tangle(bell)
    with pytest.raises(ValueError):
        measures.svetlichny_max(bell)


# CHSH ---------------------------------------------------------------------

def test_chsh_examples(bell, w_state):
    assert measures.chsh_max(bell) == pytest.approx(2 * math.sqrt(2), abs=1e-10)
    pair = qmat.partial_trace(w_state, (0, 1))
    assert measures.chsh_max(pair) == pytest.approx(2 * math.sqrt(8 / 9), abs=1e-12)
    assert measures.chsh_max(np.eye(4) / 4) == 0
    assert measures.chsh_x(bell) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert measures.chsh_x(np.eye(4) / 4) == 0


# pi-tangle ----------------------------------------------------------------

def test_pi_tangle_examples(ghz, w_state):
    assert measures.pi_tangle(ghz) == pytest.approx(1, abs=1e-9)
    assert measures.pi_tangle(w_state) == pytest.approx(4 * (math.sqrt(5) - 1) / 9, abs=1e-9)
    vac = np.zeros((8, 8))
    vac[0, 0] = 1
    assert measures.pi_tangle(vac) == 0


def test_w_negativity_components(w_state):
    one = qmat.trace_norm(qmat.partial_transpose(w_state, 0)) - 1
    two = qmat.trace_norm(qmat.partial_transpose(qmat.partial_trace(w_state, (0, 1)), 0)) - 1
    assert one == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    assert two == pytest.approx((math.sqrt(5) - 1) / 3, abs=1e-12)


def test_pi_tangle_product_states(rng):
    for _ in range(10):
        assert measures.pi_tangle(_product3(rng)) <= 1e-10


# correlation tensor and Svetlichny value ----------------------------------

def test_tensor_examples(ghz, w_state):
    t = measures.correlation_tensor3(ghz)
    expected = np.zeros((3, 3, 3))
    expected[0, 0, 0] = 1
    expected[0, 1, 1] = expected[1, 0, 1] = expected[1, 1, 0] = -1
    assert np.allclose(t, expected, atol=1e-15)
    assert measures.correlation_tensor3(w_state)[2, 2, 2] == pytest.approx(-1, abs=1e-15)
    assert not np.any(measures.correlation_tensor3(np.eye(8) / 8))


def test_value_zero_tensor(rng):
    frame = MeasurementFrame.from_array(measures.random_frames(OptimizerConfig(restarts=1))[0])
    assert measures.svetlichny_value(np.zeros((3, 3, 3)), frame) == 0


def test_ghz_known_planar_frame(ghz):
    q = math.pi / 4
    frame = MeasurementFrame.from_array(_planar(0, 2 * q, 0, 2 * q, 7 * q, q))
    t = measures.correlation_tensor3(ghz)
    assert measures.svetlichny_value(t, frame) == pytest.approx(4 * math.sqrt(2), abs=1e-12)


def test_frame_requires_unit_vectors():
    arr = _planar(0, 0, 0, 0, 0, 0)
    arr[3] *= 1.01
    with pytest.raises(ValueError):
        MeasurementFrame.from_array(arr)


def test_product_states_obey_classical_bound(rng):
    for _ in range(5):
        t = measures.correlation_tensor3(_product3(rng))
        frames = rng.standard_normal((2000, 6, 3))
        frames /= np.linalg.norm(frames, axis=2, keepdims=True)
        vals = measures._batched_value(t, *(frames[:, i] for i in range(6)))
        assert np.max(np.abs(vals)) <= 4 + 1e-12


# optimiser ----------------------------------------------------------------

def test_svetlichny_max_ghz(ghz):
    assert measures.svetlichny_max(ghz) == pytest.approx(4 * math.sqrt(2), abs=1e-6)


def test_svetlichny_max_w_matches_grid_oracle(w_state):
    value = measures.svetlichny_max(w_state)
    grid = oracle.grid_svetlichny_max(measures.correlation_tensor3(w_state))
    assert abs(value - grid) <= 1e-3
    assert value == pytest.approx(4.3546, abs=1e-4)


def test_svetlichny_max_maximally_mixed():
    assert measures.svetlichny_max(np.eye(8) / 8) == 0


def test_seesaw_is_monotone(w_state):
    res = measures.seesaw(measures.correlation_tensor3(w_state), FAST, keep_history=True)
    hist = np.array(res.history)
    assert np.all(np.diff(hist, axis=0) >= -1e-12)
    assert res.converged and res.violates


def test_seesaw_deterministic(rng):
    rho = random_density(3, rng)
    one = measures.svetlichny_search(rho, FAST)
    two = measures.svetlichny_search(rho, FAST)
    assert one.value == two.value
    assert np.array_equal(one.restart_values, two.restart_values)


def test_restart_streams_independent_of_count():
    few = measures.random_frames(OptimizerConfig(restarts=3, seed=5))
    many = measures.random_frames(OptimizerConfig(restarts=10, seed=5))
    assert np.array_equal(few, many[:3])


def test_local_unitary_invariance(rng, w_state):
    base = measures.svetlichny_max(w_state)
    for _ in range(3):
        u = qmat.kron_all(*(random_unitary(2, rng) for _ in range(3)))
        rotated = u @ w_state.matrix @ u.conj().T
        assert measures.svetlichny_max(rotated) == pytest.approx(base, abs=1e-6)


def test_maximum_dominates_random_frames(rng):
    for _ in range(3):
        rho = random_density(3, rng, rank=2)
        t = measures.correlation_tensor3(rho)
        best = measures.svetlichny_max(rho, FAST)
        frames = rng.standard_normal((100, 6, 3))
        frames /= np.linalg.norm(frames, axis=2, keepdims=True)
        vals = measures._batched_value(t, *(frames[:, i] for i in range(6)))
        assert best >= np.max(np.abs(vals)) - 1e-12


def test_optimizer_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(tolerance=0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), rank=st.integers(1, 8))
def test_bounds_on_random_states(seed, rank):
    rng = np.random.default_rng(seed)
    rho3 = random_density(3, rng, rank=rank)
    rho2 = random_density(2, rng, rank=min(rank, 4))
    assert 0 <= measures.chsh_max(rho2) <= 2 * math.sqrt(2) + 1e-9
    assert 0 <= measures.concurrence(rho2) <= 1 + 1e-12
    assert measures.pi_tangle(rho3) >= 0
    s = measures.svetlichny_max(rho3, OptimizerConfig(restarts=4))
    assert 0 <= s <= 4 * math.sqrt(2) + 1e-9
