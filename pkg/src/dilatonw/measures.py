"""Entanglement and nonlocality measures for two- and three-qubit states."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import qmat
from .qmat import DensityMatrix

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

SVETLICHNY_CLASSICAL = 4.0
SVETLICHNY_QUANTUM = 4 * math.sqrt(2)
X_FORM_TOL = 1e-12
# eigenvalues of rho below this are treated as exact zeros before square roots
_NULL_EIG = 1e-14


def _matrix(rho, dim: int) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got shape {m.shape}")
    return m


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.where(w > _NULL_EIG, w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def _is_x_form(m: np.ndarray) -> bool:
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = mask[i, 3 - i] = False
    return bool(np.max(np.abs(m[mask])) <= X_FORM_TOL)


def concurrence(rho) -> float:
    """Concurrence of a two-qubit state.

    X-shaped inputs use the closed X-state expression, which stays exact
    when eigenvalues of ``rho`` are near zero; the spin-flip spectrum route
    there loses about ``sqrt(eps)`` of accuracy. Other inputs go through
    :func:`concurrence_wootters`.
    """
    m = _matrix(rho, 4)
    if _is_x_form(m):
        return concurrence_x(m)
    return concurrence_wootters(m)


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a two-qubit state.

    The square roots of the spin-flipped spectrum are obtained as singular
    values of ``sqrt(rho) @ sqrt(rho_tilde)``, which avoids taking square
    roots of eigenvalues that are zero up to rounding.
    """
    m = _matrix(rho, 4)
    yy = np.kron(SY, SY)
    root = _psd_sqrt(m)
    root_tilde = yy @ root.conj() @ yy
    lam = np.linalg.svd(root @ root_tilde, compute_uv=False)
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def x_form(rho) -> tuple[float, float, float, float, complex, complex]:
    """Return ``(a, b, c, d, w, z)`` of an X-shaped two-qubit matrix."""
    m = _matrix(rho, 4)
    if not _is_x_form(m):
        raise ValueError("matrix is not X-shaped (entries off the two diagonals exceed 1e-12)")
    return (m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, m[0, 3], m[1, 2])


def concurrence_x(rho) -> float:
    a, b, c, d, w, z = x_form(rho)
    return 2 * max(0.0, abs(z) - math.sqrt(max(a * d, 0.0)), abs(w) - math.sqrt(max(b * c, 0.0)))


def correlation_matrix(rho) -> np.ndarray:
    """Two-qubit correlation matrix ``T[i, j] = Tr(rho sigma_i (x) sigma_j)``."""
    m = _matrix(rho, 4).reshape(2, 2, 2, 2)
    t = np.einsum("abcd,ica,jdb->ij", m, np.array(PAULIS), np.array(PAULIS))
    return t.real


def chsh_max(rho) -> float:
    """Maximal CHSH value ``2 sqrt(mu1 + mu2)`` over all measurement settings."""
    t = correlation_matrix(rho)
    mu = np.linalg.eigvalsh(t.T @ t)
    return float(2 * math.sqrt(max(mu[-1] + mu[-2], 0.0)))


def chsh_x(rho) -> float:
    a, b, c, d, w, z = x_form(rho)
    z1 = 4 * (abs(w) + abs(z)) ** 2
    z2 = 4 * (abs(w) - abs(z)) ** 2
    z3 = (a - b - c + d) ** 2
    return max(2 * math.sqrt(z1 + z2), 2 * math.sqrt(z1 + z3))


def _negativity(m: np.ndarray, subsystem: int, dims) -> float:
    return max(qmat.trace_norm(qmat.partial_transpose(m, subsystem, dims)) - 1.0, 0.0)


def pi_tangle(rho) -> float:
    """Average residual negativity ``(pi_A + pi_B + pi_C) / 3`` of a three-qubit state."""
    m = _matrix(rho, 8)
    state = rho if isinstance(rho, DensityMatrix) else DensityMatrix.qubits(m)
    one = [_negativity(m, k, (2, 2, 2)) for k in range(3)]
    two = {}
    for i, j in itertools.combinations(range(3), 2):
        pair = qmat.partial_trace(state, (i, j)).matrix
        two[i, j] = two[j, i] = _negativity(pair, 0, (2, 2))
    residues = []
    for k in range(3):
        others = [x for x in range(3) if x != k]
        pi_k = one[k] ** 2 - sum(two[k, o] ** 2 for o in others)
        residues.append(max(pi_k, 0.0))
    return float(sum(residues) / 3)


# Svetlichny machinery ------------------------------------------------------

def correlation_tensor3(rho) -> np.ndarray:
    m = _matrix(rho, 8).reshape(2, 2, 2, 2, 2, 2)
    p = np.array(PAULIS)
    t = np.einsum("abcdef,ida,jeb,kfc->ijk", m, p, p, p)
    imag = np.max(np.abs(t.imag))
    if imag > 1e-10:
        raise qmat.ContractError(f"correlation tensor has imaginary residue {imag:.3e}")
    return np.ascontiguousarray(t.real)


@dataclass(frozen=True)
class MeasurementFrame:
    a: np.ndarray
    a2: np.ndarray
    b: np.ndarray
    b2: np.ndarray
    c: np.ndarray
    c2: np.ndarray

    def __post_init__(self):
        for name in ("a", "a2", "b", "b2", "c", "c2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1) > 1e-12:
                raise ValueError(f"frame vector {name} must be a unit 3-vector")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, arr) -> "MeasurementFrame":
        arr = np.asarray(arr, dtype=float).reshape(6, 3)
        return cls(*arr)

    def as_array(self) -> np.ndarray:
        return np.stack([self.a, self.a2, self.b, self.b2, self.c, self.c2])


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 50
    max_sweeps: int = 500
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("restarts and max_sweeps must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


def correlator(t: np.ndarray, u, v, w) -> float:
    return float(np.einsum("ijk,i,j,k->", t, u, v, w))


def svetlichny_value(t: np.ndarray, frame: MeasurementFrame) -> float:
    """Svetlichny combination ``A[B(C+C') + B'(C-C')] + A'[B(C-C') - B'(C+C')]``."""
    a, a2, b, b2 = frame.a, frame.a2, frame.b, frame.b2
    cp, cm = frame.c + frame.c2, frame.c - frame.c2
    return (correlator(t, a, b, cp) + correlator(t, a, b2, cm)
            + correlator(t, a2, b, cm) - correlator(t, a2, b2, cp))


def _batched_value(t, a, a2, b, b2, c, c2):
    cp, cm = c + c2, c - c2
    e = lambda u, v, w: np.einsum("ijk,ri,rj,rk->r", t, u, v, w)
    return e(a, b, cp) + e(a, b2, cm) + e(a2, b, cm) - e(a2, b2, cp)


def _unit(g, prev):
    norm = np.linalg.norm(g, axis=1, keepdims=True)
    safe = np.where(norm > 1e-15, norm, 1.0)
    return np.where(norm > 1e-15, g / safe, prev), norm[:, 0]


def random_frames(cfg: OptimizerConfig) -> np.ndarray:
    """Initial frames, shape ``(restarts, 6, 3)``; restart ``k`` draws from ``(seed, k)``."""
    out = np.empty((cfg.restarts, 6, 3))
    for k in range(cfg.restarts):
        g = np.random.default_rng([cfg.seed, k]).standard_normal((6, 3))
        out[k] = g / np.linalg.norm(g, axis=1, keepdims=True)
    return out


@dataclass
class SeeSawResult:
    value: float
    frame: MeasurementFrame | None
    restart_values: np.ndarray
    sweeps: int
    history: list = field(default_factory=list, repr=False)

    @property
    def converged(self) -> bool:
        """Best two restarts agree to 1e-6."""
        vals = np.sort(self.restart_values)[::-1]
        return len(vals) < 2 or bool(vals[0] - vals[1] <= 1e-6)

    @property
    def violates(self) -> bool:
        return self.value > SVETLICHNY_CLASSICAL


def seesaw(t: np.ndarray, cfg: OptimizerConfig = OptimizerConfig(),
           keep_history: bool = False) -> SeeSawResult:
    """Alternating exact maximisation of the Svetlichny value, all restarts batched.

    With the other four vectors fixed the value is linear in one party's
    pair, ``u.a + v.a'``, so the best pair is ``(u/|u|, v/|v|)``. Parties are
    cycled A, B, C until a restart improves by less than the tolerance.
    A vector whose coefficient vanishes keeps its previous direction.
    """
    t = np.asarray(t, dtype=float)
    if not np.any(t):
        return SeeSawResult(0.0, None, np.zeros(cfg.restarts), 0)
    frames = random_frames(cfg)
    a, a2, b, b2, c, c2 = (frames[:, i, :] for i in range(6))
    tens = lambda spec, *vs: np.einsum(spec, t, *vs)
    value = np.full(cfg.restarts, -np.inf)
    active = np.ones(cfg.restarts, dtype=bool)
    history = []
    sweeps = 0
    for sweeps in range(1, cfg.max_sweeps + 1):
        cp, cm = c + c2, c - c2
        u = tens("ijk,rj,rk->ri", b, cp) + tens("ijk,rj,rk->ri", b2, cm)
        v = tens("ijk,rj,rk->ri", b, cm) - tens("ijk,rj,rk->ri", b2, cp)
        a, _ = _unit(u, a)
        a2, _ = _unit(v, a2)

        g = tens("ijk,ri,rk->rj", a, cp) + tens("ijk,ri,rk->rj", a2, cm)
        h = tens("ijk,ri,rk->rj", a, cm) - tens("ijk,ri,rk->rj", a2, cp)
        b, _ = _unit(g, b)
        b2, _ = _unit(h, b2)

        ab = tens("ijk,ri,rj->rk", a, b)
        ab2 = tens("ijk,ri,rj->rk", a, b2)
        a2b = tens("ijk,ri,rj->rk", a2, b)
        a2b2 = tens("ijk,ri,rj->rk", a2, b2)
        c, _ = _unit(ab + ab2 + a2b - a2b2, c)
        c2, _ = _unit(ab - ab2 - a2b - a2b2, c2)

        new = _batched_value(t, a, a2, b, b2, c, c2)
        if np.any(new < value - 1e-12):
            raise AssertionError("see-saw objective decreased")
        if keep_history:
            history.append(new.copy())
        active = active & (new - value >= cfg.tolerance)
        value = new
        if not active.any():
            break
    best = int(np.argmax(value))
    frame = MeasurementFrame(a[best], a2[best], b[best], b2[best], c[best], c2[best])
    return SeeSawResult(float(value[best]), frame, value, sweeps, history)


def svetlichny_search(rho, cfg: OptimizerConfig = OptimizerConfig()) -> SeeSawResult:
    return seesaw(correlation_tensor3(rho), cfg)


def svetlichny_max(rho, cfg: OptimizerConfig = OptimizerConfig()) -> float:
    """Largest Svetlichny value found; GTN is witnessed when it exceeds 4."""
    return svetlichny_search(rho, cfg).value
