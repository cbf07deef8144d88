"""Hawking mode mixing near a GHS dilaton black hole and the transformed W state."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Register order of the five-mode state.
MODES = ("A", "B_I", "B_II", "C_I", "C_II")


@dataclass(frozen=True)
class DilatonParams:
    omega: float = 1.0
    mass: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not 0 <= self.alpha <= self.mass:
            raise ValueError(f"alpha must lie in [0, mass={self.mass}], got {self.alpha}")


@dataclass(frozen=True)
class PureState:
    labels: tuple[str, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape != (2 ** len(self.labels),):
            raise ValueError(f"need {2 ** len(self.labels)} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"state norm {norm!r} is not 1")

    def amplitude(self, bits: str) -> complex:
        """Amplitude of a basis ket written as a bit string, e.g. ``'10011'``."""
        return complex(self.amplitudes[int(bits, 2)])


def beta(params: DilatonParams) -> float:
    """Vacuum-branch Bogoliubov coefficient ``(exp(-8 pi omega (M - alpha)) + 1)^(-1/2)``."""
    x = -8 * math.pi * params.omega * (params.mass - params.alpha)
    return (math.exp(x) + 1.0) ** -0.5


def beta_of_alpha(alpha: float, omega: float = 1.0, mass: float = 1.0) -> float:
    return beta(DilatonParams(omega=omega, mass=mass, alpha=alpha))


def hawking_temperature(mass: float, alpha: float) -> float:
    if not alpha < mass:
        raise ValueError(f"Hawking temperature diverges for alpha >= mass ({alpha} >= {mass})")
    return 1.0 / (8 * math.pi * (mass - alpha))


def _check_beta(b: float) -> None:
    if not 0 < b <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {b}")


def kruskal_mode_embedding(b: float, occupancy: int) -> np.ndarray:
    """Map a single Kruskal occupancy onto the (outside, inside) mode pair.

    Basis order of the returned vector is |00>, |01>, |10>, |11> with the
    outside mode leading.
    """
    _check_beta(b)
    if occupancy == 0:
        return np.array([b, 0, 0, math.sqrt(1 - b * b)], dtype=complex)
    if occupancy == 1:
        return np.array([0, 0, 1, 0], dtype=complex)
    raise ValueError(f"occupancy must be 0 or 1, got {occupancy}")


def embedded_w_state(b: float) -> PureState:
    """W state with Bob's and Charlie's modes replaced by their Kruskal embeddings."""
    _check_beta(b)
    qubit = (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))
    psi = np.zeros(32, dtype=complex)
    for a, bob, charlie in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
        psi += np.kron(np.kron(qubit[a], kruskal_mode_embedding(b, bob)),
                       kruskal_mode_embedding(b, charlie))
    return PureState(MODES, psi / math.sqrt(3))


def dilaton_w_state(b: float) -> PureState:
    """The eight-term superposition written out ket by ket (A, B_I, B_II, C_I, C_II)."""
    _check_beta(b)
    s = math.sqrt(1 - b * b)
    terms = {
        "00010": b,
        "01000": b,
        "01011": s,
        "01110": s,
        "10000": b * b,
        "10011": b * s,
        "11100": b * s,
        "11111": s * s,
    }
    psi = np.zeros(32, dtype=complex)
    for bits, amp in terms.items():
        psi[int(bits, 2)] += amp / math.sqrt(3)
    return PureState(MODES, psi)
