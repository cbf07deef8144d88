"""Generalized amplitude damping acting on Alice's qubit."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dilaton import PureState
from .qmat import DensityMatrix

COMPLETENESS_TOL = 1e-14


@dataclass(frozen=True)
class GadParams:
    p: float
    r: float

    def __post_init__(self):
        for name in ("p", "r"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class EnvironmentParams:
    """Thermal environment in natural units (hbar = k_B = 1)."""

    temperature: float
    omega: float
    gamma0: float
    time: float

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        for name in ("omega", "gamma0", "time"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class GadConversion:
    params: GadParams
    gamma: float
    clamped: bool
    defect: bool


def gad_kraus(params: GadParams) -> list[np.ndarray]:
    p, r = params.p, params.r
    sp, sq = math.sqrt(p), math.sqrt(1 - p)
    ops = [
        sp * np.array([[1, 0], [0, math.sqrt(1 - r)]], dtype=complex),
        sp * np.array([[0, math.sqrt(r)], [0, 0]], dtype=complex),
        sq * np.array([[math.sqrt(1 - r), 0], [0, 1]], dtype=complex),
        sq * np.array([[0, 0], [math.sqrt(r), 0]], dtype=complex),
    ]
    dev = np.max(np.abs(sum(e.conj().T @ e for e in ops) - np.eye(2)))
    assert dev <= COMPLETENESS_TOL, f"Kraus completeness violated by {dev}"
    return ops


def environment_to_gad(env: EnvironmentParams, literal: bool = True) -> GadConversion:
    """Map a thermal environment onto (p, r).

    With ``literal=True`` the relaxation-rate prefactor uses
    ``2 / (exp(-w/T) - 1) + 1``, which is negative for every positive
    frequency; the result then carries ``defect=True`` and ``r`` is clamped
    into [0, 1]. ``literal=False`` uses the Bose occupation
    ``2 / (exp(w/T) - 1) + 1`` instead.
    """
    x = env.omega / env.temperature
    p = 1.0 / (1.0 + math.exp(-x))
    sign = -1.0 if literal else 1.0
    denom = math.expm1(sign * x)
    if denom == 0.0:
        gamma = math.inf if env.gamma0 > 0 else 0.0
    else:
        gamma = (2.0 / denom + 1.0) * env.gamma0
    defect = gamma < 0
    if env.time == 0:
        r = 0.0
    else:
        r = -math.expm1(-gamma * env.time) if math.isfinite(gamma) else 1.0
    clamped = not 0 <= r <= 1
    r = min(max(r, 0.0), 1.0)
    return GadConversion(GadParams(p=p, r=r), gamma=gamma, clamped=clamped, defect=defect)


def apply_channel_to_first(rho: np.ndarray, kraus: list[np.ndarray]) -> np.ndarray:
    """Apply a single-qubit channel to subsystem 0 of a register."""
    d = rho.shape[0]
    rest = np.eye(d // 2)
    out = np.zeros_like(rho, dtype=complex)
    for e in kraus:
        k = np.kron(e, rest)
        out += k @ rho @ k.conj().T
    return out


def apply_gad_to_alice(state: PureState, params: GadParams) -> DensityMatrix:
    if len(state.labels) != 5 or state.labels[0] != "A":
        raise ValueError(f"expected a five-mode register led by A, got {state.labels}")
    psi = state.amplitudes
    rho = np.outer(psi, psi.conj())
    return DensityMatrix(apply_channel_to_first(rho, gad_kraus(params)), (2,) * 5)
