"""Numeric route from (alpha, p, r) to any reduced state of the five-mode register."""
from __future__ import annotations

from functools import lru_cache

from . import channels, dilaton, qmat
from .qmat import DensityMatrix
from .subsystems import modes_of


@lru_cache(maxsize=256)
def system_state(beta: float, p: float, r: float) -> DensityMatrix:
    """Full 32 x 32 state after damping Alice's qubit."""
    return channels.apply_gad_to_alice(dilaton.dilaton_w_state(beta), channels.GadParams(p, r))


@lru_cache(maxsize=64)
def undamped_state(beta: float) -> DensityMatrix:
    return DensityMatrix.from_pure(dilaton.dilaton_w_state(beta).amplitudes, (2,) * 5)


def reduced_state(tag: str, beta: float, p: float, r: float) -> DensityMatrix:
    keep = modes_of(tag)
    if 0 not in keep:
        # the channel is trace preserving on A, so tracing A out first gives
        # the same state and keeps it exactly independent of (p, r)
        channels.GadParams(p, r)
        return qmat.partial_trace(undamped_state(beta), keep)
    return qmat.partial_trace(system_state(beta, p, r), keep)
