"""Closed-form reduced density matrices of the damped, dilaton-transformed W state.

Every function takes the Bogoliubov coefficient ``beta`` (real, in (0, 1])
and the damping parameters ``p`` and ``r``. Matrices are written in the
basis |000>..|111> of the listed modes with the first mode leading. Only
upper-triangle coefficients are spelled out; the rest follow from
Hermiticity.

Three printed coefficients are known to be wrong and are corrected here;
``PRINTED_CORRECTIONS`` lists them and ``printed_matrix`` reproduces the
uncorrected forms for discrepancy reports.
"""
from __future__ import annotations

import math

import numpy as np

from .qmat import DensityMatrix
from .subsystems import BIPARTITE, TRIPARTITE, canonical

PRINTED_CORRECTIONS = {
    "AB_IC_II": "entry (4,6): printed (1/3)(1-b^2)sqrt(1-r); corrected (1/3)b(1-b^2)sqrt(1-r)",
    "AB_I": "entry (4,4): printed (1/3)(1+(2-3p)r+b^2((2p-1)r)-1); corrected (1/3)(1+(2-3p)r+b^2((2p-1)r-1))",
    "AB_II": "entry (2,2): printed (1/3)(b^2-1)(1+(2p-1)r); corrected (1/3)(1-b^2)(1+(2p-1)r)",
}


def _check(beta, p, r):
    if not 0 < beta <= 1:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    for name, v in (("p", p), ("r", r)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")


def _hermitian(n, entries):
    """Build an n x n real symmetric matrix from 1-based upper entries."""
    m = np.zeros((n, n), dtype=complex)
    for (i, j), v in entries.items():
        m[i - 1, j - 1] = v
        m[j - 1, i - 1] = v
    return m


def _chi(b, p, r):
    b2, s = b * b, math.sqrt(1 - r)
    coh = -b * (b2 - 1) * s / 3
    return _hermitian(8, {
        (1, 1): b**4 * p * r / 3,
        (2, 2): -b2 * (-1 + r + (b2 - 2) * p * r) / 3,
        (3, 3): -b2 * (-1 + r + (b2 - 2) * p * r) / 3,
        (2, 3): b2 * (1 + (p - 1) * r) / 3,
        (2, 5): b**3 * s / 3,
        (3, 5): b**3 * s / 3,
        (4, 4): (b2 - 1) * (((b2 - 3) * p + 2) * r - 2) / 3,
        (4, 6): coh,
        (4, 7): coh,
        (5, 5): -b**4 * (p * r - 1) / 3,
        (6, 6): b2 * (1 + r - 2 * p * r + b2 * (p * r - 1)) / 3,
        (7, 7): b2 * (1 + r - 2 * p * r + b2 * (p * r - 1)) / 3,
        (6, 7): b2 * (1 - p) * r / 3,
        (8, 8): (b2 - 1) * (b2 - ((b2 - 3) * p + 2) * r - 1) / 3,
    })


def _nu(b, p, r):
    b2, c, s = b * b, math.sqrt(1 - b * b), math.sqrt(1 - r)
    return _hermitian(8, {
        (1, 1): b2 * (1 + (2 * p - 1) * r) / 3,
        (1, 4): b * c * (1 + (2 * p - 1) * r) / 3,
        (3, 3): (1 + (p - 1) * r) / 3,
        (3, 5): b * s / 3,
        (3, 8): c * s / 3,
        (4, 4): (1 - b2) * (1 + (2 * p - 1) * r) / 3,
        (5, 5): b2 * (1 + r - 2 * p * r) / 3,
        (5, 8): b * c * (1 + r - 2 * p * r) / 3,
        (7, 7): (1 - p) * r / 3,
        (8, 8): (b2 - 1) * ((2 * p - 1) * r - 1) / 3,
    })


def _eta(b, p, r):
    b2, c, s = b * b, math.sqrt(1 - b * b), math.sqrt(1 - r)
    c3 = (1 - b2) ** 1.5
    return _hermitian(8, {
        (1, 1): b2 * (2 + ((2 + b2) * p - 2) * r) / 3,
        (1, 6): b2 * c * s / 3,
        (1, 7): b2 * c * s / 3,
        (2, 2): (1 - b2) * (1 + (p * b2 + p - 1) * r) / 3,
        (3, 3): (1 - b2) * (1 + (p * b2 + p - 1) * r) / 3,
        (2, 3): (1 - b2) * (1 + (p - 1) * r) / 3,
        (2, 8): c3 * s / 3,
        (3, 8): c3 * s / 3,
        (4, 4): (b2 - 1) ** 2 * p * r / 3,
        (5, 5): (b2**2 - b2 * ((b2 + 2) * p - 2) * r) / 3,
        (6, 6): (b2 - 1) * (r * (p - 1) + b2 * (p * r - 1)) / 3,
        (7, 7): (b2 - 1) * (r * (p - 1) + b2 * (p * r - 1)) / 3,
        (6, 7): (b2 - 1) * (p - 1) * r / 3,
        (8, 8): -(b2 - 1) ** 2 * (p * r - 1) / 3,
    })


def _epsilon(b, p, r, printed=False):
    b2, c, s = b * b, math.sqrt(1 - b * b), math.sqrt(1 - r)
    e46 = (1 - b2) * s / 3
    if not printed:
        e46 *= b
    return _hermitian(8, {
        (1, 1): b2 * (1 + (b2 * p + p - 1) * r) / 3,
        (1, 4): b * c * (1 + (p - 1) * r) / 3,
        (1, 6): b2 * c * s / 3,
        (2, 2): b2 * (1 - b2) * p * r / 3,
        (3, 3): (1 + ((1 + b2 - b2 * b2) * p - 1) * r) / 3,
        (3, 5): b**3 * s / 3,
        (3, 8): (1 - b2) ** 1.5 * s / 3,
        (4, 4): (b2 - 1) * (r - 1 + (b2 - 2) * p * r) / 3,
        (4, 6): e46,
        (5, 5): (b2 * b2 - b2 * r * (b2 * p + p - 1)) / 3,
        (5, 8): (1 - p) * r * b * c / 3,
        (6, 6): b2 * (b2 - 1) * (p * r - 1) / 3,
        (7, 7): (r - p * r + b2 * (b2 - 1) * (p * r - 1)) / 3,
        (8, 8): (1 - b2) * (1 + r - 2 * p * r + b2 * (p * r - 1)) / 3,
    })


def _swap_last_two(m):
    return m.reshape(2, 2, 2, 2, 2, 2).transpose(0, 2, 1, 3, 5, 4).reshape(8, 8)


def rho_accessible(beta, p, r) -> DensityMatrix:
    """State of (A, B_I, C_I)."""
    _check(beta, p, r)
    return DensityMatrix.qubits(_chi(beta, p, r))


def rho_ab1b2(beta, p, r) -> DensityMatrix:
    """State of (A, B_I, B_II); equal to that of (A, C_I, C_II)."""
    _check(beta, p, r)
    return DensityMatrix.qubits(_nu(beta, p, r))


def rho_ab2c2(beta, p, r) -> DensityMatrix:
    """State of (A, B_II, C_II)."""
    _check(beta, p, r)
    return DensityMatrix.qubits(_eta(beta, p, r))


def rho_ab1c2(beta, p, r) -> DensityMatrix:
    """State of (A, B_I, C_II)."""
    _check(beta, p, r)
    return DensityMatrix.qubits(_epsilon(beta, p, r))


def rho_triple(tag: str, beta, p, r) -> DensityMatrix:
    tag = canonical(tag)
    if tag not in TRIPARTITE:
        raise ValueError(f"{tag} is not a tripartite subsystem")
    _check(beta, p, r)
    if tag == "AB_IC_I":
        m = _chi(beta, p, r)
    elif tag in ("AB_IB_II", "AC_IC_II"):
        m = _nu(beta, p, r)
    elif tag == "AB_IIC_II":
        m = _eta(beta, p, r)
    elif tag == "AB_IC_II":
        m = _epsilon(beta, p, r)
    else:
        # (A, B_II, C_I) is the Bob/Charlie mirror of (A, C_I, B_II)
        m = _swap_last_two(_epsilon(beta, p, r))
    return DensityMatrix.qubits(m)


def _pair_matrix(tag, b, p, r, printed=False):
    b2, c, s = b * b, math.sqrt(1 - b * b), math.sqrt(1 - r)
    if tag in ("AB_I", "AC_I"):
        d = (1 + (2 - 3 * p) * r + b2 * ((2 * p - 1) * r - 1)) / 3
        if printed:
            d = (1 + (2 - 3 * p) * r + b2 * ((2 * p - 1) * r) - 1) / 3
        return _hermitian(4, {
            (1, 1): b2 * (1 + (2 * p - 1) * r) / 3,
            (2, 2): (2 + (3 * p - 2) * r + b2 * (r - 2 * p * r - 1)) / 3,
            (2, 3): b * s / 3,
            (3, 3): b2 * (r - 2 * p * r + 1) / 3,
            (4, 4): d,
        })
    if tag in ("AB_II", "AC_II"):
        sign = -1 if printed else 1
        return _hermitian(4, {
            (1, 1): (1 + b2 + (p - 1 + b2 * (2 * p - 1)) * r) / 3,
            (1, 4): c * s / 3,
            (2, 2): sign * (1 - b2) * (1 + (2 * p - 1) * r) / 3,
            (3, 3): (r - p * r + b2 * (1 + r - 2 * p * r)) / 3,
            (4, 4): (b2 - 1) * ((2 * p - 1) * r - 1) / 3,
        })
    if tag == "B_IC_II":
        return _hermitian(4, {
            (1, 1): (b2 + b2 * b2) / 3,
            (1, 4): b * c / 3,
            (2, 2): (b2 - b2 * b2) / 3,
            (3, 3): (1 + b2 - b2 * b2) / 3,
            (4, 4): (2 - 3 * b2 + b2 * b2) / 3,
        })
    if tag == "B_IIC_I":
        return _hermitian(4, {
            (1, 1): (b2 + b2 * b2) / 3,
            (1, 4): b * c / 3,
            (2, 2): (1 + b2 - b2 * b2) / 3,
            (3, 3): (b2 - b2 * b2) / 3,
            (4, 4): (2 - 3 * b2 + b2 * b2) / 3,
        })
    if tag == "B_IC_I":
        return _hermitian(4, {
            (1, 1): b2 * b2 / 3,
            (2, 2): b2 * (2 - b2) / 3,
            (3, 3): b2 * (2 - b2) / 3,
            (2, 3): b2 / 3,
            (4, 4): (b2 * b2 - 4 * b2 + 3) / 3,
        })
    if tag in ("B_IB_II", "C_IC_II"):
        return _hermitian(4, {
            (1, 1): 2 * b2 / 3,
            (1, 4): 2 * b * c / 3,
            (3, 3): 1 / 3,
            (4, 4): 2 * (1 - b2) / 3,
        })
    if tag == "B_IIC_II":
        return _hermitian(4, {
            (1, 1): b2 * (2 + b2) / 3,
            (2, 2): (1 - b2 * b2) / 3,
            (3, 3): (1 - b2 * b2) / 3,
            (2, 3): (1 - b2) / 3,
            (4, 4): (b2 - 1) ** 2 / 3,
        })
    raise ValueError(f"{tag} is not a bipartite subsystem")


def rho_pair(tag: str, beta, p, r) -> DensityMatrix:
    tag = canonical(tag)
    if tag not in BIPARTITE:
        raise ValueError(f"{tag} is not a bipartite subsystem")
    _check(beta, p, r)
    return DensityMatrix.qubits(_pair_matrix(tag, beta, p, r))


def rho_subsystem(tag: str, beta, p, r) -> DensityMatrix:
    tag = canonical(tag)
    if tag in TRIPARTITE:
        return rho_triple(tag, beta, p, r)
    return rho_pair(tag, beta, p, r)


def printed_matrix(tag: str, beta, p, r) -> np.ndarray:
    """Matrix exactly as printed, defects included (may not be a valid state)."""
    tag = canonical(tag)
    _check(beta, p, r)
    if tag == "AB_IC_II":
        return _epsilon(beta, p, r, printed=True)
    if tag in BIPARTITE:
        return _pair_matrix(tag, beta, p, r, printed=True)
    return rho_triple(tag, beta, p, r).matrix.copy()


# Closed-form Bell-CHSH maxima and concurrences, transcribed as printed with
# beta real (so beta * conj(beta) = beta**2 and |beta| = beta).

def _sqrt(x):
    return math.sqrt(max(x, 0.0))


def closed_form_bn(tag: str, beta, p, r) -> float:
    tag = canonical(tag)
    if tag not in BIPARTITE:
        raise ValueError(f"{tag} is not a bipartite subsystem")
    _check(beta, p, r)
    b, b2 = beta, beta * beta
    b4 = b2 * b2
    k = 4 * math.sqrt(2) / 3
    if tag in ("B_IB_II", "C_IC_II"):
        return max(2 * k * abs(b * _sqrt(1 - b2)),
                   2 / 3 * _sqrt(16 * abs(b2 - b4) + (2 * abs(b2 - 1) - 1 + 2 * b2) ** 2))
    if tag in ("AB_I", "AC_I"):
        inner = (abs(b2 * (r - 2 * p * r + 1)) - b2 * abs(2 * p * r - r + 1)
                 + abs(2 + (3 * p - 2) * r + b2 * (r - 2 * p * r - 1))
                 - abs(1 + (2 - 3 * p) * r + b2 * (2 * p * r - 1 - r)))
        return max(k * abs(b * _sqrt(1 - r)),
                   2 / 3 * _sqrt(4 * abs(b2 * (r - 1)) + inner**2))
    if tag == "B_IC_I":
        inner = b4 - 2 * abs(b2 * (b2 - 2)) + abs(3 - 4 * b2 + b4)
        return max(k * b2, 2 / 3 * _sqrt(4 * b4 + inner**2))
    if tag in ("AB_II", "AC_II"):
        inner = (abs((b2 - 1) * (r + 1 - 2 * p * r)) - abs((b2 - 1) * (1 - r + 2 * p * r))
                 + abs(b2 + 1 + (p - 1 + b2 * (2 * p - 1)) * r)
                 - abs(r - p * r + b2 * (1 + r - 2 * p * r)))
        return max(k * abs(_sqrt(1 - b2) * _sqrt(1 - r)),
                   2 / 3 * _sqrt(4 * abs((b2 - 1) * (r - 1)) + inner**2))
    if tag in ("B_IC_II", "B_IIC_I"):
        inner = abs(b2 - b4) + abs(b2 - b4 + 1) - abs(2 - 3 * b2 + b4) - abs(b2 + b4)
        return max(k * abs(b * _sqrt(1 - b2)),
                   2 / 3 * _sqrt(4 * abs(b2 - b4) + inner**2))
    # B_IIC_II
    inner = abs(b2 - 1) ** 2 + abs(b2 * (2 + b2)) - 2 * abs(1 - b4)
    return max(k * abs(1 - b2), 2 / 3 * _sqrt(4 * abs(1 - b2) ** 2 + inner**2))


def closed_form_concurrence(tag: str, beta, p, r) -> float:
    """Printed concurrence expressions; damaged tokens read as ``|beta|``.

    Several printed branches disagree with the general computation; the
    general one in ``measures`` is authoritative.
    """
    tag = canonical(tag)
    if tag not in BIPARTITE:
        raise ValueError(f"{tag} is not a bipartite subsystem")
    _check(beta, p, r)
    b, b2 = beta, beta * beta
    b4 = b2 * b2
    if tag in ("B_IB_II", "C_IC_II"):
        branches = (-2 / 3 * _sqrt(b2 - b4), -2 / 3 * abs(b * _sqrt(1 - b2)))
    elif tag in ("AB_I", "AC_I"):
        branches = (
            -1 / 3 * _sqrt(b2 * (r - 2 * p * r + 1) * (2 + (3 * p - 2) * r + b2 * (r - 1 - 2 * p * r))),
            1 / 3 * (-_sqrt(b2 * (1 + (2 * p - 1) * r) * (1 + 2 * r - 3 * p * r + b2 * (2 * p * r - 1 - r)))
                     + abs(b * _sqrt(1 - r))),
        )
    elif tag == "B_IC_I":
        branches = (-1 / 3 * _sqrt(b4 * (b2 - 2) ** 2),
                    1 / 3 * (-_sqrt(b4 * (3 - 4 * b2 + b4)) + b2))
    elif tag in ("AB_II", "AC_II"):
        branches = (
            -1 / 3 * _sqrt((b2 - 1) * (-1 + (2 * p - 1) * r) * (b2 + 1 + (p - 1 + b2 * (2 * p - 1)) * r)),
            1 / 3 * abs(_sqrt(1 - b2) * _sqrt(1 - r))
            - 1 / 3 * _sqrt(-(b2 - 1) * (1 + (2 * p - 1) * r) * (r - p * r + b2 * (1 + r - 2 * p * r))),
        )
    elif tag in ("B_IC_II", "B_IIC_I"):
        branches = (1 / 3 * _sqrt((2 - 3 * b2 + b4) * (b2 + b4)),
                    1 / 3 * (-_sqrt(b2 - 2 * b**6 + b**8) + abs(b * _sqrt(1 - b2))))
    else:  # B_IIC_II
        branches = (-1 / 3 * _sqrt((b4 - 1) ** 2),
                    1 / 3 * (-_sqrt(2 * b2 - 3 * b4 + b**8) + abs(1 - b2)))
    return 2 * max(0.0, *branches)
