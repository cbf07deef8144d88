"""Small dense linear-algebra kernel for qubit density matrices.

Matrices are plain ``numpy`` complex arrays. Subsystem index 0 is the
leftmost register label and the most significant bit of the basis index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

TRACE_TOL = 1e-10
TRACE_IMAG_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
EIGH_HERMITIAN_TOL = 1e-10


class ContractError(ValueError):
    """A matrix violates a numerical contract (trace, Hermiticity, PSD)."""


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix on a register of qubits.

    ``dims`` lists the subsystem dimensions in register order; their
    product must equal the matrix dimension.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        check_density(m, self.dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return len(self.dims)

    @classmethod
    def from_pure(cls, psi, dims=None) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex).ravel()
        if dims is None:
            dims = (2,) * int(round(np.log2(psi.size)))
        return cls(np.outer(psi, psi.conj()), dims)

    @classmethod
    def qubits(cls, matrix) -> "DensityMatrix":
        """Wrap a ``2**n`` square matrix as an n-qubit density matrix."""
        matrix = np.asarray(matrix)
        n = int(round(np.log2(matrix.shape[0])))
        return cls(matrix, (2,) * n)


def check_density(m: np.ndarray, dims: Sequence[int]) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"density matrix must be square, got shape {m.shape}")
    if int(np.prod(dims)) != m.shape[0]:
        raise ContractError(f"dims {tuple(dims)} do not multiply to {m.shape[0]}")
    tr = np.trace(m)
    if abs(tr.real - 1.0) > TRACE_TOL or abs(tr.imag) > TRACE_IMAG_TOL:
        raise ContractError(f"trace {tr} is not 1")
    herm = np.max(np.abs(m - m.conj().T))
    if herm > HERMITIAN_TOL:
        raise ContractError(f"not Hermitian (max deviation {herm:.3e})")
    lo = np.linalg.eigvalsh(m)[0]
    if lo < -PSD_TOL:
        raise ContractError(f"not positive semidefinite (min eigenvalue {lo:.3e})")


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*mats) -> np.ndarray:
    out = np.eye(1)
    for m in mats:
        out = np.kron(out, m)
    return out


def _check_indices(idx: Sequence[int], n: int) -> list[int]:
    idx = [int(i) for i in idx]
    for i in idx:
        if not 0 <= i < n:
            raise ValueError(f"subsystem index {i} out of range for {n} subsystems")
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated subsystem index in {idx}")
    return idx


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every subsystem not in ``keep``.

    The kept subsystems appear in the order given by ``keep``, so
    ``keep=(0, 2, 1)`` also permutes the surviving factors.
    """
    keep = _check_indices(keep, rho.n)
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    n = rho.n
    t = rho.matrix.reshape(rho.dims + rho.dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out = [i for i in keep] + [i + n for i in keep]
    reduced = np.einsum(t, row + col, out)
    d = int(np.prod([rho.dims[i] for i in keep]))
    return DensityMatrix(reduced.reshape(d, d), tuple(rho.dims[i] for i in keep))


def partial_transpose(rho, subsystem: int, dims: Sequence[int] | None = None) -> np.ndarray:
    """Transpose the indices of one subsystem. Accepts a DensityMatrix or array + dims."""
    if isinstance(rho, DensityMatrix):
        m, dims = rho.matrix, rho.dims
    else:
        m = np.asarray(rho)
        if dims is None:
            dims = (2,) * int(round(np.log2(m.shape[0])))
    n = len(dims)
    (subsystem,) = _check_indices([subsystem], n)
    t = m.reshape(tuple(dims) + tuple(dims))
    axes = list(range(2 * n))
    axes[subsystem], axes[subsystem + n] = axes[subsystem + n], axes[subsystem]
    return t.transpose(axes).reshape(m.shape)


def trace_norm(m) -> float:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("trace_norm needs a square matrix")
    if np.allclose(m, m.conj().T, rtol=0, atol=1e-14):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    m = np.asarray(m)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > EIGH_HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(m)
