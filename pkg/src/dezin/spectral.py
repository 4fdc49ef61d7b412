"""Finite Dirichlet truncations of the magnetic Schrodinger operator.

The truncation restricts the operator to the box |k|, |s| <= N with zero
extension outside, i.e. it is the principal submatrix of the infinite
operator matrix indexed by the box.  That keeps the matrix Hermitian and
gives eigenvalue interlacing as N grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .forms import Cochain
from .magnetic import ElectricPotential, MagneticPotential, schrodinger_apply

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix of the operator on the box |k|, |s| <= N.

    Row-major index convention: index(k, s) = (k+N)*(2N+1) + (s+N).
    """

    matrix: np.ndarray
    N: int

    @property
    def dim(self) -> int:
        return (2 * self.N + 1) ** 2

    def index(self, k: int, s: int) -> int:
        n = self.N
        if abs(k) > n or abs(s) > n:
            raise ValueError(f"({k}, {s}) outside the size-{n} box")
        return (k + n) * (2 * n + 1) + (s + n)

    def site(self, idx: int) -> tuple[int, int]:
        n = self.N
        side = 2 * n + 1
        return idx // side - n, idx % side - n

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())

    def vector_to_form(self, vec: np.ndarray) -> Cochain:
        """Zero-extend a coordinate vector to a 0-form on the lattice."""
        entries = {}
        for idx, val in enumerate(vec):
            if val != 0:
                entries[self.site(idx)] = complex(val)
        return Cochain(0, entries)

    def form_to_vector(self, phi: Cochain) -> np.ndarray:
        """Restrict a 0-form to the box as a coordinate vector."""
        vec = np.zeros(self.dim, dtype=complex)
        n = self.N
        for (k, s), val in phi.entries.items():
            if abs(k) <= n and abs(s) <= n:
                vec[self.index(k, s)] = val
        return vec


def assemble(A: MagneticPotential, V: ElectricPotential, N: int) -> HermitianOperator:
    """Matrix of the Schrodinger operator on the size-N box, Dirichlet convention.

    Column j holds the operator applied to the j-th basis vertex form,
    restricted back to the box.
    """
    if N < 0:
        raise ValueError("box size must be nonnegative")
    side = 2 * N + 1
    dim = side * side
    mat = np.zeros((dim, dim), dtype=complex)
    op = HermitianOperator(mat, N)
    for k in range(-N, N + 1):
        for s in range(-N, N + 1):
            out = schrodinger_apply(Cochain.basis(0, k, s), A, V)
            j = op.index(k, s)
            for (p, q), val in out.entries.items():
                if abs(p) <= N and abs(q) <= N:
                    mat[op.index(p, q), j] = val
    mat.flags.writeable = False
    return op


def lowest_eigenvalues(op: HermitianOperator, count: int) -> list[float]:
    """The ``count`` smallest eigenvalues, ascending (dense Hermitian solve)."""
    if not 1 <= count <= op.dim:
        raise ValueError(f"count must be in 1..{op.dim}, got {count}")
    defect = op.hermiticity_defect()
    if defect > HERMITICITY_TOL * max(1.0, float(np.abs(op.matrix).max())):
        raise ValueError(f"matrix is not Hermitian (defect {defect:g})")
    vals = scipy.linalg.eigh(op.matrix, eigvals_only=True,
                             subset_by_index=(0, count - 1))
    return [float(v) for v in vals]


def semibound_estimate(A: MagneticPotential, V: ElectricPotential,
                       N_max: int) -> float:
    """Minimum ground eigenvalue over box sizes 1..N_max.

    By interlacing this is non-increasing in N_max, and it upper-bounds
    the best lower-bound constant of the quadratic form at every tested
    scale.
    """
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    return min(lowest_eigenvalues(assemble(A, V, n), 1)[0]
               for n in range(1, N_max + 1))


@dataclass(frozen=True)
class KernelScaleResult:
    N: int
    lambda_min: float
    positive: bool


@dataclass(frozen=True)
class KernelReport:
    """Per-scale ground eigenvalues under the strict-positivity normalization.

    ``trivial_at_all_scales`` holds when every tested truncation has
    lambda_min >= 1 - margin, so the truncated kernel is trivial at every
    tested scale.  Scales where the normalization fails are listed in
    ``flagged`` -- a finding, not an error.
    """

    margin: float
    scales: tuple[KernelScaleResult, ...]
    flagged: tuple[int, ...] = field(default=())

    @property
    def trivial_at_all_scales(self) -> bool:
        return not self.flagged


def kernel_triviality(A: MagneticPotential, V: ElectricPotential,
                      N_max: int, margin: float = 1e-12) -> KernelReport:
    """Check lambda_min >= 1 - margin on every box size up to N_max."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    scales = []
    flagged = []
    for n in range(1, N_max + 1):
        lam = lowest_eigenvalues(assemble(A, V, n), 1)[0]
        ok = lam >= 1.0 - margin
        scales.append(KernelScaleResult(n, lam, ok))
        if not ok:
            flagged.append(n)
    return KernelReport(margin, tuple(scales), tuple(flagged))


def dump_matrix(op: HermitianOperator, fh) -> None:
    """Write the matrix as text coordinate triplets with a header line."""
    fh.write(f"% hermitian dim={op.dim} N={op.N}\n")
    rows, cols = np.nonzero(op.matrix)
    for r, c in zip(rows.tolist(), cols.tolist()):
        val = complex(op.matrix[r, c])
        fh.write(f"{r} {c} {val.real!r} {val.imag!r}\n")
