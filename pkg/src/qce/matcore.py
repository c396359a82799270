"""Validated matrix types and spectral primitives.

Everything downstream works with four value types built here:

- DensityMatrix: Hermitian, positive semidefinite, unit trace.
- Projector: Hermitian idempotent with integer rank (zero allowed).
- SpectralResolution: distinct eigenvalues paired with orthogonal
  eigenprojectors summing to the identity.
- IdentityResolution: the projector family alone, eigenvalues dropped.

Construction is where validation and cleanup happen: matrices are
symmetrized, eigenvalues in (-eps_psd, 0) are clamped to zero, and arrays are
frozen. Operations may then assume their inputs are well formed.

Eigenvalue clustering turns a raw descending spectrum into distinct levels.
Gaps at most cluster_tol/4 merge, gaps of at least cluster_tol separate, and
gaps strictly between signal an unstable grouping and raise ClusterAmbiguity
rather than silently committing to either reading.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    BadShape,
    ClusterAmbiguity,
    DimMismatch,
    NotHermitian,
    NotPSD,
    ValidationError,
)

# Dense square complex ndarray; the universal carrier type.
ComplexMatrix = np.ndarray


def as_complex_matrix(obj) -> np.ndarray:
    """Coerce to a square complex128 array, rejecting bad shapes and non-finite entries."""
    a = np.array(obj, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise BadShape(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise BadShape("matrix must be at least 1 x 1")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError("matrix has non-finite entries")
    return a


def max_abs(a) -> float:
    """Largest entry magnitude (entrywise max norm)."""
    return float(np.max(np.abs(a)))


def hermitize(a: np.ndarray) -> np.ndarray:
    """(A + A*)/2, the Hermitian part."""
    return 0.5 * (a + a.conj().T)


def commutator_residual(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise max norm of AB - BA."""
    return max_abs(a @ b - b @ a)


def _require_hermitian(a: np.ndarray, tol: Tolerances, what: str = "matrix") -> np.ndarray:
    if max_abs(a - a.conj().T) > tol.herm:
        raise NotHermitian(f"{what} deviates from Hermitian symmetry beyond {tol.herm:g}")
    return hermitize(a)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def eig_hermitian(
    a, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, v) with eigenvalues w in descending order and the matching
    orthonormal eigenvectors as columns of v. Raises NotHermitian when the
    input is not symmetric within tol.herm.
    """
    m = _require_hermitian(as_complex_matrix(a), tol)
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def trace_xlnx(a, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """tr(A ln A) for PSD A, with the 0 ln 0 = 0 convention.

    Eigenvalues in (-tol.psd, 0) are treated as zero; anything below -tol.psd
    raises NotPSD.
    """
    m = _require_hermitian(as_complex_matrix(a), tol)
    w = np.linalg.eigvalsh(m)
    if w[0] < -tol.psd:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{tol.psd:g}")
    pos = w[w > 0.0]
    return float(np.sum(pos * np.log(pos)))


class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    Eigenvalues in (-eps_psd, 0) are clamped to zero at construction; the
    stored array is frozen. dim is the ambient dimension.
    """

    def __init__(self, mat, tol: Tolerances = DEFAULT_TOLERANCES):
        a = _require_hermitian(as_complex_matrix(mat), tol, "density matrix")
        tr = float(np.trace(a).real)
        if abs(tr - 1.0) > tol.trace:
            raise ValidationError(f"trace {tr!r} is not 1 within {tol.trace:g}")
        w, v = np.linalg.eigh(a)
        if w[0] < -tol.psd:
            raise NotPSD(f"density matrix eigenvalue {w[0]:.3e} below -{tol.psd:g}")
        if w[0] < 0.0:
            w = np.clip(w, 0.0, None)
            a = hermitize((v * w) @ v.conj().T)
        self.mat = _freeze(a)
        self.dim = a.shape[0]

    @classmethod
    def diagonal(cls, values, tol: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        """State with the given diagonal in the coordinate basis."""
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise BadShape("diagonal expects a nonempty 1-D sequence")
        return cls(np.diag(vals.astype(np.complex128)), tol)

    @classmethod
    def pure(cls, vector, tol: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        """Rank-one state from a (not necessarily normalized) vector."""
        v = np.asarray(vector, dtype=np.complex128).reshape(-1)
        if v.size == 0:
            raise BadShape("pure state vector must be nonempty")
        nrm = float(np.linalg.norm(v))
        if nrm == 0.0:
            raise ValidationError("pure state vector must be nonzero")
        v = v / nrm
        return cls(np.outer(v, v.conj()), tol)

    @classmethod
    def maximally_mixed(cls, dim: int, tol: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        if dim < 1:
            raise BadShape("dimension must be positive")
        return cls(np.eye(dim, dtype=np.complex128) / dim, tol)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class Projector:
    """Hermitian idempotent matrix with integer rank; the zero projector is allowed."""

    def __init__(self, mat, tol: Tolerances = DEFAULT_TOLERANCES, *, basis: np.ndarray | None = None):
        a = _require_hermitian(as_complex_matrix(mat), tol, "projector")
        if max_abs(a @ a - a) > tol.idem:
            raise ValidationError(f"matrix is not idempotent within {tol.idem:g}")
        tr = float(np.trace(a).real)
        rank = int(round(tr))
        if abs(tr - rank) > max(tol.trace, a.shape[0] * tol.idem):
            raise ValidationError(f"projector trace {tr!r} is not near an integer")
        if rank < 0 or rank > a.shape[0]:
            raise ValidationError(f"projector rank {rank} outside [0, {a.shape[0]}]")
        self.mat = _freeze(a)
        self.dim = a.shape[0]
        self.rank = rank
        self._basis = None
        if basis is not None:
            b = np.array(basis, dtype=np.complex128, copy=True)
            self._basis = _freeze(b)

    @classmethod
    def from_basis(cls, basis, tol: Tolerances = DEFAULT_TOLERANCES) -> "Projector":
        """Projector onto the span of orthonormal columns.

        basis has shape (dim, r); columns must be orthonormal within tol.orth.
        """
        b = np.asarray(basis, dtype=np.complex128)
        if b.ndim != 2:
            raise BadShape(f"basis must be 2-D, got shape {b.shape}")
        dim, r = b.shape
        if r > dim:
            raise BadShape(f"basis has more columns ({r}) than rows ({dim})")
        if r > 0 and max_abs(b.conj().T @ b - np.eye(r)) > tol.orth:
            raise ValidationError(f"basis columns are not orthonormal within {tol.orth:g}")
        mat = b @ b.conj().T if r > 0 else np.zeros((dim, dim), dtype=np.complex128)
        return cls(hermitize(mat), tol, basis=b)

    @classmethod
    def zero(cls, dim: int, tol: Tolerances = DEFAULT_TOLERANCES) -> "Projector":
        return cls.from_basis(np.zeros((dim, 0), dtype=np.complex128), tol)

    @classmethod
    def identity(cls, dim: int, tol: Tolerances = DEFAULT_TOLERANCES) -> "Projector":
        return cls.from_basis(np.eye(dim, dtype=np.complex128), tol)

    @classmethod
    def coordinate(cls, dim: int, indices, tol: Tolerances = DEFAULT_TOLERANCES) -> "Projector":
        """Projector onto the span of the given coordinate axes."""
        idx = sorted(set(int(i) for i in indices))
        if any(i < 0 or i >= dim for i in idx):
            raise BadShape(f"coordinate indices {idx} outside range(0, {dim})")
        b = np.zeros((dim, len(idx)), dtype=np.complex128)
        for col, i in enumerate(idx):
            b[i, col] = 1.0
        return cls.from_basis(b, tol)

    def range_basis(self) -> np.ndarray:
        """Orthonormal basis of the range, shape (dim, rank). Cached."""
        if self._basis is None or self._basis.shape[1] != self.rank:
            w, v = np.linalg.eigh(self.mat)
            cols = v[:, w > 0.5]
            self._basis = _freeze(np.ascontiguousarray(cols))
        return self._basis

    def __repr__(self) -> str:
        return f"Projector(dim={self.dim}, rank={self.rank})"


class IdentityResolution:
    """Family of pairwise-orthogonal nonzero projectors summing to the identity."""

    def __init__(self, projectors, tol: Tolerances = DEFAULT_TOLERANCES):
        projs = tuple(projectors)
        if not projs:
            raise ValidationError("resolution needs at least one projector")
        if not all(isinstance(p, Projector) for p in projs):
            raise TypeError("resolution blocks must be Projector instances")
        dim = projs[0].dim
        if any(p.dim != dim for p in projs):
            raise DimMismatch("resolution blocks live in different dimensions")
        if any(p.rank == 0 for p in projs):
            raise ValidationError("resolution blocks must be nonzero")
        for i in range(len(projs)):
            for j in range(i + 1, len(projs)):
                if max_abs(projs[i].mat @ projs[j].mat) > tol.orth:
                    raise ValidationError(f"blocks {i} and {j} are not orthogonal")
        total = sum(p.mat for p in projs)
        if max_abs(total - np.eye(dim)) > tol.orth:
            raise ValidationError("blocks do not sum to the identity")
        self.projectors = projs
        self.dim = dim

    @classmethod
    def coordinate(
        cls, dim: int, sizes, tol: Tolerances = DEFAULT_TOLERANCES
    ) -> "IdentityResolution":
        """Consecutive coordinate blocks of the given sizes."""
        sizes = [int(s) for s in sizes]
        if sum(sizes) != dim or any(s < 1 for s in sizes):
            raise BadShape(f"block sizes {sizes} do not partition dimension {dim}")
        blocks, start = [], 0
        for s in sizes:
            blocks.append(Projector.coordinate(dim, range(start, start + s), tol))
            start += s
        return cls(blocks, tol)

    def ranks(self) -> tuple[int, ...]:
        return tuple(p.rank for p in self.projectors)

    def __len__(self) -> int:
        return len(self.projectors)

    def __repr__(self) -> str:
        return f"IdentityResolution(dim={self.dim}, ranks={self.ranks()})"


class SpectralResolution:
    """Distinct eigenvalues with their eigenprojectors, descending.

    Invariants: strictly descending values with consecutive gaps above the
    clustering scale, pairwise-orthogonal projectors summing to the identity.
    When density=True the values must lie in [0, 1] and satisfy
    sum(rank_i * value_i) = 1 within tol.trace.
    """

    def __init__(
        self,
        eigenvalues,
        projectors,
        tol: Tolerances = DEFAULT_TOLERANCES,
        *,
        cluster_tol: float | None = None,
        density: bool = False,
    ):
        ctol = tol.cluster if cluster_tol is None else float(cluster_tol)
        vals = tuple(float(x) for x in eigenvalues)
        blocks = IdentityResolution(projectors, tol)
        if len(vals) != len(blocks.projectors):
            raise ValidationError("eigenvalue and projector counts differ")
        for k in range(len(vals) - 1):
            gap = vals[k] - vals[k + 1]
            if gap <= ctol:
                raise ValidationError(
                    f"eigenvalues are not descending with gaps above {ctol:g}"
                )
        if density:
            if vals[-1] < 0.0 or vals[0] > 1.0:
                raise ValidationError("density eigenvalues must lie in [0, 1]")
            mass = sum(v * p.rank for v, p in zip(vals, blocks.projectors))
            if abs(mass - 1.0) > tol.trace:
                raise ValidationError(f"eigenvalue mass {mass!r} is not 1")
        self.eigenvalues = vals
        self.projectors = blocks.projectors
        self.dim = blocks.dim
        self.is_density = density

    def blocks(self) -> IdentityResolution:
        """Forget the eigenvalues, keep the projector family."""
        return IdentityResolution(self.projectors)

    def ranks(self) -> tuple[int, ...]:
        return tuple(p.rank for p in self.projectors)

    def reconstruct(self) -> np.ndarray:
        """Sum of value * projector."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for v, p in zip(self.eigenvalues, self.projectors):
            out += v * p.mat
        return out

    def __len__(self) -> int:
        return len(self.projectors)

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{v:.6g}x{p.rank}" for v, p in zip(self.eigenvalues, self.projectors)
        )
        return f"SpectralResolution(dim={self.dim}, [{pairs}])"


def _cluster_slices(w_desc: np.ndarray, ctol: float) -> list[slice]:
    """Group a descending spectrum into clusters, refusing the ambiguous band."""
    bounds = [0]
    for k in range(len(w_desc) - 1):
        gap = float(w_desc[k] - w_desc[k + 1])
        if gap >= ctol:
            bounds.append(k + 1)
        elif gap > ctol / 4.0:
            raise ClusterAmbiguity(
                f"eigenvalue gap {gap:.3e} falls in the unstable band "
                f"({ctol / 4.0:.3e}, {ctol:.3e})"
            )
    bounds.append(len(w_desc))
    return [slice(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]


def spectral_resolution(
    rho,
    cluster_tol: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SpectralResolution:
    """Canonical spectral resolution of a density matrix (or Hermitian matrix).

    Eigenvalues are clustered at the cluster_tol scale (default tol.cluster);
    each cluster becomes one eigenprojector built from its eigenvectors, with
    the cluster's mean eigenvalue as the level. Raises ClusterAmbiguity when a
    gap falls strictly between cluster_tol/4 and cluster_tol, or when merging
    leaves two adjacent levels closer than cluster_tol.
    """
    ctol = tol.cluster if cluster_tol is None else float(cluster_tol)
    if ctol <= 0.0:
        raise ValidationError("cluster tolerance must be positive")
    density = isinstance(rho, DensityMatrix)
    mat = rho.mat if density else _require_hermitian(as_complex_matrix(rho), tol)
    w, v = eig_hermitian(mat, tol)
    slices = _cluster_slices(w, ctol)
    values, projs = [], []
    for s in slices:
        val = float(np.mean(w[s]))
        if density:
            val = min(max(val, 0.0), 1.0)
        values.append(val)
        projs.append(Projector.from_basis(np.ascontiguousarray(v[:, s]), tol))
    for k in range(len(values) - 1):
        if values[k] - values[k + 1] <= ctol:
            raise ClusterAmbiguity(
                "clustered levels collapsed within the clustering scale; "
                "no stable grouping at this tolerance"
            )
    return SpectralResolution(
        values, projs, tol, cluster_tol=ctol, density=density
    )


def support_projector(a, tol: Tolerances = DEFAULT_TOLERANCES) -> Projector:
    """Projector onto the span of eigenvectors with eigenvalue above tol.support.

    The input must be PSD within tol.psd.
    """
    mat = a.mat if isinstance(a, DensityMatrix) else _require_hermitian(as_complex_matrix(a), tol)
    w, v = np.linalg.eigh(mat)
    if w[0] < -tol.psd:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{tol.psd:g}")
    cols = v[:, w > tol.support]
    return Projector.from_basis(np.ascontiguousarray(cols), tol)


def compress(rho, q: Projector, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Two-sided compression Q A Q, symmetrized."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else as_complex_matrix(rho)
    if not isinstance(q, Projector):
        raise TypeError("compress expects a Projector")
    if mat.shape[0] != q.dim:
        raise DimMismatch(f"operand dim {mat.shape[0]} != projector dim {q.dim}")
    return hermitize(q.mat @ mat @ q.mat)
