"""Dense complex linear algebra used by the fingerprinting model.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Bipartite pure
states on C^n (x) C^n are stored as their n x n amplitude matrix, so that
``amplitudes[i, j]`` is the coefficient of |i>_A |j>_B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NormalizationError

SCHMIDT_TOLERANCE = 1e-10
NORM_TOLERANCE = 1e-10


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionError("matrix has non-finite entries")
    return m


@dataclass(frozen=True)
class BipartiteState:
    """Pure state of two n-level systems, as an amplitude matrix."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = as_matrix(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim_a(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def dim_b(self) -> int:
        return self.amplitudes.shape[1]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOLERANCE) -> bool:
        return abs(np.sum(np.abs(self.amplitudes) ** 2) - 1.0) <= tol

    def vector(self) -> np.ndarray:
        """Amplitudes flattened in the |i>|j> -> i*dim_b + j order used by :func:`kron`."""
        return self.amplitudes.reshape(-1)

    @classmethod
    def from_vector(cls, vec, dim_a: int, dim_b: int | None = None) -> "BipartiteState":
        dim_b = dim_a if dim_b is None else dim_b
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.size != dim_a * dim_b:
            raise DimensionError(f"vector of length {vec.size} is not {dim_a}x{dim_b}")
        return cls(vec.reshape(dim_a, dim_b))


@dataclass(frozen=True)
class SchmidtForm:
    """Schmidt coefficients and completed local bases of a bipartite state.

    ``base_a[:, k]`` and ``base_b[:, k]`` are the k-th local basis vectors;
    only the first ``schmidt_number`` columns carry weight.
    """

    coefficients: np.ndarray
    base_a: np.ndarray
    base_b: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.coefficients, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "coefficients", lam)
        object.__setattr__(self, "base_a", as_matrix(self.base_a))
        object.__setattr__(self, "base_b", as_matrix(self.base_b))
        n = self.base_a.shape[0]
        if self.base_a.shape != (n, n) or self.base_b.shape != (n, n):
            raise DimensionError("local bases must be square and of equal size")
        if not 1 <= lam.size <= n:
            raise DimensionError(f"Schmidt number {lam.size} outside [1, {n}]")
        if np.any(lam <= 0) or np.any(np.diff(lam) > 0):
            raise DimensionError("Schmidt coefficients must be positive and descending")
        if abs(np.sum(lam**2) - 1.0) > NORM_TOLERANCE:
            raise NormalizationError("Schmidt coefficients are not normalized")

    @property
    def schmidt_number(self) -> int:
        return self.coefficients.size

    @property
    def ambient_dim(self) -> int:
        return self.base_a.shape[0]


def trace_inner_product(a, b) -> complex:
    """Hilbert-Schmidt inner product tr(A^dagger B)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"need equal square shapes, got {a.shape} and {b.shape}")
    # tr(A^dagger B) = sum_ij conj(A_ij) B_ij
    return complex(np.vdot(a, b))


def kron(a, b) -> np.ndarray:
    """Tensor product with row index i*rows_b + k and column index j*cols_b + l."""
    return np.kron(as_matrix(a), as_matrix(b))


def is_unitary(m, tol: float = 1e-10) -> bool:
    """True iff every entry of M^dagger M - I is at most ``tol`` in modulus."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"unitarity needs a square matrix, got {m.shape}")
    dev = m.conj().T @ m - np.eye(m.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def haar_random_unitary(n: int, seed: int | np.random.Generator) -> np.ndarray:
    """Sample an n x n unitary from the Haar measure.

    QR of a complex Ginibre matrix, with each column rescaled by the phase of
    the matching diagonal entry of R so the result is Haar distributed.
    ``seed`` may be an int or an existing ``numpy`` Generator.
    """
    if n < 1:
        raise DimensionError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _fix_phases(base_a: np.ndarray, base_b: np.ndarray):
    # largest-modulus entry of each column of base_a made real nonnegative;
    # base_b absorbs the conjugate phase so products are unchanged
    idx = np.argmax(np.abs(base_a), axis=0)
    pivots = base_a[idx, np.arange(base_a.shape[1])]
    phase = np.ones_like(pivots)
    nz = np.abs(pivots) > 0
    phase[nz] = pivots[nz] / np.abs(pivots[nz])
    return base_a * phase.conj(), base_b * phase


def schmidt_decompose(state, schmidt_tolerance: float = SCHMIDT_TOLERANCE) -> SchmidtForm:
    """Schmidt decomposition via the SVD of the amplitude matrix."""
    if not isinstance(state, BipartiteState):
        state = BipartiteState(state)
    if state.dim_a != state.dim_b:
        raise DimensionError("both subsystems must have the same dimension")
    if not state.is_normalized():
        raise NormalizationError(f"state has norm {state.norm!r}")
    u, s, vh = np.linalg.svd(state.amplitudes)
    ns = max(int(np.sum(s > schmidt_tolerance)), 1)
    base_a, base_b = _fix_phases(u, vh.T)
    lam = s[:ns] / np.linalg.norm(s[:ns])
    return SchmidtForm(lam, base_a, base_b)


def reconstruct(form: SchmidtForm) -> BipartiteState:
    """Inverse of :func:`schmidt_decompose`: sum_k lambda_k |a_k>|b_k>."""
    ns = form.schmidt_number
    amps = (form.base_a[:, :ns] * form.coefficients) @ form.base_b[:, :ns].T
    return BipartiteState(amps)
