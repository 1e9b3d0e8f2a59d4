"""The shared-entanglement fingerprinting scheme and its error analysis.

Alice and Bob share sum_k lambda_k |k>_A |k>_B in the computational basis.
On inputs x and y they apply U_x and V_y locally; Roger projects onto
|alpha> and announces equality on that outcome. With A the amplitude
matrix of |alpha> and K = diag(lambda, 0, ..., 0), the acceptance
probability collapses to |tr(A^dagger U_x K V_y^T)|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NoUnitarySolutionError, NormalizationError, RankError, ValidationError
from .tensor_core import BipartiteState, as_matrix, is_unitary, kron, trace_inner_product

VALIDATION_TOLERANCE = 1e-9
UNITARY_TOLERANCE = 1e-10


def _coefficients(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=np.float64).reshape(-1)
    if lam.size == 0:
        raise DimensionError("empty Schmidt coefficient list")
    if abs(np.sum(lam**2) - 1.0) > 1e-10:
        raise NormalizationError(f"sum of squared coefficients is {np.sum(lam**2)!r}")
    return lam


def build_K(lam, n: int) -> np.ndarray:
    """diag(lambda_1, ..., lambda_Ns, 0, ..., 0) as an n x n matrix."""
    lam = _coefficients(lam)
    if lam.size > n:
        raise DimensionError(f"{lam.size} coefficients do not fit in dimension {n}")
    k = np.zeros((n, n), dtype=np.complex128)
    k[np.arange(lam.size), np.arange(lam.size)] = lam
    return k


def build_J(lam, n: int) -> np.ndarray:
    """diag(sqrt(lambda_1), ..., sqrt(lambda_Ns), 0, ..., 0)."""
    lam = _coefficients(lam)
    if lam.size > n:
        raise DimensionError(f"{lam.size} coefficients do not fit in dimension {n}")
    return np.diag(np.concatenate([np.sqrt(lam), np.zeros(n - lam.size)])).astype(np.complex128)


def _unitary_stack(ops, n: int, name: str) -> np.ndarray:
    arr = np.asarray(ops, dtype=np.complex128)
    if arr.ndim != 3 or arr.shape[1:] != (n, n):
        raise DimensionError(f"{name} must be a list of {n}x{n} matrices, got shape {arr.shape}")
    for idx, u in enumerate(arr):
        if not is_unitary(u, UNITARY_TOLERANCE):
            raise DimensionError(f"{name}[{idx}] is not unitary")
    return arr


@dataclass(frozen=True)
class FingerprintScheme:
    """A complete protocol instance.

    ``alpha`` is Roger's projector state, given as its n x n amplitude
    matrix A (or a :class:`BipartiteState`). Messages are the indices
    ``0 .. m-1``.
    """

    lam: np.ndarray
    alice_ops: np.ndarray
    bob_ops: np.ndarray
    alpha: np.ndarray
    label: str = ""

    def __post_init__(self):
        lam = _coefficients(self.lam)
        alpha = self.alpha.amplitudes if isinstance(self.alpha, BipartiteState) else as_matrix(self.alpha)
        n = alpha.shape[0]
        if alpha.shape != (n, n):
            raise DimensionError(f"alpha must be {n}x{n}, got {alpha.shape}")
        if abs(np.sum(np.abs(alpha) ** 2) - 1.0) > 1e-10:
            raise NormalizationError("alpha is not normalized")
        if lam.size > n:
            raise DimensionError(f"Schmidt number {lam.size} exceeds dimension {n}")
        alice = _unitary_stack(self.alice_ops, n, "alice_ops")
        bob = _unitary_stack(self.bob_ops, n, "bob_ops")
        if alice.shape[0] != bob.shape[0]:
            raise DimensionError("alice_ops and bob_ops differ in length")
        if alice.shape[0] < 2:
            raise DimensionError("a scheme needs at least two messages")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "alice_ops", alice)
        object.__setattr__(self, "bob_ops", bob)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    @property
    def m(self) -> int:
        return self.alice_ops.shape[0]

    @property
    def schmidt_number(self) -> int:
        return self.lam.size

    @property
    def K(self) -> np.ndarray:
        return build_K(self.lam, self.n)

    def S(self, x: int, y: int) -> np.ndarray:
        """U_x K V_y^T."""
        return self.alice_ops[x] @ self.K @ self.bob_ops[y].T

    def entangled_state(self) -> BipartiteState:
        amps = np.zeros((self.n, self.n), dtype=np.complex128)
        amps[np.arange(self.schmidt_number), np.arange(self.schmidt_number)] = self.lam
        return BipartiteState(amps)

    def _check_index(self, x: int, y: int):
        for v in (x, y):
            if not 0 <= v < self.m:
                raise IndexError(f"message index {v} outside 0..{self.m - 1}")


@dataclass
class ValidationReport:
    is_valid: bool
    max_diagonal_deviation: float
    max_constancy_deviation: float
    offending_message: int | None = None


@dataclass
class WorstCaseReport:
    p_wce: float
    argmax_pair: tuple[int, int]
    overlap_matrix: np.ndarray = field(repr=False)


def acceptance_probability_direct(scheme: FingerprintScheme, x: int, y: int) -> float:
    """Simulate the protocol on the full n^2-dimensional state."""
    scheme._check_index(x, y)
    psi = kron(scheme.alice_ops[x], scheme.bob_ops[y]) @ scheme.entangled_state().vector()
    amp = np.vdot(scheme.alpha.reshape(-1), psi)
    return float(abs(amp) ** 2)


def acceptance_probability_reduced(scheme: FingerprintScheme, x: int, y: int) -> float:
    """|tr(A^dagger U_x K V_y^T)|^2."""
    scheme._check_index(x, y)
    return float(abs(trace_inner_product(scheme.alpha, scheme.S(x, y))) ** 2)


def acceptance_probability_bob_form(scheme: FingerprintScheme, x: int, y: int) -> float:
    """|tr(V_y K K^dagger V_x^dagger)|^2, equal to the reduced form on valid schemes."""
    scheme._check_index(x, y)
    k = scheme.K
    vx, vy = scheme.bob_ops[x], scheme.bob_ops[y]
    return float(abs(np.trace(vy @ k @ k.conj().T @ vx.conj().T)) ** 2)


def overlap_matrix(scheme: FingerprintScheme, method: str = "reduced") -> np.ndarray:
    """m x m matrix of acceptance probabilities q[x, y]."""
    fn = {
        "reduced": acceptance_probability_reduced,
        "direct": acceptance_probability_direct,
        "bob": acceptance_probability_bob_form,
    }[method]
    m = scheme.m
    return np.array([[fn(scheme, x, y) for y in range(m)] for x in range(m)])


def derive_measurement(alice_ops, bob_ops, lam, reference: int = 0) -> BipartiteState:
    """Roger's state with amplitude matrix U_ref K V_ref^T (global phase zero)."""
    u = as_matrix(alice_ops[reference])
    v = as_matrix(bob_ops[reference])
    amps = u @ build_K(lam, u.shape[0]) @ v.T
    return BipartiteState(amps)


def derive_bob_from_alice(u, lam, alpha_matrix, tol: float = 1e-8) -> np.ndarray:
    """Solve U K V^T = A for V when K is invertible."""
    u = as_matrix(u)
    a = alpha_matrix.amplitudes if isinstance(alpha_matrix, BipartiteState) else as_matrix(alpha_matrix)
    n = u.shape[0]
    lam = _coefficients(lam)
    if lam.size < n:
        raise RankError(f"K has rank {lam.size} < {n}; Bob's operator is not determined")
    k_inv = np.diag(1.0 / lam).astype(np.complex128)
    v = (k_inv @ u.conj().T @ a).T
    if not is_unitary(v, tol):
        raise NoUnitarySolutionError("no unitary V satisfies U K V^T = A for this data")
    return v


def validate_one_sided(scheme: FingerprintScheme, tol: float = VALIDATION_TOLERANCE) -> ValidationReport:
    """Check that U_x K V_x^T agrees across x up to phase and that q(x, x) = 1."""
    s0 = scheme.S(0, 0)
    diag_dev = np.empty(scheme.m)
    const_dev = np.empty(scheme.m)
    for x in range(scheme.m):
        sx = scheme.S(x, x)
        const_dev[x] = 1.0 - abs(trace_inner_product(s0, sx))
        diag_dev[x] = abs(acceptance_probability_reduced(scheme, x, x) - 1.0)
    bad = np.flatnonzero((diag_dev > tol) | (const_dev > tol))
    return ValidationReport(
        is_valid=bad.size == 0,
        max_diagonal_deviation=float(diag_dev.max()),
        max_constancy_deviation=float(max(const_dev.max(), 0.0)),
        offending_message=int(bad[0]) if bad.size else None,
    )


def require_valid(scheme: FingerprintScheme, tol: float = VALIDATION_TOLERANCE) -> ValidationReport:
    report = validate_one_sided(scheme, tol)
    if not report.is_valid:
        raise ValidationError(
            f"scheme is not one-sided at tol={tol:g} (message {report.offending_message}, "
            f"diagonal {report.max_diagonal_deviation:.3g}, constancy {report.max_constancy_deviation:.3g})"
        )
    return report


def worst_case_error(scheme: FingerprintScheme, tol: float = VALIDATION_TOLERANCE) -> WorstCaseReport:
    """Largest off-diagonal acceptance probability; ties go to the smallest (x, y)."""
    require_valid(scheme, tol)
    q = overlap_matrix(scheme)
    best, pair = -1.0, (0, 1)
    for x in range(scheme.m):
        for y in range(scheme.m):
            if x != y and q[x, y] > best:
                best, pair = q[x, y], (x, y)
    return WorstCaseReport(p_wce=float(best), argmax_pair=pair, overlap_matrix=q)


def _subspace_gap(q0: np.ndarray, q1: np.ndarray) -> float:
    # sine of the largest principal angle between two orthonormal column sets
    resid = q1 - q0 @ (q0.conj().T @ q1)
    return float(np.linalg.norm(resid, 2))


def column_space_invariance(scheme: FingerprintScheme, tol: float = 1e-7) -> bool:
    """Whether the first N_s columns of every U_x (and every V_x) span one subspace."""
    require_valid(scheme)
    ns = scheme.schmidt_number
    for ops in (scheme.alice_ops, scheme.bob_ops):
        cols = ops[:, :, :ns]
        for x in range(len(cols)):
            for y in range(x + 1, len(cols)):
                if _subspace_gap(cols[x], cols[y]) > tol:
                    return False
    return True
