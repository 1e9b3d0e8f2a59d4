"""Reference unitary families and scheme builders."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, UnsupportedConfigurationError
from .protocol import FingerprintScheme, _coefficients, derive_measurement, require_valid
from .tensor_core import haar_random_unitary, is_unitary


@dataclass(frozen=True)
class UnitaryFamily:
    """Ordered list of n x n unitaries, stored as an (m, n, n) array."""

    members: np.ndarray
    label: str = ""

    def __post_init__(self):
        arr = np.asarray(self.members, dtype=np.complex128)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise DimensionError(f"members must be square matrices, got shape {arr.shape}")
        for idx, u in enumerate(arr):
            if not is_unitary(u, 1e-10):
                raise DimensionError(f"member {idx} is not unitary")
        object.__setattr__(self, "members", arr)

    @property
    def n(self) -> int:
        return self.members.shape[1]

    def __len__(self) -> int:
        return self.members.shape[0]

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, idx):
        return self.members[idx]


def shift_operator(d: int) -> np.ndarray:
    """Cyclic shift X|k> = |k+1 mod d>."""
    return np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)


def clock_operator(d: int) -> np.ndarray:
    """Z = diag(omega^k) with omega = exp(2 pi i / d)."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def weyl_heisenberg_family(d: int, m: int | None = None) -> UnitaryFamily:
    """The first m products X^a Z^b, (a, b) in row-major order."""
    if d < 1:
        raise DimensionError("dimension must be at least 1")
    m = d * d if m is None else m
    if not 1 <= m <= d * d:
        raise DimensionError(f"m={m} outside [1, {d * d}] for d={d}")
    x, z = shift_operator(d), clock_operator(d)
    members = []
    for a in range(d):
        xa = np.linalg.matrix_power(x, a)
        for b in range(d):
            if len(members) == m:
                break
            members.append(xa @ np.linalg.matrix_power(z, b))
    return UnitaryFamily(np.array(members), label=f"weyl-heisenberg d={d}")


def haar_family(n: int, m: int, seed) -> UnitaryFamily:
    """m independent Haar unitaries drawn from one seeded stream."""
    rng = np.random.default_rng(seed)
    return UnitaryFamily(np.array([haar_random_unitary(n, rng) for _ in range(m)]), label="haar")


def maximally_entangled_lambda(n: int) -> np.ndarray:
    if n < 1:
        raise DimensionError("dimension must be at least 1")
    return np.full(n, 1.0 / np.sqrt(n))


def _is_uniform(lam: np.ndarray, n: int) -> bool:
    return lam.size == n and np.allclose(lam, lam[0], rtol=0, atol=1e-12)


def assemble_scheme(bob_family, lam=None, alice_ops=None, label: str = "") -> FingerprintScheme:
    """Complete a Bob family into a one-sided scheme.

    With maximally entangled ``lam`` Alice's operators are induced as
    U_x = V_0^T conj(V_x), which pins U_0 = I and makes U_x K V_x^T = K V_0^T
    for every x. Other coefficient profiles need explicit ``alice_ops``.
    """
    if not isinstance(bob_family, UnitaryFamily):
        bob_family = UnitaryFamily(bob_family)
    bob = bob_family.members
    n = bob_family.n
    lam = maximally_entangled_lambda(n) if lam is None else _coefficients(lam)
    if alice_ops is None:
        if not _is_uniform(lam, n):
            raise UnsupportedConfigurationError(
                "Alice's operators are only induced for maximally entangled coefficients; pass alice_ops"
            )
        alice = np.einsum("ba,xbc->xac", bob[0], bob.conj())
    else:
        alice = np.asarray(alice_ops, dtype=np.complex128)
    alpha = derive_measurement(alice, bob, lam, reference=0)
    scheme = FingerprintScheme(lam, alice, bob, alpha, label=label or bob_family.label)
    require_valid(scheme)
    return scheme


def embed_scheme(scheme: FingerprintScheme, n: int, seed) -> FingerprintScheme:
    """Lift a scheme into dimension n >= scheme.n, keeping its Schmidt number.

    Each operator becomes block-diagonal with an independent Haar block on the
    complement, and common random rotations on both sides move the active
    subspace off the coordinate axes. The result is one-sided whenever the
    input is.
    """
    k = scheme.n
    if n < k:
        raise DimensionError(f"cannot embed dimension {k} into {n}")
    rng = np.random.default_rng(seed)
    rot_a = haar_random_unitary(n, rng)
    rot_b = haar_random_unitary(n, rng)

    def lift(ops):
        out = np.zeros((len(ops), n, n), dtype=np.complex128)
        for idx, op in enumerate(ops):
            out[idx, :k, :k] = op
            if n > k:
                out[idx, k:, k:] = haar_random_unitary(n - k, rng)
        return out

    alice = np.einsum("ab,xbc->xac", rot_a, lift(scheme.alice_ops))
    bob = np.einsum("ab,xbc->xac", rot_b, lift(scheme.bob_ops))
    alpha = np.zeros((n, n), dtype=np.complex128)
    alpha[:k, :k] = scheme.alpha
    alpha = rot_a @ alpha @ rot_b.T
    return FingerprintScheme(scheme.lam, alice, bob, alpha, label=f"{scheme.label} embedded n={n}")
