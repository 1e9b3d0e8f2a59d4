"""Search for Bob unitary sets with small worst-case overlap.

The objective is the largest pairwise overlap
q[x, y] = |sum_i lambda_i^2 <v_{x,i}|v_{y,i}>|^2. It is replaced by a
log-sum-exp surrogate with inverse temperature ``beta``; each iteration takes
a Euclidean gradient step on every member and maps it back to the unitary
group with the polar factor. ``beta`` grows geometrically every
``beta_every`` iterations so the surrogate tightens onto the hard max.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bounds import BoundReport, welch_lower_bound
from .constructions import UnitaryFamily, maximally_entangled_lambda, weyl_heisenberg_family
from .errors import DimensionError, RankError
from .protocol import _coefficients
from .tensor_core import SCHMIDT_TOLERANCE, as_matrix, haar_random_unitary

log = logging.getLogger(__name__)

INIT_CHOICES = ("haar", "weyl_heisenberg")


@dataclass
class OptimizerConfig:
    m: int
    n: int
    lam: np.ndarray | None = None
    max_iterations: int = 5000
    step_size: float = 0.05
    smoothing_beta: float = 50.0
    beta_growth: float = 1.5
    beta_every: int = 200
    seed: int = 0
    init: str = "haar"
    stop_gap: float = 1e-9
    stop_stall: int = 1000

    def __post_init__(self):
        if self.m < 2:
            raise DimensionError("need m >= 2")
        if self.n < 1:
            raise DimensionError("need n >= 1")
        if self.step_size <= 0 or self.smoothing_beta <= 0:
            raise ValueError("step_size and smoothing_beta must be positive")
        if self.beta_growth < 1:
            raise ValueError("beta_growth must be >= 1")
        self.init = self.init.replace("-", "_")
        if self.init not in INIT_CHOICES:
            raise ValueError(f"init must be one of {INIT_CHOICES}")
        self.lam = maximally_entangled_lambda(self.n) if self.lam is None else _coefficients(self.lam)
        if self.lam.size > self.n:
            raise DimensionError("more Schmidt coefficients than dimensions")


@dataclass
class FrameSolution:
    bob_ops: UnitaryFamily
    coherence: float
    iterations_used: int
    trace: list[tuple[int, float]] = field(repr=False)
    bound: BoundReport
    stop_reason: str = ""
    backend: str = kernels.BACKEND


def _members(family) -> np.ndarray:
    if isinstance(family, UnitaryFamily):
        return family.members
    return np.asarray(family, dtype=np.complex128)


def _weights(lam, n: int) -> np.ndarray:
    lam = _coefficients(lam)
    if lam.size > n:
        raise DimensionError(f"{lam.size} coefficients but members are {n}x{n}")
    return lam**2


def pairwise_overlaps(family, lam) -> np.ndarray:
    """q[x, y] = |tr(V_y K K^dagger V_x^dagger)|^2 for every pair."""
    ops = _members(family)
    c = kernels.overlap_gram(ops, _weights(lam, ops.shape[1]))
    return np.abs(c) ** 2


def coherence(family, lam) -> float:
    """Largest off-diagonal entry of :func:`pairwise_overlaps`."""
    q = pairwise_overlaps(family, lam)
    iu = np.triu_indices(q.shape[0], 1)
    return float(q[iu].max())


def smooth_objective(family, lam, beta: float):
    """Log-sum-exp of the pairwise overlaps and its gradient.

    The value is (1/beta) log sum_{x<y} exp(beta q[x, y]). Each gradient
    matrix G_x satisfies dF = Re sum_x tr(G_x^dagger dV_x), i.e. it holds
    dF/dRe(V) + i dF/dIm(V) entrywise.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    ops = _members(family)
    value, _, grad = kernels.smooth_value_grad(ops, _weights(lam, ops.shape[1]), float(beta))
    return value, list(grad)


def retract_to_unitary(mat) -> np.ndarray:
    """Unitary polar factor of a full-rank square matrix."""
    mat = as_matrix(mat)
    if mat.shape[0] != mat.shape[1]:
        raise DimensionError("retraction needs a square matrix")
    return _polar_stack(mat[None])[0]


def _polar_stack(mats: np.ndarray) -> np.ndarray:
    u, s, vh = np.linalg.svd(mats)
    if np.any(s[:, -1] <= 1e-14 * s[:, 0]):
        raise RankError("cannot retract a singular matrix")
    return u @ vh


def _initial_family(cfg: OptimizerConfig) -> np.ndarray:
    rng = np.random.default_rng(cfg.seed)
    if cfg.init == "weyl_heisenberg":
        wh = weyl_heisenberg_family(cfg.n, min(cfg.m, cfg.n * cfg.n)).members
        extra = [haar_random_unitary(cfg.n, rng) for _ in range(cfg.m - len(wh))]
        return np.concatenate([wh, np.array(extra).reshape(-1, cfg.n, cfg.n)])
    return np.array([haar_random_unitary(cfg.n, rng) for _ in range(cfg.m)])


def optimize(cfg: OptimizerConfig) -> FrameSolution:
    """Minimize the worst pairwise overlap of m unitaries on C^n.

    Steps that increase the smoothed objective are rejected and halve the
    step; the step resets to ``step_size`` whenever beta grows. The
    best-seen family by true coherence is returned.
    """
    weights = _weights(cfg.lam, cfg.n)
    ns = int(np.sum(cfg.lam > SCHMIDT_TOLERANCE))
    bound = welch_lower_bound(cfg.m, ns)
    target = (1.0 + cfg.stop_gap) * bound.effective_bound + 1e-12

    ops = _initial_family(cfg)
    beta = cfg.smoothing_beta
    step = cfg.step_size
    value, coh, grad = kernels.smooth_value_grad(ops, weights, beta)
    best_coh, best_ops = coh, ops.copy()
    trace = [(0, coh)]
    stall = 0
    it = 0
    reason = "max_iterations"
    if best_coh <= target:
        reason = "stop_gap"
    else:
        for it in range(1, cfg.max_iterations + 1):
            cand = _polar_stack(ops - step * grad)
            c_value, c_coh, c_grad = kernels.smooth_value_grad(cand, weights, beta)
            if c_value <= value:
                ops, value, coh, grad = cand, c_value, c_coh, c_grad
            else:
                step *= 0.5
            trace.append((it, coh))
            if coh < best_coh - 1e-12:
                best_coh, best_ops, stall = coh, ops.copy(), 0
            else:
                stall += 1
            if best_coh <= target:
                reason = "stop_gap"
                break
            if stall >= cfg.stop_stall:
                reason = "stop_stall"
                break
            if it % cfg.beta_every == 0:
                beta *= cfg.beta_growth
                step = cfg.step_size
                value, coh, grad = kernels.smooth_value_grad(ops, weights, beta)
    log.debug("optimize m=%d n=%d stopped after %d iterations (%s), coherence %.6g",
              cfg.m, cfg.n, it, reason, best_coh)
    family = UnitaryFamily(best_ops, label=f"optimized m={cfg.m} n={cfg.n} seed={cfg.seed}")
    return FrameSolution(
        bob_ops=family,
        coherence=coherence(family, cfg.lam),
        iterations_used=it,
        trace=trace,
        bound=bound,
        stop_reason=reason,
    )
