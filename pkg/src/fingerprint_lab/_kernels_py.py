"""Pure numpy implementation of the optimizer kernels.

Used when the compiled ``_kernels`` extension is unavailable, and as the
reference the extension is tested against.
"""

import numpy as np

BACKEND = "numpy"


def overlap_gram(ops, weights):
    """c[x, y] = sum_{a, i < len(weights)} conj(V_x[a, i]) V_y[a, i] weights[i]."""
    ops = np.ascontiguousarray(ops, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    k = weights.shape[0]
    cols = ops[:, :, :k]
    return np.einsum("xai,yai,i->xy", cols.conj(), cols, weights)


def smooth_value_grad(ops, weights, beta):
    """Log-sum-exp of |c[x, y]|^2 over x < y, its gradient and the hard max.

    Returns ``(value, max_overlap, grad)`` with ``grad[x]`` the gradient
    with respect to ``ops[x]`` in the convention dF = Re tr(G^dagger dV).
    """
    ops = np.ascontiguousarray(ops, dtype=np.complex128)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    m = ops.shape[0]
    k = weights.shape[0]
    c = overlap_gram(ops, weights)
    q = np.abs(c) ** 2
    iu, ju = np.triu_indices(m, 1)
    pq = q[iu, ju]
    qmax = pq.max()
    e = np.exp(beta * (pq - qmax))
    total = e.sum()
    value = qmax + np.log(total) / beta
    w = np.zeros((m, m))
    w[iu, ju] = e / total
    # coef[x, y]: weight of V_y D in grad[x]; symmetric pairs from both ends
    coef = 2.0 * (w * c.conj() + (w * c).T)
    grad = np.zeros_like(ops)
    grad[:, :, :k] = np.einsum("xy,yai,i->xai", coef, ops[:, :, :k], weights)
    return float(value), float(qmax), grad
