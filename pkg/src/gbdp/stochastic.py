"""Perron-root normalization of parametrized models.

The full matrix of a parametrized model is B (sum_i A(i)) B^-1, so its row
sums all equal 1 - a exactly when (1 - a)/rho times sum_i A(i) has Perron
root 1 - a and B^-1's diagonal is the Perron vector.  normalize_stochastic
finds the Perron pair of M = sum_i A(i) by power iteration, scales every
gamma by (1 - alpha_self)/rho and replaces the vertex weights by the
reciprocal Perron components (gauged to 1 at the origin).  Commutation is
untouched: the bilinear identities scale uniformly.
"""

import numpy as np

from .errors import ConvergenceError, DomainError, StructureError
from .lattice import build_grid
from .param import Parametrization
from .spectral import block_decompose, direction_operator

# successive-iterate threshold and iteration cap for the power method
VECTOR_TOL = 1e-13
ITERATION_CAP_PER_SIZE = 100


def _strongly_connected(m):
    """Both-ways reachability of every node from node 0 on the nonzero pattern."""
    n = m.shape[0]
    for mat in (m, m.T):
        succ = [np.flatnonzero(mat[i] > 0) for i in range(n)]
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            i = stack.pop()
            for j in succ[i]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        if not seen.all():
            return False
    return True


def perron(m, tol=1e-10, v0=None):
    """Perron root and unit-sum positive eigenvector of an irreducible
    non-negative matrix.

    Power iteration on M + eps*I with eps = 0.5*norm(M, inf): the shift
    breaks the period-2 oscillation of bipartite-like patterns (grids with
    only odd jump sizes) without changing eigenvectors, and is subtracted
    from the converged root.  An optional positive starting vector v0
    replaces the default uniform start; the limit does not depend on it.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("expected a square matrix, got shape %s" % (m.shape,))
    if m.size and float(m.min()) < 0.0:
        raise DomainError("matrix has a negative entry (%g)" % float(m.min()))
    n = m.shape[0]
    norm = float(np.abs(m).sum(axis=1).max())
    if norm == 0.0:
        raise StructureError("matrix has no nonzero entries")
    if not _strongly_connected(m):
        raise StructureError(
            "matrix is reducible (nonzero pattern is not strongly connected)"
        )
    eps = 0.5 * norm
    if v0 is None:
        v = np.full(n, 1.0 / n)
    else:
        v = np.asarray(v0, dtype=float)
        if v.shape != (n,) or float(v.min()) <= 0.0:
            raise DomainError("starting vector must be positive of length %d" % n)
        v = v / v.sum()
    cap = ITERATION_CAP_PER_SIZE * n
    for _ in range(cap):
        w = m @ v + eps * v
        w /= w.sum()
        if float(np.abs(w - v).max()) <= VECTOR_TOL:
            v = w
            break
        v = w
    else:
        raise ConvergenceError(
            "power iteration did not converge within %d iterations" % cap
        )
    rho = float((m @ v).sum())
    residual = float(np.abs(m @ v - rho * v).max())
    if residual > tol * norm:
        raise ConvergenceError(
            "eigenpair residual %g exceeds %g after convergence"
            % (residual, tol * norm)
        )
    return rho, v


def normalize_stochastic(p, alpha_self=0.0):
    """Rescale a parametrization so the full matrix is stochastic.

    The result's model has every row sum equal to 1 - alpha_self; adding the
    scalar self mass makes it exactly stochastic.
    """
    a = float(alpha_self)
    if not 0.0 <= a < 1.0:
        raise DomainError("self mass %r outside [0, 1)" % alpha_self)
    decomp = block_decompose(p)
    m = sum(direction_operator(decomp, i) for i in range(1, p.shape.q + 1))
    rho, v = perron(m)
    c = (1.0 - a) / rho
    grid = build_grid(p.shape)
    alpha = {u: float(v[0] / v[k]) for k, u in enumerate(grid.states)}
    gamma = {cls: c * g for cls, g in p.gamma.items()}
    return Parametrization(p.shape, alpha, gamma)


def is_stochastic(p_matrix, tol=1e-12):
    """True iff every row sum lies in [1 - tol, 1 + tol]."""
    m = np.asarray(p_matrix, dtype=float)
    if m.size and float(m.min()) < 0.0:
        raise DomainError("matrix has a negative entry (%g)" % float(m.min()))
    row_sums = m.sum(axis=1)
    return bool(np.all(np.abs(row_sums - 1.0) <= tol))
