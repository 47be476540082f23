"""Vertex/edge parametrization of commuting models.

A model of the form

    p(u, v) = alpha_u * Gamma(u, v) / alpha_v

with alpha a positive weight per state and Gamma a positive weight constant
on each translation class of edges always has pairwise commuting
directional matrices.  A class is identified by its direction i, the
smaller endpoint offset r along that direction, and the jump size x
(r + x <= n_i); edges differing only in the perpendicular coordinates share
their Gamma.

build_model evaluates the formula; recover_params inverts it via the
reversible measure beta (path products of forward over backward
probabilities), with alpha_u = beta_u^(-1/2), gauged to beta = 1 at the
origin.  For unit jumps every positive commuting model is of this form.
With jumps of size >= 2 commutation alone is weaker (the forward and
backward weights of a class can scale independently), so recover_params
checks path independence, detailed balance and per-class constancy, and
raises ConsistencyError for commuting models outside the parametrized
family.  Parameters are determined up to one global constant.
"""

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    ConsistencyError,
    DomainError,
    PositivityError,
    UnsupportedConfigError,
)
from .lattice import build_grid, directed_edges, edge_between, shifted
from .model import TransitionModel

# relative tolerance for cross-path and cross-representative agreement:
# products of at most sum(n_i) O(1) factors keep relative error near
# machine precision
CONSISTENCY_RTOL = 1e-9


class EdgeClass(NamedTuple):
    """Canonical label of a translation class of edges."""

    direction: int  # 1-based
    offset: int  # smaller endpoint coordinate r
    step: int  # jump size x >= 1; r + x <= n_direction


def edge_classes(shape):
    """All edge classes, ordered by direction, jump size, offset."""
    out = []
    lmax = max(shape.l1, shape.l2)
    for i in range(1, shape.q + 1):
        for x in range(1, lmax + 1):
            for r in range(0, shape.dims[i - 1] - x + 1):
                out.append(EdgeClass(i, r, x))
    return out


def edge_class_of(shape, u, v):
    """The class of the adjacent pair {u, v}; symmetric in u and v."""
    e = edge_between(shape, u, v)
    if e is None:
        raise DomainError(
            "states %s and %s are not adjacent on the grid"
            % (tuple(u), tuple(v))
        )
    i = e.direction
    return EdgeClass(i, min(e.u[i - 1], e.v[i - 1]), abs(e.step))


@dataclass
class Parametrization:
    """alpha: state -> positive weight; gamma: EdgeClass -> non-negative weight.

    A zero gamma drops the edges of that class from generated models (such
    models may fail irreducibility checks downstream); strictly positive
    gamma is required by the operations that assume it.
    """

    shape: object
    alpha: dict
    gamma: dict

    def __post_init__(self):
        self.alpha = {tuple(u): float(a) for u, a in self.alpha.items()}
        self.gamma = {EdgeClass(*c): float(g) for c, g in self.gamma.items()}
        grid = build_grid(self.shape)
        for u in grid.states:
            if u not in self.alpha:
                raise DomainError("alpha missing entry for state %s" % (u,))
            if self.alpha[u] <= 0.0:
                raise PositivityError(
                    "alpha at %s must be strictly positive (got %r)"
                    % (u, self.alpha[u])
                )
        if len(self.alpha) != len(grid.states):
            extra = set(self.alpha) - set(grid.states)
            raise DomainError(
                "alpha has entries for off-grid states: %s" % sorted(extra)
            )
        wanted = set(edge_classes(self.shape))
        if set(self.gamma) != wanted:
            missing = sorted(wanted - set(self.gamma))
            extra = sorted(set(self.gamma) - wanted)
            raise DomainError(
                "gamma must have exactly one entry per edge class "
                "(missing %s, extra %s)" % (missing, extra)
            )
        for c, g in self.gamma.items():
            if g < 0.0:
                raise PositivityError(
                    "gamma for class %s must be non-negative (got %r)" % (c, g)
                )


def param_counts(shape):
    """(edge class count, vertex count) for l1 = l2 = l."""
    if shape.l1 != shape.l2:
        raise UnsupportedConfigError(
            "parameter counts assume equal jump bounds (l1=%d, l2=%d)"
            % (shape.l1, shape.l2)
        )
    edge = sum(
        shape.dims[i] - x + 1
        for i in range(shape.q)
        for x in range(1, shape.l1 + 1)
    )
    return edge, shape.n_states


def build_model(p, self_prob=None, absorbing=False):
    """The model with p(u, v) = alpha_u * gamma(class) / alpha_v per edge.

    Raw outputs need not be sub-stochastic; Perron rescaling makes them so.
    Classes with gamma = 0 contribute no edge.
    """
    probs = {}
    for e in directed_edges(p.shape):
        g = p.gamma[edge_class_of(p.shape, e.u, e.v)]
        if g != 0.0:
            probs[(e.u, e.v)] = p.alpha[e.u] * g / p.alpha[e.v]
    return TransitionModel(p.shape, probs, self_prob, absorbing)


def _unit_neighbors(shape, u):
    for i in range(1, shape.q + 1):
        if u[i - 1] + 1 <= shape.dims[i - 1]:
            yield shifted(u, i, 1)
        if u[i - 1] - 1 >= 0:
            yield shifted(u, i, -1)


def recover_params(model):
    """Invert the parametrization of a positive commuting model.

    beta is built breadth-first from the origin along unit steps; every
    revisit cross-checks the path product, every edge is then checked for
    detailed balance, and every class representative for translation
    invariance, all at relative tolerance 1e-9.  Disagreement means the
    model does not commute.
    """
    shape = model.shape
    if shape.l1 != shape.l2:
        raise UnsupportedConfigError(
            "recovery assumes equal jump bounds (l1=%d, l2=%d)"
            % (shape.l1, shape.l2)
        )
    edges = directed_edges(shape)
    for e in edges:
        if model.p(e.u, e.v) <= 0.0:
            raise PositivityError(
                "recovery needs strictly positive probabilities; "
                "edge %s->%s has %r" % (e.u, e.v, model.p(e.u, e.v))
            )

    origin = (0,) * shape.q
    beta = {origin: 1.0}
    queue = deque([origin])
    while queue:
        u = queue.popleft()
        for v in _unit_neighbors(shape, u):
            cand = beta[u] * model.p(u, v) / model.p(v, u)
            if v in beta:
                if abs(cand - beta[v]) > CONSISTENCY_RTOL * max(cand, beta[v]):
                    raise ConsistencyError(
                        "path products from the origin disagree at %s "
                        "(%.17g vs %.17g): model does not commute"
                        % (v, beta[v], cand)
                    )
            else:
                beta[v] = cand
                queue.append(v)

    for e in edges:
        lhs = beta[e.u] * model.p(e.u, e.v)
        rhs = beta[e.v] * model.p(e.v, e.u)
        if abs(lhs - rhs) > CONSISTENCY_RTOL * max(abs(lhs), abs(rhs)):
            raise ConsistencyError(
                "detailed balance fails on edge %s->%s "
                "(%.17g vs %.17g): model does not commute" % (e.u, e.v, lhs, rhs)
            )

    alpha = {u: b ** -0.5 for u, b in beta.items()}

    gamma = {}
    for e in edges:
        if e.step < 0:
            continue
        c = edge_class_of(shape, e.u, e.v)
        val = model.p(e.u, e.v) * alpha[e.v] / alpha[e.u]
        if c in gamma:
            if abs(val - gamma[c]) > CONSISTENCY_RTOL * max(val, gamma[c]):
                raise ConsistencyError(
                    "edge parameter differs across class %s "
                    "(%.17g at %s->%s vs %.17g): model does not commute"
                    % (c, val, e.u, e.v, gamma[c])
                )
        else:
            gamma[c] = val
    return Parametrization(shape, alpha, gamma)


def detailed_balance_check(model, beta, tol=1e-10):
    """(bool, worst) for |beta_u p(u,v) - beta_v p(v,u)| <= tol on all edges.

    worst is (u, v, violation) for the largest violation (None if no edges).
    """
    beta = {tuple(u): float(b) for u, b in beta.items()}
    for u, b in beta.items():
        if b <= 0.0:
            raise PositivityError(
                "beta at %s must be strictly positive (got %r)" % (u, b)
            )
    grid = build_grid(model.shape)
    worst = None
    worst_violation = -1.0
    for e in directed_edges(model.shape):
        if grid.index_of(e.u) > grid.index_of(e.v):
            continue
        violation = abs(
            beta[e.u] * model.p(e.u, e.v) - beta[e.v] * model.p(e.v, e.u)
        )
        if violation > worst_violation:
            worst = (e.u, e.v, violation)
            worst_violation = violation
    return worst_violation <= tol, worst
