"""Finite q-dimensional grid state space.

States are plain tuples of non-negative ints.  The linear index order is
lexicographic with the last coordinate varying fastest, so for dims=(2,2)
the states are listed (0,0),(0,1),(0,2),(1,0),...,(2,2).  Every matrix in
this package (directional, full, block, constraint) uses this order, which
makes small cases comparable entry by entry against hand-written matrices.

A jump moves exactly one coordinate, up by at most l1 or down by at most l2.
The standing assumption is max(l1, l2) <= min(dims), so every jump size
occurs somewhere in every direction.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, ShapeError


@dataclass(frozen=True)
class GridShape:
    """Grid dimensions and jump bounds.

    dims = (n_1, ..., n_q): coordinate i ranges over 0..n_i.
    l1: largest forward jump; l2: largest backward jump.
    """

    dims: tuple
    l1: int
    l2: int

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        validate_shape(self)

    @property
    def q(self):
        return len(self.dims)

    @property
    def n_states(self):
        out = 1
        for n in self.dims:
            out *= n + 1
        return out


def validate_shape(shape):
    """Raise ShapeError naming the violated invariant, if any."""
    if len(shape.dims) < 1:
        raise ShapeError("shape invariant violated: q >= 1 (dims is empty)")
    for i, n in enumerate(shape.dims):
        if n < 1:
            raise ShapeError(
                "shape invariant violated: n_%d >= 1 (got %d)" % (i + 1, n)
            )
    if shape.l1 < 1 or shape.l2 < 1:
        raise ShapeError(
            "shape invariant violated: l1 >= 1 and l2 >= 1 (got l1=%d, l2=%d)"
            % (shape.l1, shape.l2)
        )
    if max(shape.l1, shape.l2) > min(shape.dims):
        raise ShapeError(
            "shape invariant violated: max(l1, l2) <= min(dims) "
            "(got max jump %d on dims %s)"
            % (max(shape.l1, shape.l2), (shape.dims,))
        )


class Edge(NamedTuple):
    """Directed edge u -> v: coordinate `direction` (1-based) changes by `step`
    (positive = forward, negative = backward); all other coordinates match."""

    u: tuple
    v: tuple
    direction: int
    step: int


def in_grid(shape, u):
    return len(u) == shape.q and all(
        0 <= u[i] <= shape.dims[i] for i in range(shape.q)
    )


class Grid:
    """Enumerated states of a GridShape with the index bijection."""

    def __init__(self, shape):
        self.shape = shape
        self.states = list(_enumerate_states(shape.dims))
        self._index = {u: k for k, u in enumerate(self.states)}
        # strides for direct index arithmetic (last coordinate fastest)
        strides = [1] * shape.q
        for i in range(shape.q - 2, -1, -1):
            strides[i] = strides[i + 1] * (shape.dims[i + 1] + 1)
        self.strides = tuple(strides)

    def __len__(self):
        return len(self.states)

    def index_of(self, u):
        try:
            return self._index[tuple(u)]
        except KeyError:
            raise DomainError("state %s is not on the grid" % (tuple(u),))

    def state_of(self, k):
        return self.states[k]


def _enumerate_states(dims):
    if not dims:
        yield ()
        return
    for head in range(dims[0] + 1):
        for tail in _enumerate_states(dims[1:]):
            yield (head,) + tail


def build_grid(shape):
    """Enumerate states in lexicographic order (last coordinate fastest)."""
    validate_shape(shape)
    return Grid(shape)


def shifted(u, direction, step):
    """State u with coordinate `direction` (1-based) moved by `step`."""
    i = direction - 1
    return u[:i] + (u[i] + step,) + u[i + 1:]


def edge_between(shape, u, v):
    """The Edge u -> v if the pair is adjacent on the grid, else None."""
    u, v = tuple(u), tuple(v)
    if not (in_grid(shape, u) and in_grid(shape, v)):
        return None
    diff = [i for i in range(shape.q) if u[i] != v[i]]
    if len(diff) != 1:
        return None
    i = diff[0]
    step = v[i] - u[i]
    if 0 < step <= shape.l1 or 0 < -step <= shape.l2:
        return Edge(u, v, i + 1, step)
    return None


def directed_edges(shape):
    """All directed edges, one per ordered adjacent pair (u, v).

    Order: by source state index, then direction, then forward steps
    ascending, then backward steps ascending.
    """
    validate_shape(shape)
    edges = []
    for u in _enumerate_states(shape.dims):
        for i in range(1, shape.q + 1):
            for x in range(1, shape.l1 + 1):
                if u[i - 1] + x <= shape.dims[i - 1]:
                    edges.append(Edge(u, shifted(u, i, x), i, x))
            for y in range(1, shape.l2 + 1):
                if u[i - 1] - y >= 0:
                    edges.append(Edge(u, shifted(u, i, -y), i, -y))
    return edges


def adjacency_and_laplacian(shape):
    """0/1 adjacency matrix and Laplacian L = Deg - A of the grid graph."""
    grid = build_grid(shape)
    n = len(grid)
    adj = np.zeros((n, n), dtype=np.int64)
    for e in directed_edges(shape):
        adj[grid.index_of(e.u), grid.index_of(e.v)] = 1
    deg = np.diag(adj.sum(axis=1))
    return adj, deg - adj
