"""Shared helpers: seeded generators and random model factories."""

import numpy as np
import pytest

from gbdp import GridShape, Parametrization, build_grid, build_model, edge_classes

# the worked 3x3-states-per-direction grid with jumps up to 2
EXP_SHAPE = GridShape((2, 2), 2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20230817)


def make_parametrization(shape, rng, low=0.5, high=2.0):
    grid = build_grid(shape)
    alpha = {u: float(rng.uniform(low, high)) for u in grid.states}
    gamma = {c: float(rng.uniform(low, high)) for c in edge_classes(shape)}
    return Parametrization(shape, alpha, gamma)


def make_commuting_model(shape, rng, **kwargs):
    return build_model(make_parametrization(shape, rng), **kwargs)


def random_monotone_path(u, rng):
    """A unit-step lattice path from the origin to u, one of many."""
    cur = [0] * len(u)
    path = [tuple(cur)]
    while tuple(cur) != tuple(u):
        open_dirs = [i for i, c in enumerate(cur) if c < u[i]]
        cur[int(rng.choice(open_dirs))] += 1
        path.append(tuple(cur))
    return path


def path_beta(model, path):
    """Product of forward over backward probabilities along a path."""
    out = 1.0
    for a, b in zip(path, path[1:]):
        out *= model.p(a, b) / model.p(b, a)
    return out
