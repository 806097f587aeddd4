"""Shared helpers for the test suite: small random instance factories."""

import numpy as np
import pytest

from groundsel import GeomGraphConfig, laplacian, random_geometric


def random_symmetric(rng, n, scale=1.0):
    """Dense symmetric matrix with entries of order ``scale``."""
    M = rng.normal(0.0, scale, size=(n, n))
    return (M + M.T) / 2.0


def random_signed_laplacian(rng, n, p_edge=0.5, p_neg=0.3):
    """Laplacian of an Erdos-Renyi-style signed graph with unit weights."""
    L = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.uniform() < p_edge:
                w = -1.0 if rng.uniform() < p_neg else 1.0
                L[i, j] -= w
                L[j, i] -= w
    np.fill_diagonal(L, -L.sum(axis=1))
    return L


def geometric_laplacian(n, p_neg, seed, comm_range=300.0, avg_degree=4.0):
    cfg = GeomGraphConfig(n=n, comm_range=comm_range,
                          target_avg_degree=avg_degree, p_negative=p_neg,
                          seed=seed)
    return laplacian(random_geometric(cfg))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
