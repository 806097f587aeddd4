"""Signed graphs, their Laplacians, and a random geometric generator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class SignedGraph:
    """Undirected weighted graph whose edge weights may be negative.

    Edges are stored once with i < j; weights are nonzero finite reals.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one node")
        seen = set()
        for i, j, w in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad endpoint pair ({i}, {j}) for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            if not np.isfinite(w) or w == 0.0:
                raise ValueError(f"edge ({i}, {j}) has invalid weight {w}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def negative_fraction(self) -> float:
        """Fraction of edges carrying a negative weight (0.0 if edgeless)."""
        if not self.edges:
            return 0.0
        return sum(1 for _, _, w in self.edges if w < 0) / len(self.edges)


@dataclass(frozen=True)
class GeomGraphConfig:
    """Parameters for the random geometric generator.

    Nodes are placed uniformly in a square sized so that the expected
    average degree matches ``target_avg_degree``; each edge within
    ``comm_range`` gets weight +1 with probability ``1 - p_negative``
    and -1 otherwise.
    """

    n: int
    comm_range: float
    target_avg_degree: float
    p_negative: float
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("generator needs n >= 2")
        if self.comm_range <= 0:
            raise ValueError("comm_range must be positive")
        if self.target_avg_degree <= 0:
            raise ValueError("target_avg_degree must be positive")
        if not 0.0 <= self.p_negative <= 1.0:
            raise ValueError("p_negative must lie in [0, 1]")

    @property
    def side(self) -> float:
        """Side length of the deployment square."""
        return self.comm_range * np.sqrt(np.pi * self.n / self.target_avg_degree)


def laplacian(g: SignedGraph) -> np.ndarray:
    """Weighted Laplacian: off-diagonal -w, diagonal = signed degree.

    Rows sum to zero and the matrix is symmetric by construction.
    """
    off = np.zeros((g.n, g.n))
    for i, j, w in g.edges:
        off[i, j] -= w
        off[j, i] -= w
    lap = off.copy()
    lap[np.diag_indices(g.n)] = -off.sum(axis=1)
    return lap


def split_signed(g: SignedGraph) -> tuple[SignedGraph, SignedGraph]:
    """Split into the positive-edge graph and the negated negative-edge graph.

    Both returned graphs carry positive weights only, and
    ``laplacian(g) == laplacian(g_plus) - laplacian(g_minus)``.
    """
    pos = tuple(e for e in g.edges if e[2] > 0)
    neg = tuple((i, j, -w) for i, j, w in g.edges if w < 0)
    return SignedGraph(g.n, pos), SignedGraph(g.n, neg)


def split_laplacian(L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Matrix-level twin of :func:`split_signed` acting on a Laplacian.

    Returns PSD Laplacians (L_plus, L_minus) of the positive and the
    magnitude of the negative edge weights, with L = L_plus - L_minus.
    """
    L = np.asarray(L, dtype=float)
    off_plus = np.minimum(L, 0.0)
    np.fill_diagonal(off_plus, 0.0)
    off_minus = np.maximum(L, 0.0)
    np.fill_diagonal(off_minus, 0.0)
    lp = off_plus.copy()
    lp[np.diag_indices(L.shape[0])] = -off_plus.sum(axis=1)
    lm = -off_minus
    lm[np.diag_indices(L.shape[0])] = off_minus.sum(axis=1)
    return lp, lm


def degrees(g: SignedGraph) -> np.ndarray:
    """Unsigned degree (number of incident edges) per node."""
    d = np.zeros(g.n, dtype=int)
    for i, j, _ in g.edges:
        d[i] += 1
        d[j] += 1
    return d


def random_geometric(cfg: GeomGraphConfig) -> SignedGraph:
    """Sample a signed random geometric graph, deterministic per seed."""
    rng = np.random.default_rng(cfg.seed)
    side = cfg.side
    pts = rng.uniform(0.0, side, size=(cfg.n, 2))
    edges = []
    for i in range(cfg.n):
        for j in range(i + 1, cfg.n):
            if np.hypot(*(pts[i] - pts[j])) <= cfg.comm_range:
                w = -1.0 if rng.uniform() < cfg.p_negative else 1.0
                edges.append((i, j, w))
    return SignedGraph(cfg.n, tuple(edges))


def write_edge_list(g: SignedGraph, path) -> None:
    """Write the exchange format: header ``n=<count>``, then ``i j w`` lines."""
    with open(path, "w") as fh:
        fh.write(f"n={g.n}\n")
        for i, j, w in g.edges:
            fh.write(f"{i} {j} {w!r}\n")


def read_edge_list(path) -> SignedGraph:
    """Parse the edge-list exchange format written by :func:`write_edge_list`."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("edge list must start with an 'n=<count>' header")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError(f"bad node count in header {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    return SignedGraph(n, tuple(edges))
