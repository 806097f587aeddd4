"""Consensus dynamics on grounded Laplacians.

After grounding the removed nodes at state zero, the remaining nodes
follow dx/dt = -L(kept) x.  The kept block is symmetric, so the flow is
propagated exactly through its eigendecomposition; the time step below
is a sampling grid, not an integrator step, and contributes no
truncation error.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .linalg import complement, submatrix, sym_matrix


@dataclass(frozen=True)
class Trajectory:
    """Sampled states of the kept nodes under the grounded dynamics.

    ``states[i]`` is the kept-node state vector at ``times[i]``;
    ``lambda_min_used`` is the smallest eigenvalue of the kept block
    that generated the flow, which also sets the decay envelope.
    """

    times: np.ndarray
    states: np.ndarray
    lambda_min_used: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        x = np.asarray(self.states, dtype=float)
        if t.ndim != 1 or t.size == 0 or t[0] != 0.0:
            raise ValueError("times must be a nonempty vector starting at 0")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if x.ndim != 2 or x.shape[0] != t.size:
            raise ValueError("states must have one row per sample time")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", x)


def consensus_trajectory(L, removed, x0, horizon: float, dt: float) -> Trajectory:
    """Exact flow of dx/dt = -L(kept) x sampled at multiples of dt.

    ``x0`` is the initial state of the kept nodes (sorted index order).
    The removed nodes are pinned at zero and carry no state.
    """
    L = sym_matrix(L, name="L")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if horizon < dt:
        raise ValueError("horizon must be at least dt")
    kept = complement(removed, L.shape[0])
    if kept.size == 0:
        raise ValueError("empty kept set has no dynamics")
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.size != kept.size:
        raise ValueError(
            f"x0 has length {x0.size}, kept set has {kept.size} nodes")

    block = submatrix(L, kept)
    vals, vecs = np.linalg.eigh(block)
    coeff = vecs.T @ x0
    steps = int(np.floor(horizon / dt + 1e-12))
    times = dt * np.arange(steps + 1)
    # states[i] = V exp(-vals * t_i) V' x0, all samples at once
    decay = np.exp(-np.outer(times, vals))
    states = (decay * coeff) @ vecs.T
    return Trajectory(times=times, states=states,
                      lambda_min_used=float(vals[0]))


def verify_rate(traj: Trajectory, rtol: float = 1e-8) -> tuple[bool, float]:
    """Check the decay envelope |x(t)| <= exp(-lambda_min t) |x(0)|.

    Returns (passed, largest relative violation).  The envelope also
    covers unstable kept blocks, where lambda_min < 0 turns it into a
    growth bound.
    """
    norms = np.linalg.norm(traj.states, axis=1)
    bound = np.exp(-traj.lambda_min_used * traj.times) * norms[0]
    if norms[0] == 0.0:
        worst = float(np.max(norms))
        return worst <= rtol, worst
    rel = (norms - bound) / np.where(bound > 0, bound, 1.0)
    worst = float(np.max(rel))
    return worst <= rtol, max(worst, 0.0)


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Columns t, x_0, ..., x_{k-1} in kept-index order."""
    k = traj.states.shape[1]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"x_{i}" for i in range(k)])
        for t, row in zip(traj.times, traj.states):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in row])


def read_trajectory_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Times and states back from :func:`write_trajectory_csv` output."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0] != "t":
        raise ValueError(f"not a trajectory CSV: {path}")
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    return data[:, 0], data[:, 1:]
