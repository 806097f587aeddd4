"""Distribution of indefinite Gaussian quadratic forms.

The certificate used by the greedy selector is the expected negative part
of ``w' (A + alpha D) w`` for standard Gaussian ``w``.  The form is a
weighted sum of independent chi-square variables, so its survival
function is recovered by numerically inverting the characteristic
function (Imhof-type integral), and the expectation follows by
integrating the survival function of the sign-flipped variable.

Numerical layout, shared by both integrals:

* the inverting integrand ``sin(theta(u)) / (u rho(u))`` decays
  monotonically once every factor ``(1 + a_r^2 u^2)^{1/4}`` has turned
  on, so integration past the point where the envelope drops below
  roundoff is wasted work; an effective cutoff inside the requested
  truncation point is located by bisection on the monotone envelope;
* grids start fine enough to resolve both the fastest oscillation and
  the sharpest envelope knee, then midpoint refinement doubles the node
  count until two successive estimates agree within the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import add_alpha_diag, sym_matrix

# Truncation schedule constants and the node cap for the outer integral.
_C_R = 4.0
_C_K = 50.0
_C_N = 1.0
_N_MAX = 200_000

# Hard ceiling on inner-grid refinement.
_M_CAP = 1 << 22


def _clean_coeffs(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float).ravel()
    if c.size == 0:
        raise ValueError("coefficient vector is empty")
    if not np.all(np.isfinite(c)):
        raise ValueError("coefficient vector contains non-finite entries")
    if np.all(c == 0.0):
        raise ValueError("degenerate distribution: all coefficients are zero")
    return c


def _phase_sum(c: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Accumulate s(u) = sum(arctan(c u)) / 2 and log rho(u) coefficientwise."""
    s = np.zeros_like(u)
    logrho = np.zeros_like(u)
    for cr in c:
        if cr == 0.0:
            continue
        cu = cr * u
        s += np.arctan(cu)
        logrho += np.log1p(cu * cu)
    return 0.5 * s, 0.25 * logrho


def _u_cutoff(c: np.ndarray, K: float, env_target: float, power: int) -> float:
    """Smallest probed u in (0, K] where exp(-log rho(u)) / u^power drops
    to env_target.

    The envelope is strictly decreasing, so the first crossing on a
    log-spaced probe grid brackets it from above; returns K when even
    the endpoint envelope exceeds the target.
    """
    u = K * np.logspace(-12.0, 0.0, 481)
    _, logrho = _phase_sum(c, u)
    log_env = -logrho - power * np.log(u)
    below = np.flatnonzero(log_env <= math.log(env_target))
    if below.size == 0:
        return K
    return float(u[below[0]])


def _start_nodes(u_cut: float, freq: float, c_max_abs: float, floor: int) -> int:
    # 8 nodes per oscillation period plus 4 per envelope knee width.
    osc = 8.0 * u_cut * freq / (2.0 * math.pi)
    knee = 4.0 * u_cut * c_max_abs
    return int(min(max(floor, math.ceil(osc), math.ceil(knee)), _M_CAP))


def _survival_sum(c: np.ndarray, w: float, u_cut: float, m_nodes: int) -> float:
    """Midpoint estimate of the inversion integral over (0, u_cut)."""
    h = u_cut / m_nodes
    u = (np.arange(m_nodes) + 0.5) * h
    s, logrho = _phase_sum(c, u)
    theta = s - 0.5 * w * u
    # Removable singularity: integrand -> theta'(0) = (sum(c) - w) / 2.
    tiny = u < 1e-14 * u_cut
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sin(theta) * np.exp(-logrho) / u
    if np.any(tiny):
        vals[tiny] = 0.5 * (float(np.sum(c)) - w)
    return h * float(np.sum(vals))


def imhof_survival(coeffs, w: float, K: float, inner_nodes: int = 256,
                   tol: float = 1e-8) -> float:
    """Pr(W > w) for W = sum of coeffs[r] * (independent chi-square, 1 dof).

    The characteristic-function inversion integral is truncated at ``K``
    and evaluated by adaptive midpoint refinement starting from
    ``inner_nodes`` nodes.  The result is clamped to [0, 1].
    """
    c = _clean_coeffs(coeffs)
    if not np.isfinite(w):
        raise ValueError("threshold must be finite")
    if K <= 0:
        raise ValueError("truncation point K must be positive")
    if inner_nodes < 8:
        raise ValueError("inner_nodes must be at least 8")
    if tol <= 0:
        raise ValueError("tol must be positive")
    # Sign-definite mixtures sit entirely on one side of zero, where the
    # inversion integrand loses its oscillation and truncation error
    # decays too slowly; the exact value is known there.
    if np.all(c >= 0.0) and w <= 0.0:
        return 1.0
    if np.all(c <= 0.0) and w >= 0.0:
        return 0.0

    u_cut = _u_cutoff(c, K, env_target=math.pi * 0.1 * tol / max(K, 1.0), power=1)
    freq = 0.5 * (abs(w) + float(np.sum(np.abs(c))))
    m = _start_nodes(u_cut, freq, float(np.max(np.abs(c))), inner_nodes)
    est = _survival_sum(c, w, u_cut, m)
    while m < _M_CAP:
        m *= 2
        nxt = _survival_sum(c, w, u_cut, m)
        done = abs(nxt - est) < 0.9 * tol
        est = nxt
        if done:
            break
    return float(min(max(0.5 + est / math.pi, 0.0), 1.0))


def tail_bound_chernoff(coeffs, z: float) -> float:
    """Exponential upper bound on Pr(W > z) at twist 1 / (4 max coeff).

    Requires z >= 0 and at least one positive coefficient.  The bound can
    exceed 1; it is an upper bound, not a probability estimate.
    """
    c = _clean_coeffs(coeffs)
    if z < 0:
        raise ValueError("z must be nonnegative")
    c_max = float(np.max(c))
    if c_max <= 0:
        raise ValueError("tail bound needs a positive coefficient")
    log_prod = -0.5 * float(np.sum(np.log1p(-c / (2.0 * c_max))))
    return float(math.exp(-z / (4.0 * c_max) + log_prod))


@dataclass(frozen=True)
class QuadBudget:
    """Truncation budget for the nested certificate quadrature."""

    eps: float
    R: float
    K: float
    N: int

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.R <= 0 or self.K <= 0:
            raise ValueError("truncation points must be positive")
        if self.N < 2:
            raise ValueError("outer node count must be at least 2")


def default_budget(A, eps: float = 1e-6) -> QuadBudget:
    """Truncation schedule sized from the spectrum of ``A``.

    R grows with the spectral radius and dimension, K with the inverse of
    the smallest nonzero eigenvalue magnitude (floored at eps), and the
    outer node count is R / eps capped at 200000.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    A = sym_matrix(A)
    n = A.shape[0]
    vals = np.abs(np.linalg.eigvalsh(A))
    a_max = float(np.max(vals))
    nonzero = vals[vals > 1e-12 * (1.0 + a_max)]
    min_nz = float(np.min(nonzero)) if nonzero.size else eps
    R = _C_R * (-math.log(eps) + n) * max(a_max, 1.0)
    K = _C_K / max(min_nz, eps)
    N = int(min(math.ceil(_C_N * R / eps), _N_MAX))
    return QuadBudget(eps=eps, R=R, K=K, N=max(N, 2))


def _collapsed_outer_sum(c: np.ndarray, delta: float, n_outer: int,
                         u_cut: float, m_nodes: int) -> float:
    """Sum over outer midpoint nodes of the inner inversion integrals.

    Outer nodes z_i = (i + 1/2) delta enter the inner integrand only
    through sin(s(u) - z_i u / 2), so the outer sum collapses to a
    closed form per inner node (sum of sines in arithmetic phase
    progression).  The return value equals
    ``sum_i integral_estimate(z_i)`` with a shared inner grid, up to
    roundoff, at O(m_nodes) cost instead of O(n_outer * m_nodes).
    """
    h = u_cut / m_nodes
    u = (np.arange(m_nodes) + 0.5) * h
    s, logrho = _phase_sum(c, u)
    a = s - 0.25 * u * delta
    d_half = -0.25 * u * delta
    sin_half = np.sin(d_half)
    mid_phase = a + (n_outer - 1) * d_half
    with np.errstate(divide="ignore", invalid="ignore"):
        series = np.sin(mid_phase) * np.sin(n_outer * d_half) / sin_half
    aliased = np.abs(sin_half) < 1e-14
    if np.any(aliased):
        series[aliased] = n_outer * np.sin(a[aliased])
    return h * float(np.sum(np.exp(-logrho) / u * series))


def _negative_part_quadrature(c_hat: np.ndarray, R: float, K: float, N: int,
                              tol: float, force_nodes: int | None = None) -> float:
    """Expected negative part via survival integration of the flipped mix.

    Integrates the survival function of the sign-flipped variable over
    [0, R] by the midpoint rule with N nodes; each node's survival value
    is the truncated inversion integral on a shared inner grid.
    """
    delta = R / N
    env_target = math.pi * 0.1 * tol / (4.0 * max(K, 1.0))
    u_cut = _u_cutoff(c_hat, K, env_target=env_target, power=2)
    freq = 0.5 * R + 0.5 * float(np.sum(np.abs(c_hat)))
    c_max_abs = float(np.max(np.abs(c_hat)))
    if force_nodes is not None:
        inner = _collapsed_outer_sum(c_hat, delta, N, u_cut, force_nodes)
        return -(0.5 * R + delta * inner / math.pi)
    m = _start_nodes(u_cut, freq, c_max_abs, 256)
    est = _collapsed_outer_sum(c_hat, delta, N, u_cut, m)
    while m < _M_CAP:
        m *= 2
        nxt = _collapsed_outer_sum(c_hat, delta, N, u_cut, m)
        done = abs(nxt - est) * delta / math.pi < 0.9 * tol
        est = nxt
        if done:
            break
    return -(0.5 * R + delta * est / math.pi)


def q_value(A, removed, alpha: float, budget: QuadBudget) -> float:
    """Expected negative part of w'(A + alpha D(removed))w, w ~ N(0, I).

    Zero by construction exactly when A + alpha D(removed) is positive
    semidefinite; always nonpositive.  Eigenvalues at roundoff scale are
    dropped from the chi-square mix, and definite cases short-circuit
    without quadrature.
    """
    B = add_alpha_diag(sym_matrix(A), removed, alpha)
    vals = np.linalg.eigvalsh(B)
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    kept = vals[np.abs(vals) > 1e-12 * (1.0 + scale)]
    if kept.size == 0 or np.all(kept > 0):
        return 0.0
    if np.all(kept < 0):
        return float(np.sum(kept))
    val = _negative_part_quadrature(-kept, budget.R, budget.K, budget.N,
                                    tol=budget.eps / 10.0)
    return float(min(val, 0.0))


def q_value_mc(A, removed, alpha: float, samples: int, seed: int = 0,
               chunk: int = 200_000) -> tuple[float, float]:
    """Monte Carlo estimate of the certificate with its standard error.

    Returns (mean, stderr) over ``samples`` independent Gaussian draws,
    deterministic per seed.  Used as the independent oracle for
    :func:`q_value`; the two must never share machinery.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    B = add_alpha_diag(sym_matrix(A), removed, alpha)
    n = B.shape[0]
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    left = samples
    while left > 0:
        take = min(chunk, left)
        w = rng.standard_normal((take, n))
        forms = np.einsum("ij,jk,ik->i", w, B, w)
        np.minimum(forms, 0.0, out=forms)
        total += float(np.sum(forms))
        total_sq += float(np.dot(forms, forms))
        left -= take
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    stderr = math.sqrt(var / samples)
    return mean, stderr
