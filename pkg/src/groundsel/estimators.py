"""Estimator-style wrapper over the selection methods.

``GroundingSelector`` follows the fit/transform protocol: ``fit(X)``
runs a selection method on the symmetric matrix X and stores the kept
support, ``transform(X)`` extracts the kept principal submatrix.  The
wrapper makes the selectors usable inside pipelines and grid searches;
the functional API in :mod:`groundsel.selection` remains the primary
surface.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import selection
from .graph import split_laplacian
from .linalg import sym_matrix


class GroundingSelector(BaseEstimator, TransformerMixin):
    """Select rows/columns to remove so the kept block clears a
    spectral threshold.

    Parameters
    ----------
    method : str
        One of ``greedy_q``, ``inv_trace``, ``logdet``, ``degree``,
        ``random``, ``brute_force``.
    beta : float
        Eigenvalue threshold the kept principal submatrix must meet.
        The ``inv_trace`` method interprets it as its rate shift; the
        ``logdet`` method only supports 0.
    eps : float
        Quadrature error target for the certificate-driven method.
    seed : int
        Removal order seed for the ``random`` method.
    alpha, zeta : float or None
        Log-det sweep parameters; derived from the spectrum when None.
    """

    def __init__(self, method: str = "greedy_q", beta: float = 0.0,
                 eps: float = 1e-6, seed: int = 0,
                 alpha: float | None = None, zeta: float | None = None):
        self.method = method
        self.beta = beta
        self.eps = eps
        self.seed = seed
        self.alpha = alpha
        self.zeta = zeta

    def fit(self, X, y=None):
        if self.method not in selection.METHODS:
            raise ValueError(
                f"method must be one of {selection.METHODS}, "
                f"got {self.method!r}")
        X = check_array(X, dtype=float, ensure_2d=True)
        A = sym_matrix(X)
        self.result_ = self._dispatch(A)
        n = A.shape[0]
        self.n_features_in_ = n
        self.removed_ = np.asarray(self.result_.removed, dtype=int)
        self.support_ = np.ones(n, dtype=bool)
        self.support_[self.removed_] = False
        return self

    def _dispatch(self, A):
        if self.method == "greedy_q":
            return selection.greedy_q(A, beta=self.beta, eps=self.eps)
        if self.method == "inv_trace":
            return selection.greedy_inv_trace(A, rate_shift=self.beta)
        if self.method == "logdet":
            if self.beta != 0.0:
                raise ValueError("logdet method only supports beta=0")
            alpha = self.alpha
            if alpha is None:
                alpha = selection.choose_alpha(A)
            zeta = self.zeta
            if zeta is None:
                _, l_minus = split_laplacian(A)
                zeta = float(np.linalg.eigvalsh(l_minus)[-1])
                if zeta <= 0.0:
                    zeta = 1e-3
            return selection.logdet_cardinality_sweep(A, alpha, zeta)
        if self.method == "degree":
            return selection.baseline_degree(A, beta=self.beta)
        if self.method == "random":
            return selection.baseline_random(A, beta=self.beta,
                                             seed=self.seed)
        return selection.brute_force_min_set(A, beta=self.beta)

    def get_support(self, indices: bool = False):
        """Kept indices, as a boolean mask or an index array."""
        check_is_fitted(self, "support_")
        if indices:
            return np.flatnonzero(self.support_)
        return self.support_.copy()

    def transform(self, X):
        """Kept principal submatrix of X."""
        check_is_fitted(self, "support_")
        X = check_array(X, dtype=float, ensure_2d=True)
        if X.shape != (self.n_features_in_, self.n_features_in_):
            raise ValueError(
                f"expected a {self.n_features_in_}x{self.n_features_in_} "
                f"matrix, got {X.shape}")
        kept = np.flatnonzero(self.support_)
        return X[np.ix_(kept, kept)]
