"""Maximum-likelihood logit fit by Newton-Raphson (IRLS) with step halving.

The modeled outcome is ``y = 1``. Rows may carry positive count weights, in
which case a grouped table fits identically to its row-by-row expansion.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CollinearityError, ConvergenceError, DegenerateResponseError, DomainError, SeparationError
from .model import Coefficients, Dataset

RANK_TOLERANCE = 1e-10
MAX_HALVINGS = 40


@dataclass(frozen=True)
class FitOptions:
    max_iterations: int = 50
    score_tolerance: float = 1e-8
    divergence_bound: float = 15.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be positive")
        if not self.score_tolerance > 0:
            raise DomainError("score_tolerance must be positive")
        if not self.divergence_bound > 0:
            raise DomainError("divergence_bound must be positive")


@dataclass(frozen=True)
class FitResult:
    coefficients: Coefficients
    log_likelihood: float
    iterations: int
    converged: bool
    score_max: float
    # (iteration, log-likelihood, max |score|) after every accepted step
    trajectory: tuple = field(default=(), repr=False)


def design_matrix(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.column_stack([np.ones(x.shape[0]), x])


def _mean(eta):
    # logistic(eta) without overflow for large |eta|
    return np.exp(-np.logaddexp(0.0, -eta))


def log_likelihood(params, X, y, w=None) -> float:
    """Bernoulli log-likelihood sum_i w_i [y_i eta_i - log(1 + e^eta_i)]."""
    eta = X @ np.asarray(params, dtype=float)
    ll = y * eta - np.logaddexp(0.0, eta)
    if w is not None:
        ll = w * ll
    return float(ll.sum())


def score(params, X, y, w=None) -> np.ndarray:
    """Gradient of :func:`log_likelihood`: X^T w (y - p)."""
    r = y - _mean(X @ np.asarray(params, dtype=float))
    if w is not None:
        r = w * r
    return X.T @ r


def information(params, X, w=None) -> np.ndarray:
    """Negative Hessian X^T diag(w p (1-p)) X."""
    p = _mean(X @ np.asarray(params, dtype=float))
    v = p * (1.0 - p)
    if w is not None:
        v = w * v
    return X.T @ (X * v[:, None])


def _check_rank(X, w, names):
    # Columns of the weighted design that carry weight in a null vector are
    # the ones involved in an exact linear dependency.
    A = X * np.sqrt(w)[:, None]
    _, sv, vt = np.linalg.svd(A, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        raise CollinearityError("design matrix is zero", names)
    small = sv <= RANK_TOLERANCE * sv[0]
    if sv.size < X.shape[1]:
        small = np.concatenate([small, np.ones(X.shape[1] - sv.size, bool)])
        vt = np.linalg.svd(A, full_matrices=True)[2]
    if not small.any():
        return
    null = vt[small]
    involved = np.abs(null).max(axis=0) > 1e-8
    cols = [names[i] for i in np.flatnonzero(involved)]
    raise CollinearityError(
        "design matrix is rank deficient; dependent columns: " + ", ".join(cols), cols
    )


def fit_logit(data: Dataset, options: FitOptions | None = None) -> FitResult:
    opts = options or FitOptions()
    y = data.y.astype(float)
    w = data.row_weights()
    n_pos = float(w[y == 1].sum())
    n_neg = float(w[y == 0].sum())
    if n_pos == 0 or n_neg == 0:
        raise DegenerateResponseError(
            f"response {data.response_name!r} needs both 0 and 1 outcomes to fit "
            f"(got {n_neg:g} zeros, {n_pos:g} ones)"
        )

    X = design_matrix(data.x)
    names = ["intercept", *data.var_names]
    constant = [data.var_names[j] for j in range(data.n_vars) if np.ptp(data.x[:, j]) == 0]
    if constant:
        raise CollinearityError(
            "constant explanatory columns: " + ", ".join(constant), constant
        )
    _check_rank(X, w, names)

    beta = np.zeros(X.shape[1])
    ll = log_likelihood(beta, X, y, w)
    s = score(beta, X, y, w)
    trajectory = [(0, ll, float(np.abs(s).max()))]

    for it in range(1, opts.max_iterations + 1):
        if np.abs(s).max() <= opts.score_tolerance:
            return _result(beta, ll, it - 1, s, trajectory)
        try:
            step = np.linalg.solve(information(beta, X, w), s)
        except np.linalg.LinAlgError:
            raise SeparationError(
                "information matrix became singular; the outcome is (quasi-)separated",
                beta.tolist(),
            ) from None

        slack = 1e-12 * max(1.0, abs(ll))
        t = 1.0
        for _ in range(MAX_HALVINGS):
            cand = beta + t * step
            ll_cand = log_likelihood(cand, X, y, w)
            if ll_cand >= ll - slack:
                break
            t *= 0.5
        else:
            raise ConvergenceError(
                f"no likelihood improvement after {MAX_HALVINGS} step halvings "
                f"at iteration {it}",
                trajectory,
            )
        beta, ll = cand, ll_cand
        s = score(beta, X, y, w)
        trajectory.append((it, ll, float(np.abs(s).max())))

        if np.abs(s).max() > opts.score_tolerance and np.abs(beta).max() > opts.divergence_bound:
            worst = int(np.abs(beta).argmax())
            raise SeparationError(
                f"|{names[worst]}| = {abs(beta[worst]):.3g} exceeded the divergence bound "
                f"{opts.divergence_bound:g} before convergence; the outcome is "
                "(quasi-)completely separated",
                beta.tolist(),
            )

    if np.abs(s).max() <= opts.score_tolerance:
        return _result(beta, ll, opts.max_iterations, s, trajectory)
    raise ConvergenceError(
        f"did not converge in {opts.max_iterations} iterations "
        f"(max |score| = {np.abs(s).max():.3g})",
        trajectory,
    )


def _result(beta, ll, iterations, s, trajectory) -> FitResult:
    return FitResult(
        coefficients=Coefficients(float(beta[0]), tuple(float(b) for b in beta[1:])),
        log_likelihood=ll,
        iterations=iterations,
        converged=True,
        score_max=float(np.abs(s).max()),
        trajectory=tuple(trajectory),
    )
