"""Dense linear-algebra kernel: symmetric eigensolver, Lyapunov and Riccati
solvers, matrix exponential, and the PBH stabilizability test.

Everything here targets small systems (n up to ~10 for plants, a few hundred
for Laplacians); dense O(n^3)-and-worse methods are deliberate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import (
    NoConvergence,
    NonFinite,
    NotStabilizable,
    NotSymmetric,
    SingularSystem,
)


@dataclass(frozen=True)
class NumericsConfig:
    """Tolerances for the numerics kernel. Defaults match the documented contracts."""

    sym_tol: float = 1e-10          # symmetry check for sym_eig inputs
    lyap_residual_tol: float = 1e-10
    are_residual_tol: float = 1e-9
    are_step_tol: float = 1e-12     # successive-iterate Frobenius tolerance
    are_max_iter: int = 100
    rank_rtol: float = 1e-10        # relative singular-value cutoff (PBH)


DEFAULT_CONFIG = NumericsConfig()


@dataclass(frozen=True)
class AreSolution:
    """Stabilizing solution of PA + A^T P - P B B^T P + Q = 0."""

    P: NDArray[np.float64]
    residual_norm: float
    iterations: int


def sym_eig(m: NDArray, sym_tol: float | None = None) -> tuple[NDArray, NDArray]:
    """Eigendecomposition of a symmetric matrix.

    Returns (eigenvalues ascending, orthonormal eigenvectors as columns).
    """
    m = np.asarray(m, dtype=float)
    tol = DEFAULT_CONFIG.sym_tol if sym_tol is None else sym_tol
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > tol * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    vals, vecs = np.linalg.eigh((m + m.T) / 2.0)
    return vals, vecs


def solve_lyapunov(
    F: NDArray, Q: NDArray, cfg: NumericsConfig = DEFAULT_CONFIG
) -> NDArray[np.float64]:
    """Solve F^T X + X F + Q = 0 for symmetric X.

    Vectorizes into the n^2 x n^2 Kronecker-sum system
    (I (x) F^T + F^T (x) I) vec(X) = -vec(Q). O(n^6), fine at these sizes.
    """
    F = np.asarray(F, dtype=float)
    Q = np.asarray(Q, dtype=float)
    n = F.shape[0]
    eye = np.eye(n)
    M = np.kron(eye, F.T) + np.kron(F.T, eye)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= cfg.rank_rtol * sv[0]:
        raise SingularSystem("Lyapunov operator is singular (eigenvalue pair sums to zero)")
    vecX = np.linalg.solve(M, -Q.reshape(-1, order="F"))
    # one round of iterative refinement recovers a digit or two on
    # ill-conditioned closed loops
    defect = M @ vecX + Q.reshape(-1, order="F")
    vecX -= np.linalg.solve(M, defect)
    X = vecX.reshape((n, n), order="F")
    X = (X + X.T) / 2.0
    resid = np.linalg.norm(F.T @ X + X @ F + Q, "fro")
    if resid > cfg.lyap_residual_tol * max(1.0, np.linalg.norm(Q, "fro")):
        raise SingularSystem(f"Lyapunov residual {resid:.3e} above tolerance")
    return X


def matrix_exp(A: NDArray, t: float = 1.0) -> NDArray[np.float64]:
    """e^{A t} by scaling and squaring with a fully converged Taylor core.

    The scaled matrix has norm <= 0.5, so the series converges to machine
    precision in well under 30 terms.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    M = A * t
    if not np.all(np.isfinite(M)):
        raise NonFinite("non-finite entries in A*t")
    norm = np.linalg.norm(M, 1)
    s = 0
    if norm > 0.5:
        s = int(np.ceil(np.log2(norm / 0.5)))
        M = M / (2.0 ** s)
    E = np.eye(n)
    term = np.eye(n)
    for k in range(1, 40):
        term = term @ M / k
        E = E + term
        if np.abs(term).max() < 1e-18 * max(1.0, np.abs(E).max()):
            break
    for _ in range(s):
        E = E @ E
    if not np.all(np.isfinite(E)):
        raise NonFinite("matrix exponential overflowed")
    return E


def is_stabilizable(A: NDArray, B: NDArray, cfg: NumericsConfig = DEFAULT_CONFIG) -> bool:
    """PBH test: [A - lam*I, B] has full row rank at every eigenvalue with Re >= 0."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float).reshape(A.shape[0], -1)
    n = A.shape[0]
    for lam in np.linalg.eigvals(A):
        if lam.real < -1e-12:
            continue
        M = np.hstack([A - lam * np.eye(n), B]).astype(complex)
        sv = np.linalg.svd(M, compute_uv=False)
        if sv[-1] <= cfg.rank_rtol * sv[0]:
            return False
    return True


def _initial_gain(A: NDArray, B: NDArray, Q: NDArray, cfg: NumericsConfig) -> NDArray:
    """Stabilizing initial gain from the stable invariant subspace of the
    Hamiltonian matrix H = [[A, -B B^T], [-Q, -A^T]].

    With Q > 0 and (A, B) stabilizable, H has no imaginary-axis eigenvalues
    and exactly n stable ones; stacking their eigenvectors as [U1; U2] gives
    P0 = Re(U2 U1^{-1}), the stabilizing Riccati solution up to rounding.
    The Newton iteration downstream polishes the residual.
    """
    n = A.shape[0]
    H = np.block([[A, -B @ B.T], [-Q, -A.T]])
    vals, vecs = np.linalg.eig(H)
    stable = np.argsort(vals.real)[:n]
    U = vecs[:, stable]
    P0 = U[n:] @ np.linalg.inv(U[:n])
    P0 = np.real(P0 + P0.conj().T) / 2.0
    K0 = B.T @ P0
    if np.linalg.eigvals(A - B @ K0).real.max() < 0.0:
        return K0
    raise NotStabilizable("could not construct a stabilizing initial gain")


def solve_are(
    A: NDArray,
    B: NDArray,
    Q: NDArray,
    cfg: NumericsConfig = DEFAULT_CONFIG,
) -> AreSolution:
    """Stabilizing solution of PA + A^T P - P B B^T P + Q = 0 with Q > 0.

    Newton-Kleinman iteration: from a stabilizing gain K_k, solve the
    Lyapunov equation of the closed loop A - B K_k for P_k and update
    K_{k+1} = B^T P_k. Quadratically convergent; the initial stabilizing
    gain comes from the Hamiltonian stable subspace.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float).reshape(A.shape[0], -1)
    Q = np.asarray(Q, dtype=float)
    if not is_stabilizable(A, B, cfg):
        raise NotStabilizable("(A, B) fails the PBH stabilizability test")
    qvals, _ = sym_eig(Q)
    if qvals[0] <= 0:
        raise SingularSystem("Q must be positive definite")

    K = _initial_gain(A, B, Q, cfg)
    P_prev = None
    best = None  # (residual, P, iteration); rounding can jitter late iterates
    for it in range(1, cfg.are_max_iter + 1):
        F = A - B @ K
        # closed-loop Lyapunov: F^T P + P F + (Q + K^T K) = 0
        P = solve_lyapunov(F, Q + K.T @ K, cfg)
        P = (P + P.T) / 2.0
        K = B.T @ P
        resid = float(np.linalg.norm(P @ A + A.T @ P - P @ B @ B.T @ P + Q, "fro"))
        if best is None or resid < best[0]:
            best = (resid, P, it)
        if resid <= cfg.are_residual_tol:
            break
        if P_prev is not None and np.linalg.norm(P - P_prev, "fro") <= cfg.are_step_tol * max(
            1.0, np.linalg.norm(P, "fro")
        ):
            break
        P_prev = P

    resid, P, it = best
    if resid > cfg.are_residual_tol:
        raise NoConvergence(f"ARE residual {resid:.3e} above tolerance {cfg.are_residual_tol:.1e}")
    return AreSolution(P=P, residual_norm=resid, iterations=it)
