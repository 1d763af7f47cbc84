"""The two distributed average-tracking laws: boundary-layer smoothing,
static-gain closed loop, adaptive closed loop, and the gain design recipe."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from . import graph as graphmod
from .errors import ConfigError, NotConnected
from .numerics import NumericsConfig, DEFAULT_CONFIG, solve_are
from .signals import LinearPlant, ReferenceSet


def boundary_layer(w: NDArray, eps: float, phi: float, t: float) -> NDArray[np.float64]:
    """Smoothed unit direction w / (||w|| + eps * e^{-phi t}).

    Continuous everywhere (including w = 0); norm strictly below 1. The
    eps*e^{-phi t} term is the shrinking boundary-layer width.
    """
    w = np.asarray(w, dtype=float)
    return w / (np.linalg.norm(w) + eps * np.exp(-phi * t))


def discontinuous_sign(w: NDArray) -> NDArray[np.float64]:
    """Unit direction w/||w||, zero at (numerically) zero w."""
    w = np.asarray(w, dtype=float)
    nrm = np.linalg.norm(w)
    if nrm <= 1e-15:
        return np.zeros_like(w)
    return w / nrm


@dataclass(frozen=True)
class StaticGains:
    """Designed constants of the static-coupling law."""

    K: NDArray[np.float64]       # m x n feedback gain, K = -B^T P
    c1: float
    c2: float
    eps: float
    phi: float
    P: NDArray[np.float64]       # ARE solution behind K

    def __post_init__(self):
        if self.eps <= 0 or self.phi <= 0:
            raise ConfigError("eps and phi must be positive")
        if self.c1 < 0 or self.c2 < 0:
            raise ConfigError("coupling strengths must be nonnegative")


@dataclass(frozen=True)
class AdaptiveParams:
    """Designed constants of the adaptive-coupling law."""

    K: NDArray[np.float64]       # m x n, K = -B^T P
    Gamma: NDArray[np.float64]   # n x n, Gamma = P B B^T P = K^T K
    mu: float
    nu: float
    theta: float
    chi: float
    eps: float
    phi: float
    P: NDArray[np.float64]
    alpha0: float = 0.0          # shared per-edge initial gains
    beta0: float = 0.0

    def __post_init__(self):
        if min(self.mu, self.nu, self.theta, self.chi) <= 0:
            raise ConfigError("mu, nu, theta, chi must be positive")
        if self.eps <= 0 or self.phi <= 0:
            raise ConfigError("eps and phi must be positive")


@dataclass
class NetworkState:
    """Agent states plus, in adaptive mode, one gain pair per undirected edge.

    Storing edge gains once per edge (not per ordered pair) enforces the
    alpha_ij = alpha_ji symmetry exactly.
    """

    t: float
    x: NDArray[np.float64]                 # (N, n)
    alpha: NDArray[np.float64] | None = None   # (E,)
    beta: NDArray[np.float64] | None = None    # (E,)


def design_gains(
    plant: LinearPlant,
    g: graphmod.Graph,
    Q: NDArray,
    f0: float,
    eps: float = 5.0,
    phi: float = 0.5,
    margins: tuple[float, float] = (1.0, 1.0),
    cfg: NumericsConfig = DEFAULT_CONFIG,
) -> StaticGains:
    """Gain design recipe: ARE solve, then minimal compliant couplings.

    c1 = margin1 / (2*lambda2), c2 = margin2 * f0 * (N - 1); margins of 1
    sit exactly on the design bounds.
    """
    if not graphmod.is_connected(g):
        raise NotConnected("gain design requires a connected graph")
    if margins[0] < 1.0 or margins[1] < 1.0:
        raise ConfigError("margins must be >= 1")
    sol = solve_are(plant.A, plant.B, np.asarray(Q, dtype=float), cfg)
    K = -plant.B.T @ sol.P
    lam2 = graphmod.lambda2(g)
    c1 = margins[0] / (2.0 * lam2)
    c2 = margins[1] * f0 * (g.n_nodes - 1)
    return StaticGains(K=K, c1=c1, c2=c2, eps=eps, phi=phi, P=sol.P)


@lru_cache(maxsize=64)
def _edge_structure(g: graphmod.Graph) -> tuple[NDArray, NDArray, NDArray]:
    """(tails, heads, incidence) for fast edge-difference / accumulation ops."""
    if g.n_edges == 0:
        return np.empty(0, dtype=int), np.empty(0, dtype=int), np.zeros((g.n_nodes, 0))
    e = np.asarray(g.edges, dtype=int)
    return e[:, 0], e[:, 1], graphmod.incidence_matrix(g)


def edge_signals(
    x: NDArray, K: NDArray, g: graphmod.Graph
) -> NDArray[np.float64]:
    """Per-edge coupling signals K(x_i - x_j), one row per stored edge."""
    ei, ej, _ = _edge_structure(g)
    return (x[ei] - x[ej]) @ K.T


def static_rhs(
    state: NetworkState,
    rs: ReferenceSet,
    gains: StaticGains,
    g: graphmod.Graph,
    discontinuous: bool = False,
    inputs: NDArray | None = None,
) -> NetworkState:
    """Closed-loop vector field of the static law.

    dx_i = A x_i + c1 B sum_j K(x_i - x_j) + c2 B sum_j h_i[K(x_i - x_j)] + B f_i.
    With discontinuous=True the smoothed h_i is replaced by the unit-direction
    sign term (chattering-comparison mode). `inputs` may carry a precomputed
    rs.eval_inputs(t) to avoid re-evaluation.
    """
    A, B = rs.plant.A, rs.plant.B
    x = state.x
    t = state.t
    f = rs.eval_inputs(t) if inputs is None else inputs
    dx = x @ A.T + f @ B.T
    ei, ej, D = _edge_structure(g)
    if len(ei):
        w = (x[ei] - x[ej]) @ gains.K.T            # (E, m)
        norms = np.linalg.norm(w, axis=1, keepdims=True)
        if discontinuous:
            h = np.where(norms > 1e-15, w / np.where(norms > 0, norms, 1.0), 0.0)
        else:
            h = w / (norms + gains.eps * np.exp(-gains.phi * t))
        # incidence matrix scatters +term to tails, -term to heads
        dx += D @ ((gains.c1 * w + gains.c2 * h) @ B.T)
    return NetworkState(t=1.0, x=dx)


def adaptive_rhs(
    state: NetworkState,
    rs: ReferenceSet,
    params: AdaptiveParams,
    g: graphmod.Graph,
    inputs: NDArray | None = None,
) -> NetworkState:
    """Closed-loop vector field of the adaptive law plus the two
    sigma-modified edge adaptation laws."""
    if state.alpha is None or state.beta is None:
        raise ConfigError("adaptive mode needs edge gains in the state")
    A, B = rs.plant.A, rs.plant.B
    x = state.x
    t = state.t
    f = rs.eval_inputs(t) if inputs is None else inputs
    dx = x @ A.T + f @ B.T
    ei, ej, D = _edge_structure(g)
    dalpha = np.zeros_like(state.alpha)
    dbeta = np.zeros_like(state.beta)
    if len(ei):
        d = x[ei] - x[ej]                          # (E, n)
        w = d @ params.K.T                         # (E, m)
        norms = np.linalg.norm(w, axis=1)
        denom = norms + params.eps * np.exp(-params.phi * t)
        h = w / denom[:, None]
        dx += D @ ((state.alpha[:, None] * w + state.beta[:, None] * h) @ B.T)
        quad = np.einsum("ei,ij,ej->e", d, params.Gamma, d)
        dalpha = params.mu * (-params.theta * state.alpha + quad)
        dbeta = params.nu * (-params.chi * state.beta + norms**2 / denom)
    return NetworkState(t=1.0, x=dx, alpha=dalpha, beta=dbeta)
