"""Petz, rotated and universal recovery maps, and the mixing densities.

The universal map is a weighted mixture of rotated Petz maps; the mixing
density ``beta0(t) = (pi/2) / (cosh(pi t) + 1)`` is discretized by an
exactly normalized rule so that the mixture is itself a channel on the
support of the reference output state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import Channel
from .linalg import _psd_eigensystem, dagger

_TNI_TOL = 1e-9


# ---------------------------------------------------------------------------
# mixing densities
# ---------------------------------------------------------------------------

def beta0_density(t):
    """``(pi/2) / (cosh(pi t) + 1)``, the limiting mixture density."""
    t = np.asarray(t, dtype=float)
    return (np.pi / 2.0) / (np.cosh(np.pi * t) + 1.0)


def alpha_theta_density(t, theta: float):
    """``sin(pi theta) / (2 (1-theta) (cosh(pi t) - cos(pi theta)))``."""
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    t = np.asarray(t, dtype=float)
    return np.sin(np.pi * theta) / (
        2.0 * (1.0 - theta) * (np.cosh(np.pi * t) - np.cos(np.pi * theta))
    )


def beta_theta_density(t, theta: float):
    """``sin(pi theta) / (2 theta (cosh(pi t) + cos(pi theta)))``.

    Converges pointwise to ``beta0_density`` as ``theta`` decreases to 0.
    """
    if theta == 0.0:
        return beta0_density(t)
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    t = np.asarray(t, dtype=float)
    return np.sin(np.pi * theta) / (
        2.0 * theta * (np.cosh(np.pi * t) + np.cos(np.pi * theta))
    )


def beta_densities(t, theta: float = 0.0):
    """``beta0(t)`` for ``theta == 0``, else the pair ``(alpha_theta, beta_theta)``."""
    if theta == 0.0:
        return beta0_density(t)
    return alpha_theta_density(t, theta), beta_theta_density(t, theta)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights discretizing a probability density."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be matching 1-d arrays")
        if not np.all(np.isfinite(nodes)) or np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be finite and strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(float(weights.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to one")

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))


def _window(n: int) -> float:
    # Balance the exp(-pi T) density tail against the node spacing.
    return 0.8 * np.sqrt(n - 1.0)


def beta_quadrature(n_nodes: int, theta: float = 0.0) -> QuadratureRule:
    """Quadrature rule for ``beta_theta`` (``theta=0`` gives ``beta0``).

    Equally spaced nodes on a window that grows like ``sqrt(n)``, with
    trapezoid weights proportional to the density and renormalized so the
    weights sum to one exactly.  The equal spacing keeps the rule accurate
    for the oscillatory integrands produced by rotated recovery maps.
    """
    if n_nodes < 3:
        raise ValueError(f"need at least 3 nodes, got {n_nodes}")
    half = _window(n_nodes)
    nodes = np.linspace(-half, half, n_nodes)
    weights = np.asarray(beta_theta_density(nodes, theta), dtype=float).copy()
    weights[0] *= 0.5
    weights[-1] *= 0.5
    weights /= weights.sum()
    return QuadratureRule(nodes, weights)


def beta0_quadrature(n_nodes: int) -> QuadratureRule:
    """Quadrature rule for the universal mixture density ``beta0``."""
    return beta_quadrature(n_nodes, theta=0.0)


# ---------------------------------------------------------------------------
# recovery maps
# ---------------------------------------------------------------------------

class RecoveryMap:
    """Completely positive, trace non-increasing reversal of a channel.

    A recovery map is realized by an explicit Kraus list mapping the
    channel output space back to its input space.  It is trace preserving
    on the support of ``channel(sigma)`` and annihilates the orthogonal
    complement of that support.  ``kind`` is one of ``"petz"``,
    ``"rotated"``, ``"phase-rotated"`` or ``"mixture"``; mixtures also
    retain their components and weights for per-node diagnostics.
    """

    def __init__(
        self,
        kind: str,
        kraus,
        sigma: np.ndarray,
        channel: Channel,
        t: float | None = None,
        nodes=None,
        weights=None,
        components=None,
        phases=None,
    ):
        self.kind = kind
        self.kraus = np.stack([np.asarray(k, dtype=complex) for k in kraus])
        self.sigma = np.asarray(sigma, dtype=complex)
        self.channel = channel
        self.t = t
        self.nodes = None if nodes is None else np.asarray(nodes, dtype=float)
        self.weights = None if weights is None else np.asarray(weights, dtype=float)
        self.components = None if components is None else tuple(components)
        self.phases = phases

        s = np.einsum("kij,kil->jl", self.kraus.conj(), self.kraus)
        top = float(np.max(np.linalg.eigvalsh(s)))
        if top > 1.0 + _TNI_TOL:
            raise ValueError(
                f"recovery map is not trace non-increasing: max eig {top - 1.0:.3e} above 1"
            )

    @property
    def dim_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def dim_out(self) -> int:
        return self.kraus.shape[1]

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.apply(x)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply the flattened Kraus realization to ``x``."""
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim_in, self.dim_in):
            raise ValueError(
                f"input of shape {x.shape} does not match dim_in {self.dim_in}"
            )
        return np.einsum("kij,jl,kml->im", self.kraus, x, self.kraus.conj())

    def apply_components(self, x: np.ndarray) -> np.ndarray:
        """Apply a mixture through its weighted components (for cross-checks)."""
        if self.components is None:
            return self.apply(x)
        out = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for w, comp in zip(self.weights, self.components):
            out += w * comp.apply(x)
        return out

    def adjoint_apply(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=complex)
        return np.einsum("kji,jl,klm->im", self.kraus.conj(), y, self.kraus)

    def as_channel(self) -> Channel:
        """View as a trace non-increasing channel object."""
        return Channel(list(self.kraus), mode="tni")

    def choi(self) -> np.ndarray:
        return self.as_channel().choi()


class _PetzFactory:
    """Shared eigendecompositions for building rotated Petz maps per node."""

    def __init__(self, sigma, channel: Channel, rank_tol=None):
        sigma = np.asarray(sigma, dtype=complex)
        if sigma.shape != (channel.dim_in, channel.dim_in):
            raise ValueError(
                f"sigma of shape {sigma.shape} does not match channel input "
                f"dimension {channel.dim_in}"
            )
        self.sigma = sigma
        self.channel = channel
        self.n_sigma = channel.apply(sigma)
        if float(np.trace(self.n_sigma).real) <= channel.dim_out * 1e-14:
            raise ValueError("channel output on sigma is numerically zero")
        self.s_vals, self.s_vecs = _psd_eigensystem(sigma, rank_tol)
        self.m_vals, self.m_vecs = _psd_eigensystem(self.n_sigma, rank_tol)
        self.kraus_dg = [dagger(k) for k in channel.kraus]

    def _power(self, vals, vecs, exponent: complex) -> np.ndarray:
        f = np.zeros(len(vals), dtype=complex)
        pos = vals > 0.0
        f[pos] = np.exp(exponent * np.log(vals[pos]))
        return (vecs * f) @ dagger(vecs)

    def rotated_kraus(self, t: float):
        """Kraus list of the rotated Petz map at parameter ``t``."""
        if t == 0.0:
            left = self._power(self.s_vals, self.s_vecs, 0.5)
            right = self._power(self.m_vals, self.m_vecs, -0.5)
        else:
            left = self._power(self.s_vals, self.s_vecs, 0.5 - 1j * t)
            right = self._power(self.m_vals, self.m_vecs, -0.5 + 1j * t)
        return [left @ kd @ right for kd in self.kraus_dg]


def petz(sigma: np.ndarray, channel: Channel, rank_tol: float | None = None) -> RecoveryMap:
    """Petz recovery map of ``(sigma, channel)``.

    Kraus operators ``sigma^{1/2} K_i^dag N(sigma)^{-1/2}`` with the
    negative power taken on the support of ``N(sigma)``.  Perfectly
    recovers ``sigma`` from ``channel(sigma)``.
    """
    factory = _PetzFactory(sigma, channel, rank_tol)
    return RecoveryMap("petz", factory.rotated_kraus(0.0), sigma, channel, t=0.0)


def rotated_petz(
    sigma: np.ndarray, channel: Channel, t: float, rank_tol: float | None = None
) -> RecoveryMap:
    """Rotated Petz map: the Petz map conjugated by the commuting unitaries
    ``sigma^{-it}`` and ``N(sigma)^{it}`` (support-restricted)."""
    factory = _PetzFactory(sigma, channel, rank_tol)
    return RecoveryMap("rotated", factory.rotated_kraus(t), sigma, channel, t=t)


def rotated_petz_family(
    sigma: np.ndarray, channel: Channel, ts, rank_tol: float | None = None
):
    """Rotated Petz maps at each parameter in ``ts``, sharing one
    eigendecomposition of ``sigma`` and ``channel(sigma)``."""
    factory = _PetzFactory(sigma, channel, rank_tol)
    return [
        RecoveryMap("rotated", factory.rotated_kraus(float(t)), sigma, channel, t=float(t))
        for t in np.asarray(ts, dtype=float)
    ]


def universal_recovery(
    sigma: np.ndarray,
    channel: Channel,
    rule: QuadratureRule,
    rank_tol: float | None = None,
) -> RecoveryMap:
    """Universal recovery map: the ``beta0``-weighted mixture of rotated
    Petz maps at half the node parameter.

    Depends only on ``sigma`` and the channel.  The flattened Kraus list
    scales each component by the square root of its weight; components and
    weights are retained for per-node diagnostics.
    """
    factory = _PetzFactory(sigma, channel, rank_tol)
    components = []
    flat = []
    for t, w in zip(rule.nodes, rule.weights):
        ops = factory.rotated_kraus(t / 2.0)
        components.append(
            RecoveryMap("rotated", ops, sigma, channel, t=t / 2.0)
        )
        flat.extend(np.sqrt(w) * k for k in ops)
    return RecoveryMap(
        "mixture",
        flat,
        sigma,
        channel,
        nodes=rule.nodes / 2.0,
        weights=rule.weights,
        components=components,
    )


def eigenspace_phase_unitary(h: np.ndarray, phases, cluster_tol: float = 1e-8) -> np.ndarray:
    """Unitary ``sum_k exp(i phi_k) P_k`` over the eigenspaces of PSD ``h``.

    Eigenvalues are clustered with relative tolerance ``cluster_tol``; the
    kernel (everything below the rank cutoff) counts as one eigenspace.
    The phase vector length must match the number of eigenspaces.
    """
    vals, vecs = _psd_eigensystem(h, None)
    scale = float(vals[0]) if vals[0] > 0 else 1.0
    clusters = []
    for idx, v in enumerate(vals):
        if clusters and abs(clusters[-1][-1][1] - v) <= cluster_tol * scale:
            clusters[-1].append((idx, v))
        else:
            clusters.append([(idx, v)])
    phases = np.asarray(phases, dtype=float)
    if len(phases) != len(clusters):
        raise ValueError(
            f"phase vector of length {len(phases)} does not match "
            f"{len(clusters)} eigenspaces"
        )
    diag = np.ones(len(vals), dtype=complex)
    for phi, cluster in zip(phases, clusters):
        for idx, _ in cluster:
            diag[idx] = np.exp(1j * phi)
    return (vecs * diag) @ dagger(vecs)


def count_eigenspaces(h: np.ndarray, cluster_tol: float = 1e-8) -> int:
    """Number of distinct eigenspaces of PSD ``h`` (kernel counts once)."""
    vals, _ = _psd_eigensystem(h, None)
    scale = float(vals[0]) if vals[0] > 0 else 1.0
    count = 1
    for prev, cur in zip(vals[:-1], vals[1:]):
        if abs(prev - cur) > cluster_tol * scale:
            count += 1
    return count


def phase_rotated_petz(
    sigma: np.ndarray,
    channel: Channel,
    phi,
    theta,
    rank_tol: float | None = None,
) -> RecoveryMap:
    """Petz map conjugated by eigenspace-phase unitaries of ``N(sigma)``
    (phases ``phi``, applied before) and of ``sigma`` (phases ``theta``,
    applied after).  Both unitaries commute with their operators by
    construction."""
    factory = _PetzFactory(sigma, channel, rank_tol)
    u_out = eigenspace_phase_unitary(factory.n_sigma, phi)
    u_in = eigenspace_phase_unitary(sigma, theta)
    ops = [u_in @ k @ u_out for k in factory.rotated_kraus(0.0)]
    return RecoveryMap(
        "phase-rotated", ops, sigma, channel, phases=(np.asarray(phi), np.asarray(theta))
    )


def convex_mixture(maps, weights) -> RecoveryMap:
    """Convex combination of recovery maps sharing the same spaces."""
    maps = list(maps)
    if not maps:
        raise ValueError("mixture needs at least one component")
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(maps):
        raise ValueError("one weight per component required")
    if np.any(weights < 0) or abs(float(weights.sum()) - 1.0) > 1e-12:
        raise ValueError("weights must be nonnegative and sum to one")
    dims = {(m.dim_in, m.dim_out) for m in maps}
    if len(dims) != 1:
        raise ValueError(f"components act between different spaces: {dims}")
    flat = []
    for w, m in zip(weights, maps):
        if w == 0.0:
            continue
        flat.extend(np.sqrt(w) * k for k in m.kraus)
    nodes = None
    if all(m.kind in ("petz", "rotated") for m in maps):
        nodes = np.array([m.t for m in maps], dtype=float)
    return RecoveryMap(
        "mixture",
        flat,
        maps[0].sigma,
        maps[0].channel,
        nodes=nodes,
        weights=weights,
        components=maps,
    )


__all__ = [
    "QuadratureRule",
    "RecoveryMap",
    "alpha_theta_density",
    "beta0_density",
    "beta0_quadrature",
    "beta_densities",
    "beta_quadrature",
    "beta_theta_density",
    "convex_mixture",
    "count_eigenspaces",
    "eigenspace_phase_unitary",
    "petz",
    "phase_rotated_petz",
    "rotated_petz",
    "rotated_petz_family",
    "universal_recovery",
]
