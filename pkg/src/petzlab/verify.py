"""Inequality harness: remainder-term bounds, sweeps and studies.

Every report carries the left and right side of its inequality together
with the slack (left minus right); the slack is nonnegative up to
floating-point tolerance whenever the underlying theorem applies.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .channels import (
    Channel,
    partial_trace_channel,
    random_channel,
    random_density,
)
from .entropy import (
    binary_entropy,
    conditional_mutual_information,
    fidelity,
    fidelity_measurement,
    measured_relative_entropy_lb,
    relative_entropy,
    renyi_delta,
    support_violation,
    von_neumann_entropy,
)
from .linalg import eig_hermitian, dagger, partial_trace, tensor_product
from .recovery import (
    QuadratureRule,
    RecoveryMap,
    beta0_density,
    beta_quadrature,
    convex_mixture,
    petz,
    rotated_petz_family,
    universal_recovery,
)

DEFAULT_SUPPORT_TOL = 1e-10


def _neg2log(x: float) -> float:
    if x <= 0.0:
        return float(np.inf)
    return -2.0 * float(np.log(x))


def _slack(lhs: float, rhs: float) -> float:
    # an infinite left side passes trivially; never returns NaN
    if np.isinf(lhs) and lhs > 0:
        return float(np.inf)
    return lhs - rhs


# ---------------------------------------------------------------------------
# data processing inequality
# ---------------------------------------------------------------------------

@dataclass
class DpiReport:
    """Both sides of the remainder-term data processing inequality.

    ``lhs`` is the relative entropy difference; ``rhs_mixture`` uses the
    fidelity with the mixed universal map, ``rhs_strong`` averages the
    per-node log-fidelities (never smaller than ``rhs_mixture`` up to
    rounding, by concavity).  ``exploratory_relative_entropy`` is
    ``D(rho || recovered)``, reported as data only; no proven bound uses it.
    """

    lhs: float
    rhs_mixture: float
    rhs_strong: float
    slack_mixture: float
    slack_strong: float
    per_node_fidelities: np.ndarray
    recovered_state: np.ndarray
    exploratory_relative_entropy: float
    support_violated: bool


def dpi_remainder(
    rho: np.ndarray,
    sigma: np.ndarray,
    channel: Channel,
    rule: QuadratureRule,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> DpiReport:
    """Evaluate the universal-recovery remainder bound on one instance."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    recovery = universal_recovery(sigma, channel, rule)
    out_rho = channel.apply(rho)

    recs = [comp.apply(out_rho) for comp in recovery.components]
    fids = np.array([fidelity(rho, rec) for rec in recs])
    mixture_rec = np.tensordot(recovery.weights, np.array(recs), axes=1)

    if np.all(fids > 0.0):
        rhs_strong = float(-2.0 * np.dot(recovery.weights, np.log(fids)))
    else:
        rhs_strong = float(np.inf)
    rhs_mixture = _neg2log(fidelity(rho, mixture_rec))

    violated = support_violation(rho, sigma) > support_tol
    if violated:
        lhs = float(np.inf)
    else:
        lhs = relative_entropy(rho, sigma, support_tol) - relative_entropy(
            channel.apply(rho), channel.apply(sigma), support_tol
        )
    exploratory = relative_entropy(rho, mixture_rec, support_tol)
    return DpiReport(
        lhs=lhs,
        rhs_mixture=rhs_mixture,
        rhs_strong=rhs_strong,
        slack_mixture=_slack(lhs, rhs_mixture),
        slack_strong=_slack(lhs, rhs_strong),
        per_node_fidelities=fids,
        recovered_state=mixture_rec,
        exploratory_relative_entropy=exploratory,
        support_violated=violated,
    )


@dataclass
class AlphaBoundResult:
    alpha: float
    lhs: float
    rhs: float
    slack: float


def alpha_bound_check(
    rho: np.ndarray,
    sigma: np.ndarray,
    channel: Channel,
    alphas,
    rule: QuadratureRule,
) -> list[AlphaBoundResult]:
    """Renyi-difference lower bounds at finite ``alpha``.

    For ``alpha`` in ``(1/2, 1)`` this compares the Renyi difference with
    the ``beta_theta``-averaged log-fidelity of rotated recovery at half
    the node parameter, ``theta = (1 - alpha)/alpha``; at ``alpha = 1/2``
    exactly, it checks the identity with the Petz-recovery fidelity.  The
    ``beta_theta`` rules use a denser grid than ``rule`` because that
    density has poles closer to the real axis.
    """
    results = []
    out_rho = channel.apply(rho)
    for alpha in alphas:
        alpha = float(alpha)
        lhs = renyi_delta(rho, sigma, channel, alpha)
        if alpha == 0.5:
            rec = petz(sigma, channel).apply(out_rho)
            rhs = _neg2log(fidelity(rho, rec))
        elif 0.5 < alpha < 1.0:
            theta = (1.0 - alpha) / alpha
            theta_rule = beta_quadrature(2 * len(rule) - 1, theta)
            family = rotated_petz_family(sigma, channel, theta_rule.nodes / 2.0)
            fids = np.array([fidelity(rho, m.apply(out_rho)) for m in family])
            if np.all(fids > 0.0):
                rhs = float(-2.0 * np.dot(theta_rule.weights, np.log(fids)))
            else:
                rhs = float(np.inf)
        else:
            raise ValueError(f"alpha must lie in [1/2, 1), got {alpha}")
        results.append(AlphaBoundResult(alpha=alpha, lhs=lhs, rhs=rhs, slack=_slack(lhs, rhs)))
    return results


# ---------------------------------------------------------------------------
# entropy-inequality corollaries
# ---------------------------------------------------------------------------

@dataclass
class SsaReport:
    cmi: float
    rhs: float
    slack: float
    recovered_fidelity: float
    recovered_state: np.ndarray


def ssa_remainder(rho_abc: np.ndarray, dims, rule: QuadratureRule) -> SsaReport:
    """Strong subadditivity with a recovery remainder.

    Rebuilds the C part of a tripartite state from its B part alone with
    the universal map of ``(rho_BC, tr_C)`` and compares ``I(A:C|B)``
    against ``-2 log F`` of the reconstruction.
    """
    da, db, dc = (int(d) for d in dims)
    rho_abc = np.asarray(rho_abc, dtype=complex)
    rho_ab = partial_trace(rho_abc, (da, db, dc), keep=(0, 1))
    rho_bc = partial_trace(rho_abc, (da, db, dc), keep=(1, 2))

    trace_c = partial_trace_channel((db, dc), keep=(0,))
    recovery = universal_recovery(rho_bc, trace_c, rule)
    eye_a = np.eye(da, dtype=complex)
    lifted = [tensor_product(eye_a, k) for k in recovery.kraus]
    rec = np.einsum("kij,jl,kml->im", np.stack(lifted), rho_ab, np.stack(lifted).conj())

    cmi = conditional_mutual_information(rho_abc, (da, db, dc))
    f = fidelity(rho_abc, rec)
    rhs = _neg2log(f)
    return SsaReport(cmi=cmi, rhs=rhs, slack=_slack(cmi, rhs), recovered_fidelity=f,
                     recovered_state=rec)


def _check_simplex(weights, atol=1e-12):
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0) or abs(float(weights.sum()) - 1.0) > atol:
        raise ValueError("ensemble weights must be nonnegative and sum to one")
    return weights


@dataclass
class EnsembleReport:
    lhs: float
    rhs: float
    slack: float
    member_fidelities: np.ndarray
    support_flags: tuple = ()


def concavity_remainder(ensemble, dims, rule: QuadratureRule) -> EnsembleReport:
    """Concavity of the conditional entropy with a recovery remainder.

    ``ensemble`` is a sequence of ``(weight, rho_AB)`` pairs on the space
    with factor dimensions ``dims = (dA, dB)``.  Each member's A part is
    rebuilt from its B marginal with the universal map of the average
    state, ``(rho_bar_AB, tr_A)``.
    """
    da, db = (int(d) for d in dims)
    weights = _check_simplex([w for w, _ in ensemble])
    states = [np.asarray(s, dtype=complex) for _, s in ensemble]
    avg = np.tensordot(weights, np.array(states), axes=1)

    def cond_ent(rho_ab):
        return von_neumann_entropy(rho_ab) - von_neumann_entropy(
            partial_trace(rho_ab, (da, db), keep=(1,))
        )

    lhs = cond_ent(avg) - float(
        np.dot(weights, [cond_ent(s) for s in states])
    )

    trace_a = partial_trace_channel((da, db), keep=(1,))
    recovery = universal_recovery(avg, trace_a, rule)
    fids = np.array(
        [
            fidelity(s, recovery.apply(partial_trace(s, (da, db), keep=(1,))))
            for s in states
        ]
    )
    rhs = _neg2log(float(np.dot(weights, fids)))
    return EnsembleReport(lhs=lhs, rhs=rhs, slack=_slack(lhs, rhs), member_fidelities=fids)


def joint_convexity_remainder(
    ensemble, rule: QuadratureRule, support_tol: float = DEFAULT_SUPPORT_TOL
) -> EnsembleReport:
    """Joint convexity of the relative entropy with a recovery remainder.

    ``ensemble`` is a sequence of ``(weight, rho_x, sigma_x)`` triples on a
    common space.  The classical label is embedded as a block index, the
    universal map of ``(sigma_XA, tr_X)`` re-inflates the averaged state,
    and the remainder compares against the fidelity with the labeled state.
    """
    weights = _check_simplex([w for w, _, _ in ensemble])
    rhos = [np.asarray(r, dtype=complex) for _, r, _ in ensemble]
    sigmas = [np.asarray(s, dtype=complex) for _, _, s in ensemble]
    dim = rhos[0].shape[0]
    nx = len(ensemble)

    flags = tuple(support_violation(r, s) > support_tol for r, s in zip(rhos, sigmas))
    rho_avg = np.tensordot(weights, np.array(rhos), axes=1)
    sigma_avg = np.tensordot(weights, np.array(sigmas), axes=1)

    lhs = float(
        np.dot(weights, [relative_entropy(r, s, support_tol) for r, s in zip(rhos, sigmas)])
    ) - relative_entropy(rho_avg, sigma_avg, support_tol)

    rho_xa = np.zeros((nx * dim, nx * dim), dtype=complex)
    sigma_xa = np.zeros_like(rho_xa)
    for x, (w, r, s) in enumerate(zip(weights, rhos, sigmas)):
        sl = slice(x * dim, (x + 1) * dim)
        rho_xa[sl, sl] = w * r
        sigma_xa[sl, sl] = w * s

    trace_x = partial_trace_channel((nx, dim), keep=(1,))
    recovery = universal_recovery(sigma_xa, trace_x, rule)
    rec = recovery.apply(rho_avg)
    rhs = _neg2log(fidelity(rho_xa, rec))

    member_fids = []
    for x, (w, r) in enumerate(zip(weights, rhos)):
        if w <= 0.0:
            member_fids.append(np.nan)
            continue
        block = rec[x * dim : (x + 1) * dim, x * dim : (x + 1) * dim] / w
        member_fids.append(fidelity(r, block))
    return EnsembleReport(
        lhs=lhs,
        rhs=rhs,
        slack=_slack(lhs, rhs),
        member_fidelities=np.array(member_fids),
        support_flags=flags,
    )


# ---------------------------------------------------------------------------
# approximate quantum error correction
# ---------------------------------------------------------------------------

@dataclass
class QecReport:
    """Sampled forward and converse bounds for a codespace under noise."""

    dim_code: int
    sampled_max_gap: float
    min_recovered_fidelity: float
    forward_bound: float
    converse_bound: float
    forward_ok: bool
    converse_ok: bool
    gaps: np.ndarray
    fidelities: np.ndarray


def qec_analyze(
    projector: np.ndarray,
    channel: Channel,
    samples: int,
    rule: QuadratureRule,
    seed=0,
    tol: float = 1e-8,
) -> QecReport:
    """Approximate error correction diagnostics for a codespace.

    Samples codespace states (alternating full-rank and pure), records the
    distinguishability gap ``D(rho||Pi) - D(N(rho)||N(Pi))`` and the
    fidelity of the universal recovery, and evaluates the forward bound
    ``F >= 1 - gap_max/2`` and the converse entropy-continuity bound.
    """
    pi = np.asarray(projector, dtype=complex)
    idem = float(np.linalg.norm(pi @ pi - pi, 2))
    if idem > 1e-8:
        raise ValueError(f"input is not a projector: ||P^2 - P|| = {idem:.3e}")
    dim_code = int(round(float(np.trace(pi).real)))
    if dim_code < 1:
        raise ValueError("codespace is empty")
    dec = eig_hermitian(pi)
    isometry = dec.eigenvectors[:, :dim_code]

    recovery = universal_recovery(pi, channel, rule)
    out_pi = channel.apply(pi)

    seeds = np.random.SeedSequence(seed).spawn(max(samples, 1))
    gaps = []
    fids = []
    for i in range(samples):
        if dim_code == 1:
            small = np.array([[1.0 + 0.0j]])
        elif i % 2 == 1:
            small = random_density(dim_code, seeds[i], ensemble="rank-k", rank=1)
        else:
            small = random_density(dim_code, seeds[i])
        rho = isometry @ small @ dagger(isometry)
        gaps.append(
            relative_entropy(rho, pi) - relative_entropy(channel.apply(rho), out_pi)
        )
        fids.append(fidelity(rho, recovery.apply(channel.apply(rho))))
    gaps = np.array(gaps) if gaps else np.zeros(0)
    fids = np.array(fids) if fids else np.ones(0)

    max_gap = float(np.max(gaps, initial=0.0))
    min_fid = float(np.min(fids, initial=1.0))
    forward_bound = 1.0 - max_gap / 2.0
    eps_conv = min(max(2.0 * (1.0 - min_fid), 0.0), 1.0)
    root = math.sqrt(eps_conv)
    converse_bound = root * math.log(dim_code) + binary_entropy(root) if dim_code > 1 else (
        binary_entropy(root)
    )
    return QecReport(
        dim_code=dim_code,
        sampled_max_gap=max_gap,
        min_recovered_fidelity=min_fid,
        forward_bound=forward_bound,
        converse_bound=converse_bound,
        forward_ok=bool(min_fid >= forward_bound - tol),
        converse_ok=bool(max_gap <= converse_bound + tol),
        gaps=gaps,
        fidelities=fids,
    )


# ---------------------------------------------------------------------------
# finite-set recovery search
# ---------------------------------------------------------------------------

def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    cond = u - css / idx > 0
    rho_idx = int(np.nonzero(cond)[0][-1])
    theta = css[rho_idx] / (rho_idx + 1)
    return np.clip(v - theta, 0.0, None)


@dataclass
class SearchResult:
    recovery: RecoveryMap
    min_slack: float
    weights: np.ndarray
    t_grid: np.ndarray


def finite_set_recovery_search(
    states,
    sigma: np.ndarray,
    channel: Channel,
    t_grid,
    iterations: int = 60,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> SearchResult:
    """Best-effort search for a single map protecting a finite set of states.

    Maximizes, over convex mixtures of rotated Petz maps on ``t_grid``, the
    minimum over the states of the measured-entropy slack
    ``D(rho||sigma) - D(N(rho)||N(sigma)) - KL(p || q)`` where the outcome
    distributions come from the fidelity-achieving measurement of the pair
    ``(rho, recovered)``.  Deterministic projected supergradient ascent on
    the simplex; no optimality guarantee.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    if not states:
        raise ValueError("need at least one state")
    for i, s in enumerate(states):
        if support_violation(s, sigma) > support_tol:
            raise ValueError(f"state {i} is not supported inside sigma")
    t_grid = np.asarray(t_grid, dtype=float)

    family = rotated_petz_family(sigma, channel, t_grid)
    out_sigma = channel.apply(sigma)
    gaps = np.array(
        [
            relative_entropy(s, sigma, support_tol)
            - relative_entropy(channel.apply(s), out_sigma, support_tol)
            for s in states
        ]
    )
    recs = np.array([[m.apply(channel.apply(s)) for m in family] for s in states])

    def slack_of(x: int, w: np.ndarray) -> float:
        rec = np.tensordot(w, recs[x], axes=1)
        povm = fidelity_measurement(states[x], rec)
        return float(gaps[x] - measured_relative_entropy_lb(states[x], rec, povm))

    def objective(w: np.ndarray):
        slacks = np.array([slack_of(x, w) for x in range(len(states))])
        worst = int(np.argmin(slacks))
        return float(slacks[worst]), worst

    starts = []
    dens = beta0_density(t_grid)
    if float(dens.sum()) > 0:
        starts.append(dens / dens.sum())
    starts.append(np.full(len(t_grid), 1.0 / len(t_grid)))
    starts.extend(np.eye(len(t_grid)))  # pure grid nodes
    best_w, (best_f, _) = max(
        ((w, objective(w)) for w in starts), key=lambda p: p[1][0]
    )

    w = best_w.copy()
    f_cur, active = objective(w)
    step = 0.5
    delta = 1e-4
    for _ in range(iterations):
        grad = np.zeros(len(t_grid))
        for j in range(len(t_grid)):
            probe = w.copy()
            probe[j] += delta
            probe /= probe.sum()
            grad[j] = (slack_of(active, probe) - slack_of(active, w)) / delta
        improved = False
        for eta in (step, step / 4.0, step / 16.0):
            cand = _project_simplex(w + eta * grad)
            f_cand, act_cand = objective(cand)
            if f_cand > f_cur + 1e-14:
                w, f_cur, active = cand, f_cand, act_cand
                improved = True
                break
        if not improved:
            step /= 4.0
            if step < 1e-4:
                break
        if f_cur > best_f:
            best_f, best_w = f_cur, w.copy()

    if f_cur > best_f:
        best_f, best_w = f_cur, w
    mixture = convex_mixture(family, best_w)
    return SearchResult(
        recovery=mixture, min_slack=best_f, weights=best_w, t_grid=t_grid
    )


# ---------------------------------------------------------------------------
# truncation convergence study
# ---------------------------------------------------------------------------

@dataclass
class TruncationReport:
    ks: tuple
    truncated_relative_entropies: np.ndarray
    entropy_differences: np.ndarray
    slacks: np.ndarray
    full_relative_entropy: float
    monotone_ok: bool
    final_delta: float


def truncation_convergence(
    rho: np.ndarray,
    sigma: np.ndarray,
    channel: Channel,
    k_list,
    rule: QuadratureRule,
    reference: np.ndarray | None = None,
) -> TruncationReport:
    """Finite-rank compression study of a relative entropy pair.

    Both operators are compressed by one common projector family (the
    leading eigenspaces of ``reference``, by default ``sigma``); the
    compressed relative entropy never exceeds the full one and converges
    to it as the rank reaches the dimension.

    The compressed states are subnormalized, so the per-rank remainder
    slacks are convergence diagnostics: they approach the true slack as
    the rank grows but carry no sign guarantee at intermediate ranks.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    dim = rho.shape[0]
    ks = tuple(int(k) for k in k_list)
    if not ks or any(k < 1 or k > dim for k in ks) or list(ks) != sorted(set(ks)):
        raise ValueError(f"k_list must be strictly increasing within [1, {dim}]")
    ref = sigma if reference is None else np.asarray(reference, dtype=complex)
    dec = eig_hermitian(ref)

    d_full = relative_entropy(rho, sigma)
    d_trunc, gaps, slacks = [], [], []
    for k in ks:
        cols = dec.eigenvectors[:, :k]
        pi = cols @ dagger(cols)
        rho_k = pi @ rho @ pi
        sigma_k = pi @ sigma @ pi
        rep = dpi_remainder(rho_k, sigma_k, channel, rule)
        d_trunc.append(relative_entropy(rho_k, sigma_k))
        gaps.append(rep.lhs)
        slacks.append(rep.slack_mixture)
    d_trunc = np.array(d_trunc)
    return TruncationReport(
        ks=ks,
        truncated_relative_entropies=d_trunc,
        entropy_differences=np.array(gaps),
        slacks=np.array(slacks),
        full_relative_entropy=d_full,
        monotone_ok=bool(np.all(d_trunc <= d_full + 1e-9)),
        final_delta=float(abs(d_trunc[-1] - d_full)),
    )


# ---------------------------------------------------------------------------
# seeded sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepConfig:
    """Configuration of a randomized verification sweep."""

    seed: int = 0
    count: int = 100
    dims: tuple = (2, 5)
    env_max: int = 4
    nodes: int = 129
    tolerance: float = 1e-8
    kind: str = "dpi"  # dpi | ssa | concavity | joint-convexity
    max_condition: float = 1e8
    include_timings: bool = False

    def __post_init__(self):
        lo, hi = (int(d) for d in self.dims)
        if self.count < 0 or lo < 1 or hi < lo or self.nodes < 3:
            raise ValueError("invalid sweep configuration")
        if self.kind not in ("dpi", "ssa", "concavity", "joint-convexity"):
            raise ValueError(f"unknown sweep kind {self.kind!r}")


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list
    summary: dict
    ok: bool


def _condition_number(rho: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(rho)
    lo = float(vals[0])
    if lo <= 0.0:
        return float(np.inf)
    return float(vals[-1]) / lo


def _well_conditioned_density(dim: int, rng, max_condition: float):
    """Full-rank random state below the condition cap; counts regenerations."""
    for regen in range(1000):
        rho = random_density(dim, rng)
        if _condition_number(rho) <= max_condition:
            return rho, regen
    raise RuntimeError(
        f"could not draw a dim-{dim} state with condition below {max_condition}"
    )


def sweep(config: SweepConfig) -> SweepResult:
    """Run ``config.count`` seeded random instances of one inequality.

    All randomness descends from the root seed through per-instance
    spawned seed sequences, so reruns reproduce every row exactly.
    """
    lo, hi = (int(d) for d in config.dims)
    children = np.random.SeedSequence(config.seed).spawn(max(config.count, 1))
    rule = beta_quadrature(config.nodes)
    rows = []
    regenerated = 0
    for i in range(config.count):
        rng = np.random.default_rng(children[i])
        t0 = time.perf_counter()
        row = {"instance": i, "seed": config.seed}
        if config.kind == "dpi":
            dim_in = int(rng.integers(lo, hi + 1))
            dim_out = int(rng.integers(lo, hi + 1))
            env_lo = max(1, -(-dim_in // dim_out))
            env = int(rng.integers(env_lo, max(env_lo, config.env_max) + 1))
            sigma, regen = _well_conditioned_density(dim_in, rng, config.max_condition)
            regenerated += regen
            rho = random_density(dim_in, rng)
            chan = random_channel(dim_in, dim_out, env, rng)
            rep = dpi_remainder(rho, sigma, chan, rule)
            row.update(
                dim_in=dim_in, dim_out=dim_out, env_dim=env,
                lhs=rep.lhs, rhs_strong=rep.rhs_strong, rhs_mixture=rep.rhs_mixture,
                slack_mixture=rep.slack_mixture, slack_strong=rep.slack_strong,
            )
            row["slack"] = min(rep.slack_mixture, rep.slack_strong)
        elif config.kind == "ssa":
            hi_f = max(lo, min(hi, 3))
            da, db, dc = (int(rng.integers(lo, hi_f + 1)) for _ in range(3))
            rho_abc = random_density(da * db * dc, rng)
            rep = ssa_remainder(rho_abc, (da, db, dc), rule)
            row.update(dim_a=da, dim_b=db, dim_c=dc, lhs=rep.cmi, rhs=rep.rhs,
                       slack=rep.slack)
        elif config.kind == "concavity":
            hi_f = max(lo, min(hi, 3))
            da = int(rng.integers(lo, hi_f + 1))
            db = int(rng.integers(lo, hi_f + 1))
            size = int(rng.integers(2, 4))
            w = rng.dirichlet(np.ones(size))
            members = [(w[x], random_density(da * db, rng)) for x in range(size)]
            rep = concavity_remainder(members, (da, db), rule)
            row.update(dim_a=da, dim_b=db, size=size, lhs=rep.lhs, rhs=rep.rhs,
                       slack=rep.slack)
        else:  # joint-convexity
            dim = int(rng.integers(lo, hi + 1))
            size = int(rng.integers(2, 4))
            w = rng.dirichlet(np.ones(size))
            members = []
            for x in range(size):
                s, regen = _well_conditioned_density(dim, rng, config.max_condition)
                regenerated += regen
                members.append((w[x], random_density(dim, rng), s))
            rep = joint_convexity_remainder(members, rule)
            row.update(dim=dim, size=size, lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack)
        if config.include_timings:
            row["wall_time"] = time.perf_counter() - t0
        rows.append(row)

    from . import __version__

    slacks = np.array([r["slack"] for r in rows]) if rows else np.zeros(0)
    finite = slacks[np.isfinite(slacks)]
    summary = {
        "version": __version__,
        "kind": config.kind,
        "seed": config.seed,
        "count": config.count,
        "nodes": config.nodes,
        "tolerance": config.tolerance,
        "regenerated": regenerated,
        "min_slack": float(np.min(finite)) if finite.size else None,
        "mean_slack": float(np.mean(finite)) if finite.size else None,
        "violations": int(np.sum(slacks < -config.tolerance)),
    }
    ok = summary["violations"] == 0
    return SweepResult(config=config, rows=rows, summary=summary, ok=ok)


__all__ = [
    "AlphaBoundResult",
    "DpiReport",
    "EnsembleReport",
    "QecReport",
    "SearchResult",
    "SsaReport",
    "SweepConfig",
    "SweepResult",
    "TruncationReport",
    "alpha_bound_check",
    "concavity_remainder",
    "dpi_remainder",
    "finite_set_recovery_search",
    "joint_convexity_remainder",
    "qec_analyze",
    "ssa_remainder",
    "sweep",
    "truncation_convergence",
]
