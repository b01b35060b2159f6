"""Rate-equivocation region operations.

For a source law and an auxiliary channel W the extreme achievable tuple is
(I(X-bar; W), {H(X_k|W)}, sum_k H(X-bar|W, X_k)); the region is the union of
everything dominated by such corners over all W.  Membership testing is
therefore one-sided: a tuple is declared achievable only with a certifying
witness, and the search returns Unknown otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _optim
from .common_information import gk_common_information
from .distributions import (
    AuxChannel,
    JointPmf,
    constant_channel,
    copy_channel,
    join_with_aux,
)
from .errors import KTooSmallError, ShapeMismatchError
from .infotheory import conditional_entropy, entropy, mutual_information

ACHIEVABILITY_TOL = 1e-9


@dataclass(frozen=True)
class RateEquivocationTuple:
    """(R_0, {R_k}, Delta) in bits per symbol."""

    r0: float
    rk: tuple[float, ...]
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "rk", tuple(float(r) for r in self.rk))
        if self.r0 < -ACHIEVABILITY_TOL or self.delta < -ACHIEVABILITY_TOL:
            raise ValueError("rates and equivocation must be non-negative")
        if any(r < -ACHIEVABILITY_TOL for r in self.rk):
            raise ValueError("rates and equivocation must be non-negative")


@dataclass(frozen=True)
class SweepPoint:
    r0_budget: float
    delta: float
    converged: bool
    witness: AuxChannel


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]


@dataclass(frozen=True)
class AchievabilityResult:
    verdict: str  # "achievable" | "unknown"
    witness: AuxChannel | None


def _check_shapes(pmf: JointPmf, w: AuxChannel) -> None:
    if w.num_rows != pmf.num_outcomes:
        raise ShapeMismatchError(
            f"channel has {w.num_rows} rows but pmf has {pmf.num_outcomes} outcomes"
        )


def corner_point(pmf: JointPmf, w: AuxChannel) -> RateEquivocationTuple:
    """Extreme tuple achievable with this W.

    Delta terms use H(X-bar|W, X_k) = H(X-bar, W) - H(X_k, W), which holds
    because X_k is a coordinate of X-bar.
    """
    _check_shapes(pmf, w)
    joint = join_with_aux(pmf, w)
    w_axis = pmf.k
    r0 = mutual_information(joint, range(pmf.k), [w_axis])
    rk = tuple(
        conditional_entropy(joint, [k], [w_axis]) for k in range(pmf.k)
    )
    h_all = entropy(joint)
    delta = sum(max(0.0, h_all - entropy(joint, [k, w_axis])) for k in range(pmf.k))
    return RateEquivocationTuple(r0, rk, delta)


def delta_max(pmf: JointPmf) -> float:
    """Maximum total equivocation sum_k H(X-bar | X_k)."""
    if pmf.k < 2:
        raise KTooSmallError("delta_max needs at least two sources")
    h_all = entropy(pmf)
    return sum(max(0.0, h_all - entropy(pmf, [k])) for k in range(pmf.k))


def is_achievable_with(
    pmf: JointPmf, w: AuxChannel, t: RateEquivocationTuple
) -> bool:
    """True iff ``t`` is dominated by the corner point of ``w``."""
    _check_shapes(pmf, w)
    if len(t.rk) != pmf.k:
        raise ShapeMismatchError(f"tuple has {len(t.rk)} private rates, need {pmf.k}")
    corner = corner_point(pmf, w)
    if t.r0 < corner.r0 - ACHIEVABILITY_TOL:
        return False
    if any(t.rk[k] < corner.rk[k] - ACHIEVABILITY_TOL for k in range(pmf.k)):
        return False
    return t.delta <= corner.delta + ACHIEVABILITY_TOL


# ---------------------------------------------------------------------------
# Heuristic searches over auxiliary channels
# ---------------------------------------------------------------------------


def _channel_pieces(pmf: JointPmf):
    support = pmf.support_indices()
    p = pmf.flat[support]
    digs = [pmf.digits(k)[support] for k in range(pmf.k)]
    onehots = [
        np.equal.outer(d, np.arange(c)).astype(float)
        for d, c in zip(digs, pmf.cardinalities)
    ]
    return support, p, digs, onehots


def _full_channel(pmf: JointPmf, support, rho, w_card) -> AuxChannel:
    rows = np.full((pmf.num_outcomes, w_card), 1.0 / w_card)
    rows[support] = rho / rho.sum(axis=1, keepdims=True)
    return AuxChannel(w_card, rows)


def _seed_channels(pmf: JointPmf) -> list[AuxChannel]:
    # Analytic extremes first: the component witness, then the degenerate
    # and full-disclosure channels.  Order fixes deterministic tie-breaks.
    return [
        gk_common_information(pmf).witness,
        constant_channel(pmf),
        copy_channel(pmf),
    ]


def _refine_max_delta(pmf, budget, w_card, rng, maxiter=200):
    support, p, digs, onehots = _channel_pieces(pmf)
    h_x_nats = -float((p * np.log(p)).sum())
    kk = pmf.k

    def fun_factory(mu):
        def fun(z):
            rho = _optim.softmax_rows(z.reshape(len(support), w_card))
            ev = _optim.ChannelEval(p, onehots, rho)
            delta_bits = sum(ev.h_joint - hkw for hkw in ev.h_kw) / _optim.LN2
            i_bits = (h_x_nats + ev.h_w - ev.h_joint) / _optim.LN2
            excess = max(0.0, i_bits - budget)
            f = -delta_bits + mu * excess * excess
            grad_delta_nats = -(kk * ev.lt - sum(lm[d, :] for lm, d in zip(ev.lmk, digs)))
            grad_i_nats = ev.lt - ev.lpw[None, :]
            grad_t = (-grad_delta_nats + 2.0 * mu * excess * grad_i_nats / _optim.LN2) / _optim.LN2
            grad_rho = grad_t * p[:, None]
            return f, _optim.simplex_chain(rho, grad_rho).reshape(-1)

        return fun

    z = rng.normal(size=(len(support), w_card)).reshape(-1)
    for mu in (10.0, 1e3, 1e5):
        z, _ = _optim.lbfgs(fun_factory(mu), z, maxiter)
    rho = _optim.softmax_rows(z.reshape(len(support), w_card))
    return _full_channel(pmf, support, rho, w_card)


def _max_delta_search(pmf, r0_budget, w_cardinality, restarts, seed):
    if r0_budget < 0:
        raise ValueError("r0_budget must be non-negative")
    w_card = w_cardinality or len(pmf.support_indices()) + 1
    candidates = list(_seed_channels(pmf))
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        candidates.append(_refine_max_delta(pmf, r0_budget, w_card, rng))
    best = None
    for cand in candidates:
        corner = corner_point(pmf, cand)
        if corner.r0 > r0_budget + ACHIEVABILITY_TOL:
            continue
        if best is None or corner.delta > best[0] + 1e-12:
            best = (corner.delta, cand)
    converged = best is not None
    if best is None:
        # Constant W has I = 0, so any non-negative budget admits it; this
        # branch guards against future parameter changes only.
        cand = constant_channel(pmf)
        best = (corner_point(pmf, cand).delta, cand)
    return best[0], best[1], converged


def max_delta_at_r0(
    pmf: JointPmf,
    r0_budget: float,
    w_cardinality: int | None = None,
    restarts: int = 4,
    seed: int = 0,
) -> tuple[float, AuxChannel]:
    """Best certified total equivocation with I(X-bar; W) <= r0_budget.

    The component witness, the constant channel, and the copy channel are
    always evaluated alongside penalized random refinements, so analytic
    extreme points are never missed; the returned delta is the corner-point
    value of the returned witness.
    """
    delta, witness, _ = _max_delta_search(pmf, r0_budget, w_cardinality, restarts, seed)
    return delta, witness


def sweep_max_delta(
    pmf: JointPmf,
    r0_budgets,
    w_cardinality: int | None = None,
    restarts: int = 4,
    seed: int = 0,
) -> SweepResult:
    """max_delta_at_r0 across a grid of budgets."""
    points = []
    for i, budget in enumerate(r0_budgets):
        delta, witness, converged = _max_delta_search(
            pmf, float(budget), w_cardinality, restarts, seed + i
        )
        points.append(SweepPoint(float(budget), delta, converged, witness))
    return SweepResult(tuple(points))


def _refine_membership(pmf, t, w_card, rng, maxiter=200):
    support, p, digs, onehots = _channel_pieces(pmf)
    h_x_nats = -float((p * np.log(p)).sum())

    def fun(z):
        rho = _optim.softmax_rows(z.reshape(len(support), w_card))
        ev = _optim.ChannelEval(p, onehots, rho)
        i_bits = (h_x_nats + ev.h_w - ev.h_joint) / _optim.LN2
        hk_given_w = [(hkw - ev.h_w) / _optim.LN2 for hkw in ev.h_kw]
        delta_bits = sum(ev.h_joint - hkw for hkw in ev.h_kw) / _optim.LN2
        grad_t = np.zeros_like(ev.t)
        f = 0.0
        if i_bits > t.r0:
            f += i_bits - t.r0
            grad_t += (ev.lt - ev.lpw[None, :]) / _optim.LN2
        for k in range(pmf.k):
            if hk_given_w[k] > t.rk[k]:
                f += hk_given_w[k] - t.rk[k]
                grad_t += -(ev.lmk[k][digs[k], :] - ev.lpw[None, :]) / _optim.LN2
        if delta_bits < t.delta:
            f += t.delta - delta_bits
            grad_t += (
                pmf.k * ev.lt - sum(lm[d, :] for lm, d in zip(ev.lmk, digs))
            ) / _optim.LN2
        grad_rho = grad_t * p[:, None]
        return f, _optim.simplex_chain(rho, grad_rho).reshape(-1)

    z = rng.normal(size=(len(support), w_card)).reshape(-1)
    z, _ = _optim.lbfgs(fun, z, maxiter)
    rho = _optim.softmax_rows(z.reshape(len(support), w_card))
    return _full_channel(pmf, support, rho, w_card)


def is_achievable(
    pmf: JointPmf,
    t: RateEquivocationTuple,
    w_cardinality: int | None = None,
    restarts: int = 4,
    seed: int = 0,
) -> AchievabilityResult:
    """One-sided membership test: certify with a witness or answer Unknown.

    The Unknown verdict never claims non-membership; the witness search is
    heuristic.
    """
    w_card = w_cardinality or len(pmf.support_indices()) + 1
    candidates = list(_seed_channels(pmf))
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        candidates.append(_refine_membership(pmf, t, w_card, rng))
    for cand in candidates:
        if is_achievable_with(pmf, cand, t):
            return AchievabilityResult("achievable", cand)
    return AchievabilityResult("unknown", None)
