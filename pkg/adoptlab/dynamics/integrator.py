# adoptlab/dynamics/integrator.py

"""
Fixed-step RK4 integration of the coupled adoption system.

The simplex is advanced by classical RK4 while the cost and the belief are
advanced in closed form over each (sub)step, since both are linear with a
rate that only changes at threshold crossings. Crossings of e − e* are
located by bisection and the step is split there, so the cost indicator is
exact on every sub-interval.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple
import numpy as np
from ..base.control import BaseControl
from ..model.params import ModelParams
from ..model.state import CORNERS, FullState
from ..exceptions import ConfigurationError, NonFiniteStateError
from .config import DynamicsFlags, IntegrationConfig
from .rhs import batch_rhs, replicator_arrays
from .trajectory import Trajectory, classify_trajectory, excursions_from_events
import logging

logger = logging.getLogger('adoptlab.dynamics.integrator')

Vec = Tuple[float, float, float]
_CORNER_ITEMS = list(CORNERS.items())
_CORNER_MATRIX = np.array([v for _, v in _CORNER_ITEMS])
# split guard against chatter when a state grazes the threshold
_MAX_SPLITS = 64


def initial_state(params: ModelParams, xG: float, xP: float, xR: float,
                  c: Optional[float] = None, alphaBelief: Optional[float] = None) -> FullState:
    """Full state with cost c0 and belief alpha unless given."""
    return FullState.initial(
        xG, xP, xR,
        c=params.c0 if c is None else c,
        alphaBelief=params.alpha if alphaBelief is None else alphaBelief,
    )


def nearest_corner(x: Sequence[float]) -> Tuple[str, float]:
    """Name of and Euclidean distance to the closest simplex corner."""
    best, dist = "G", float("inf")
    for name, corner in _CORNER_ITEMS:
        d = math.sqrt(sum((a - b) ** 2 for a, b in zip(x, corner)))
        if d < dist:
            best, dist = name, d
    return best, dist


def _next_time(t: float, h: float, stops: List[float]) -> float:
    target = (math.floor(t / h + 1e-9) + 1) * h
    for s in stops:
        if t < s - 1e-12 and s < target:
            target = s
            break
    return target


def _check_finite(x: Vec, c: float, a: float, step: int, t: float, h: float) -> None:
    if not all(math.isfinite(v) for v in x) or not math.isfinite(c) or not math.isfinite(a):
        error_msg = f"Non-finite state at step {step} (t={t}); reduce the step size (h={h})."
        logger.error(error_msg)
        raise NonFiniteStateError(error_msg, step, t)


def _clean(x: Vec, renormalize: bool) -> Tuple[Vec, float]:
    raw_min = min(x)
    if not renormalize:
        return x, raw_min
    clamped = [v if v > 0.0 else 0.0 for v in x]
    total = clamped[0] + clamped[1] + clamped[2]
    return (clamped[0] / total, clamped[1] / total, clamped[2] / total), raw_min


class _Stepper:
    """Single RK4 (sub)step with the indicator, controls and belief mode fixed."""

    def __init__(self, params, coordination, bonus, frozen, rate, belief_rate, alpha_target):
        self.params = params
        self.coordination = coordination
        self.bonus = bonus
        self.frozen = frozen
        self.rate = rate
        self.belief_rate = belief_rate
        self.alpha_target = alpha_target

    def cost(self, c: float, s: float) -> float:
        return c * math.exp(-self.rate * s)

    def belief(self, a: float, s: float) -> float:
        if self.belief_rate is None:
            return a
        return self.alpha_target + (a - self.alpha_target) * math.exp(-self.belief_rate * s)

    def velocity(self, x: Vec, c: float, a: float) -> Vec:
        bonus = self.bonus(x[0], x[1], c, a)
        d = replicator_arrays(x[0], x[1], x[2], c, a, self.params, self.coordination, bonus)
        return float(d[0]), float(d[1]), float(d[2])

    def advance(self, x: Vec, c: float, a: float, tau: float) -> Tuple[Vec, float, float]:
        if self.frozen:
            return x, self.cost(c, tau), self.belief(a, tau)
        half = 0.5 * tau
        c_half, a_half = self.cost(c, half), self.belief(a, half)
        c_end, a_end = self.cost(c, tau), self.belief(a, tau)
        k1 = self.velocity(x, c, a)
        k2 = self.velocity(tuple(xi + half * ki for xi, ki in zip(x, k1)), c_half, a_half)
        k3 = self.velocity(tuple(xi + half * ki for xi, ki in zip(x, k2)), c_half, a_half)
        k4 = self.velocity(tuple(xi + tau * ki for xi, ki in zip(x, k3)), c_end, a_end)
        new = tuple(
            xi + tau / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            for xi, a1, a2, a3, a4 in zip(x, k1, k2, k3, k4)
        )
        return new, c_end, a_end


def integrate(
    initial: FullState,
    params: ModelParams,
    config: Optional[IntegrationConfig] = None,
    flags: Optional[DynamicsFlags] = None,
    alpha_actual: Optional[float] = None,
    control: Optional[BaseControl] = None,
) -> Trajectory:
    """
    Integrate the coupled system from ``initial``.

    Args:
        initial (FullState): Starting state; its time is the start time.
        params (ModelParams): Model parameters (technology type resolved if set).
        config (Optional[IntegrationConfig]): Step size, horizon and tolerances.
        flags (Optional[DynamicsFlags]): Trust, coordination and cost switches.
        alpha_actual (Optional[float]): Realised sharing; required when trust is on.
        control (Optional[BaseControl]): Piecewise-constant intervention hooks.

    Returns:
        Trajectory: Samples at every step end, threshold events and the classification.

    Raises:
        ConfigurationError: If the initial cost exceeds c0 or trust lacks alpha_actual.
        NonFiniteStateError: If the state stops being finite (step size too large).
    """
    config = config or IntegrationConfig()
    flags = flags or DynamicsFlags()
    control = control or BaseControl()
    params = params.resolved()

    if flags.trust and alpha_actual is None:
        error_msg = "Trust dynamics enabled but no alpha_actual supplied."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)
    if initial.c > params.c0 * (1.0 + 1e-12):
        error_msg = f"Initial cost {initial.c} exceeds c0={params.c0}."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)

    h = config.stepSize
    t0 = initial.t
    t_max = config.tMax
    tol = config.cornerTolerance
    breakpoints = sorted({float(b) for b in control.breakpoints() if t0 - 1e-12 <= b < t_max})
    stops = [b for b in breakpoints if b > t0 + 1e-12] + [t_max]
    last_breakpoint = breakpoints[-1] if breakpoints else t0

    eStar, gamma = params.eStar, params.gamma

    def eff(v: Vec) -> float:
        return v[0] + gamma * v[1]

    x: Vec = initial.simplex.as_tuple()
    c = initial.c
    a = initial.alphaBelief
    t = t0
    events: List[Tuple[float, str]] = []
    applied = set()

    def apply_jumps(now: float, state: Vec) -> Vec:
        for b in breakpoints:
            if b not in applied and abs(b - now) <= 1e-9:
                applied.add(b)
                state = control.jump(b, state)
        return state

    x = apply_jumps(t, x)
    pinned = control.pinned_alpha(t)
    if pinned is not None:
        a = pinned
    above = eff(x) > eStar
    start_above = above
    gains = above

    times, xs, cs, alphas = [t], [x], [c], [a]
    min_raw = min(x)
    converged: Optional[str] = None
    step = 0

    logger.debug(f"Integrating from {x} with c={c}, alpha={a}, h={h}, tMax={t_max}")
    while t < t_max - 1e-12:
        t_next = _next_time(t, h, stops)
        p = control.params_at(t, params)
        pinned = control.pinned_alpha(t)
        if pinned is not None:
            a = pinned
        cost_on = flags.costDynamics
        frozen = control.frozen(t)
        t_step = t

        def bonus(xG, xP, cc, aa, _p=p, _t=t_step):
            return control.fitness_bonus(_t, xG, xP, cc, aa, _p)

        remaining = t_next - t
        elapsed = 0.0
        splits = 0
        while remaining > 0.0:
            rate = (p.deltaInd + (p.delta if above else 0.0)) if cost_on else 0.0
            belief_on = flags.trust and gains and pinned is None
            stepper = _Stepper(p, flags.coordination, bonus, frozen, rate,
                               p.lam if belief_on else None, alpha_actual)
            x1, c1, a1 = stepper.advance(x, c, a, remaining)
            _check_finite(x1, c1, a1, step + 1, t_next, h)
            if frozen or (eff(x1) > eStar) == above or splits >= _MAX_SPLITS:
                x, c, a = x1, c1, a1
                break
            lo, hi = 0.0, remaining
            while hi - lo > config.eventTimeTolerance:
                mid = 0.5 * (lo + hi)
                xm, _, _ = stepper.advance(x, c, a, mid)
                if (eff(xm) > eStar) != above:
                    hi = mid
                else:
                    lo = mid
            x, c, a = stepper.advance(x, c, a, hi)
            x, raw = _clean(x, config.renormalizeEachStep)
            min_raw = min(min_raw, raw)
            above = not above
            if above:
                gains = True
            elapsed += hi
            remaining -= hi
            splits += 1
            events.append((t + elapsed, "cross_up" if above else "cross_down"))

        step += 1
        t = t_next
        _check_finite(x, c, a, step, t, h)
        x, raw = _clean(x, config.renormalizeEachStep)
        min_raw = min(min_raw, raw)

        x = apply_jumps(t, x)
        if (eff(x) > eStar) != above:
            above = not above
            gains = gains or above
            events.append((t, "cross_up" if above else "cross_down"))

        times.append(t)
        xs.append(x)
        cs.append(c)
        alphas.append(a)

        if config.stopAtCorner and t >= last_breakpoint - 1e-12:
            name, dist = nearest_corner(x)
            if dist < tol:
                vel = replicator_arrays(x[0], x[1], x[2], c, a, p, flags.coordination)
                if all(abs(float(v)) < tol for v in vel):
                    converged = name
                    break

    states = np.array(xs, dtype=float)
    if converged is None:
        name, dist = nearest_corner(xs[-1])
        if dist < config.labelTolerance:
            converged = name

    traj = Trajectory(
        times=np.array(times, dtype=float),
        states=states,
        costs=np.array(cs, dtype=float),
        beliefs=np.array(alphas, dtype=float),
        effective=states[:, 0] + gamma * states[:, 1],
        eStar=eStar,
        events=events,
        excursions=excursions_from_events(events, t0, times[-1], start_above),
        converged=converged,
        steps=step,
        minRawFrequency=min_raw,
    )
    traj.classification = classify_trajectory(traj, params)
    logger.debug(f"Integration finished at t={t} after {step} steps: {traj.classification}, {len(events)} events")
    return traj


@dataclass
class BatchResult:
    """Outcome of a frozen-cost batch integration."""
    labels: np.ndarray
    times: np.ndarray
    final: np.ndarray


def integrate_batch(
    states: np.ndarray,
    params: ModelParams,
    c: Optional[float] = None,
    config: Optional[IntegrationConfig] = None,
    coordination_enabled: bool = False,
    alpha: Optional[float] = None,
) -> BatchResult:
    """
    Integrate many frozen-cost initial states at once.

    Every row is advanced with the same elementwise RK4 arithmetic as a
    single-row call, so results do not depend on how rows are batched.

    Args:
        states (np.ndarray): (N, 3) initial frequencies.
        params (ModelParams): Model parameters.
        c (Optional[float]): Frozen cost (defaults to c0).
        config (Optional[IntegrationConfig]): Step size, horizon and tolerances.
        coordination_enabled (bool): Whether coordination terms apply.
        alpha (Optional[float]): Sharing fraction (defaults to params.alpha).

    Returns:
        BatchResult: Corner label per row ('G', 'P', 'R' or 'Unclassified'),
        time to convergence (tMax when labelled at the horizon, NaN when
        unclassified) and final states.

    Raises:
        NonFiniteStateError: If any row stops being finite.
    """
    config = config or IntegrationConfig()
    params = params.resolved()
    c = params.c0 if c is None else c
    alpha = params.alpha if alpha is None else alpha
    X = np.array(states, dtype=float, copy=True)
    n = X.shape[0]
    labels = np.full(n, "Unclassified", dtype=object)
    times = np.full(n, np.nan)
    active = np.arange(n)
    h, t_max, tol = config.stepSize, config.tMax, config.cornerTolerance

    def rhs(Y):
        return batch_rhs(Y, c, alpha, params, coordination_enabled)

    def settle(t_now: float) -> None:
        nonlocal active
        if not config.stopAtCorner or active.size == 0:
            return
        Y = X[active]
        dists = np.linalg.norm(Y[:, None, :] - _CORNER_MATRIX[None, :, :], axis=2)
        nearest = np.argmin(dists, axis=1)
        close = dists[np.arange(Y.shape[0]), nearest] < tol
        if not close.any():
            return
        vel = np.abs(rhs(Y[close])).max(axis=1) < tol
        done = np.zeros(Y.shape[0], dtype=bool)
        done[np.flatnonzero(close)[vel]] = True
        for row in np.flatnonzero(done):
            labels[active[row]] = _CORNER_ITEMS[nearest[row]][0]
            times[active[row]] = t_now
        active = active[~done]

    settle(0.0)
    t = 0.0
    step = 0
    while t < t_max - 1e-12 and active.size:
        t_next = min((step + 1) * h, t_max)
        dt = t_next - t
        Y = X[active]
        k1 = rhs(Y)
        k2 = rhs(Y + 0.5 * dt * k1)
        k3 = rhs(Y + 0.5 * dt * k2)
        k4 = rhs(Y + dt * k3)
        Y = Y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        step += 1
        t = t_next
        if not np.isfinite(Y).all():
            error_msg = f"Non-finite batch state at step {step} (t={t}); reduce the step size (h={h})."
            logger.error(error_msg)
            raise NonFiniteStateError(error_msg, step, t)
        if config.renormalizeEachStep:
            Y = np.clip(Y, 0.0, None)
            Y = Y / Y.sum(axis=1, keepdims=True)
        X[active] = Y
        settle(t)

    if active.size:
        Y = X[active]
        dists = np.linalg.norm(Y[:, None, :] - _CORNER_MATRIX[None, :, :], axis=2)
        nearest = np.argmin(dists, axis=1)
        near = dists[np.arange(Y.shape[0]), nearest] < config.labelTolerance
        for row in np.flatnonzero(near):
            labels[active[row]] = _CORNER_ITEMS[nearest[row]][0]
            times[active[row]] = t_max
    return BatchResult(labels=labels, times=times, final=X)
