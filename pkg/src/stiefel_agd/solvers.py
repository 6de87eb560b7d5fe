"""First-order solvers on the Stiefel manifold.

All three solvers share the same two-sided Armijo line search: from the
look-ahead point Y the step X+ = R(Y, -gamma grad f(Y)) is recomputed
while gamma is first grown (as long as the decrease beats the stronger
c_L threshold) and then shrunk (until the Armijo 1/2 threshold holds):

    f(X+) <= f(Y) - (gamma/2) ||grad f(Y)||_{g*}^2.

Requiring c_L > 1/2 means no gamma can trigger both loops, so the search
terminates; the accepted gamma is carried into the next iteration.

``gradient_descent`` is the baseline: Y is always the current iterate.

The accelerated variants add the inverse-retraction momentum step. After
an accepted step from Y_t produced X_{t+1}, the displacement is recovered
as the dual vector V_t with R(X_t, raise(V_t)) = X_{t+1} and the next
look-ahead point extrapolates along it:

    Y_{t+1} = R(X_t, (1 + k/(k+3)) raise(V_t)),

where k counts momentum steps since the last restart. Restart conditions:

  * function restart: f(X_{t+1}) > f(X_t) - c_R gamma_t ||grad f(Y_t)||^2
    (insufficient decrease);
  * gradient restart: <grad f(Y_t), W_t>_{g*} < -gamma_t ||grad f(Y_t)||^2
    with W_t the dual vector at Y_t pointing back to X_t (momentum
    opposing descent).

On restart the candidate step is discarded, Y snaps back to X_t and k
resets to 0. Both solvers stop on the relative criterion
||grad f|| <= epsilon ||grad f(X_0)||, evaluated at the most recent
gradient point (the current iterate for gradient descent and right after
restarts, the look-ahead point otherwise); each pass through the loop
costs exactly one gradient evaluation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import LineSearchFailedError, RetractionFailedError
from .euclidean import MomentumSchedule
from .geometry import (
    DualTangentVector,
    StiefelPoint,
    cayley_retract,
    dual_metric,
    dual_norm,
    retract_inverse,
)

CONVERGED = "converged"
MAX_ITERATIONS = "max_iterations"
LINE_SEARCH_FAILED = "line_search_failed"


@dataclass(frozen=True)
class SolverConfig:
    """Tunables shared by all solvers.

    c_l must lie in (1/2, 1) so the two line-search loops cannot fire on
    the same step size; c_r must lie in (0, 1/2) so the Armijo decrease
    guarantees the first step after any restart is accepted.
    """

    gamma0: float = 0.1
    lambda_d: float = 1.7
    c_l: float = 0.7
    c_r: float = 0.01
    epsilon: float = 1e-10
    max_iter: int = 100_000
    max_linesearch_steps: int = 60

    def __post_init__(self):
        if self.gamma0 <= 0.0:
            raise ValueError("gamma0 must be positive")
        if self.lambda_d <= 1.0:
            raise ValueError("lambda_d must exceed 1")
        if not 0.5 < self.c_l < 1.0:
            raise ValueError("c_l must lie in (1/2, 1)")
        if not 0.0 < self.c_r < 0.5:
            raise ValueError("c_r must lie in (0, 1/2)")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.max_iter < 0 or self.max_linesearch_steps < 1:
            raise ValueError("invalid iteration budget")


class IterationRecord(NamedTuple):
    """One loop pass: the objective value of the iterate it produced, the
    norm of the gradient that drove it, the accepted step size, whether
    the pass restarted, and the momentum counter applied."""

    t: int
    f: float
    grad_norm: float
    gamma: float
    restarted: bool
    momentum_k: int


@dataclass
class RunTrace:
    """History and totals of one solver run.

    ``iterations`` counts accepted (non-restart) passes; restarted passes
    are tallied separately, so gradient evaluations come to exactly
    iterations + restarts + 1. ``f_evals`` counts value-only evaluations
    (line-search trials); every pass also evaluates value and gradient
    together once, counted in ``g_evals``.
    """

    records: list[IterationRecord] = field(default_factory=list)
    iterations: int = 0
    restarts: int = 0
    f_evals: int = 0
    g_evals: int = 0
    wall_time: float = 0.0
    termination: str = MAX_ITERATIONS
    final_point: StiefelPoint | None = None
    initial_value: float = float("nan")
    final_value: float = float("nan")
    initial_grad_norm: float = float("nan")
    final_grad_norm: float = float("nan")
    max_orth_drift: float = 0.0

    @property
    def final_rel_gradnorm(self) -> float:
        if self.initial_grad_norm == 0.0:
            return 0.0
        return self.final_grad_norm / self.initial_grad_norm


class _CountingObjective:
    """Wraps an objective and counts value / value+gradient evaluations."""

    def __init__(self, objective):
        self._objective = objective
        self.value_calls = 0
        self.gradient_calls = 0

    def value(self, x: StiefelPoint) -> float:
        self.value_calls += 1
        return self._objective.value(x)

    def value_and_gradient(self, x: StiefelPoint):
        self.gradient_calls += 1
        return self._objective.value_and_gradient(x)


def line_search(
    objective,
    y: StiefelPoint,
    grad_y: DualTangentVector,
    gamma_in: float,
    config: SolverConfig,
    f_y: float | None = None,
    grad_norm_sq: float | None = None,
) -> tuple[float, StiefelPoint, float, int]:
    """Two-sided Armijo line search along -grad f(y).

    Returns (gamma, x_next, f_next, trials) with
    f_next <= f_y - (gamma/2) ||grad f(y)||_{g*}^2. ``f_y`` and
    ``grad_norm_sq`` may be passed to reuse cached evaluations; each trial
    point costs one objective value. Raises LineSearchFailedError once
    ``config.max_linesearch_steps`` trials are spent.
    """
    if f_y is None:
        f_y = objective.value(y)
    if grad_norm_sq is None:
        grad_norm_sq = dual_metric(grad_y, grad_y)
    if grad_norm_sq <= 0.0:
        raise ValueError("line search needs a nonzero gradient")
    if gamma_in <= 0.0:
        raise ValueError("gamma_in must be positive")

    gamma = gamma_in
    budget = config.max_linesearch_steps

    def trial(g: float) -> tuple[StiefelPoint | None, float]:
        try:
            x = cayley_retract(y, grad_y, -g)
        except RetractionFailedError:
            return None, float("inf")
        return x, objective.value(x)

    x_next, f_next = trial(gamma)
    trials = 1
    # grow while the decrease beats the stronger threshold
    while f_next < f_y - config.c_l * gamma * grad_norm_sq:
        if trials >= budget:
            raise LineSearchFailedError(f"no acceptable step in {budget} trials")
        gamma *= config.lambda_d
        x_next, f_next = trial(gamma)
        trials += 1
    # shrink until the Armijo 1/2 threshold holds (NaN-safe comparison)
    while not (f_next <= f_y - 0.5 * gamma * grad_norm_sq):
        if trials >= budget:
            raise LineSearchFailedError(f"no acceptable step in {budget} trials")
        gamma /= config.lambda_d
        x_next, f_next = trial(gamma)
        trials += 1
    assert x_next is not None
    return gamma, x_next, f_next, trials


def gradient_descent(objective, x0: StiefelPoint, config: SolverConfig) -> RunTrace:
    """Line-searched Riemannian gradient descent (no momentum)."""
    obj = _CountingObjective(objective)
    start = time.perf_counter()
    trace = RunTrace()

    res = obj.value_and_gradient(x0)
    x, f_x, grad = x0, res.value, res.grad
    gn = dual_norm(grad)
    g0 = gn
    gamma = config.gamma0
    trace.initial_value = f_x
    trace.initial_grad_norm = g0
    trace.max_orth_drift = x0.orth_error

    while True:
        if gn <= config.epsilon * g0:
            trace.termination = CONVERGED
            break
        if trace.iterations >= config.max_iter:
            trace.termination = MAX_ITERATIONS
            break
        try:
            gamma, x_next, f_next, _ = line_search(
                obj, x, grad, gamma, config, f_y=f_x, grad_norm_sq=gn * gn
            )
        except LineSearchFailedError:
            trace.termination = LINE_SEARCH_FAILED
            break
        driving_gn = gn
        x, f_x = x_next, f_next
        res = obj.value_and_gradient(x)
        f_x, grad = res.value, res.grad
        gn = dual_norm(grad)
        trace.records.append(
            IterationRecord(trace.iterations, f_x, driving_gn, gamma, False, 0)
        )
        trace.iterations += 1
        trace.max_orth_drift = max(trace.max_orth_drift, x.orth_error)

    trace.final_point = x
    trace.final_value = f_x
    trace.final_grad_norm = gn
    trace.f_evals = obj.value_calls
    trace.g_evals = obj.gradient_calls
    trace.wall_time = time.perf_counter() - start
    return trace


def agd_function_restart(
    objective,
    x0: StiefelPoint,
    config: SolverConfig,
    schedule: MomentumSchedule | None = None,
) -> RunTrace:
    """Accelerated gradient descent with the sufficient-decrease
    (function) restart condition."""
    return _accelerated(objective, x0, config, schedule, gradient_restart=False)


def agd_gradient_restart(
    objective,
    x0: StiefelPoint,
    config: SolverConfig,
    schedule: MomentumSchedule | None = None,
) -> RunTrace:
    """Accelerated gradient descent with the momentum-opposes-descent
    (gradient) restart condition."""
    return _accelerated(objective, x0, config, schedule, gradient_restart=True)


def _accelerated(objective, x0, config, schedule, gradient_restart: bool) -> RunTrace:
    if schedule is None:
        schedule = MomentumSchedule()
    obj = _CountingObjective(objective)
    start = time.perf_counter()
    trace = RunTrace()

    res = obj.value_and_gradient(x0)
    x, f_x = x0, res.value
    y, f_y, grad_y = x0, res.value, res.grad
    gn_y = dual_norm(grad_y)
    g0 = gn_y
    gamma = config.gamma0
    k = 0
    trace.initial_value = f_x
    trace.initial_grad_norm = g0
    trace.max_orth_drift = x0.orth_error

    while True:
        if gn_y <= config.epsilon * g0:
            trace.termination = CONVERGED
            break
        t = trace.iterations + trace.restarts
        if t >= config.max_iter:
            trace.termination = MAX_ITERATIONS
            break
        gn2 = gn_y * gn_y
        try:
            gamma, x_next, f_next, _ = line_search(
                obj, y, grad_y, gamma, config, f_y=f_y, grad_norm_sq=gn2
            )
        except LineSearchFailedError:
            trace.termination = LINE_SEARCH_FAILED
            break

        if gradient_restart:
            back = retract_inverse(y, x)
            restart = dual_metric(grad_y, back) < -gamma * gn2
        else:
            restart = f_next > f_x - config.c_r * gamma * gn2

        driving_gn = gn_y
        if restart:
            # discard the candidate step; momentum resets
            k = 0
            y = x
            res = obj.value_and_gradient(y)
            f_y, grad_y = res.value, res.grad
            gn_y = dual_norm(grad_y)
            trace.records.append(
                IterationRecord(t, f_x, driving_gn, gamma, True, 0)
            )
            trace.restarts += 1
        else:
            v = retract_inverse(x, x_next)
            y = cayley_retract(x, v, schedule.extrapolation_factor(k))
            applied_k = k
            k += 1
            x, f_x = x_next, f_next
            res = obj.value_and_gradient(y)
            f_y, grad_y = res.value, res.grad
            gn_y = dual_norm(grad_y)
            trace.records.append(
                IterationRecord(t, f_x, driving_gn, gamma, False, applied_k)
            )
            trace.iterations += 1
            trace.max_orth_drift = max(
                trace.max_orth_drift, x.orth_error, y.orth_error
            )

    trace.final_point = x
    trace.final_value = f_x
    trace.final_grad_norm = gn_y
    trace.f_evals = obj.value_calls
    trace.g_evals = obj.gradient_calls
    trace.wall_time = time.perf_counter() - start
    return trace
