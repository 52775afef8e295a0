"""Grey-wolf family optimizers and an inertia-weight PSO baseline.

Four variants share one loop and are selected by flags: the plain scheme
(``gwo``), the curve-scheduled inertia weight (``cgwo``), the adaptive
per-leader fitness weights (``agwo``), and both together (``acgwo``).

Objectives are callables ``objective(x, rng) -> float`` minimized over a
box-bounded space. Deterministic objectives must ignore the ``rng`` argument;
stochastic ones draw only from it, which keeps every run reproducible from
its seed.

RNG draw order is fixed so determinism is testable: initialization draws the
full position matrix agent-major; each iteration first evaluates objectives
in agent-index order (any noise draws happen there), then draws movement
coefficients per agent, per leader, per coordinate, r1 before r2.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import curves
from .curves import CurveParams
from .errors import ConfigError, LupusError

Objective = Callable[[np.ndarray, np.random.Generator], float]

VARIANTS = ("gwo", "cgwo", "agwo", "acgwo")
_CURVE_VARIANTS = ("cgwo", "acgwo")
_ADAPTIVE_VARIANTS = ("agwo", "acgwo")


@dataclass
class SearchSpace:
    """Box-bounded continuous search space with per-coordinate limits."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        if self.lower.ndim != 1 or self.lower.shape != self.upper.shape:
            raise ConfigError("lower and upper bounds must be 1-D and equally long")
        if self.lower.size == 0:
            raise ConfigError("search space must have at least one dimension")
        if not np.all(self.lower < self.upper):
            bad = int(np.argmin(self.upper - self.lower))
            raise ConfigError(
                f"lower must be strictly below upper in every coordinate "
                f"(violated at coordinate {bad}: [{self.lower[bad]}, {self.upper[bad]}])"
            )

    @classmethod
    def uniform(cls, dim: int, lower: float, upper: float) -> "SearchSpace":
        """Same scalar bounds in every one of ``dim`` coordinates."""
        if dim < 1:
            raise ConfigError(f"dim must be >= 1, got {dim}")
        return cls(np.full(dim, lower), np.full(dim, upper))

    @property
    def dim(self) -> int:
        return self.lower.size


@dataclass
class GwoConfig:
    """Settings of one grey-wolf run.

    ``normalize_inertia`` applies the inertia curve relative to its value at
    iteration 0, so the position update starts exactly as the canonical
    scheme and the weight decays below 1 from there. With the default curve
    parameters the unnormalized curve stays above 2 for the whole run, which
    makes every update an expansion away from the leaders and the swarm
    provably diverges; the raw reading remains available for study by
    setting this to False.

    ``abs_displacement`` keeps the displacement D a distance as in the
    canonical scheme; False uses the signed displacement instead.
    """

    variant: str = "acgwo"
    n_agents: int = 100
    max_iter: int = 1000
    inertia: CurveParams = curves.INERTIA_DEFAULTS
    leader: CurveParams = curves.LEADER_WEIGHT_DEFAULTS
    seed: int = 0
    abs_displacement: bool = True
    normalize_inertia: bool = True

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(
                f"unknown variant {self.variant!r} (known: {', '.join(VARIANTS)})"
            )
        if self.n_agents < 3:
            raise ConfigError(f"n_agents must be >= 3, got {self.n_agents}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class PsoConfig:
    """Settings of one global-best PSO run.

    Inertia decreases linearly from ``w_max`` to ``w_min`` over the run;
    velocities are clamped per coordinate to ``velocity_clamp`` times the
    coordinate range and start at zero.
    """

    n_particles: int = 40
    max_iter: int = 500
    c1: float = 2.0
    c2: float = 2.0
    w_max: float = 0.9
    w_min: float = 0.4
    velocity_clamp: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.n_particles < 1:
            raise ConfigError(f"n_particles must be >= 1, got {self.n_particles}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.w_max < self.w_min:
            raise ConfigError("w_max must be >= w_min")
        if self.velocity_clamp <= 0:
            raise ConfigError("velocity_clamp must be > 0")


@dataclass
class SwarmState:
    """Positions, fitnesses and the three leaders of one run in progress."""

    positions: np.ndarray
    fitness: np.ndarray
    alpha_pos: np.ndarray
    beta_pos: np.ndarray
    delta_pos: np.ndarray
    alpha_score: float = math.inf
    beta_score: float = math.inf
    delta_score: float = math.inf
    iteration: int = 0


@dataclass(frozen=True)
class RunResult:
    """Outcome of one optimizer run; immutable and safe to share."""

    best_position: np.ndarray
    best_score: float
    history: np.ndarray
    evaluations: int


def initialize(space: SearchSpace, cfg: GwoConfig, rng=None) -> SwarmState:
    """Spread agents uniformly over the space; leaders start at +inf."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    positions = rng.uniform(space.lower, space.upper, size=(cfg.n_agents, space.dim))
    dim = space.dim
    return SwarmState(
        positions=positions,
        fitness=np.full(cfg.n_agents, math.inf),
        alpha_pos=np.zeros(dim),
        beta_pos=np.zeros(dim),
        delta_pos=np.zeros(dim),
    )


def control_wa(iteration: int, max_iter: int) -> float:
    """Exploration control scalar decaying linearly from 2 to 0."""
    if max_iter <= 0:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if not 0 <= iteration <= max_iter:
        raise ValueError(f"iteration must lie in [0, {max_iter}], got {iteration}")
    return 2.0 - iteration * (2.0 / max_iter)


def step_coefficients(wa: float, dim: int, rng: np.random.Generator):
    """Per-coordinate coefficient vectors A in [-wa, wa] and C in [0, 2].

    One uniform pair is drawn per coordinate, r1 before r2; A = 2*wa*r1 - wa
    and C = 2*r2.
    """
    draws = rng.random((dim, 2))
    a = 2.0 * wa * draws[:, 0] - wa
    c = 2.0 * draws[:, 1]
    return a, c


def candidate_from_leader(wolf_pos, leader_pos, a, c, ww: float,
                          abs_displacement: bool = True) -> np.ndarray:
    """Candidate position proposed by one leader for one wolf.

    D = |C*leader - wolf| coordinate-wise (signed when ``abs_displacement``
    is off) and the candidate is ww*leader - A*D.
    """
    wolf_pos = np.asarray(wolf_pos, dtype=float)
    leader_pos = np.asarray(leader_pos, dtype=float)
    disp = c * leader_pos - wolf_pos
    if abs_displacement:
        disp = np.abs(disp)
    return ww * leader_pos - a * disp


def combine_candidates(candidates, weights) -> np.ndarray:
    """Weighted mean of the per-leader candidates."""
    candidates = np.asarray(candidates, dtype=float)
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0:
        raise LupusError(f"non-positive leader weight sum {total}")
    return (weights[:, None] * candidates).sum(axis=0) / total


def clamp(pos, space: SearchSpace) -> np.ndarray:
    """Trim positions to the box, coordinate-wise."""
    return np.clip(pos, space.lower, space.upper)


def _evaluate(objective: Objective, state: SwarmState, rng) -> None:
    # Agent-index order; a NaN fitness ranks as +inf so a misbehaving
    # objective can never become a leader.
    for i in range(state.positions.shape[0]):
        value = float(objective(state.positions[i], rng))
        state.fitness[i] = math.inf if math.isnan(value) else value


def _update_leaders(state: SwarmState) -> None:
    for i in range(state.fitness.size):
        f = float(state.fitness[i])
        if f < state.alpha_score:
            state.delta_score, state.delta_pos = state.beta_score, state.beta_pos
            state.beta_score, state.beta_pos = state.alpha_score, state.alpha_pos
            state.alpha_score, state.alpha_pos = f, state.positions[i].copy()
        elif f < state.beta_score:
            state.delta_score, state.delta_pos = state.beta_score, state.beta_pos
            state.beta_score, state.beta_pos = f, state.positions[i].copy()
        elif f < state.delta_score:
            state.delta_score, state.delta_pos = f, state.positions[i].copy()


def run(objective: Objective, space: SearchSpace, cfg: GwoConfig) -> RunResult:
    """Run one grey-wolf optimization to completion.

    Per iteration: evaluate all agents, update the leaders, compute the
    control scalar and the inertia weight, compute the leader weights (equal
    for the non-adaptive variants), move every wolf through the weighted mean
    of its three leader candidates, clamp to the box, and record the alpha
    score. The last recorded alpha score is the best score.
    """
    n, dim = cfg.n_agents, space.dim
    rng = np.random.default_rng(cfg.seed)
    state = initialize(space, cfg, rng)

    use_curve = cfg.variant in _CURVE_VARIANTS
    use_weights = cfg.variant in _ADAPTIVE_VARIANTS
    ww_scale = 1.0
    if use_curve and cfg.normalize_inertia:
        ww_scale = curves.cauchy_inertia(0, cfg.max_iter, cfg.inertia)
        if ww_scale == 0:
            raise ConfigError("inertia curve is 0 at iteration 0; cannot normalize")

    history = np.empty(cfg.max_iter)
    evaluations = 0
    for it in range(cfg.max_iter):
        _evaluate(objective, state, rng)
        evaluations += n
        _update_leaders(state)

        # Population average before any position update.
        f_avg = float(state.fitness.mean())
        wa = control_wa(it, cfg.max_iter)
        ww = 1.0
        if use_curve:
            ww = curves.cauchy_inertia(it, cfg.max_iter, cfg.inertia) / ww_scale
        if use_weights:
            weights = np.array([
                curves.leader_weight(state.alpha_score, f_avg, cfg.leader),
                curves.leader_weight(state.beta_score, f_avg, cfg.leader),
                curves.leader_weight(state.delta_score, f_avg, cfg.leader),
            ])
        else:
            weights = np.ones(3)
        total = weights.sum()
        if total <= 0:
            raise LupusError(f"non-positive leader weight sum {total}")

        # Vectorized movement; draw order equals per-agent, per-leader calls
        # of step_coefficients because the block fills C-order.
        leaders = np.stack([state.alpha_pos, state.beta_pos, state.delta_pos])
        draws = rng.random((n, 3, dim, 2))
        a = 2.0 * wa * draws[..., 0] - wa
        c = 2.0 * draws[..., 1]
        disp = c * leaders[None, :, :] - state.positions[:, None, :]
        if cfg.abs_displacement:
            disp = np.abs(disp)
        cands = ww * leaders[None, :, :] - a * disp
        moved = (weights[None, :, None] * cands).sum(axis=1) / total
        state.positions = clamp(moved, space)
        state.iteration = it + 1
        history[it] = state.alpha_score

    return RunResult(
        best_position=state.alpha_pos.copy(),
        best_score=float(state.alpha_score),
        history=history,
        evaluations=evaluations,
    )


def pso_run(objective: Objective, space: SearchSpace, cfg: PsoConfig) -> RunResult:
    """Run a global-best PSO with linearly decreasing inertia.

    Same result contract as :func:`run`; the history records the global-best
    score after each iteration's evaluations. Movement draws one uniform pair
    per particle per coordinate, r1 before r2.
    """
    n, dim = cfg.n_particles, space.dim
    rng = np.random.default_rng(cfg.seed)
    positions = rng.uniform(space.lower, space.upper, size=(n, dim))
    velocities = np.zeros((n, dim))
    v_max = cfg.velocity_clamp * (space.upper - space.lower)

    pbest = positions.copy()
    pbest_f = np.full(n, math.inf)
    gbest = np.zeros(dim)
    gbest_f = math.inf

    history = np.empty(cfg.max_iter)
    evaluations = 0
    fitness = np.empty(n)
    for it in range(cfg.max_iter):
        for i in range(n):
            value = float(objective(positions[i], rng))
            fitness[i] = math.inf if math.isnan(value) else value
        evaluations += n

        improved = fitness < pbest_f
        pbest[improved] = positions[improved]
        pbest_f[improved] = fitness[improved]
        best = int(np.argmin(pbest_f))
        if pbest_f[best] < gbest_f:
            gbest_f = float(pbest_f[best])
            gbest = pbest[best].copy()
        history[it] = gbest_f

        w = cfg.w_max - (cfg.w_max - cfg.w_min) * it / cfg.max_iter
        draws = rng.random((n, dim, 2))
        velocities = (
            w * velocities
            + cfg.c1 * draws[..., 0] * (pbest - positions)
            + cfg.c2 * draws[..., 1] * (gbest[None, :] - positions)
        )
        velocities = np.clip(velocities, -v_max, v_max)
        positions = clamp(positions + velocities, space)

    return RunResult(
        best_position=gbest.copy(),
        best_score=gbest_f,
        history=history,
        evaluations=evaluations,
    )
