"""Differential evolution over a box, with three mutation variants.

Variants: ``rand1`` (three random donors), ``best`` (difference toward the
population best) and ``degl`` (linear combination of a ring-neighborhood
local donor and a global donor). Selection follows the feasibility rules
(feasible beats infeasible, fitness among feasibles, violation among
infeasibles); the global and neighborhood best individuals are chosen by
ranking the (fitness, violation) pairs with all-cost TOPSIS.

The engine optimizes one scalarized fitness at a time; a
:class:`ScalarObjective` maps a cached evaluation to that scalar, which lets
the same engine serve every stage of the compromise pipeline.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .problems import Evaluation, Problem, deb_key, evaluate
from .topsis import cost_closeness

__all__ = [
    "DEConfig",
    "Individual",
    "ScalarObjective",
    "single_objective",
    "init_population",
    "mutate_rand1",
    "mutate_best",
    "local_global_donors",
    "mutate_degl",
    "weight_r",
    "crossover",
    "clamp",
    "select",
    "choose_best",
    "run",
]

VARIANTS = ("rand1", "best", "degl")


@dataclass(frozen=True)
class DEConfig:
    population_size: int = 40
    max_iterations: int = 100
    crossover_rate: float = 0.9
    scale_factor: float = 0.8
    alpha: float = 0.8
    beta: float = 0.8
    neighborhood_k: int = 2
    variant: str = "rand1"
    canonical_best: bool = False

    def __post_init__(self):
        if self.population_size < 4:
            raise ValueError("population size must be >= 4")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover rate must lie in [0, 1]")
        if self.neighborhood_k < 1 or 2 * self.neighborhood_k + 1 > self.population_size:
            raise ValueError("neighborhood must satisfy 2k + 1 <= population size")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if not 0.4 <= self.scale_factor <= 1.0:
            warnings.warn(
                f"scale factor {self.scale_factor} outside the recommended range [0.4, 1]",
                stacklevel=2,
            )


@dataclass(frozen=True)
class Individual:
    x: np.ndarray
    eval: Evaluation


@dataclass(frozen=True)
class ScalarObjective:
    """Maps an evaluation's minimization-sense objective vector to the scalar
    fitness the engine minimizes. The violation channel always comes from the
    evaluation itself."""

    label: str
    fn: Callable[[tuple[float, ...]], float]

    def fitness(self, evaluation: Evaluation) -> float:
        return self.fn(evaluation.objectives_min)


def single_objective(index: int, n_objectives: int, negate: bool = False) -> ScalarObjective:
    """Fitness = one objective component; ``negate`` turns a minimization of
    that component into a maximization."""
    if not 0 <= index < n_objectives:
        raise IndexError(f"objective index {index} out of range for {n_objectives} objectives")
    if negate:
        return ScalarObjective(f"max_f{index}", lambda f: -f[index])
    return ScalarObjective(f"min_f{index}", lambda f: f[index])


def init_population(problem: Problem, config: DEConfig, rng: np.random.Generator):
    """Uniform sample of the box: x_ij = l_j + U(0,1) * (u_j - l_j)."""
    lo = np.asarray(problem.lower_bounds, dtype=float)
    up = np.asarray(problem.upper_bounds, dtype=float)
    draws = rng.random((config.population_size, problem.dimension))
    xs = lo + draws * (up - lo)
    return [Individual(x, evaluate(problem, x.tolist())) for x in xs]


def _draw_distinct(rng: np.random.Generator, pool: Sequence[int], exclude, count: int):
    """Rejection-sample ``count`` distinct indices from ``pool``, avoiding ``exclude``."""
    taken = set(exclude)
    out = []
    size = len(pool)
    while len(out) < count:
        candidate = pool[int(rng.random() * size)]
        if candidate not in taken:
            taken.add(candidate)
            out.append(candidate)
    return out


def mutate_rand1(pop, i: int, F: float, rng: np.random.Generator) -> np.ndarray:
    r1, r2, r3 = _draw_distinct(rng, range(len(pop)), (i,), 3)
    return pop[r1].x + F * (pop[r2].x - pop[r3].x)


def mutate_best(pop, i, F, gbest_index, rng, canonical: bool = False) -> np.ndarray:
    """Best-guided mutation. The default places the best individual inside the
    difference term; ``canonical`` uses it as the base vector instead."""
    r1, r2 = _draw_distinct(rng, range(len(pop)), (i,), 2)
    if canonical:
        return pop[gbest_index].x + F * (pop[r1].x - pop[r2].x)
    return pop[r1].x + F * (pop[r2].x - pop[gbest_index].x)


def _neighborhood(i: int, k: int, size: int):
    return [(i + off) % size for off in range(-k, k + 1)]


def local_global_donors(pop, i, alpha, beta, neighborhood_k, rng, objective, gbest_index):
    """Local donor from the ring neighborhood (its own TOPSIS-best member) and
    global donor from the whole population."""
    neigh = _neighborhood(i, neighborhood_k, len(pop))
    best_j = choose_best(pop, neigh, objective)
    p, q = _draw_distinct(rng, neigh, (i,), 2)
    xi = pop[i].x
    local = xi + alpha * (pop[best_j].x - xi) + beta * (pop[p].x - pop[q].x)
    p2, q2 = _draw_distinct(rng, range(len(pop)), (i,), 2)
    glob = xi + alpha * (pop[gbest_index].x - xi) + beta * (pop[p2].x - pop[q2].x)
    return local, glob


def mutate_degl(pop, i, alpha, beta, r, neighborhood_k, rng, objective, gbest_index):
    local, glob = local_global_donors(
        pop, i, alpha, beta, neighborhood_k, rng, objective, gbest_index
    )
    return r * glob + (1.0 - r) * local


def weight_r(iteration: int, max_iterations: int) -> float:
    """Exploration-to-exploitation weight: grows linearly over the run."""
    return iteration / max_iterations


def crossover(target: np.ndarray, donor: np.ndarray, Cr: float, rng: np.random.Generator):
    """Binomial recombination; one forced donor component per trial."""
    n = len(target)
    mask = rng.random(n) <= Cr
    mask[int(rng.random() * n)] = True
    return np.where(mask, donor, target)


def clamp(trial: np.ndarray, problem: Problem) -> np.ndarray:
    return np.clip(
        trial,
        np.asarray(problem.lower_bounds, dtype=float),
        np.asarray(problem.upper_bounds, dtype=float),
    )


def select(target: Individual, trial: Individual, objective: ScalarObjective) -> Individual:
    """Trial replaces the target only when strictly better under the
    feasibility rules; ties keep the incumbent."""
    key_trial = deb_key(objective.fitness(trial.eval), trial.eval.violation)
    key_target = deb_key(objective.fitness(target.eval), target.eval.violation)
    return trial if key_trial < key_target else target


def choose_best(pop, indices, objective: ScalarObjective) -> int:
    """TOPSIS over the (fitness, violation) pairs of the given members, both
    criteria cost with uniform weights; returns the population index with the
    greatest closeness coefficient."""
    idx = list(indices)
    if not idx:
        raise ValueError("cannot choose the best of an empty index set")
    entries = np.empty((len(idx), 2))
    for row, j in enumerate(idx):
        entries[row, 0] = objective.fitness(pop[j].eval)
        entries[row, 1] = pop[j].eval.violation
    return idx[int(np.argmax(cost_closeness(entries)))]


def _best_of(fit: np.ndarray, vio: np.ndarray, idx) -> int:
    entries = np.column_stack((fit[idx], vio[idx]))
    return idx[int(np.argmax(cost_closeness(entries)))]


def _neighborhood_bests(fit, vio, neigh: np.ndarray) -> np.ndarray:
    """Per-row TOPSIS best over the ring neighborhoods, batched.

    ``neigh`` has one row of member indices per population slot; the result
    is the chosen population index per slot. Same arithmetic as
    :func:`moits.topsis.cost_closeness`, vectorized across neighborhoods.
    """
    entries = np.stack((fit[neigh], vio[neigh]), axis=2)
    scale = np.abs(entries).max(axis=1, keepdims=True)
    scale[scale == 0.0] = 1.0
    normalized = entries / scale
    positive = normalized.min(axis=1, keepdims=True)
    negative = normalized.max(axis=1, keepdims=True)
    d_plus = np.sqrt(((positive - normalized) ** 2).sum(axis=2) * 0.5)
    d_minus = np.sqrt(((negative - normalized) ** 2).sum(axis=2) * 0.5)
    total = d_plus + d_minus
    xi = np.where(total > 0.0, d_minus / np.where(total > 0.0, total, 1.0), 1.0)
    rows = np.arange(neigh.shape[0])
    return neigh[rows, xi.argmax(axis=1)]


def run(problem, config: DEConfig, objective, rng, initial=None):
    """Evolve for ``max_iterations`` generations and return the final population.

    Population slots are updated in place within a generation (later mutations
    see earlier replacements); the run is deterministic given the rng state.
    """
    pop = list(initial) if initial is not None else init_population(problem, config, rng)
    np_size = len(pop)
    fit = np.array([objective.fitness(ind.eval) for ind in pop])
    vio = np.array([ind.eval.violation for ind in pop])
    lo = np.asarray(problem.lower_bounds, dtype=float)
    up = np.asarray(problem.upper_bounds, dtype=float)
    indices = np.arange(np_size)
    F, Cr = config.scale_factor, config.crossover_rate
    n = problem.dimension

    if config.variant == "degl":
        neigh_rows = np.array(
            [_neighborhood(i, config.neighborhood_k, np_size) for i in range(np_size)]
        )
    for iteration in range(1, config.max_iterations + 1):
        r = weight_r(iteration, config.max_iterations)
        # best indices are frozen at generation start (slot updates within the
        # generation do not re-elect them)
        gbest = _best_of(fit, vio, indices) if config.variant != "rand1" else -1
        if config.variant == "degl":
            local_bests = _neighborhood_bests(fit, vio, neigh_rows)
        for i in range(np_size):
            if config.variant == "rand1":
                donor = mutate_rand1(pop, i, F, rng)
            elif config.variant == "best":
                donor = mutate_best(pop, i, F, gbest, rng, config.canonical_best)
            else:
                neigh = neigh_rows[i]
                p, q = _draw_distinct(rng, neigh, (i,), 2)
                xi = pop[i].x
                local = xi + config.alpha * (pop[local_bests[i]].x - xi) + config.beta * (
                    pop[p].x - pop[q].x
                )
                p2, q2 = _draw_distinct(rng, range(np_size), (i,), 2)
                glob = xi + config.alpha * (pop[gbest].x - xi) + config.beta * (
                    pop[p2].x - pop[q2].x
                )
                donor = r * glob + (1.0 - r) * local
            mask = rng.random(n) <= Cr
            mask[int(rng.random() * n)] = True
            trial = np.where(mask, donor, pop[i].x)
            np.clip(trial, lo, up, out=trial)
            ev = evaluate(problem, trial.tolist())
            f_trial = objective.fitness(ev)
            if deb_key(f_trial, ev.violation) < deb_key(fit[i], vio[i]):
                pop[i] = Individual(trial, ev)
                fit[i] = f_trial
                vio[i] = ev.violation
    return pop
