"""Integer refinement: stochastic rounding plus short-term-memory tabu search.

Real-valued solutions are rounded component-wise (up with probability equal
to the fractional part, so the rounding is unbiased), then refined by a tabu
search over +/-1 lattice moves. The tabu memory stores, per variable, the
iteration of its last update; a move is admissible when its variable's
tenure has expired (tenure is redrawn uniformly in [1, n] per scan) or when
the move beats the best solution found so far (aspiration). When every
variable's memory is stale the search diversifies by re-sampling one random
coordinate anywhere in its range.

Solution comparisons use the same feasibility rules as the evolution engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .problems import Evaluation, Problem, deb_key, evaluate

__all__ = ["TabuState", "CachedEvaluator", "stochastic_round", "tabu_move", "tabu_search"]


@dataclass
class TabuState:
    """Last-update iteration per variable plus the current iteration counter."""

    t: list[int]
    iteration: int = 0

    @classmethod
    def fresh(cls, n: int) -> "TabuState":
        return cls(t=[-n] * n)


class CachedEvaluator:
    """Memoizes evaluations (and scalar fitness) of integer lattice points.

    The benchmark lattices are tiny compared to the tabu move budget, so the
    search revisits points constantly; caching makes each move a couple of
    dictionary lookups.
    """

    def __init__(self, problem: Problem, objective=None):
        self.problem = problem
        self.objective = objective
        self._evals: dict[tuple[int, ...], Evaluation] = {}
        self._keys: dict[tuple[int, ...], tuple] = {}

    def evaluation(self, x: tuple[int, ...]) -> Evaluation:
        ev = self._evals.get(x)
        if ev is None:
            ev = evaluate(self.problem, x)
            self._evals[x] = ev
        return ev

    def key(self, x: tuple[int, ...]):
        """Feasibility-rule comparison key of ``x`` under the bound objective."""
        k = self._keys.get(x)
        if k is None:
            ev = self.evaluation(x)
            k = deb_key(self.objective.fitness(ev), ev.violation)
            self._keys[x] = k
        return k


def stochastic_round(x, rng: np.random.Generator) -> tuple[int, ...]:
    """Round each component up with probability equal to its fractional part."""
    out = []
    for v in x:
        base = int(np.floor(v))
        frac = v - base
        out.append(base + 1 if rng.random() < frac else base)
    return tuple(out)


def tabu_move(
    x: tuple[int, ...],
    x_star: tuple[int, ...],
    k: int,
    state: TabuState,
    evaluator: CachedEvaluator,
    rng: np.random.Generator,
    literal_diversification: bool = True,
) -> tuple[int, ...]:
    """One move: either a random-coordinate diversification kick (when every
    variable's memory is older than n iterations) or a breadth-first scan of
    the +/-1 neighbors, keeping the best admissible one.

    If no neighbor qualifies, ``x`` is returned unchanged and no tenure is
    stamped.
    """
    problem = evaluator.problem
    n = problem.dimension
    lo, up = problem.lower_bounds, problem.upper_bounds
    t = state.t

    if literal_diversification and all(k - tj > n for tj in t):
        c = int(rng.random() * n)
        value = lo[c] + int(rng.random() * (up[c] - lo[c] + 1))
        moved = list(x)
        moved[c] = value
        t[c] = k
        return tuple(moved)

    best = x
    best_key = evaluator.key(x)
    star_key = evaluator.key(x_star)
    winner = -1
    for j in range(n):
        tenure = 1 + int(rng.random() * n)
        xj = x[j]
        for delta in (-1, 1):
            sj = xj + delta
            if sj < lo[j] or sj > up[j]:
                continue
            candidate = x[:j] + (sj,) + x[j + 1 :]
            cand_key = evaluator.key(candidate)
            if cand_key < best_key and (k - t[j] > tenure or cand_key < star_key):
                best = candidate
                best_key = cand_key
                winner = j
    if winner >= 0:
        t[winner] = k
    return best


def tabu_search(
    x0,
    iterations: int,
    objective,
    rng: np.random.Generator,
    problem: Problem | None = None,
    evaluator: CachedEvaluator | None = None,
    literal_diversification: bool = True,
    visited: set | None = None,
) -> tuple[int, ...]:
    """Refine ``x0`` for the given number of moves; returns the best point found.

    Either ``problem`` or a pre-built ``evaluator`` (which carries the problem
    and may be shared across searches) must be supplied. When ``visited`` is
    given, every lattice point the walk lands on is added to it, so callers
    can harvest candidate solutions beyond the single best.
    """
    if evaluator is None:
        if problem is None:
            raise ValueError("tabu_search needs a problem or an evaluator")
        evaluator = CachedEvaluator(problem, objective)
    elif evaluator.objective is None:
        evaluator.objective = objective
    elif evaluator.objective is not objective:
        raise ValueError("shared evaluator is bound to a different objective")
    n = evaluator.problem.dimension
    x = tuple(int(v) for v in x0)
    x_star = x
    state = TabuState.fresh(n)
    if visited is not None:
        visited.add(x)
    for k in range(1, iterations + 1):
        state.iteration = k
        x = tabu_move(x, x_star, k, state, evaluator, rng, literal_diversification)
        if visited is not None:
            visited.add(x)
        if evaluator.key(x) < evaluator.key(x_star):
            x_star = x
    return x_star
