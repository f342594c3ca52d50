"""Integer multi-objective problem model, dominance and brute-force oracles.

A :class:`Problem` bundles objective functions (each with a min/max sense),
inequality constraints ``g_j(x) <= 0`` and an integer box ``[l, u]``.
Evaluation converts every objective to minimization sense and aggregates
constraint violation into a single scalar ``G(x) = max(0, g_1, ..., g_m)``,
so that all downstream comparisons (dominance, Deb feasibility rules,
TOPSIS criteria) work on one uniform representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Problem",
    "Evaluation",
    "evaluate",
    "dominates",
    "pareto_filter",
    "brute_force_pareto",
    "feasible_lattice",
    "deb_better",
    "deb_key",
]

ObjectiveFn = Callable[[Sequence[float]], float]

BRUTE_FORCE_LIMIT = 10_000_000


@dataclass(frozen=True)
class Problem:
    """An integer-box multi-objective problem with inequality constraints."""

    dimension: int
    objectives: tuple[tuple[ObjectiveFn, str], ...]
    constraints: tuple[ObjectiveFn, ...]
    lower_bounds: tuple[int, ...]
    upper_bounds: tuple[int, ...]
    name: str = "problem"

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.objectives) < 1:
            raise ValueError("at least one objective is required")
        for _, sense in self.objectives:
            if sense not in ("min", "max"):
                raise ValueError(f"unknown objective sense {sense!r}")
        if len(self.lower_bounds) != self.dimension or len(self.upper_bounds) != self.dimension:
            raise ValueError("bounds length must equal dimension")
        for lo, up in zip(self.lower_bounds, self.upper_bounds):
            if lo > up:
                raise ValueError(f"lower bound {lo} exceeds upper bound {up}")

    @property
    def n_objectives(self) -> int:
        return len(self.objectives)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)

    def in_bounds(self, x) -> bool:
        return all(lo <= v <= up for v, lo, up in zip(x, self.lower_bounds, self.upper_bounds))

    def lattice_size(self) -> int:
        size = 1
        for lo, up in zip(self.lower_bounds, self.upper_bounds):
            size *= up - lo + 1
        return size


@dataclass(frozen=True, slots=True)
class Evaluation:
    """Objective vector in minimization sense plus scalar max constraint violation."""

    objectives_min: tuple[float, ...]
    violation: float

    @property
    def feasible(self) -> bool:
        return self.violation == 0.0


def evaluate(problem: Problem, x) -> Evaluation:
    """Evaluate ``x`` (real-valued points allowed), negating max-sense objectives.

    Raises on dimension mismatch and on non-finite function values, naming
    the offending objective or constraint.
    """
    if len(x) != problem.dimension:
        raise ValueError(
            f"point of length {len(x)} for problem of dimension {problem.dimension}"
        )
    objs = []
    for i, (fn, sense) in enumerate(problem.objectives):
        val = float(fn(x))
        if not math.isfinite(val):
            raise ValueError(f"objective {i} of {problem.name!r} is non-finite at {tuple(x)}")
        objs.append(-val if sense == "max" else val)
    violation = 0.0
    for j, g in enumerate(problem.constraints):
        gval = float(g(x))
        if not math.isfinite(gval):
            raise ValueError(f"constraint {j} of {problem.name!r} is non-finite at {tuple(x)}")
        if gval > violation:
            violation = gval
    return Evaluation(tuple(objs), violation)


def dominates(a: Evaluation, b: Evaluation) -> bool:
    """Pareto dominance on minimization-sense objectives (violation is ignored)."""
    fa, fb = a.objectives_min, b.objectives_min
    if len(fa) != len(fb):
        raise ValueError("evaluations have different objective counts")
    return all(x <= y for x, y in zip(fa, fb)) and any(x < y for x, y in zip(fa, fb))


def pareto_filter(points):
    """Keep the feasible, mutually non-dominated points.

    ``points`` is a list of ``(vector, Evaluation)`` pairs; duplicate vectors
    collapse to the first occurrence. Infeasible points (``G > 0``) are
    discarded before dominance testing.
    """
    seen = {}
    for vec, ev in points:
        key = tuple(vec)
        if ev.violation == 0.0 and key not in seen:
            seen[key] = ev
    items = list(seen.items())
    kept = []
    for key, ev in items:
        if not any(dominates(other, ev) for _, other in items if other is not ev):
            kept.append((key, ev))
    return kept


def feasible_lattice(problem: Problem):
    """Enumerate every feasible integer point in the box, with its evaluation."""
    size = problem.lattice_size()
    if size > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"lattice of {problem.name!r} has {size} points, "
            f"exceeding the enumeration limit of {BRUTE_FORCE_LIMIT}"
        )
    ranges = [range(lo, up + 1) for lo, up in zip(problem.lower_bounds, problem.upper_bounds)]
    out = []
    for point in itertools.product(*ranges):
        ev = evaluate(problem, point)
        if ev.violation == 0.0:
            out.append((point, ev))
    return out


def brute_force_pareto(problem: Problem):
    """Exact Pareto set of the integer lattice, sorted lexicographically.

    Serves as the independent oracle for the stochastic solvers; refuses
    boxes with more than ``BRUTE_FORCE_LIMIT`` points.
    """
    front = pareto_filter(feasible_lattice(problem))
    front.sort(key=lambda item: item[0])
    return front


def deb_key(fitness: float, violation: float):
    """Total-order key realizing the feasibility rules: feasible first, then
    fitness among feasibles, violation among infeasibles."""
    if violation > 0.0:
        return (1, violation)
    return (0, fitness)


def deb_better(a: Evaluation, b: Evaluation, scalar_index: int = -1) -> bool:
    """True iff ``a`` strictly precedes ``b`` under the feasibility rules.

    ``scalar_index`` selects the objective used as scalar fitness; -1 means
    objective 0. Ties return False (the incumbent is kept).
    """
    idx = 0 if scalar_index == -1 else scalar_index
    if not 0 <= idx < len(a.objectives_min):
        raise IndexError(f"objective index {idx} out of range")
    return deb_key(a.objectives_min[idx], a.violation) < deb_key(b.objectives_min[idx], b.violation)
