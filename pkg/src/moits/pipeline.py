"""Three-stage compromise pipeline over an augmented objective set.

Stage 1 finds, per objective, its best (ideal) and worst (anti-ideal) values
over the feasible region. Stage 2 turns these into two normalized distance
functions, to the ideal and to the anti-ideal, and locates their extreme
points. Stage 3 maximizes the minimum of two piecewise-linear membership
functions of those distances (the fuzzy max-min compromise), alternating the
evolution engine with tabu-search refinement of every population member and
archiving each feasible integer result.

Constraints enter the pipeline as an extra minimization objective, the
maximum violation G(x); the constraint functions themselves stay on the
augmented problem so that feasibility rules and the ideal/anti-ideal values
keep operating over the feasible region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import de, tabu
from .problems import Evaluation, Problem, deb_key, evaluate, feasible_lattice, pareto_filter

__all__ = [
    "CompromiseAnchors",
    "SolutionArchive",
    "HybridConfig",
    "augment_with_violation",
    "stage1_anchors",
    "oracle_anchor_values",
    "build_anchor_frame",
    "d_pis",
    "d_nis",
    "stage2_anchors",
    "mu1",
    "mu2",
    "maxmin_satisfaction",
    "maxmin_objective",
    "stage3_alternate",
    "solve",
]

DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class HybridConfig:
    de: de.DEConfig = field(default_factory=de.DEConfig)
    ts_iterations: int = 1000
    alternations: int = 10
    runs: int = 20
    include_violation_objective: bool = True
    oracle_anchors: bool = False
    literal_diversification: bool = True

    def __post_init__(self):
        if min(self.ts_iterations, self.alternations, self.runs) < 1:
            raise ValueError("ts_iterations, alternations and runs must be positive")


@dataclass(frozen=True)
class CompromiseAnchors:
    """Per-objective ideal/anti-ideal values plus the distance anchors of stage 2.

    ``active`` lists the objective indices kept in the distance sums; an
    objective whose ideal equals its anti-ideal carries no information and is
    dropped (recorded in ``dropped``) with the uniform weights renormalized.
    """

    f_star: tuple[float, ...]
    f_minus: tuple[float, ...]
    active: tuple[int, ...]
    weights: tuple[float, ...]
    dropped: tuple[int, ...] = ()
    d_pis_star: float = math.nan
    d_nis_star: float = math.nan
    d_pis_prime: float = math.nan
    d_nis_prime: float = math.nan
    x_p: tuple[float, ...] = ()
    x_n: tuple[float, ...] = ()
    _coefs: tuple = field(default=(), repr=False)

    def __post_init__(self):
        # coefficient (w_j / (f_j^- - f_j^*))^2 per retained objective
        coefs = []
        for w, j in zip(self.weights, self.active):
            span = self.f_minus[j] - self.f_star[j]
            coefs.append((j, (w / span) ** 2))
        object.__setattr__(self, "_coefs", tuple(coefs))

    @property
    def mu1_degenerate(self) -> bool:
        span = self.d_pis_prime - self.d_pis_star
        return not span > DEGENERACY_TOL

    @property
    def mu2_degenerate(self) -> bool:
        span = self.d_nis_star - self.d_nis_prime
        return not span > DEGENERACY_TOL


class _ViolationObjective:
    """Maximum constraint violation of the source problem, as an objective."""

    def __init__(self, constraints):
        self.constraints = constraints

    def __call__(self, x) -> float:
        worst = 0.0
        for g in self.constraints:
            val = g(x)
            if val > worst:
                worst = val
        return worst


def augment_with_violation(problem: Problem) -> Problem:
    """Append G(x) as an extra minimization objective (unconstrained problems
    pass through unchanged). The constraint list is retained so feasibility
    rules and stage-1 anchors stay restricted to the feasible region."""
    if problem.n_constraints == 0:
        return problem
    return replace(
        problem,
        objectives=problem.objectives + ((_ViolationObjective(problem.constraints), "min"),),
        name=f"{problem.name}+violation",
    )


def _stage_de_config(config: HybridConfig) -> de.DEConfig:
    # anchor-finding subproblems always use the neighborhood variant
    return replace(config.de, variant="degl")


def _run_best(problem_k, de_config, objective, rng):
    pop = de.run(problem_k, de_config, objective, rng)
    best = de.choose_best(pop, range(len(pop)), objective)
    return pop[best]


def stage1_anchors(problem_k: Problem, config: HybridConfig, rng):
    """Ideal and anti-ideal value of every objective via one minimizing and one
    maximizing evolution run each."""
    k = problem_k.n_objectives
    cfg = _stage_de_config(config)
    f_star, f_minus = [], []
    for j in range(k):
        low = _run_best(problem_k, cfg, de.single_objective(j, k), rng)
        f_star.append(low.eval.objectives_min[j])
        high = _run_best(problem_k, cfg, de.single_objective(j, k, negate=True), rng)
        f_minus.append(high.eval.objectives_min[j])
    return tuple(f_star), tuple(f_minus)


def oracle_anchor_values(problem_k: Problem):
    """Exact anchors from exhaustive feasible-lattice enumeration."""
    points = feasible_lattice(problem_k)
    if not points:
        raise ValueError(f"{problem_k.name!r} has no feasible lattice point")
    k = problem_k.n_objectives
    columns = [[ev.objectives_min[j] for _, ev in points] for j in range(k)]
    return tuple(min(col) for col in columns), tuple(max(col) for col in columns)


def build_anchor_frame(f_star, f_minus) -> CompromiseAnchors:
    """Partial anchors: drop degenerate objectives, renormalize uniform weights."""
    active, dropped = [], []
    for j, (lo, hi) in enumerate(zip(f_star, f_minus)):
        tol = DEGENERACY_TOL * max(1.0, abs(lo), abs(hi))
        (active if hi - lo > tol else dropped).append(j)
    weights = tuple([1.0 / len(active)] * len(active)) if active else ()
    return CompromiseAnchors(
        f_star=tuple(f_star),
        f_minus=tuple(f_minus),
        active=tuple(active),
        weights=weights,
        dropped=tuple(dropped),
    )


def d_pis(values, anchors: CompromiseAnchors) -> float:
    """Weighted normalized distance of an objective vector to the ideal point."""
    total = 0.0
    f_star = anchors.f_star
    for j, coef in anchors._coefs:
        diff = values[j] - f_star[j]
        total += coef * diff * diff
    return math.sqrt(total)


def d_nis(values, anchors: CompromiseAnchors) -> float:
    """Weighted normalized distance of an objective vector to the anti-ideal point."""
    total = 0.0
    f_minus = anchors.f_minus
    for j, coef in anchors._coefs:
        diff = f_minus[j] - values[j]
        total += coef * diff * diff
    return math.sqrt(total)


def d_pis_objective(anchors) -> de.ScalarObjective:
    return de.ScalarObjective("min_d_pis", lambda f: d_pis(f, anchors))


def d_nis_max_objective(anchors) -> de.ScalarObjective:
    return de.ScalarObjective("max_d_nis", lambda f: -d_nis(f, anchors))


def stage2_anchors(problem_k, frame: CompromiseAnchors, config: HybridConfig, rng):
    """Locate the distance extremes: the point closest to the ideal, the point
    farthest from the anti-ideal, and each distance evaluated at the other's
    solution."""
    cfg = _stage_de_config(config)
    best_p = _run_best(problem_k, cfg, d_pis_objective(frame), rng)
    best_n = _run_best(problem_k, cfg, d_nis_max_objective(frame), rng)
    fp = best_p.eval.objectives_min
    fn = best_n.eval.objectives_min
    return replace(
        frame,
        d_pis_star=d_pis(fp, frame),
        d_nis_star=d_nis(fn, frame),
        d_pis_prime=d_pis(fn, frame),
        d_nis_prime=d_nis(fp, frame),
        x_p=tuple(float(v) for v in best_p.x),
        x_n=tuple(float(v) for v in best_n.x),
    )


def mu1(values, anchors: CompromiseAnchors) -> float:
    """Satisfaction with the distance to the ideal: 1 at the minimal distance,
    0 at the distance attained by the anti-ideal extreme, linear between.
    Degenerate spans collapse to constant 1."""
    if anchors.mu1_degenerate:
        return 1.0
    d = d_pis(values, anchors)
    if d < anchors.d_pis_star:
        return 1.0
    if d > anchors.d_pis_prime:
        return 0.0
    return 1.0 - (d - anchors.d_pis_star) / (anchors.d_pis_prime - anchors.d_pis_star)


def mu2(values, anchors: CompromiseAnchors) -> float:
    """Satisfaction with the distance to the anti-ideal (larger is better)."""
    if anchors.mu2_degenerate:
        return 1.0
    d = d_nis(values, anchors)
    if d > anchors.d_nis_star:
        return 1.0
    if d < anchors.d_nis_prime:
        return 0.0
    return 1.0 - (anchors.d_nis_star - d) / (anchors.d_nis_star - anchors.d_nis_prime)


def maxmin_satisfaction(values, anchors: CompromiseAnchors) -> float:
    """The satisfaction level stage 3 maximizes: min of both memberships."""
    return min(mu1(values, anchors), mu2(values, anchors))


def maxmin_objective(anchors) -> de.ScalarObjective:
    """Scalar fitness for stage 3 (minimized): the negated satisfaction level."""
    return de.ScalarObjective("maxmin_alpha", lambda f: -maxmin_satisfaction(f, anchors))


@dataclass
class ArchiveEntry:
    evaluation: Evaluation
    count: int
    first_run: int


class SolutionArchive:
    """Distinct feasible integer solutions with per-run discovery counts.

    Within one run an entry counts once regardless of how often it is
    rediscovered; :meth:`merge_run` bumps counts by run membership.
    """

    def __init__(self):
        self.entries: dict[tuple[int, ...], ArchiveEntry] = {}

    def add(self, x, evaluation: Evaluation, run_id: int = 0) -> None:
        if evaluation.violation != 0.0:
            raise ValueError(f"refusing to archive infeasible point {tuple(x)}")
        key = tuple(int(v) for v in x)
        if key not in self.entries:
            self.entries[key] = ArchiveEntry(evaluation, 1, run_id)

    def merge_run(self, run_archive: "SolutionArchive") -> None:
        for key, entry in run_archive.entries.items():
            mine = self.entries.get(key)
            if mine is None:
                self.entries[key] = ArchiveEntry(entry.evaluation, 1, entry.first_run)
            else:
                mine.count += 1
                mine.first_run = min(mine.first_run, entry.first_run)

    def finalize_pareto(self) -> None:
        """Drop entries dominated by another archived entry."""
        kept = pareto_filter([(key, e.evaluation) for key, e in self.entries.items()])
        keep_keys = {key for key, _ in kept}
        self.entries = {k: e for k, e in self.entries.items() if k in keep_keys}

    def __contains__(self, key) -> bool:
        return tuple(key) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def solutions(self):
        return sorted(self.entries)


def stage3_alternate(
    problem_k: Problem,
    d_original: int,
    anchors: CompromiseAnchors,
    config: HybridConfig,
    rng,
    archive: SolutionArchive,
    run_id: int = 0,
) -> SolutionArchive:
    """Alternate evolution on the satisfaction level with tabu refinement.

    Each alternation runs the configured variant for its full iteration
    budget, then rounds and tabu-refines every population member, archiving
    each feasible integer result and writing it back into the population when
    it improves the incumbent. The archive is Pareto-filtered on the original
    objectives at the end.
    """
    objective = maxmin_objective(anchors)
    evaluator = tabu.CachedEvaluator(problem_k, objective)
    pop = de.init_population(problem_k, config.de, rng)
    visited: set = set()
    for _ in range(config.alternations):
        pop = de.run(problem_k, config.de, objective, rng, initial=pop)
        for i, member in enumerate(pop):
            rounded = tabu.stochastic_round(member.x, rng)
            refined = tabu.tabu_search(
                rounded,
                config.ts_iterations,
                objective,
                rng,
                evaluator=evaluator,
                literal_diversification=config.literal_diversification,
                visited=visited,
            )
            ev = evaluator.evaluation(refined)
            if evaluator.key(refined) < deb_key(objective.fitness(member.eval), member.eval.violation):
                pop[i] = de.Individual(np.asarray(refined, dtype=float), ev)
    for point in sorted(visited):
        ev = evaluator.evaluation(point)
        if ev.violation == 0.0:
            archive.add(point, Evaluation(ev.objectives_min[:d_original], 0.0), run_id)
    archive.finalize_pareto()
    return archive


def compute_anchors(problem: Problem, config: HybridConfig, rng):
    """Stages 1 and 2 on the violation-augmented problem."""
    problem_k = (
        augment_with_violation(problem) if config.include_violation_objective else problem
    )
    if config.oracle_anchors:
        f_star, f_minus = oracle_anchor_values(problem_k)
    else:
        f_star, f_minus = stage1_anchors(problem_k, config, rng)
    frame = build_anchor_frame(f_star, f_minus)
    return problem_k, stage2_anchors(problem_k, frame, config, rng)


def solve(problem: Problem, config: HybridConfig, rng, run_id: int = 0) -> SolutionArchive:
    """One full run: anchors, then the alternating stage-3 search.

    Returns the finalized archive; the completed anchors are attached as
    ``archive.anchors`` for reporting.
    """
    problem_k, anchors = compute_anchors(problem, config, rng)
    archive = SolutionArchive()
    stage3_alternate(
        problem_k, problem.n_objectives, anchors, config, rng, archive, run_id
    )
    archive.anchors = anchors
    return archive
