import numpy as np
import pytest

from moits.benchmarks import benchmark
from moits.de import single_objective
from moits.problems import Problem, deb_key, evaluate, feasible_lattice
from moits.tabu import (
    CachedEvaluator,
    TabuState,
    stochastic_round,
    tabu_move,
    tabu_search,
)

OBJ1 = single_objective(0, 1)


def quad_problem(lower=(-5, -5), upper=(5, 5), center=(2, -3)):
    def f(x):
        return (x[0] - center[0]) ** 2 + (x[1] - center[1]) ** 2

    return Problem(
        dimension=2,
        objectives=((f, "min"),),
        constraints=(),
        lower_bounds=lower,
        upper_bounds=upper,
    )


class TestStochasticRound:
    def test_integers_pass_through(self):
        rng = np.random.default_rng(0)
        assert stochastic_round([3.0, -2.0], rng) == (3, -2)

    def test_result_brackets_input(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            v = rng.uniform(-10, 10)
            (r,) = stochastic_round([v], rng)
            assert r in (int(np.floor(v)), int(np.floor(v)) + 1)

    def test_unbiased_mean(self):
        # 2.25 rounds up a quarter of the time: mean 2.25, sd 0.25/sqrt(N)
        rng = np.random.default_rng(42)
        draws = 100_000
        total = sum(stochastic_round([2.25], rng)[0] for _ in range(draws))
        mean = total / draws
        sigma = np.sqrt(0.25 * 0.75 / draws)
        assert abs(mean - 2.25) < 3 * sigma
        assert 2.24 < mean < 2.26

    def test_negative_fraction(self):
        rng = np.random.default_rng(2)
        (r,) = stochastic_round([-1.75], rng)
        assert r in (-2, -1)


class TestCachedEvaluator:
    def test_memoizes_evaluations(self):
        calls = []
        problem = Problem(
            dimension=1,
            objectives=((lambda x: calls.append(x) or float(x[0] ** 2), "min"),),
            constraints=(),
            lower_bounds=(-5,),
            upper_bounds=(5,),
        )
        ev = CachedEvaluator(problem, OBJ1)
        ev.evaluation((3,))
        ev.evaluation((3,))
        ev.key((3,))
        assert len(calls) == 1

    def test_key_matches_feasibility_rules(self):
        problem = benchmark("p1").problem
        obj = single_objective(0, 3)
        ev = CachedEvaluator(problem, obj)
        e = evaluate(problem, (4, 4))
        assert ev.key((4, 4)) == deb_key(obj.fitness(e), e.violation)

    def test_search_binds_free_evaluator(self):
        ev = CachedEvaluator(quad_problem())
        tabu_search((0, 0), 5, OBJ1, np.random.default_rng(0), evaluator=ev)
        assert ev.objective is OBJ1

    def test_search_rejects_mismatched_objective(self):
        ev = CachedEvaluator(quad_problem(), OBJ1)
        other = single_objective(0, 1, negate=True)
        with pytest.raises(ValueError, match="different objective"):
            tabu_search((0, 0), 5, other, np.random.default_rng(0), evaluator=ev)

    def test_search_requires_problem_or_evaluator(self):
        with pytest.raises(ValueError):
            tabu_search((0, 0), 5, OBJ1, np.random.default_rng(0))


class TestTabuMove:
    def test_improving_neighbor_taken_and_stamped(self):
        ev = CachedEvaluator(quad_problem(center=(2, 0)), OBJ1)
        state = TabuState.fresh(2)
        state.t = [0, 0]  # recent enough to skip the diversification branch
        moved = tabu_move((0, 0), (0, 0), k=1, state=state, evaluator=ev,
                          rng=np.random.default_rng(0))
        assert moved == (1, 0)
        assert state.t[0] == 1 and state.t[1] == 0

    def test_no_qualifying_move_returns_input_unstamped(self):
        # x is the unconstrained optimum: every neighbor is worse
        ev = CachedEvaluator(quad_problem(center=(2, -3)), OBJ1)
        state = TabuState.fresh(2)
        state.t = [0, 0]
        before = list(state.t)
        moved = tabu_move((2, -3), (2, -3), k=1, state=state, evaluator=ev,
                          rng=np.random.default_rng(0))
        assert moved == (2, -3)
        assert state.t == before

    def test_tabu_blocks_recent_variable_without_aspiration(self):
        # both variables stamped this iteration; the improving move toward the
        # center does not beat the overall best, so nothing is admissible
        ev = CachedEvaluator(quad_problem(center=(2, 0)), OBJ1)
        state = TabuState(t=[5, 5], iteration=5)
        moved = tabu_move((0, 0), (2, 0), k=5, state=state, evaluator=ev,
                          rng=np.random.default_rng(0))
        assert moved == (0, 0)

    def test_aspiration_overrides_tabu(self):
        # same stamps, but the move lands on a point better than the best yet
        ev = CachedEvaluator(quad_problem(center=(2, 0)), OBJ1)
        state = TabuState(t=[5, 5], iteration=5)
        moved = tabu_move((1, 0), (0, 0), k=5, state=state, evaluator=ev,
                          rng=np.random.default_rng(0))
        assert moved == (2, 0)

    def test_diversification_when_memory_stale(self):
        ev = CachedEvaluator(quad_problem(), OBJ1)
        state = TabuState.fresh(2)  # t = [-2, -2], k - t_j > n for any k >= 1
        rng = np.random.default_rng(0)
        problem = ev.problem
        for k in range(1, 20):
            state.t = [-2, -2]
            moved = tabu_move((0, 0), (0, 0), k=k, state=state, evaluator=ev, rng=rng)
            changed = [j for j in range(2) if moved[j] != 0]
            assert len(changed) <= 1
            assert state.t.count(k) == 1  # exactly one coordinate stamped
            for j, v in enumerate(moved):
                assert problem.lower_bounds[j] <= v <= problem.upper_bounds[j]

    def test_diversification_disabled(self):
        ev = CachedEvaluator(quad_problem(center=(2, 0)), OBJ1)
        state = TabuState.fresh(2)
        moved = tabu_move((0, 0), (0, 0), k=1, state=state, evaluator=ev,
                          rng=np.random.default_rng(0), literal_diversification=False)
        assert moved == (1, 0)  # falls through to the neighborhood scan

    def test_respects_bounds(self):
        ev = CachedEvaluator(quad_problem(lower=(0, 0), upper=(3, 3), center=(-5, -5)), OBJ1)
        state = TabuState.fresh(2)
        state.t = [0, 0]
        moved = tabu_move((0, 0), (0, 0), k=1, state=state, evaluator=ev,
                          rng=np.random.default_rng(0))
        assert all(0 <= v <= 3 for v in moved)


class TestTabuSearch:
    def test_finds_unconstrained_quadratic_minimum(self):
        problem = quad_problem()
        result = tabu_search((-5, 5), 200, OBJ1, np.random.default_rng(0), problem=problem)
        assert result == (2, -3)

    def test_never_returns_worse_than_start(self):
        problem = benchmark("p2").problem
        obj = single_objective(0, 3)
        ev = CachedEvaluator(problem, obj)
        for seed in range(10):
            x0 = (seed % 17, (3 * seed) % 17)
            result = tabu_search(x0, 50, obj, np.random.default_rng(seed), evaluator=ev)
            assert ev.key(result) <= ev.key(tuple(x0))

    def test_deterministic(self):
        problem = benchmark("p3").problem
        obj = single_objective(1, 2)
        results = {
            tabu_search((0, 0), 100, obj, np.random.default_rng(7), problem=problem)
            for _ in range(3)
        }
        assert len(results) == 1

    def test_reaches_constrained_lattice_optimum(self):
        # p3 second objective (maximize x2): feasible lattice max is x2 = 7
        problem = benchmark("p3").problem
        obj = single_objective(1, 2)
        target = min(
            (e.objectives_min[1] for _, e in feasible_lattice(problem))
        )
        result = tabu_search((12, 0), 500, obj, np.random.default_rng(1), problem=problem)
        assert evaluate(problem, result).objectives_min[1] == target

    def test_visited_trail_recorded(self):
        problem = quad_problem()
        visited = set()
        result = tabu_search(
            (-5, 5), 30, OBJ1, np.random.default_rng(0), problem=problem, visited=visited
        )
        assert (-5, 5) in visited
        assert result in visited
        assert all(isinstance(p, tuple) and len(p) == 2 for p in visited)
        assert len(visited) > 1

    def test_zero_iterations_returns_start(self):
        problem = quad_problem()
        assert tabu_search((1, 1), 0, OBJ1, np.random.default_rng(0), problem=problem) == (1, 1)

    def test_float_start_coerced_to_ints(self):
        problem = quad_problem()
        result = tabu_search((1.0, 1.0), 10, OBJ1, np.random.default_rng(0), problem=problem)
        assert all(isinstance(v, int) for v in result)
