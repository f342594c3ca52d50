"""Defining an integer multi-objective problem and enumerating its Pareto set.

A `Problem` bundles objective functions (each tagged "min" or "max"),
inequality constraints in g(x) <= 0 form, and an integer box. Evaluations
carry the minimization-sense objective vector plus the worst constraint
violation; feasibility is exactly violation == 0.

For small boxes the exhaustive lattice oracle is the ground truth the rest
of the library is tested against.
"""

from moits import benchmark, brute_force_pareto, evaluate

spec = benchmark("p3")
problem = spec.problem

print(f"benchmark {problem.name}: maximize x1 and x2 over "
      f"[{problem.lower_bounds[0]}, {problem.upper_bounds[0]}] x "
      f"[{problem.lower_bounds[1]}, {problem.upper_bounds[1]}] "
      f"under {problem.n_constraints} linear constraints\n")

for point in [(9, 5), (5, 7), (0, 0)]:
    ev = evaluate(problem, point)
    status = "feasible" if ev.feasible else f"violation {ev.violation:.2f}"
    print(f"  f{point} -> objectives (min sense) {ev.objectives_min}, {status}")

print("\nexhaustive Pareto front of the feasible lattice:")
for solution, ev in brute_force_pareto(problem):
    originals = tuple(-v for v in ev.objectives_min)  # both objectives are maximized
    print(f"  {solution}  objectives {originals}")
