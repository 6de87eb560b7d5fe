#!/usr/bin/env python3
"""Miniature condition-number scaling study.

Runs all three solvers over a short ladder of sphere problems with
growing condition number and fits log(iterations) against log(kappa).
Accelerated gradient descent should come out with a slope around 1/2 or
below, gradient descent near 1. The same study at paper scale is
available from the command line:

    stiefel-agd scaling --problem sphere --spectrum linear \
        --n-values 100,178,316,562,1000 --trials 10 --tol 1e-10 \
        --format csv --out sphere.csv
    stiefel-agd fit sphere.csv
"""

from stiefel_agd import SolverConfig
from stiefel_agd.bench import ExperimentSpec, run_experiment, scaling_points

spec = ExperimentSpec(
    problem="sphere",
    spectrum="linear",
    n_values=(50, 100, 200, 400),
    trials_per_n=3,
    base_seed=0,
    methods=("gd", "agd-function", "agd-gradient"),
    solver=SolverConfig(epsilon=1e-8),
)

result = run_experiment(spec)
print(f"ran {len(result.rows)} trials in {result.wall_s:.1f} s, "
      f"{len(result.failures)} failures, "
      f"max orthonormality drift {result.max_orth_drift:.1e}\n")

points = scaling_points(result.rows)
print("mean log(iterations) per problem size:")
print(f"{'n':>6} {'log kappa':>10} " +
      " ".join(f"{m:>14}" for m in spec.methods))
for i, n in enumerate(spec.n_values):
    logk = points["gd"][i][0]
    row = " ".join(f"{points[m][i][1]:>14.3f}" for m in spec.methods)
    print(f"{n:>6} {logk:>10.3f} {row}")

print("\nlog-log fits (iterations ~ kappa^slope):")
for method in spec.methods:
    fit = result.fits[method]
    print(f"  {method:<14} slope={fit.slope:6.3f}  intercept={fit.intercept:6.3f}"
          f"  r^2={fit.r_squared:.4f}")
