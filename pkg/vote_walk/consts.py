"""Central constants used across the vote_walk package.

Defaults are the reference parameter set: a neutral environment,
sigma 10 and two groups of 300. The configuration layer exposes them
as the lowest-precedence values.
"""

from __future__ import annotations

PACKAGE_NAME = "vote_walk"

# Environment / group defaults
DEFAULT_MU = 0.0
DEFAULT_SIGMA = 10.0
DEFAULT_GROUP_SIZE = 300
DEFAULT_THRESHOLD = 0.0
DEFAULT_RULE = "and"
DEFAULT_OBJECTIVE = "advantage"

# Sweep defaults
DEFAULT_T2_FROM = -3.0
DEFAULT_T2_TO = 3.0
DEFAULT_T2_POINTS = 601
DEFAULT_MU_FROM = -20.0
DEFAULT_MU_TO = 20.0
DEFAULT_MU_POINTS = 81

# Monte-Carlo defaults
DEFAULT_STEPS = 1_000_000
DEFAULT_SEED = 20100101
DEFAULT_MODE = "mean"
DEFAULT_REPLICATIONS = 1
DEFAULT_CHUNK_SIZE = 65_536
MAX_DRAWS_PER_CHUNK = 2**21
DEFAULT_TOLERANCE_SIGMAS = 4.0
THREADS_ENV_VAR = "VOTE_WALK_THREADS"

# Numerical kernel
FAR_TAIL_SWITCH = -6.0
TAIL_FRACTION_TERMS = 200

# Solver
SOLVER_DAMPING = 0.5
SOLVER_STEP_TOL = 1e-12
SOLVER_RESIDUAL_TOL = 1e-10
SOLVER_MAX_ITERATIONS = 10_000
SOLUTION_MERGE_TOL = 1e-8
BRACKET_MAX_EXPANSIONS = 200
STATIONARITY_REL_STEP = 1e-5

# Root of y = f(y)/F(y) is bracketed here
Y0_BRACKET = (0.3, 0.7)

# Output
CSV_SIGNIFICANT_DIGITS = 12

# CLI exit codes
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2
EXIT_NOT_CONVERGED = 3
