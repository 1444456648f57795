# Core/constants.py
"""
Global constants (schema version, tolerances, exit codes, CSV layout).
"""

SCHEMA_VERSION = 1

# EdgeProb components must sum to one within this absolute tolerance.
SIMPLEX_TOL = 1e-12

# Provenance tags of a PermutationEstimate.
PROVENANCE_KCORE = "kcore"
PROVENANCE_FEATURE = "feature"

MODE_BRUTE = "brute"
MODE_ORACLE = "oracle"

# Metrics a sweep may request.
METRICS = (
    "exact_success",
    "kcore_size",
    "h_star_size",
    "low_degree_sizes",
    "j_vs_3L",
)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_PARAMETER = 3
EXIT_CAPACITY = 4
EXIT_MODE = 5
EXIT_INFEASIBLE = 6
EXIT_CONFIGURATION = 7
EXIT_INPUT = 8
EXIT_STORAGE = 9
EXIT_VERIFICATION = 10

EXIT_CODE_HELP = """exit codes:
  0   success
  1   unexpected failure
  2   usage error (unknown flag, conflicting modes)
  3   parameter outside its domain
  4   brute-force capacity exceeded (use --mode oracle)
  5   oracle mode without ground truth
  6   leftover vertices with no features to match them
  7   sweep or cell configuration cannot run
  8   malformed input (shapes, indices, matchings)
  9   file could not be read or written
  10  verification found violations"""

CSV_COLUMNS = (
    "n", "p11", "p10", "p01", "p00", "d", "rho", "k", "mode",
    "trials", "successes", "success_rate", "mean_kcore_size", "mean_h_star",
    "mean_L_k1", "mean_J_k", "j_le_3L_rate", "wall_ms",
)
