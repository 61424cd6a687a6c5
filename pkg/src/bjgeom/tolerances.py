"""Numerical tolerances shared across modules."""

# relative tolerance for active coordinates/components and norming-set ties
TAU = 1e-9
# margin on hull-membership (orthogonality) verdicts
ETA = 1e-9
# float simplex pivot tolerance
PIVOT_TOL = 1e-9
# margin used by the lambda-grid oracle
ORACLE_MARGIN = 1e-9
# precondition slack on "norm one"
NORM_ONE = 1e-6
