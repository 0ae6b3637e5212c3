"""Shared exception types."""


class InfeasibleTargetError(Exception):
    """Raised when no parameter choice can meet the requested target.

    Examples: no feasible (q, k) caps exist at the requested rate margin,
    or a round count is below the lower bound imposed by the smoothness
    constraint.
    """
