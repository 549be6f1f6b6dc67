from __future__ import annotations


class InfeasibleInstanceError(ValueError):
    """The instance admits no feasible flow."""
