"""Exception types shared across the package.

The CLI maps these onto exit codes: usage/domain problems exit 1, a
theorem-violation flag (which indicates a bug somewhere, not a discovery)
exits 2.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Inputs are structurally invalid or violate a variant's hypotheses."""


class RankDeficiencyError(ValueError):
    """Gram-Schmidt input is (numerically) linearly dependent."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"vector {index} is linearly dependent on its predecessors")


class StabilizationError(RuntimeError):
    """Adaptive truncation hit the margin cap before eigenvalues settled.

    Carries the last two eigenvalue lists so callers can inspect how far
    apart the refinements still were.
    """

    def __init__(self, margin: int, previous, current, message: str | None = None):
        self.margin = margin
        self.previous = previous
        self.current = current
        super().__init__(
            message
            or f"bound states failed to stabilize by margin {margin}; "
            f"last refinement moved by {self._max_move():.3e}"
        )

    def _max_move(self) -> float:
        prev_b, prev_a = self.previous
        cur_b, cur_a = self.current
        if len(prev_b) != len(cur_b) or len(prev_a) != len(cur_a):
            return float("inf")
        moves = [abs(p - c) for p, c in zip(list(prev_b) + list(prev_a), list(cur_b) + list(cur_a))]
        return max(moves) if moves else 0.0
