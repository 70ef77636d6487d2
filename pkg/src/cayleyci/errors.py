class CapExceeded(RuntimeError):
    """A configured size cap was exceeded; the caller reports "infeasible"."""


class BudgetExceeded(CapExceeded):
    """The backtrack-node budget of an automorphism search ran out."""
