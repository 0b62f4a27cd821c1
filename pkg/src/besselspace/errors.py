"""Error types distinguishing configuration faults from numerical budgets."""


class BudgetError(RuntimeError):
    """A numerical guard failed: frequency band beyond Nyquist, quadrature
    truncation budget unmet, or similar.  CLI exit code 3."""
