"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates the documented preconditions."""


class CapacityError(RuntimeError):
    """A computation would exceed its configured work budget.

    ``budget`` names the knob that controls the limit (the CLI flag name is
    used so the message is actionable), ``limit`` is its current value and
    ``estimate`` the work the request would have needed.
    """

    def __init__(self, what, budget, limit, estimate):
        self.what = what
        self.budget = budget
        self.limit = limit
        self.estimate = estimate
        super().__init__(
            f"{what}: estimated cost {estimate} exceeds budget {limit} "
            f"(raise {budget})"
        )

    def as_dict(self):
        return {
            "error": "capacity",
            "what": self.what,
            "budget": self.budget,
            "limit": self.limit,
            "estimate": self.estimate,
        }
