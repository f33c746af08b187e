"""Exception types shared across the package."""


class WbinomError(Exception):
    pass


class MissingAssignment(WbinomError, KeyError):
    def __init__(self, indeterminate):
        super().__init__(indeterminate)
        self.indeterminate = indeterminate

    def __str__(self):
        return f"no value assigned to {self.indeterminate}"


class EllipticDegenerate(WbinomError, ZeroDivisionError):
    """A theta factor in a denominator vanished (|theta| below threshold)."""


class DegenerateParameter(WbinomError, ZeroDivisionError):
    """A (q;q)- or (q,p)-shifted factorial in a denominator vanished."""


class ZeroArgument(WbinomError, ValueError):
    pass


class BalancingViolation(WbinomError, ValueError):
    pass


class PathLimitExceeded(WbinomError, ValueError):
    pass


class IllConditioned(WbinomError, ArithmeticError):
    """Cancellation would swamp double precision; used to reject random draws."""
