"""Exception types raised by freybound.

Plain invalid input raises ``ValueError``.  The classes below mark the
distinct mathematical situations that callers are expected to catch and
report rather than treat as crashes.
"""


class FreyboundError(Exception):
    """Base class for all domain signals."""


class BoundaryRootError(FreyboundError):
    """A root-counting interval endpoint is itself a root."""

    def __init__(self, point):
        super().__init__(f"interval endpoint {point} is a root")
        self.point = point


class SingularModelError(FreyboundError):
    """A hyperelliptic model has singular reduction over the chosen field."""

    def __init__(self, message, discriminant=None, witness=None):
        super().__init__(message)
        self.discriminant = discriminant
        self.witness = witness


class PotentiallyMultiplicativeError(FreyboundError):
    """The curve parameter t is undefined (z = 0), so no model is produced."""


class DegenerateResultantError(FreyboundError):
    """A unit-root resultant vanished: the Frobenius root is a root of unity."""

    def __init__(self, trace):
        super().__init__(f"resultant vanishes for trace {trace}")
        self.trace = trace


class WeilBoundError(FreyboundError):
    """Point counts produced a polynomial violating the Weil bounds.

    Either the model is singular over some extension or there is a bug;
    re-check nonsingularity first.
    """


class CostGuardrailError(FreyboundError):
    """Requested exhaustive count exceeds the desk-scale budget."""

    def __init__(self, estimate, budget):
        super().__init__(
            f"naive count needs about {estimate} field evaluations, budget is {budget}"
        )
        self.estimate = estimate
        self.budget = budget
