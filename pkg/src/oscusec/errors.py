"""Exception hierarchy for oscusec."""


class OscusecError(Exception):
    """Base class for all oscusec errors."""


class ZeroInverse(OscusecError):
    """Attempted to invert zero in the prime field."""


class BadModulus(OscusecError):
    """Configured modulus is not an admissible prime."""


class DegenerateChart(OscusecError):
    """A point violates the affine-chart convention."""


class DegreeTooSmall(OscusecError):
    """Degree below the range where the condition tables apply."""


class UnsupportedH(OscusecError):
    """Secant index outside the implemented condition table."""


class UnsupportedM(OscusecError):
    """Multiplicity outside the implemented condition table."""


class ConditionNotMet(OscusecError):
    """Certificate construction requested without a certified condition."""


class CertificateError(OscusecError):
    """Malformed or failed Horace certificate."""


class StepFailed(CertificateError):
    """A certificate step failed verification.

    Carries the failing step index and the name of the sub-check.
    """

    def __init__(self, step_index, check, message=""):
        self.step_index = step_index
        self.check = check
        super().__init__(
            f"step {step_index}: check '{check}' failed" + (f": {message}" if message else "")
        )


class InvariantBreach(OscusecError):
    """Internal cross-oracle disagreement; a bug, not a math outcome."""
