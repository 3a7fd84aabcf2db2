"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InfeasibleCalibrationError(RuntimeError):
    """No admissible scale reproduces the requested event probability.

    Carries the largest probability the model can reach within the
    calibration bracket so callers can report what *is* achievable.
    """

    def __init__(self, target: float, achievable: float, scale_floor: float):
        self.target = target
        self.achievable = achievable
        self.scale_floor = scale_floor
        super().__init__(
            f"nonfatal event probability {target:.10g} is not reachable: "
            f"achievable supremum is {achievable:.10g} at the scale floor "
            f"{scale_floor:.3g}"
        )


class NumericFailure(RuntimeError):
    """A numerical routine (quadrature, root finding) failed to converge."""
