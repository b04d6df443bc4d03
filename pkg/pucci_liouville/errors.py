"""Exception types raised by the toolkit."""


class InvalidInputError(ValueError):
    """Arguments violate a precondition (bad exponents, non-finite entries, lambda > Lambda, ...)."""


class DomainError(ValueError):
    """A value lies outside the domain of the function being evaluated."""


class WitnessVerificationError(RuntimeError):
    """A synthesized witness failed its numerical re-verification.

    Witness feasibility is proved in closed form, so this signals a transcription
    error in one of the closed forms rather than a bad input.
    """
