"""Exception hierarchy shared by all modules."""


class RightAngledError(Exception):
    """Base class for every error raised by this package."""


class NonPlanar(RightAngledError):
    """Face tracing of a rotation system does not give a sphere."""


class InvalidMap(RightAngledError):
    """A rotation system violates simplicity, symmetry or connectivity."""


class WrongClass(RightAngledError):
    pass


class BadFace(RightAngledError):
    pass


class AdjacentFaces(RightAngledError):
    pass


class BadAngles(RightAngledError):
    pass


class NotHyperbolic(RightAngledError):
    pass


class BadV(RightAngledError):
    pass


class BadHypothesis(RightAngledError):
    pass


class NonConvergence(RightAngledError):
    pass


class NotCompact(RightAngledError):
    pass


class NotRealizable(RightAngledError):
    pass


class DegenerateConfiguration(RightAngledError):
    pass


class NumericalDegeneracy(RightAngledError):
    pass


class ParseError(RightAngledError):
    """Malformed exchange-format input; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
