"""Exception hierarchy.

Every validator raises a subclass of :class:`ValidationError`; the CLI maps
those (and :class:`SchemaError`) to exit code 2.
"""


class FinDualityError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BoundExceeded(FinDualityError):
    pass


class AmbientMismatch(FinDualityError):
    pass


class ValidationError(FinDualityError):
    pass


class DuplicateLabel(ValidationError):
    pass


class UnknownLabel(ValidationError):
    pass


class NotAFunction(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class NotComplete(ValidationError):
    pass


class NotAPoset(ValidationError):
    pass


class NoMeet(ValidationError):
    pass


class NoTop(ValidationError):
    pass


class MeetViolation(ValidationError):
    pass


class TopViolation(ValidationError):
    pass


class BoxViolation(ValidationError):
    """A candidate box table fails to preserve top or binary meets."""


class ConstructionMismatch(FinDualityError):
    """Two constructions that must agree did not. Always a bug."""


class SchemaError(FinDualityError):
    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
