"""Exception hierarchy shared by every module of the toolkit."""


class VerifyError(Exception):
    """Base class for all toolkit errors."""


class DomainError(VerifyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(VerifyError, ValueError):
    """A documented precondition of an operation does not hold."""


class ResourceError(VerifyError):
    """A configured enumeration cap was exceeded."""


class UnsupportedCaseError(VerifyError):
    """The input is valid but the toolkit deliberately does not handle it."""


class DataFileError(VerifyError):
    """A data file is missing or cannot be parsed."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
