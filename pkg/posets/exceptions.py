class PosetError(Exception):
    """Base class for every error raised by the posets app."""


class DuplicateLabelError(PosetError):
    pass


class UnknownElementError(PosetError):
    pass


class CycleError(PosetError):
    """The declared covers do not close up to an antisymmetric relation."""


class EmptySubsetError(PosetError):
    pass


class DisconnectedSubsetError(PosetError):
    pass


class OverlappingFamiliesError(PosetError):
    """U(X) and F(X) share a member set, so C(f) is not defined."""


class NotACrownError(PosetError):
    pass


class UndecidedError(PosetError):
    """No proof strategy applied and exhaustive search was not allowed."""


class CatalogError(PosetError):
    pass


class EnumerationLimitError(PosetError):
    pass


class DocumentSyntaxError(PosetError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
