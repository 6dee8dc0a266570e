class DomainError(Exception):
    """Base class for errors reported with exit status 1 by the CLI."""

    kind = "DomainError"


class ParseError(DomainError):
    kind = "ParseError"


class NotGeodesic(DomainError):
    kind = "NotGeodesic"


class NotConjugate(DomainError):
    kind = "NotConjugate"


class NoSplitView(DomainError):
    kind = "NoSplitView"


class CapExceeded(DomainError):
    kind = "CapExceeded"


class NoRoot(DomainError):
    kind = "NoRoot"
