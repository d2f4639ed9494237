class SignetError(Exception):
    """Base class for library errors."""


class GraphFormatError(SignetError):
    """Malformed signed-graph or matroid input."""


class UnknownElementError(SignetError, KeyError):
    def __str__(self):  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class SizeGuardError(SignetError):
    """An exhaustive scan would exceed the configured size guard."""


class HypothesisError(SignetError):
    """Inputs violate the hypotheses of the requested check."""
