"""Exception hierarchy shared by all modules."""


class MehlerError(Exception):
    """Base class for errors raised by mehlerlab."""


class DimensionError(MehlerError, ValueError):
    """Vectors/operators from spaces of different dimension were combined."""


class DomainError(MehlerError, ValueError):
    """An argument lies outside the domain of an operation (e.g. s > t)."""


class UndefinedForKindError(MehlerError, TypeError):
    """The operation is not defined for this kind of symbol or model."""


class QuadratureError(MehlerError, ArithmeticError):
    """Adaptive quadrature did not converge.

    The partial estimate and its error bound are kept on the exception so a
    caller can still inspect what was obtained.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConfigError(MehlerError, ValueError):
    """A configuration document failed validation.

    ``field`` is the dotted path of the offending entry (``symbol.parts[1].alpha``)
    and ``line`` the 1-based source line when known.
    """

    def __init__(self, message, field=None, line=None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
