"""Exception types raised across the package."""


class SpecMismatchError(ValueError):
    """Operands live over different rings or Lie algebras."""


class InvalidHomError(ValueError):
    """A ring homomorphism violates the unit-image conditions."""


class MissingLoopVariableError(ValueError):
    """An operation needs a distinguished loop variable ``t`` and the ring has none."""


class UnsupportedConfigurationError(ValueError):
    pass


class CriticalLevelError(ValueError):
    """The Sugawara denominator ``K + h^vee`` vanishes."""


class ParseError(ValueError):
    """Syntax or typing error in an element expression.

    ``line`` and ``column`` are 1-based positions into the source text.
    """

    def __init__(self, message, source="", pos=0):
        self.source = source
        self.pos = pos
        before = source[:pos]
        self.line = before.count("\n") + 1
        self.column = pos - (before.rfind("\n") + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")
