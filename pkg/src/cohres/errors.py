"""Exception types shared across the package."""


class CohresError(Exception):
    """Base class for domain errors raised by this package."""


class NonPositiveError(CohresError, ValueError):
    """A quantity that must be strictly positive was not."""


class ChannelClosedError(CohresError, ValueError):
    """The second superposition component has no kinetic energy left."""


class UnknownChannelError(CohresError, KeyError):
    """An arrangement label is absent from a table or spec."""


class DegenerateChannelError(CohresError, ValueError):
    """A diagnostic is undefined because a diagonal cross section vanishes."""


class ZeroDenominatorError(CohresError, ValueError):
    """Ratio objective requested against an identically zero denominator."""


class SpecMismatchError(CohresError, ValueError):
    """Resonance and background specs do not cover the same states."""


class MalformedFileError(CohresError, ValueError):
    """A file failed to parse; the message carries the locus."""


class TableValidationError(CohresError, ValueError):
    """A file parsed but the resulting table violates invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
