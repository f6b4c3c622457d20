"""Exception types shared across the package."""


class DomainError(ValueError):
    """A quantum-number combination or argument outside the formula's domain."""


class ValidationError(ValueError):
    """Loaded data or constants violate an invariant."""


class DataMissingError(LookupError):
    """A required table entry is absent."""


class ConfigurationError(LookupError):
    """Required configuration (e.g. a mixing-table entry) was not supplied."""


class InversionError(ValueError):
    """No mixing coefficients reproduce the requested g-factor."""


class ForbiddenTransitionError(ValueError):
    """The requested polarization has no allowed Zeeman components."""
