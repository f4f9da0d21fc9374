"""Exception types shared across the platform."""


class PlatformError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(PlatformError):
    """Invalid run settings: unknown names, bad parameter lists, encoding mismatch."""


class BudgetExhaustedError(PlatformError):
    """The evaluation budget was already consumed when more work was requested."""


class SchemaError(PlatformError):
    """A persisted document does not match the expected schema or version."""
