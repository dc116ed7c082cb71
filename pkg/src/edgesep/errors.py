"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A caller-supplied parameter violates a documented precondition."""


class FormatError(ValueError):
    """Malformed graph / decomposition / weights text."""


class OracleLimitError(ValueError):
    """An oracle was asked to run past its configured size guard."""


class IncidentError(RuntimeError):
    """A step the underlying theory asserts to exist could not be carried out.

    Raised instead of silently weakening a guarantee; the message carries the
    failing state so the incident can be reported.
    """
