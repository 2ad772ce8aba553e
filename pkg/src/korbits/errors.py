"""Shared exception types."""


class KorbitsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(KorbitsError, ValueError):
    """Malformed permutation, group file, catalog file or k-set file."""


class ResourceLimitError(KorbitsError):
    """A configured cap would be exceeded.

    Carries the cap name and value so callers (and the CLI) can report
    which flag raises the limit.
    """

    def __init__(self, cap_name, cap_value, needed, flag=None):
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.needed = needed
        self.flag = flag
        msg = f"{cap_name} cap exceeded: need {needed}, cap is {cap_value}"
        if flag:
            msg += f" (raise with {flag})"
        super().__init__(msg)


class DomainError(KorbitsError, ValueError):
    """A precondition on the mathematical objects is violated
    (intransitive group where transitivity is required, non-invariant
    partition, subgroup relation failing, ...)."""
