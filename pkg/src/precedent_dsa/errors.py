"""Exception types raised by the library and mapped to CLI exit codes."""

from __future__ import annotations


class PrecedentError(Exception):
    """Base class for every error raised by this package."""


class UnknownFactorError(PrecedentError, ValueError):
    """A factor name is not declared in the factor universe."""

    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__("unknown factor: " + ", ".join(self.names))


class UnknownCaseError(PrecedentError, KeyError):
    def __init__(self, ids):
        self.ids = tuple(sorted(ids))
        super().__init__("unknown case id: " + ", ".join(self.ids))

    def __str__(self) -> str:
        return self.args[0]


class UnknownArgumentError(PrecedentError, ValueError):
    """An argument is not part of the framework it was checked against."""


class InvariantError(PrecedentError, ValueError):
    """A domain value violates one of its construction invariants."""


class ValidationError(PrecedentError):
    """A case-base document failed validation.

    ``violations`` holds every problem found, not only the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            f"{len(self.violations)} validation error(s): " + "; ".join(self.violations)
        )


class CapExceededError(PrecedentError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has {size} elements, exceeding the enumeration cap of {cap}")


class InternalConsistencyError(PrecedentError):
    """Two independently computed results disagree (an implementation bug)."""
