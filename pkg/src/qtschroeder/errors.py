"""Exception types shared across the package."""


class QtSchroederError(Exception):
    """Base class for all library errors."""


class MalformedAreaWord(QtSchroederError):
    """An integer (or barred-alphabet) sequence is not a valid area word."""


class InvalidDecoration(QtSchroederError):
    """A decoration set violates the feature-set constraints of its family."""


class FlavorMismatch(QtSchroederError):
    """A statistic or map was applied to an object of the wrong flavor."""


class NoValidLabelling(QtSchroederError):
    """The forced labelling of a decorated path conflicts with label rules."""


class NotInImage(QtSchroederError):
    """An inverse map was applied to an object outside the bijection's image."""


class DomainError(QtSchroederError):
    """A recursion index lies outside the admissible domain."""


class MemoLimitExceeded(QtSchroederError):
    """The memo table grew past the DELTA_MEMO_LIMIT cap (no eviction)."""
