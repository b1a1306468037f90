"""Exception hierarchy shared by all modules."""


class GermError(Exception):
    """Base class for every error raised by planegerm."""


class InputError(GermError, ValueError):
    """Rejected input: zero polynomial, malformed branch, bad parameter."""


class NotMiniRegular(InputError):
    def __init__(self, msg="germ is not mini-regular in x; apply mini_regularize first"):
        super().__init__(msg)


class InsufficientTruncation(InputError):
    """A truncated series does not determine the requested quantity."""

    def __init__(self, msg, required=None):
        super().__init__(msg)
        self.required = required


class ResourceLimit(GermError):
    """Configured limit (tower depth, refinement cap, ...) exceeded."""


class ParseError(InputError):
    def __init__(self, msg, pos=None, expected=None):
        where = f" at position {pos}" if pos is not None else ""
        exp = f" (expected {expected})" if expected else ""
        super().__init__(f"{msg}{where}{exp}")
        self.pos = pos
        self.expected = expected
