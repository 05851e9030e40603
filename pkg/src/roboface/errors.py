"""Exception types shared across the package."""


class RobofaceError(Exception):
    """Base class for all errors raised by this package."""


class UnknownChannelError(RobofaceError):
    """A blendshape channel name is not one of the 52 canonical names."""

    def __init__(self, name):
        super().__init__(f"unknown blendshape channel: {name!r}")
        self.name = name


class ValidationError(RobofaceError):
    """A value violates a domain invariant (range, length, monotonicity)."""


class ProfileError(RobofaceError):
    """A retarget profile document is malformed or inconsistent.

    ``path`` points into the offending document, e.g.
    ``mappings.jawOpen.anchors[1].intensity``.
    """

    def __init__(self, message, path=None):
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path


class ParseError(RobofaceError):
    """A CSV or wire payload could not be parsed; locates row/column."""
