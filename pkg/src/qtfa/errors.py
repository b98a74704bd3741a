"""Exception types shared across the package.

The split matters for the command line front end: parameter and file
format problems map to exit code 2, shape mismatches to exit code 3.
"""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class ShapeError(ValueError):
    """Two objects that must share axes or shapes do not."""


class FormatError(ValueError):
    """A file does not conform to its on-disk format.

    ``offset`` is the byte offset of the first offending byte where it
    is known, else None.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset
