# SPDX-License-Identifier: MIT

"""
intent_ran.exceptions

Root of the exception hierarchy. Every sub-package defines its typed errors
in its own `exceptions` module on top of `IntentRanError`.
"""


class IntentRanError(Exception):
    """Base class for every error raised by intent_ran"""

    def __init__(self, message: str, location: str | None = None):
        """Initialize with a message and an optional location (path, line, field)"""
        super().__init__(message)
        self.message = message
        self.location = location

    def __repr__(self):
        """Format the exception repr"""
        if self.location:
            return f"{self.message} (at {self.location})"
        return self.message

    def __str__(self):
        """Format the exception str(<exception>)"""
        return self.__repr__()
