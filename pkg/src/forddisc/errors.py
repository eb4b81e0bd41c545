"""
Exception hierarchy shared by the library and the command line.
"""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from forddisc.reports import CheckReport


class ForddiscError(Exception):
    """Base class for every error raised by forddisc"""

    exit_code = 1


class InvalidArgumentError(ForddiscError, ValueError):
    """A precondition on an order, parameter or word was violated"""

    exit_code = 2


class CapacityError(ForddiscError):
    """A request exceeds a configured cap or the memory available for it"""

    exit_code = 3


class VerificationError(ForddiscError):
    """A scoped claim failed; carries the report with its counterexample"""

    exit_code = 1

    def __init__(self, report: "CheckReport"):
        self.report = report
        super().__init__(f"{report.claim} failed: {report.counterexample}")


class ConvergenceError(ForddiscError):
    """An iterative method did not reach its tolerance within its iteration cap"""

    exit_code = 3
