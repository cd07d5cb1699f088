"""Exception hierarchy shared by every module.

The CLI maps :class:`PreconditionError` to exit code 2 and
:class:`VerificationError` / :class:`WitnessFound` to exit code 3.
"""

from __future__ import annotations


class D2Error(Exception):
    """Base class for all package errors."""


class PreconditionError(D2Error, ValueError):
    """An operation was called outside its documented domain."""


class DegenerateInputError(PreconditionError):
    """Input is too small for the requested quantity to be defined."""


class HypothesisViolation(PreconditionError):
    """A checked precondition on densities or sizes does not hold.

    ``measured`` maps the name of each checked quantity to its exact value.
    """

    def __init__(self, message: str, measured: dict | None = None):
        super().__init__(message)
        self.measured = dict(measured or {})


class DensityEscape(PreconditionError):
    """Density of a part left ``[beta, 1 - beta]``.

    Consumers fall back to extracting a homogeneous set directly.
    """

    def __init__(self, message: str, density):
        super().__init__(message)
        self.density = density


class NotACographError(D2Error):
    """A graph required to be a cograph contains an induced P4."""

    def __init__(self, witness: tuple[int, int, int, int]):
        super().__init__(f"graph is not a cograph: induced P4 {witness}")
        self.witness = witness


class VerificationError(D2Error):
    """A postcondition re-check failed; carries the failing report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class WitnessFound(D2Error):
    """A pipeline stopped because it found induced D2 copies.

    This is the "or witness batch" outcome of the decomposition pipelines,
    not a bug: ``witnesses`` is a non-empty list of verified 4-tuples.
    """

    def __init__(self, witnesses, message: str = "induced D2 copies found"):
        super().__init__(f"{message} ({len(witnesses)} witnesses)")
        self.witnesses = list(witnesses)


class FormatError(D2Error, ValueError):
    """A serialized file does not follow its line format."""
