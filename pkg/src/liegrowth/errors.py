"""Exception types shared across the package.

Every failure mode the library promises to report gets its own class, so
callers (and the CLI exit-code mapping) can tell them apart without string
matching.
"""


class InputError(ValueError):
    """Base class for rejected inputs."""


class InvalidExponentError(InputError):
    """An exponent t outside the legal range [1, s]."""


class RingMismatchError(InputError):
    """Two operands living over different ambient rings."""


class UnsupportedInputError(InputError):
    """Structurally valid input that an operation does not handle."""


class DegenerateInputError(InputError):
    """Input that collapses to a trivial object (e.g. a degree-1 cofibre)."""


class InvalidCoefficientError(InputError):
    """A coefficient exponent incompatible with the summands present."""


class ParityError(InputError):
    """An element of the wrong topological-degree parity."""


class PreconditionError(InputError):
    """A stated precondition fails; the message names which one."""


class NotInjectiveError(InputError):
    """A map required to be injective is not.

    ``witness`` is a nonzero kernel element, as (degree, coordinate tuple).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAcyclicError(InputError):
    """A complex required to be exact has homology.

    ``spot`` is the first offending (degree, weight) pair.
    """

    def __init__(self, message, spot=None):
        super().__init__(message)
        self.spot = spot


class ResourceGuardError(RuntimeError):
    """An enumeration would exceed the configured size guard."""
