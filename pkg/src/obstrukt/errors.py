"""Exception types raised across the package.

Every mathematical precondition failure gets its own class so callers (and the
CLI exit-code mapping) can tell schema problems, hypothesis failures and
truncation limits apart.
"""


class ObstruktError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(ObstruktError):
    pass


class ContainmentViolation(ObstruktError):
    """B-generators are not contained in the span of the Z-generators."""


class NotAGroup(ObstruktError):
    pass


class NotASubgroup(ObstruktError):
    pass


class NotCyclic(ObstruktError):
    pass


class NotModuleBialgebra(ObstruktError):
    pass


class ActionNotHomomorphism(ObstruktError):
    pass


class ActionNotBlockDiagonal(ObstruktError):
    pass


class ActionNotChainMap(ObstruktError):
    pass


class NotDerivation(ObstruktError):
    pass


class NotLieHom(ObstruktError):
    pass


class TruncationTooSmall(ObstruktError):
    pass


class IncompatibleActions(ObstruktError):
    pass


class PairingNotEquivariant(ObstruktError):
    pass


class OutOfRange(ObstruktError):
    pass


class InvalidRepresentative(ObstruktError):
    pass


class DoesNotSurvive(ObstruktError):
    """A class supports a nonzero differential before the requested page.

    Attributes:
        page: the page m with d_m != 0 on the class.
        obstruction: normal-form coordinates of d_m in the target presentation.
    """

    def __init__(self, page, obstruction):
        self.page = page
        self.obstruction = obstruction
        super().__init__(f"class supports a nonzero d_{page}; obstruction {obstruction}")


class NotTrivial(ObstruktError):
    """The extension is not (t,r)-trivial, so the requested class is undefined."""

    def __init__(self, t, r, witness=None):
        self.t = t
        self.r = r
        self.witness = witness
        msg = f"extension is not ({t},{r})-trivial"
        if witness is not None:
            msg += f"; first failing differential at {witness}"
        super().__init__(msg)


class HypothesisFails(ObstruktError):
    """A factor characteristic class required to vanish is nonzero."""


class InconsistentFlags(ObstruktError):
    pass


class MissingEntry(ObstruktError):
    pass


class SchemaError(ObstruktError):
    """Malformed job document (CLI exit code 2)."""
