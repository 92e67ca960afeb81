"""Exception taxonomy.

Every failure that stops a pipeline names the stage that produced it, so a
caller (and the CLI exit-code mapping) can tell a legitimate "this germ does
not satisfy the hypotheses" verdict from a bug.
"""


class BranchCountError(Exception):
    """Base class for all errors raised by this package."""

    stage = "general"

    def __init__(self, message, stage=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class DimensionMismatchError(BranchCountError, ValueError):
    """Operands live in rings with different variable counts."""

    stage = "ring"


class ZeroInitialError(BranchCountError, ValueError):
    """The initial term of the zero polynomial was requested."""

    stage = "ring"


class ParseError(BranchCountError, ValueError):
    """Polynomial text failed to parse; carries the offending position."""

    stage = "parse"

    def __init__(self, message, position):
        super().__init__(message)
        self.position = position


class CertificateError(BranchCountError):
    """A required finiteness/containment certificate could not be produced.

    This is the "input does not satisfy the hypotheses" family; the CLI maps
    it to exit code 2.
    """

    stage = "certificate"


class PreconditionError(CertificateError):
    stage = "precondition"


class CurveDimensionError(CertificateError):
    """No witness linear form certified that the zero set has dimension <= 1."""

    stage = "curve-dimension"


class IsolatedSingularityError(CertificateError):
    """The singular locus is not certified to be the origin alone."""

    stage = "isolated-singularity"


class NotSubidealError(CertificateError):
    """A relative-dimension count was requested for non-nested ideals."""

    stage = "containment"


class NonIsolatedZeroError(CertificateError):
    """A local algebra has infinite dimension (complex zero not isolated)."""

    stage = "local-algebra"


class DegenerateJacobianError(CertificateError):
    """The Jacobian determinant vanishes in the local algebra."""

    stage = "local-degree"


class GenericityError(BranchCountError):
    """All random draws were exhausted without an accepted reduction.

    CLI exit code 3.
    """

    stage = "genericity"

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


class InternalCertificateError(BranchCountError):
    """An internal consistency certificate failed: a bug trap, never a verdict
    about the input.  CLI exit code 5.
    """

    stage = "internal"


class OracleInconclusiveError(BranchCountError):
    """The numeric cross-check could not stabilize on the given input."""

    stage = "oracle"
