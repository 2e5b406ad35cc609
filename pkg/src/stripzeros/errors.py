"""Exception hierarchy shared by every module."""


class StripZerosError(Exception):
    """Base class for all errors raised by stripzeros."""


# polycore
class InvalidMobius(StripZerosError, ValueError):
    pass


class DegreeTooSmall(StripZerosError, ValueError):
    pass


class MalformedInput(StripZerosError, ValueError):
    """A JSON document or argument does not follow the expected schema."""


# roots
class ZeroPolynomial(StripZerosError, ValueError):
    pass


class DegreeZero(StripZerosError, ValueError):
    pass


class Unconverged(StripZerosError, RuntimeError):
    pass


class BoundaryZero(StripZerosError, RuntimeError):
    pass


class PhaseJump(StripZerosError, RuntimeError):
    pass


# ops
class TruncationTooShort(StripZerosError, ValueError):
    pass


class ZeroXi(StripZerosError, ValueError):
    pass


class RootPlacement(StripZerosError, ValueError):
    pass


class MomentsMisordered(StripZerosError, ValueError):
    pass


class NoClaim(StripZerosError, LookupError):
    pass


# stripcls
class NonReal(StripZerosError, ValueError):
    pass


class DegeneratePencil(StripZerosError, ValueError):
    pass


class PreconditionFailed(StripZerosError, ValueError):
    pass


# symbolmod / fock
class TableTooShort(StripZerosError, ValueError):
    pass


# fourier
class NoDecay(StripZerosError, ValueError):
    pass


class TolNotMet(StripZerosError, RuntimeError):
    pass


class NoQualifyingRoot(StripZerosError, ValueError):
    pass


class PrefixTooShort(StripZerosError, ValueError):
    pass


class NotRealOnAxis(StripZerosError, ValueError):
    pass
