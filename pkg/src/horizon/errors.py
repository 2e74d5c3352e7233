"""Exception hierarchy shared by every module of the package."""


class HorizonError(ValueError):
    """Base class for all errors raised by :mod:`horizon`."""


class NotHermitian(HorizonError):
    pass


class NotSkewHermitian(HorizonError):
    pass


class BranchAmbiguity(HorizonError):
    """An eigenphase sits on the branch cut of the principal logarithm."""


class DimensionMismatch(HorizonError):
    pass


class NotSubalgebra(HorizonError):
    """A commutator of two basis elements leaves the proposed subalgebra."""


class EmptySubspace(HorizonError):
    pass


class NotInvolutive(HorizonError):
    pass


class NotAutomorphism(HorizonError):
    pass


class BadDims(HorizonError):
    pass


class ShapeMismatch(HorizonError):
    pass


class ParamLengthMismatch(HorizonError):
    pass


class SymmetryLeakage(HorizonError):
    """Conjugating a horizontal generator by ``k`` produced components outside m."""


class UnknownSpace(HorizonError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class QubitRange(HorizonError):
    pass


class NonUnitary(HorizonError):
    pass


class OddQubits(HorizonError):
    pass


class TooFewQubits(HorizonError):
    pass


class DegenerateSpectrum(HorizonError):
    pass


# the observable contract names the Hermiticity failure differently
NonHermitian = NotHermitian
