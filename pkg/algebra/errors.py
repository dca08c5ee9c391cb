"""
Exception hierarchy for the symbolic kernel
"""
from typing import Optional


class PLRKError(Exception):
    """Base class of every kernel failure"""


class RingMismatchError(PLRKError):
    """Operands live over different coefficient rings"""


class VariableCollisionError(PLRKError):
    """Two rings share a variable name where a disjoint union is needed"""


class PolyParseError(PLRKError):
    """Text is not a canonical polynomial over the given ring"""


class ModuleMismatchError(PLRKError):
    """Operands live in different free modules"""


class MalformedTableError(PLRKError):
    """A structure table has the wrong shape or out-of-range indices"""


class NonCommutingFieldsError(PLRKError):
    """Vector fields that must commute do not"""


class NotFieldCaseError(PLRKError):
    """Operation needs the coefficient ring to be the rationals"""


class CochainDegreeError(PLRKError):
    """Cochain degree outside the range an operation accepts"""


class SectionError(PLRKError):
    """A map offered as a section or splitting does not split"""


class NotStrictError(PLRKError):
    """2-algebra has a nonzero ternary map where a strict one is needed"""


class NotSkeletalError(PLRKError):
    """2-algebra has a nonzero differential where a skeletal one is needed"""


class KernelImageError(PLRKError):
    """A value expected inside an image or kernel lies outside it"""


class UnsupportedError(PLRKError):
    """Input is valid but outside what the kernel decides"""


class VerificationError(PLRKError):
    """A structure failed the axioms an operation requires"""

    def __init__(self, message: str, report: Optional["object"] = None):
        super().__init__(message)
        self.report = report
