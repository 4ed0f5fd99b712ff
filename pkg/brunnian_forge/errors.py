"""Exception hierarchy for brunnian_forge"""

from enum import StrEnum


class BrunnianForgeError(Exception):
    """Base class for all package errors"""

    pass


class DiagramErrorKind(StrEnum):
    DANGLING_CROSSING = "DanglingCrossing"
    DOUBLE_OVER = "DoubleOver"
    BAD_ARITY = "BadArity"
    PARSE_ERROR = "ParseError"
    INDEX_OUT_OF_RANGE = "IndexOutOfRange"
    INCONSISTENT_ORIENTATION = "InconsistentOrientation"


class DiagramError(BrunnianForgeError):
    """A malformed diagram or diagram code.

    Raised by parsers and by operations given bad indices; `validate` returns
    instances without raising them.
    """

    def __init__(self, kind: DiagramErrorKind, detail: str):
        super().__init__(f"{kind.value}: {detail}")
        self.kind = kind
        self.detail = detail


class RegistryErrorKind(StrEnum):
    UNREGISTERED_DISK = "UnregisteredDisk"
    SELF_PIERCING = "SelfPiercing"
    LINKING_MISMATCH = "LinkingMismatch"
    DUPLICATE_DISK = "DuplicateDisk"


class RegistryError(BrunnianForgeError):
    """Disk registry inconsistency"""

    def __init__(self, kind: RegistryErrorKind, detail: str):
        super().__init__(f"{kind.value}: {detail}")
        self.kind = kind
        self.detail = detail


class IncompleteAssignmentError(BrunnianForgeError):
    """A side assignment misses a generator occurring in the word"""

    pass


class FamilyParameterError(BrunnianForgeError, ValueError):
    """Family parameters out of range"""

    pass


class HypothesisError(BrunnianForgeError, ValueError):
    """Bipartition hypothesis is not a proper bipartition"""

    pass


class PresentationFormatError(BrunnianForgeError):
    """Presentation or certificate file failed schema validation"""

    pass
