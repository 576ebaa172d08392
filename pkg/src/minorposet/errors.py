"""Exception hierarchy shared by every module of the package."""


class MinorPosetError(Exception):
    """Base class; the CLI turns any of these into a JSON error and exit code 2."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class NonClosure(MinorPosetError):
    code = "NonClosure"


class GeneratorIsBottom(MinorPosetError):
    code = "GeneratorIsBottom"


class DuplicateGenerator(MinorPosetError):
    code = "DuplicateGenerator"


class TooManyGenerators(MinorPosetError):
    code = "TooManyGenerators"


class NotAbove(MinorPosetError):
    code = "NotAbove"


class ParseError(MinorPosetError):
    code = "ParseError"


class NotALattice(MinorPosetError):
    code = "NotALattice"


class DisconnectedGeneratorLabel(MinorPosetError):
    """Graph input with a self-loop: the loop's flat would be the bottom element."""

    code = "DisconnectedGeneratorlabel"


class BadIndex(MinorPosetError):
    code = "BadIndex"


class BudgetExceeded(MinorPosetError):
    code = "BudgetExceeded"


class HostMismatch(MinorPosetError):
    code = "HostMismatch"


class NoJoin(MinorPosetError):
    code = "NoJoin"

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition

    def to_json(self):
        out = super().to_json()
        out["condition"] = self.condition
        return out


class NotAnOrderMinor(MinorPosetError):
    code = "NotAnOrderMinor"


class MethodInapplicable(MinorPosetError):
    code = "MethodInapplicable"


class NoBounds(MinorPosetError):
    code = "NoBounds"


class NotGraded(MinorPosetError):
    code = "NotGraded"


class NotCd(MinorPosetError):
    code = "NotCd"


class DegreeMismatch(MinorPosetError):
    code = "DegreeMismatch"


class TooLarge(MinorPosetError):
    code = "TooLarge"


class HasParallel(MinorPosetError):
    code = "HasParallel"


class NotJoinPreserving(MinorPosetError):
    code = "NotJoinPreserving"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GeneratorImageViolation(MinorPosetError):
    code = "GeneratorImageViolation"


class NotSurjective(MinorPosetError):
    code = "NotSurjective"


class NotAZipper(MinorPosetError):
    code = "NotAZipper"

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ZipperNotFound(MinorPosetError):
    code = "ZipperNotFound"
