"""Exception hierarchy for cmpairs."""


class CmPairsError(Exception):
    """Base class for every error raised by the library."""


class NonPrimeCharacteristic(CmPairsError):
    pass


class NonHomogeneousRelation(CmPairsError):
    pass


class FineGradingNeedsMonomialRelations(CmPairsError):
    pass


class InhomogeneousColumn(CmPairsError):
    pass


class ShapeMismatch(CmPairsError):
    pass


class GradingModeMismatch(CmPairsError):
    pass


class RankMismatch(CmPairsError):
    pass


class UnitIdeal(CmPairsError):
    pass


class ResolutionTooShort(CmPairsError):
    pass


class NotFineGraded(CmPairsError):
    pass


class NotMonomialIdeal(CmPairsError):
    pass


class UnsupportedIdeal(CmPairsError):
    pass


class HypothesisNotMet(CmPairsError):
    pass


class DslError(CmPairsError):
    """Parse or type error in a .cm document, carrying a source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class CorpusParseError(DslError):
    pass
