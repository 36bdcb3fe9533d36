"""Exception hierarchy.

Every error raised for bad input derives from :class:`SemicovError`, which is
itself a :class:`ValueError`, so callers that only care about "invalid
argument" can catch that.
"""


class SemicovError(ValueError):
    pass


# semigroup core

class EmptyInput(SemicovError):
    pass


class NotCoprime(SemicovError):
    pass


class NotASemigroup(SemicovError):
    """A gap/element description that is not closed under addition."""


class FrobeniusTooLarge(SemicovError):
    pass


class NotAnElement(SemicovError):
    pass


class NotSpecialGap(SemicovError):
    pass


class TrivialSemigroup(SemicovError):
    """Operation undefined for S = N."""


class NotMinimalGenerator(SemicovError):
    pass


class NotMED(SemicovError):
    pass


# covarieties

class CovarietyError(SemicovError):
    pass


class EmptyFamily(CovarietyError):
    pass


class NoMinimum(CovarietyError):
    pass


class NotIntersectionClosed(CovarietyError):
    def __init__(self, s, t):
        super().__init__(f"intersection of {s} and {t} is not a member")
        self.pair = (s, t)


class NotMultiplicityRemovalClosed(CovarietyError):
    def __init__(self, s):
        super().__init__(f"{s} minus its multiplicity is not a member")
        self.semigroup = s


class NotACSet(CovarietyError):
    pass


class NotMember(CovarietyError):
    pass


class FrobeniusTooSmall(CovarietyError):
    pass


# fixed Frobenius number

class InvalidF(SemicovError):
    pass


class NotAnAFSet(SemicovError):
    pass


class WrongFrobenius(SemicovError):
    pass


class NotRank1Form(SemicovError):
    pass


class NotMaxRank(SemicovError):
    pass


# oracle

class TooLarge(SemicovError):
    pass


class DeltaNotMinimum(SemicovError):
    pass
