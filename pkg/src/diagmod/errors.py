"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside an operation's mathematical domain."""


class IncompatibleFamilyError(DomainError):
    """A tableau family failed the compatibility gate for module construction.

    Carries the witness: two tableaux that disagree on the attacking status
    of an ascent (or descent) occupying the same pair of reading positions.
    """

    def __init__(self, mode: str, witness):
        first, second, r, s = witness
        self.mode = mode
        self.witness = witness
        super().__init__(
            f"family is not {mode}-compatible: tableaux with reading words "
            f"{''.join(map(str, first.reading_word))} and "
            f"{''.join(map(str, second.reading_word))} disagree at positions ({r}, {s})"
        )
