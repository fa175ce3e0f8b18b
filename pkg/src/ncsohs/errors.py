"""Exception types raised across the package."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SchemaError(ValueError):
    """Malformed JSON payload."""


class NotPsdError(ValueError):
    pass


class UnrepresentableWord(ValueError):
    def __init__(self, word):
        super().__init__(f"no cell of the monomial vector produces word {word}")
        self.word = word


class AmbiguousDistribution(ValueError):
    def __init__(self, word, n_cells):
        super().__init__(f"word {word} can be placed in {n_cells} cells")
        self.word = word
        self.n_cells = n_cells


class NotApplicable(ValueError):
    pass


class ColumnSpaceViolation(ValueError):
    """The off-diagonal block is not in the column space of the preserved block."""


class HypothesisViolated(ValueError):
    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class NotPartialPsd(ValueError):
    pass


class CompletionFailed(ValueError):
    def __init__(self, message: str, minor=None, eigenvalue=None):
        super().__init__(message)
        self.minor = minor
        self.eigenvalue = eigenvalue


class AmbientTooLarge(ValueError):
    pass
