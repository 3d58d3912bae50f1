"""
errors.py — Exception Hierarchy
===============================
Every failure the library raises on purpose derives from SandwichError.
The CLI turns them into exit codes via exit_code_for().

    0  success (and verdict true)
    1  verdict false
    2  input error / guard / contract violation
    3  resource budget exceeded
"""

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3


class SandwichError(Exception):
    """Root of all deliberate failures."""


class WordSyntaxError(SandwichError, ValueError):
    """Word text could not be parsed against the alphabet."""


class AlphabetMismatchError(SandwichError, ValueError):
    """Two objects built over different alphabets were combined."""


class RankGuardError(SandwichError):
    """Rank is above the configured ceiling and --force was not given."""


class OracleGuardError(SandwichError):
    """Brute-force oracle called outside its rank/depth guard."""


class ContractViolation(SandwichError, AssertionError):
    """A precondition or a runtime postcondition did not hold."""


class ResourceBudgetExceeded(SandwichError):
    """Exploration produced more nodes than the configured cap."""

    def __init__(self, cap: int, message: str = ""):
        self.cap = cap
        super().__init__(message or f"node budget exceeded: more than {cap} nodes (raise FGS_NODE_BUDGET or --node-budget)")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ResourceBudgetExceeded):
        return EXIT_BUDGET_EXCEEDED
    return EXIT_INPUT_ERROR
