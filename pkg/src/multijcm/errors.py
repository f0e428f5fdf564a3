"""Exception hierarchy shared by the library and the command line."""


class JCMError(Exception):
    """Base class for all errors raised by :mod:`multijcm`."""


class ConfigError(JCMError, ValueError):
    """Invalid user input: unknown names, out-of-range parameters."""


class InvalidStateError(ConfigError):
    """A requested state does not exist (e.g. odd cat state with alpha = 0)."""


class NumericBudgetError(JCMError, ArithmeticError):
    """A numerical tolerance budget was exceeded."""


class TruncationError(NumericBudgetError):
    """Fock truncation leaves more than the allowed probability in the tail."""


class HeadroomError(NumericBudgetError):
    """The truncated basis cannot support a requested ladder-operator shift."""


class NormDriftError(NumericBudgetError):
    """Total probability departed from one by more than the budget."""


class StepSizeError(NumericBudgetError):
    """Fixed-step integration drifted outside its norm budget."""
