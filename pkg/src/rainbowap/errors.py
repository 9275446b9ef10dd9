"""Exception types shared across the toolkit.

Every error raised on a documented contract violation derives from
:class:`RainbowAPError`, so callers (the CLI in particular) can catch one
base class and turn it into a diagnostic plus exit code 2.
"""


class RainbowAPError(Exception):
    """Base class for all toolkit errors."""


class InvalidArity(RainbowAPError):
    """Number of colors k is not a positive integer."""


class InvalidColorLetter(RainbowAPError):
    """A color letter or index is outside the range allowed by k."""


class InvalidDifference(RainbowAPError):
    """Common difference of an arithmetic progression must be >= 1."""


class OutOfRange(RainbowAPError):
    """An interval AP runs past the end of [n]."""


class NotDistinct(RainbowAPError):
    """A cyclic AP revisits a residue before reaching its full length."""


class NotInvertible(RainbowAPError):
    """Affine multiplier is not a unit modulo n."""


class UnsupportedTopology(RainbowAPError):
    """Operation defined only for the other topology."""


class TooSmall(RainbowAPError):
    """Ground set too small for the requested construction."""


class VariantMismatch(RainbowAPError):
    """Construction variant incompatible with n mod 8."""


class UnsupportedArity(RainbowAPError):
    """No construction exists for this number of colors."""


class InvalidRepeat(RainbowAPError):
    """Tile repetition count must be >= 1."""


class NotDivisible(RainbowAPError):
    """Equinumerous colorings require k to divide n."""


class UnknownSuite(RainbowAPError):
    """Verification suite name is not registered."""


class InvalidParams(RainbowAPError):
    """Suite parameters are malformed or out of documented bounds."""
