"""Exception types raised across the toolkit.

Every error is a subclass of :class:`Error` so callers can catch the whole
family with one clause; the CLI maps these onto its documented exit codes.
"""


class Error(Exception):
    """Base class for all rsa-primer errors."""


# --- number theory ---------------------------------------------------------

class ModulusTooSmall(Error):
    """Modular operation attempted with a modulus of 1 or less."""


class BothZero(Error):
    """gcd(0, 0) requested; the greatest common divisor is undefined."""


class NotCoprime(Error):
    """No modular inverse exists because gcd(a, m) != 1."""


class NotPrime(Error):
    """An argument required to be prime failed the primality test."""


class EqualPrimes(Error):
    """The two primes of a semiprime must be distinct."""


class OracleBoundExceeded(Error):
    """A brute-force oracle was called above its documented input bound."""


class BitsTooSmall(Error):
    """Prime generation requires a bit width of at least 4."""


class ZeroState(Error):
    """The random stream state must be a nonzero 64-bit value."""


# --- keys ------------------------------------------------------------------

class InvalidPublicExponent(Error):
    """e must satisfy 1 < e < phi(n) and gcd(e, phi(n)) = 1."""


class MalformedKeyFile(Error):
    """Key file text does not match the documented format exactly."""


# --- codec -----------------------------------------------------------------

class NonAsciiByte(Error):
    """toy-ascii encoding only accepts bytes below 128."""


class ModulusTooSmallForCodec(Error):
    """The modulus is too small to hold one block of the chosen codec."""


class BlockOutOfRange(Error):
    """A decoded block does not fit the codec's value range."""


class MalformedBlock(Error):
    """A block sequence violates the codec's framing rules."""


# --- cipher / attack -------------------------------------------------------

class BlockTooLarge(Error):
    """Message and cipher blocks must be strictly less than the modulus n."""


class NotSemiprime(Error):
    """The attacked modulus is not a product of two distinct primes."""


class CrackTimeout(Error):
    """Factoring exceeded its wall-clock budget.

    Attributes ``elapsed`` (seconds spent) and ``method`` are filled in by
    :func:`rsa_primer.cipher.crack_private_key` before the error propagates.
    """

    elapsed: float = 0.0
    method: str = ""
