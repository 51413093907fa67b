"""Number-theoretic primitives behind the RSA toolkit.

Everything here works on plain Python integers, which are arbitrary
precision, so operands of 4096 bits and beyond are handled without any
extra machinery.  All values are non-negative ("naturals") except the
Bezout coefficients returned by :func:`extended_gcd`, which may be
negative.

The module also houses :class:`Rng64`, a deterministic xorshift64* stream
used by prime generation.  It is seeded explicitly and threaded through
callers, so identical seeds reproduce identical keys on every platform.
"""

from __future__ import annotations

import math

from .errors import (
    BitsTooSmall,
    BothZero,
    EqualPrimes,
    ModulusTooSmall,
    NotCoprime,
    NotPrime,
    OracleBoundExceeded,
    ZeroState,
)

__all__ = [
    "Rng64",
    "rng_next",
    "mod_reduce",
    "is_congruent",
    "mod_pow",
    "gcd",
    "extended_gcd",
    "mod_inverse",
    "totient_of_semiprime",
    "totient_bruteforce",
    "is_probable_prime",
    "gen_prime",
    "TOTIENT_ORACLE_BOUND",
]

_WORD_MASK = (1 << 64) - 1
_XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D

TOTIENT_ORACLE_BOUND = 10**7


def _require_natural(value: int, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")


class Rng64:
    """Deterministic xorshift64* stream with a nonzero 64-bit state.

    The update is: x ^= x >> 12; x ^= x << 25; x ^= x >> 27 (all on 64-bit
    words), output (x * 0x2545F4914F6CDD1D) mod 2**64, with x as the new
    state.  The sequence is a pure function of the seed, which is what makes
    key generation reproducible across runs and platforms.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise TypeError(f"seed must be an int, got {type(seed).__name__}")
        if seed == 0:
            raise ZeroState("the xorshift64* state must be nonzero")
        if not 0 < seed < 1 << 64:
            raise ValueError(f"seed must fit in 64 bits, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        """Advance the stream and return the next 64-bit output."""
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _WORD_MASK
        x ^= x >> 27
        self.state = x
        return (x * _XORSHIFT_MULTIPLIER) & _WORD_MASK

    def __repr__(self) -> str:
        return f"Rng64(0x{self.state:016x})"


def rng_next(rng: Rng64) -> tuple[int, Rng64]:
    """One xorshift64* step as a pure function: (value, advanced stream).

    The input stream is left untouched; feeding the same state twice yields
    the same pair.
    """
    advanced = Rng64(rng.state)
    value = advanced.next_u64()
    return value, advanced


def _draw_bits(bits: int, rng: Rng64) -> int:
    # Consumes ceil(bits/64) words, big-endian, keeping the top `bits` bits.
    words = (bits + 63) // 64
    value = 0
    for _ in range(words):
        value = (value << 64) | rng.next_u64()
    return value >> (words * 64 - bits)


def mod_reduce(a: int, n: int) -> int:
    """Remainder of a divided by n, in [0, n).  For a < n this is a itself."""
    _require_natural(a, "a")
    _require_natural(n, "n")
    if n <= 1:
        raise ModulusTooSmall(f"modulus must exceed 1, got {n}")
    return a % n


def is_congruent(a: int, b: int, m: int) -> bool:
    """True when a and b leave the same remainder on division by m."""
    _require_natural(a, "a")
    _require_natural(b, "b")
    _require_natural(m, "m")
    if m <= 1:
        raise ModulusTooSmall(f"modulus must exceed 1, got {m}")
    return a % m == b % m


def mod_pow(base: int, exponent: int, n: int) -> int:
    """Square-and-multiply computation of base**exponent mod n.

    Runs in O(log exponent) modular multiplications and keeps every
    intermediate below n**2, so the full power base**exponent is never
    materialized.  Direct exponentiation with RSA-sized operands would need
    astronomically more memory and time; this loop is what makes
    C = M^e mod n computable in practice.
    """
    _require_natural(base, "base")
    _require_natural(exponent, "exponent")
    _require_natural(n, "n")
    if n <= 1:
        raise ModulusTooSmall(f"modulus must exceed 1, got {n}")
    result = 1
    base %= n
    while exponent:
        if exponent & 1:
            result = result * base % n
        base = base * base % n
        exponent >>= 1
    return result


def gcd(a: int, b: int) -> int:
    """Greatest common divisor by the Euclidean algorithm."""
    _require_natural(a, "a")
    _require_natural(b, "b")
    if a == 0 and b == 0:
        raise BothZero("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclidean algorithm: (g, s, t) with s*a + t*b = g = gcd(a, b).

    Uses the standard iterative recurrence, so the coefficient pair is the
    canonical one, e.g. extended_gcd(24, 14) == (2, 3, -5).
    """
    _require_natural(a, "a")
    _require_natural(b, "b")
    if a == 0 and b == 0:
        raise BothZero("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> int:
    """The unique b in (0, m) with a*b = 1 (mod m).

    Exists exactly when gcd(a, m) = 1; otherwise :class:`NotCoprime` is
    raised, which in key generation signals an invalid choice of e.
    """
    _require_natural(a, "a")
    _require_natural(m, "m")
    if m <= 1:
        raise ModulusTooSmall(f"modulus must exceed 1, got {m}")
    g, s, _ = extended_gcd(a, m)
    if g != 1:
        raise NotCoprime(f"no inverse: gcd({a}, {m}) = {g} != 1")
    return s % m


def totient_of_semiprime(p: int, q: int) -> int:
    """Euler's totient of p*q for distinct primes p, q: (p-1)*(q-1)."""
    _require_natural(p, "p")
    _require_natural(q, "q")
    if not is_probable_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if not is_probable_prime(q):
        raise NotPrime(f"q = {q} is not prime")
    if p == q:
        raise EqualPrimes(f"p and q must be distinct, both are {p}")
    return (p - 1) * (q - 1)


def totient_bruteforce(n: int) -> int:
    """Count integers in [1, n) coprime to n, by definition.

    A test oracle: it needs no factorization, just n-1 gcd evaluations, so
    it is exact but only viable for small n.  Bounded at 10**7 to guard
    against accidental huge inputs.
    """
    _require_natural(n, "n")
    if n <= 1:
        raise ValueError(f"totient oracle requires n > 1, got {n}")
    if n > TOTIENT_ORACLE_BOUND:
        raise OracleBoundExceeded(
            f"totient oracle bounded at {TOTIENT_ORACLE_BOUND}, got {n}"
        )
    return sum(1 for x in range(1, n) if math.gcd(x, n) == 1)


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit, i)))
    return tuple(i for i in range(limit) if flags[i])

_SMALL_PRIMES = _sieve(1000)

# Below this bound the fixed 12-base set is a proven deterministic test.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_RANDOM_ROUNDS = 64
_DEFAULT_WITNESS_SEED = 0x9E3779B97F4A7C15


def _miller_rabin_witness(a: int, d: int, r: int, n: int) -> bool:
    # True when a proves n composite.  n is odd, n - 1 = d * 2**r with d odd.
    x = mod_pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int, rng: Rng64 | None = None) -> bool:
    """Primality verdict via Miller-Rabin.

    For n below ~3.3e24 the fixed witness set {2, 3, ..., 37} is known to
    be exact, so the answer is deterministic.  Above that, 64 rounds with
    witnesses drawn from ``rng`` are used (a fresh stream with a fixed
    documented seed when the caller supplies none, keeping verdicts
    reproducible).  0 and 1 are not prime; 2 and 3 are.
    """
    _require_natural(n, "n")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    # n is odd and has no prime factor below 1000.
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _DETERMINISTIC_LIMIT:
        witnesses = _DETERMINISTIC_BASES
    else:
        if rng is None:
            rng = Rng64(_DEFAULT_WITNESS_SEED)
        span = n - 3
        witnesses = (
            2 + _draw_bits(span.bit_length() + 64, rng) % span
            for _ in range(_RANDOM_ROUNDS)
        )
    for a in witnesses:
        if _miller_rabin_witness(a, d, r, n):
            return False
    return True


def gen_prime(bits: int, rng: Rng64) -> int:
    """Random prime with exactly ``bits`` bits (top bit set).

    Draws one random odd ``bits``-bit candidate from the stream, then walks
    odd candidates (+2) until the primality test passes, wrapping back to
    the bottom of the range so the width stays exact.  Deterministic for a
    given stream state.
    """
    if bits < 4:
        raise BitsTooSmall(f"prime width must be at least 4 bits, got {bits}")
    low = 1 << (bits - 1)
    high = (1 << bits) - 1
    candidate = _draw_bits(bits, rng) | low | 1
    while True:
        if is_probable_prime(candidate, rng):
            return candidate
        candidate += 2
        if candidate > high:
            candidate = low + 1
