"""The RSA transform over block sequences, plus the key-recovery attack.

Encryption is C = M^e mod n, decryption M = C^d mod n, applied blockwise.
For n = p*q squarefree the round trip M^(e*d) = M mod n holds for every
block value in [0, n), including multiples of p and q, even though the
usual Euler-theorem derivation only covers gcd(M, n) = 1; the test suite
exercises those residues deliberately.

The attack half recovers a private key from a public one by factoring n,
either by trial division (didactic, obviously correct) or Pollard rho with
Brent cycle detection (scales far enough to make timing curves
interesting).  Both honor a wall-clock budget so the hardness story can be
told with data: toy keys fall instantly, 64-bit-per-prime keys outlive any
reasonable timeout.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

from . import codec
from .codec import CODEC_CHUNKED, CODEC_TOY_ASCII, BlockSeq
from .errors import BlockTooLarge, CrackTimeout, NotSemiprime
from .keys import PrivateKey, PublicKey, generate_keypair
from .number_theory import Rng64, gcd, is_probable_prime, mod_inverse, mod_pow

__all__ = [
    "TRIAL_DIVISION",
    "POLLARD_RHO",
    "CrackReport",
    "CrackTrial",
    "encrypt_block",
    "decrypt_block",
    "encrypt_message",
    "decrypt_message",
    "crack_private_key",
    "crack_benchmark",
    "benchmark_summary",
    "benchmark_csv",
    "BENCHMARK_CSV_HEADER",
]

TRIAL_DIVISION = "trial-division"
POLLARD_RHO = "pollard-rho"

_TIMEOUT_CHECK_EVERY = 8192


def encrypt_block(m: int, pk: PublicKey) -> int:
    """C = M^e mod n for a single block M < n."""
    if m >= pk.n:
        raise BlockTooLarge(f"block {m} is not below the modulus {pk.n}")
    return mod_pow(m, pk.e, pk.n)


def decrypt_block(c: int, sk: PrivateKey) -> int:
    """M = C^d mod n for a single block C < n."""
    if c >= sk.n:
        raise BlockTooLarge(f"block {c} is not below the modulus {sk.n}")
    return mod_pow(c, sk.d, sk.n)


def _encode(data: bytes, n: int, codec_id: str) -> BlockSeq:
    if codec_id == CODEC_TOY_ASCII:
        return codec.encode_toy_ascii(data, n)
    if codec_id == CODEC_CHUNKED:
        return codec.encode_chunked(data, n)
    raise ValueError(f"unknown codec {codec_id!r}")


def _decode(bs: BlockSeq) -> bytes:
    if bs.codec_id == CODEC_TOY_ASCII:
        return codec.decode_toy_ascii(bs)
    if bs.codec_id == CODEC_CHUNKED:
        return codec.decode_chunked(bs)
    raise ValueError(f"unknown codec {bs.codec_id!r}")


def encrypt_message(data: bytes, pk: PublicKey, codec_id: str) -> BlockSeq:
    """Encode ``data`` with the chosen codec, then encrypt every block."""
    plain = _encode(data, pk.n, codec_id)
    blocks = tuple(encrypt_block(m, pk) for m in plain.blocks)
    return BlockSeq(blocks, plain.codec_id, plain.n_digits, plain.chunk_bytes)


def decrypt_message(bs: BlockSeq, sk: PrivateKey, codec_id: str | None = None) -> bytes:
    """Decrypt every block, then decode; inverse of :func:`encrypt_message`.

    The sequence already names its codec; passing ``codec_id`` merely
    asserts it matches.
    """
    if codec_id is not None and codec_id != bs.codec_id:
        raise ValueError(f"sequence carries codec {bs.codec_id!r}, not {codec_id!r}")
    blocks = tuple(decrypt_block(c, sk) for c in bs.blocks)
    return _decode(BlockSeq(blocks, bs.codec_id, bs.n_digits, bs.chunk_bytes))


# --- key recovery ------------------------------------------------------------


@dataclass(frozen=True)
class CrackReport:
    """Everything recovered by factoring a public modulus, p <= q."""

    p: int
    q: int
    phi: int
    d: int
    elapsed: float
    method: str


@dataclass(frozen=True)
class CrackTrial:
    """One benchmark measurement; ``elapsed`` is wall-clock seconds."""

    bits_per_prime: int
    method: str
    trial: int
    elapsed: float
    solved: bool


def _deadline_passed(deadline: float | None) -> bool:
    return deadline is not None and perf_counter() > deadline


def _trial_division_factor(n: int, deadline: float | None) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    ticks = 0
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
        ticks += 1
        if ticks % _TIMEOUT_CHECK_EVERY == 0 and _deadline_passed(deadline):
            raise CrackTimeout(f"trial division still running at f = {f}")
    raise NotSemiprime(f"{n} is prime")


def _pollard_rho_factor(n: int, deadline: float | None) -> int:
    # Brent's cycle-finding variant on x -> x^2 + c mod n; when a cycle
    # closes without yielding a factor, restart with the addend bumped.
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for i in range(r):
                y = (y * y + c) % n
                if i % _TIMEOUT_CHECK_EVERY == 0 and _deadline_passed(deadline):
                    raise CrackTimeout(f"pollard-rho still cycling at r = {r}")
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
                if _deadline_passed(deadline):
                    raise CrackTimeout(f"pollard-rho still cycling at r = {r}")
            r <<= 1
        if g == n:
            # The batched gcd overshot; replay single steps from the last
            # checkpoint to isolate the factor.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys) or n, n)
        if g != n:
            return g
        c += 1


_FACTOR_METHODS = {
    TRIAL_DIVISION: _trial_division_factor,
    POLLARD_RHO: _pollard_rho_factor,
}


def crack_private_key(
    pk: PublicKey, method: str = TRIAL_DIVISION, timeout: float | None = None
) -> CrackReport:
    """Recover the private key behind ``pk`` by factoring its modulus.

    Once n = p*q is known, phi(n) = (p-1)(q-1) follows and d is just the
    inverse of e modulo phi(n), which is exactly why factoring must be hard
    for RSA to stand.  Raises :class:`CrackTimeout` when ``timeout``
    seconds pass without a factor and :class:`NotSemiprime` when n is not a
    product of two distinct primes.
    """
    if method not in _FACTOR_METHODS:
        raise ValueError(f"unknown method {method!r}")
    start = perf_counter()
    deadline = start + timeout if timeout is not None else None
    n = pk.n
    if n < 6 or is_probable_prime(n):
        raise NotSemiprime(f"{n} is not a product of two distinct primes")
    try:
        f = _FACTOR_METHODS[method](n, deadline)
    except CrackTimeout as exc:
        exc.elapsed = perf_counter() - start
        exc.method = method
        raise
    p, q = min(f, n // f), max(f, n // f)
    if p * q != n or p == q or not (is_probable_prime(p) and is_probable_prime(q)):
        raise NotSemiprime(f"{n} is not a product of two distinct primes")
    phi = (p - 1) * (q - 1)
    d = mod_inverse(pk.e, phi)
    return CrackReport(p, q, phi, d, perf_counter() - start, method)


def crack_benchmark(
    bits_list: list[int],
    seed: int,
    method: str = TRIAL_DIVISION,
    timeout: float | None = None,
    trials: int = 3,
) -> list[CrackTrial]:
    """Generate and crack keys per entry of ``bits_list``, timing each trial.

    Key seeds are drawn from one xorshift64* stream seeded with ``seed``,
    so the keys (though not the timings) are reproducible.  A trial that
    exceeds ``timeout`` is recorded with ``solved=False`` instead of
    aborting the run.  Trials run sequentially; interleaving them would
    contaminate the wall-clock numbers.
    """
    rng = Rng64(seed)
    out: list[CrackTrial] = []
    for bits in bits_list:
        for trial in range(1, trials + 1):
            key_seed = 0
            while key_seed == 0:
                key_seed = rng.next_u64()
            kp = generate_keypair(bits, key_seed)
            try:
                report = crack_private_key(kp.public, method, timeout)
                out.append(CrackTrial(bits, method, trial, report.elapsed, True))
            except CrackTimeout as exc:
                out.append(CrackTrial(bits, method, trial, exc.elapsed, False))
    return out


def benchmark_summary(trials: list[CrackTrial]) -> list[tuple[int, float, int]]:
    """Per-bit-width rows (bits_per_prime, mean_elapsed_seconds, trials),
    ordered as first encountered."""
    order: list[int] = []
    buckets: dict[int, list[float]] = {}
    for t in trials:
        if t.bits_per_prime not in buckets:
            order.append(t.bits_per_prime)
            buckets[t.bits_per_prime] = []
        buckets[t.bits_per_prime].append(t.elapsed)
    return [(b, sum(buckets[b]) / len(buckets[b]), len(buckets[b])) for b in order]


BENCHMARK_CSV_HEADER = "bits_per_prime,method,trial,elapsed_seconds,solved"


def benchmark_csv(trials: list[CrackTrial]) -> str:
    """Render trials as CSV: one row per trial, seconds with 6 decimals."""
    lines = [BENCHMARK_CSV_HEADER]
    for t in trials:
        solved = "true" if t.solved else "false"
        lines.append(
            f"{t.bits_per_prime},{t.method},{t.trial},{t.elapsed:.6f},{solved}"
        )
    return "\n".join(lines) + "\n"
