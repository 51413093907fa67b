"""Command-line surface: keygen, encrypt, decrypt, crack, demo, nt.

Ciphertext travels as space-separated zero-padded decimal blocks so every
transcript stays human-checkable, and intermediate quantities real tools
would hide (phi(n), block encodings, recovered factors) are printed on
purpose; this is a teaching tool.

Exit codes: 0 success; 1 file system errors; 2 invalid flags or malformed
arguments; 3 codec or number-theory domain errors; 4 malformed key files;
5 a block at or above the modulus; 6 cracking timeout.  stdout carries only
payload, diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .cipher import (
    POLLARD_RHO,
    TRIAL_DIVISION,
    benchmark_csv,
    crack_benchmark,
    crack_private_key,
    decrypt_message,
    encrypt_message,
)
from .codec import (
    CODEC_CHUNKED,
    CODEC_TOY_ASCII,
    BlockSeq,
    chunk_size_for,
    decimal_digits,
    encode_toy_ascii,
    format_cipher_blocks,
    format_plain_blocks,
)
from .errors import (
    BitsTooSmall,
    BlockOutOfRange,
    BlockTooLarge,
    BothZero,
    CrackTimeout,
    EqualPrimes,
    InvalidPublicExponent,
    MalformedBlock,
    MalformedKeyFile,
    ModulusTooSmall,
    ModulusTooSmallForCodec,
    NonAsciiByte,
    NotCoprime,
    NotPrime,
    NotSemiprime,
    OracleBoundExceeded,
    ZeroState,
)
from .keys import (
    KeyPair,
    format_keypair,
    format_public_key,
    generate_keypair,
    keypair_from_primes,
    parse_key_file,
    private_part,
    public_part,
)
from .number_theory import (
    extended_gcd,
    gcd,
    is_probable_prime,
    mod_inverse,
    mod_pow,
    totient_bruteforce,
)

__all__ = ["main", "entry", "parse_cipher_blocks"]

# The fixed demo key and message of the classic walkthrough.
DEMO_P = 1721
DEMO_Q = 1801
DEMO_E = 1012333
DEMO_MESSAGE = b"Tue 7PM"
DEMO_SEEDED_BITS = 16

FACTOR_BOUND = 10**12


def _fail(message: str) -> None:
    print(message, file=sys.stderr)


def parse_cipher_blocks(text: str, codec_id: str, n: int) -> BlockSeq:
    """Inverse of format_cipher_blocks: whitespace-separated decimal blocks."""
    blocks: list[int] = []
    for token in text.split():
        if not token.isascii() or not token.isdigit():
            raise MalformedBlock(f"ciphertext token {token!r} is not a decimal block")
        blocks.append(int(token))
    chunk = chunk_size_for(n) if codec_id == CODEC_CHUNKED else None
    return BlockSeq(tuple(blocks), codec_id, decimal_digits(n), chunk)


# --- argparse plumbing -------------------------------------------------------


def _natural(text: str) -> int:
    if not text.isascii() or not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a decimal natural, got {text!r}")
    return int(text)


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected seconds, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("timeout must be positive")
    return value


def _bits_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated bit widths, got {text!r}"
        ) from None
    if not values or any(v < 4 for v in values):
        raise argparse.ArgumentTypeError("each bit width must be at least 4")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsa-primer",
        description="Educational RSA toolkit: generate keys, encrypt and "
        "decrypt block-encoded text, crack toy keys, and walk the whole "
        "pipeline step by step.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair deterministically")
    p.add_argument("--bits", type=_natural, required=True, help="bits per prime (>= 4)")
    p.add_argument("--seed", type=_natural, required=True, help="nonzero 64-bit seed")
    p.add_argument("--e", type=_natural, default=None, help="fix the public exponent")
    p.add_argument(
        "--retain-pq",
        action="store_true",
        help="keep p, q, phi(n) in the pair file instead of destroying them",
    )
    p.add_argument("--out", required=True, metavar="PREFIX",
                   help="write PREFIX.pub and PREFIX.key")
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt bytes to decimal cipher blocks")
    p.add_argument("--key", required=True, help="public or pair key file")
    p.add_argument("--codec", choices=(CODEC_TOY_ASCII, CODEC_CHUNKED),
                   default=CODEC_TOY_ASCII)
    p.add_argument("--in", dest="infile", default=None,
                   help="plaintext file (default: stdin)")
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt decimal cipher blocks to bytes")
    p.add_argument("--key", required=True, help="private or pair key file")
    p.add_argument("--codec", choices=(CODEC_TOY_ASCII, CODEC_CHUNKED),
                   default=CODEC_TOY_ASCII)
    p.add_argument("--in", dest="infile", default=None,
                   help="ciphertext file (default: stdin)")
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("crack", help="recover a private key by factoring n")
    p.add_argument("--key", default=None, help="public or pair key file")
    p.add_argument("--method", choices=(TRIAL_DIVISION, POLLARD_RHO),
                   default=TRIAL_DIVISION)
    p.add_argument("--timeout", type=_positive_float, default=None,
                   help="wall-clock budget in seconds")
    p.add_argument("--csv", action="store_true",
                   help="run the timing benchmark and emit CSV instead")
    p.add_argument("--bits", type=_bits_list, default=None,
                   help="benchmark bit widths, e.g. 8,12,16 (with --csv)")
    p.add_argument("--seed", type=_natural, default=None,
                   help="benchmark key seed (with --csv)")
    p.add_argument("--trials", type=_natural, default=3,
                   help="benchmark trials per bit width (with --csv)")
    p.set_defaults(func=_cmd_crack)

    p = sub.add_parser("demo", help="narrated end-to-end walkthrough")
    p.add_argument("--seed", type=_natural, default=None,
                   help="run on a freshly generated key instead of the fixed one")
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("nt", help="number theory utilities")
    nt = p.add_subparsers(dest="nt_command", required=True)
    q = nt.add_parser("gcd", help="greatest common divisor")
    q.add_argument("a", type=_natural)
    q.add_argument("b", type=_natural)
    q.set_defaults(func=_cmd_nt_gcd)
    q = nt.add_parser("xgcd", help="extended Euclid: prints g s t")
    q.add_argument("a", type=_natural)
    q.add_argument("b", type=_natural)
    q.set_defaults(func=_cmd_nt_xgcd)
    q = nt.add_parser("inverse", help="inverse of a modulo m")
    q.add_argument("a", type=_natural)
    q.add_argument("m", type=_natural)
    q.set_defaults(func=_cmd_nt_inverse)
    q = nt.add_parser("modpow", help="base^exponent mod n")
    q.add_argument("base", type=_natural)
    q.add_argument("exponent", type=_natural)
    q.add_argument("n", type=_natural)
    q.set_defaults(func=_cmd_nt_modpow)
    q = nt.add_parser("totient", help="Euler's totient by brute force (n <= 10^7)")
    q.add_argument("n", type=_natural)
    q.set_defaults(func=_cmd_nt_totient)
    q = nt.add_parser("isprime", help="Miller-Rabin primality verdict")
    q.add_argument("n", type=_natural)
    q.set_defaults(func=_cmd_nt_isprime)
    q = nt.add_parser("factor", help=f"prime factorization (n <= {FACTOR_BOUND})")
    q.add_argument("n", type=_natural)
    q.set_defaults(func=_cmd_nt_factor)

    return parser


# --- commands ----------------------------------------------------------------


def _read_input(infile: str | None) -> bytes:
    if infile is None:
        return sys.stdin.buffer.read()
    with open(infile, "rb") as fh:
        return fh.read()


def _load_key_file(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise MalformedKeyFile(f"{path}: key files are ASCII text") from None
    try:
        return parse_key_file(text)
    except MalformedKeyFile as exc:
        raise MalformedKeyFile(f"{path}: {exc}") from None


def _cmd_keygen(args: argparse.Namespace) -> int:
    kp = generate_keypair(args.bits, args.seed, e=args.e,
                          retain_provenance=args.retain_pq)
    pub_path = args.out + ".pub"
    key_path = args.out + ".key"
    with open(pub_path, "wb") as fh:
        fh.write(format_public_key(kp.public).encode("ascii"))
    with open(key_path, "wb") as fh:
        fh.write(format_keypair(kp).encode("ascii"))
    _fail(f"wrote {pub_path} (public) and {key_path} (pair)")
    print(f"n={kp.public.n}")
    print(f"e={kp.public.e}")
    print(f"d={kp.private.d}")
    if kp.provenance is not None:
        print(f"p={kp.provenance.p}")
        print(f"q={kp.provenance.q}")
        print(f"phi={kp.provenance.phi}")
    return 0


def _cmd_encrypt(args: argparse.Namespace) -> int:
    pk = public_part(_load_key_file(args.key))
    data = _read_input(args.infile)
    bs = encrypt_message(data, pk, args.codec)
    if bs.blocks:
        print(format_cipher_blocks(bs))
    return 0


def _cmd_decrypt(args: argparse.Namespace) -> int:
    sk = private_part(_load_key_file(args.key))
    raw = _read_input(args.infile)
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise MalformedBlock("ciphertext must be ASCII decimal blocks") from None
    bs = parse_cipher_blocks(text, args.codec, sk.n)
    data = decrypt_message(bs, sk)
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()
    return 0


def _cmd_crack(args: argparse.Namespace) -> int:
    if args.csv:
        if args.key is not None or args.bits is None or args.seed is None:
            _fail("crack --csv needs --bits and --seed, and no --key")
            return 2
        trials = crack_benchmark(args.bits, args.seed, args.method,
                                 args.timeout, args.trials)
        sys.stdout.write(benchmark_csv(trials))
        return 0
    if args.key is None:
        _fail("crack needs --key (or --csv with --bits and --seed)")
        return 2
    pk = public_part(_load_key_file(args.key))
    report = crack_private_key(pk, args.method, args.timeout)
    print(f"p={report.p} q={report.q} phi={report.phi} d={report.d}")
    print(f"method={report.method} elapsed={report.elapsed:.6f}s")
    return 0


def _demo_transcript(kp: KeyPair, message: bytes, seed_note: str | None) -> str:
    pub, priv, pr = kp.public, kp.private, kp.provenance
    plain = encode_toy_ascii(message, pub.n)
    cipher = encrypt_message(message, pub, CODEC_TOY_ASCII)
    recovered = decrypt_message(cipher, priv)
    recovered_blocks = encode_toy_ascii(recovered, pub.n)
    text = message.decode("ascii")

    lines = [
        "RSA walkthrough",
        "===============",
        "",
        "Key setup (receiver)",
    ]
    if seed_note is not None:
        lines.append(f"  seed                 {seed_note}")
    lines += [
        f"  chosen primes        p = {pr.p}, q = {pr.q}",
        f"  modulus              n = p*q = {pub.n}",
        f"  totient              phi(n) = (p-1)*(q-1) = {pr.phi}",
        f"  public exponent      e = {pub.e} (coprime to phi(n))",
        f"  private exponent     d = {priv.d} (inverse of e modulo phi(n))",
        f"  released to anyone   (e, n) = ({pub.e}, {pub.n})",
        f"  kept by receiver     (d, n) = ({priv.d}, {pub.n}); p, q, phi(n) stay hidden",
        "",
        "Encryption (sender)",
        f"  message              {text}",
        f"  ascii blocks         {format_plain_blocks(plain)}",
        "  block transform      C = M^e mod n",
        f"  ciphertext           {format_cipher_blocks(cipher)}",
        "",
        "Decryption (receiver)",
        "  block transform      M = C^d mod n",
        f"  recovered blocks     {format_plain_blocks(recovered_blocks)}",
        "  recovered message:",
        text,
    ]
    return "\n".join(lines) + "\n"


def _cmd_demo(args: argparse.Namespace) -> int:
    if args.seed is None:
        kp = keypair_from_primes(DEMO_P, DEMO_Q, DEMO_E, retain_provenance=True)
        transcript = _demo_transcript(kp, DEMO_MESSAGE, None)
    else:
        kp = generate_keypair(DEMO_SEEDED_BITS, args.seed, retain_provenance=True)
        note = f"{args.seed} ({DEMO_SEEDED_BITS}-bit primes)"
        transcript = _demo_transcript(kp, DEMO_MESSAGE, note)
    sys.stdout.write(transcript)
    return 0


def _cmd_nt_gcd(args: argparse.Namespace) -> int:
    print(gcd(args.a, args.b))
    return 0


def _cmd_nt_xgcd(args: argparse.Namespace) -> int:
    g, s, t = extended_gcd(args.a, args.b)
    print(f"{g} {s} {t}")
    return 0


def _cmd_nt_inverse(args: argparse.Namespace) -> int:
    print(mod_inverse(args.a, args.m))
    return 0


def _cmd_nt_modpow(args: argparse.Namespace) -> int:
    print(mod_pow(args.base, args.exponent, args.n))
    return 0


def _cmd_nt_totient(args: argparse.Namespace) -> int:
    print(totient_bruteforce(args.n))
    return 0


def _cmd_nt_isprime(args: argparse.Namespace) -> int:
    print("true" if is_probable_prime(args.n) else "false")
    return 0


def _factorize(n: int) -> list[int]:
    if not 2 <= n <= FACTOR_BOUND:
        raise OracleBoundExceeded(f"factor handles 2 <= n <= {FACTOR_BOUND}, got {n}")
    out: list[int] = []
    while n % 2 == 0:
        out.append(2)
        n //= 2
    f = 3
    while f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 2
    if n > 1:
        out.append(n)
    return out


def _cmd_nt_factor(args: argparse.Namespace) -> int:
    print(" ".join(str(f) for f in _factorize(args.n)))
    return 0


# --- entry points ------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MalformedKeyFile as exc:
        _fail(f"key file error: {exc}")
        return 4
    except BlockTooLarge as exc:
        _fail(str(exc))
        return 5
    except CrackTimeout as exc:
        _fail(f"timed out after {exc.elapsed:.3f}s: {exc}")
        return 6
    except (ZeroState, BitsTooSmall, InvalidPublicExponent) as exc:
        _fail(str(exc))
        return 2
    except (
        NonAsciiByte,
        ModulusTooSmallForCodec,
        BlockOutOfRange,
        MalformedBlock,
        ModulusTooSmall,
        BothZero,
        NotCoprime,
        NotPrime,
        EqualPrimes,
        OracleBoundExceeded,
        NotSemiprime,
        ValueError,
    ) as exc:
        _fail(str(exc))
        return 3
    except OSError as exc:
        _fail(f"file error: {exc}")
        return 1


def entry() -> None:
    sys.exit(main())
